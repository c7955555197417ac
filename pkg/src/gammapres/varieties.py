"""Varieties of Γ-groups generated by a finite class, pro-C completions, heights.

Membership and completion both go through the relatively free Γ-group of the
class on k Γ-generators.  For a Γ-group G with Γ-generators g_1..g_k let D be the
subgroup of the product of all members C (one factor per k-tuple c ∈ C^k) generated
by the diagonal elements x_{j,γ} = (γ(c_j))_c.  Inside D × G take the subgroup L
generated by (x_{j,γ}, γ(g_j)).  Then K = {g : (1, g) ∈ L} is the smallest normal
Γ-subgroup of G with G/K in the variety, so G/K is the pro-C completion, and G lies
in the variety exactly when K is trivial.  Both answers are proofs, not searches;
the only failure mode is |L| exceeding the enumeration bound.

Heights: the socle series (each step adds the product of all minimal normal
subgroups of the current quotient) realises the minimal chain length.  It is
checked against an exhaustive shortest-path search over the normal lattice.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Sequence

import numpy as np

from .config import PRODUCT_ORDER_BOUND, SUBQUOTIENT_CAP
from .errors import CapacityError, PreconditionError
from .groups import (FiniteGroup, GammaGroup, GammaHom, GroupHom, all_subgroups, is_isomorphic,
                     minimal_normal_subgroups,
                     normal_subgroups, quotient, quotient_gamma, subgroup_group)
from .presentations import generating_tuple

__all__ = [
    "VarietySpec",
    "Membership",
    "HeightReport",
    "variety_contains",
    "pro_c_completion",
    "complete_cover",
    "socle",
    "socle_series",
    "height",
    "height_exhaustive",
    "height_hat",
    "height_hat_of_variety",
    "height_report",
]

EXHAUSTIVE_HEIGHT_CAP = 64


@dataclass(frozen=True)
class VarietySpec:
    members: tuple
    product_order_bound: int = PRODUCT_ORDER_BOUND
    search_depth: int = 8

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        if not self.members:
            raise PreconditionError("a variety needs at least one generating member")
        orders = {m.gamma.order for m in self.members}
        tables = {m.gamma.table.tobytes() for m in self.members}
        if len(orders) != 1 or len(tables) != 1:
            raise PreconditionError("all members must share the same Γ")
        if self.product_order_bound < 1 or self.search_depth < 1:
            raise PreconditionError("bounds must be positive")

    @property
    def gamma(self) -> FiniteGroup:
        return self.members[0].gamma

    @property
    def exponent(self) -> int:
        return reduce(math.lcm, (m.g.exponent for m in self.members), 1)

    @property
    def primes(self) -> frozenset:
        return frozenset().union(*(_prime_divisors(m.g.order) for m in self.members))


@dataclass
class Membership:
    contains: bool | None
    status: str
    certificate: dict = field(default_factory=dict)

    def __bool__(self):
        return bool(self.contains)

    def to_dict(self) -> dict:
        return {"contains": self.contains, "status": self.status, "certificate": self.certificate}


def _prime_divisors(n: int) -> set:
    out, p = set(), 2
    while n > 1:
        while n % p == 0:
            out.add(p)
            n //= p
        p += 1
    return out


def _free_image(c: VarietySpec, h: GammaGroup, k: int, gens: Sequence[int], bound: int):
    """Enumerate L ⊂ D × H; returns the kernel subgroup of H and |D|, or raises CapacityError."""
    gam = c.gamma
    # coordinates: one per (member, k-tuple); concatenated tables with offsets
    offsets, blocks = [], []
    start = 0
    for m in c.members:
        offsets.append(start)
        start += m.g.order
    big = np.zeros((start, start), dtype=np.int32)
    for m, off in zip(c.members, offsets):
        big[off:off + m.g.order, off:off + m.g.order] = m.g.table + off
    for m, off in zip(c.members, offsets):
        for tup in itertools.product(range(m.g.order), repeat=k):
            blocks.append((m, off, tup))
    ncoord = len(blocks)
    if ncoord > 4 * bound:
        raise CapacityError(f"{ncoord} product coordinates exceed the bound")
    gen_vecs = []
    for j in range(k):
        for gm in range(gam.order):
            vec = np.array([off + int(m.action[gm, tup[j]]) for m, off, tup in blocks], dtype=np.int32)
            gen_vecs.append((vec, int(h.action[gm, gens[j]])))
    # drop duplicated coordinates: they carry no information
    mat = np.array([v for v, _ in gen_vecs]).T if gen_vecs else np.zeros((ncoord, 0), dtype=np.int32)
    _, keep = np.unique(mat, axis=0, return_index=True)
    keep = np.sort(keep)
    ident = np.array([off + m.g.identity for m, off, _ in blocks], dtype=np.int32)[keep]
    gen_vecs = [(v[keep], x) for v, x in gen_vecs]
    hg = h.g

    def mul(a, b):
        return (big[a[0], b[0]], int(hg.table[a[1], b[1]]))

    start_elt = (ident, hg.identity)
    seen = {(ident.tobytes(), hg.identity)}
    frontier = [start_elt]
    kernel = {hg.identity}
    d_part = {ident.tobytes()}
    cap = bound * hg.order
    while frontier:
        nxt = []
        for x in frontier:
            for s in gen_vecs:
                y = mul(x, s)
                key = (y[0].tobytes(), y[1])
                if key in seen:
                    continue
                seen.add(key)
                if len(seen) > cap:
                    raise CapacityError(f"relatively free enumeration exceeded {cap} elements")
                d_part.add(key[0])
                if key[0] == ident.tobytes():
                    kernel.add(y[1])
                nxt.append(y)
        frontier = nxt
    return frozenset(kernel), len(d_part), len(seen)


def _certified_exclusion(c: VarietySpec, h: GammaGroup) -> Membership | None:
    if c.exponent % h.g.exponent:
        return Membership(False, "excluded-exponent",
                          {"variety_exponent": c.exponent, "group_exponent": h.g.exponent})
    extra = _prime_divisors(h.g.order) - c.primes
    if extra:
        return Membership(False, "excluded-primes", {"primes": sorted(extra)})
    return None


def _completion_kernel(c: VarietySpec, h: GammaGroup, bound: int):
    k = None
    for n in range(0, c.search_depth + 1):
        try:
            gens = generating_tuple(h, n)
        except PreconditionError:
            continue
        k = n
        break
    if k is None:
        raise CapacityError(f"no Γ-generating tuple of length ≤ {c.search_depth}")
    if k == 0:
        return frozenset({h.g.identity}), {"k": 0, "free_order": 1}
    kern, d_order, l_order = _free_image(c, h, k, gens, bound)
    return kern, {"k": k, "generators": list(map(int, gens)), "free_order": d_order,
                  "graph_order": l_order}


def variety_contains(c: VarietySpec, h: GammaGroup) -> Membership:
    """Decide whether h lies in the variety generated by c's members."""
    if h.gamma.order != c.gamma.order:
        raise PreconditionError("Γ mismatch")
    if h.g.order == 1:
        return Membership(True, "trivial", {})
    for m in c.members:
        if m.g.order == h.g.order and is_isomorphic(m, h) is not None:
            return Membership(True, "member", {})
    ex = _certified_exclusion(c, h)
    if ex is not None:
        return ex
    if h.g.order > c.product_order_bound:
        return Membership(None, "not found within bound", {"reason": "group order exceeds bound"})
    try:
        kern, cert = _completion_kernel(c, h, c.product_order_bound)
    except CapacityError as e:
        return Membership(None, "not found within bound", {"reason": str(e)})
    if len(kern) == 1:
        cert["statement"] = "Γ-quotient of the relatively free group, a Γ-subgroup of a finite product"
        return Membership(True, "certificate", cert)
    cert["kernel_order"] = len(kern)
    return Membership(False, "excluded-relatively-free", cert)


def pro_c_completion(g: GammaGroup, c: VarietySpec) -> tuple[GammaGroup, GroupHom]:
    """The largest Γ-quotient of g lying in the variety, with its projection."""
    if g.gamma.order != c.gamma.order:
        raise PreconditionError("Γ mismatch")
    if g.g.order == 1:
        return g, GroupHom(g.g, g.g, np.arange(1), check=False)
    kern, _ = _completion_kernel(c, g, c.product_order_bound)
    if not (g.g.is_normal(kern) and g.is_gamma_stable(kern)):
        raise AssertionError("completion kernel is not a normal Γ-subgroup")
    return quotient_gamma(g, kern)


def complete_cover(omega: GammaHom, c: VarietySpec) -> tuple[GammaHom, GammaHom]:
    """The induced surjection F^C -> G^C, plus the completion map G -> G^C."""
    fc, pf = pro_c_completion(omega.source, c)
    gc, pg = pro_c_completion(omega.target, c)
    img = np.full(fc.g.order, -1, dtype=np.int64)
    through = pg.full_map[omega.hom.full_map]
    for x in range(omega.source.g.order):
        y = int(pf.full_map[x])
        if img[y] < 0:
            img[y] = through[x]
        elif img[y] != through[x]:
            raise AssertionError("completion of the cover is not well defined")
    induced = GammaHom(fc, gc, GroupHom(fc.g, gc.g, img, check=True), check=True)
    return induced, GammaHom(omega.target, gc, pg, check=False)


# heights

def socle(g: FiniteGroup) -> frozenset:
    mins = minimal_normal_subgroups(g)
    if not mins:
        return frozenset({g.identity})
    return frozenset(np.flatnonzero(g.subgroup_mask(set().union(*mins))).tolist())


def socle_series(g: FiniteGroup) -> list[frozenset]:
    """1 = S_0 < S_1 < ... < S_h = G with S_{i+1}/S_i the socle of G/S_i."""
    chain = [frozenset({g.identity})]
    while len(chain[-1]) < g.order:
        q, proj = quotient(g, chain[-1])
        soc = socle(q)
        chain.append(frozenset(np.flatnonzero(np.isin(proj.full_map, list(soc))).tolist()))
    return chain


def height(g: FiniteGroup, verify: bool = True) -> int:
    """Minimal length of a normal chain with semisimple-socle-type steps."""
    val = len(socle_series(g)) - 1
    if verify and g.order <= EXHAUSTIVE_HEIGHT_CAP:
        ex = height_exhaustive(g)
        if ex != val:
            raise AssertionError(f"socle series length {val} differs from exhaustive minimum {ex}")
    return val


def _is_product_of_minimals(q: FiniteGroup, sub: frozenset) -> bool:
    mins = [m for m in minimal_normal_subgroups(q) if m <= sub]
    if not mins:
        return len(sub) == 1
    return int(q.subgroup_mask(set().union(*mins)).sum()) == len(sub)


def height_exhaustive(g: FiniteGroup) -> int:
    """Shortest chain by breadth-first search over normal subgroups."""
    normals = normal_subgroups(g)
    start, goal = frozenset({g.identity}), frozenset(range(g.order))
    if start == goal:
        return 0
    dist = {start: 0}
    frontier = [start]
    while frontier:
        nxt = []
        for k in frontier:
            q, proj = quotient(g, k)
            for k2 in normals:
                if k2 in dist or not k < k2:
                    continue
                image = frozenset(int(proj.full_map[x]) for x in k2)
                if _is_product_of_minimals(q, image):
                    dist[k2] = dist[k] + 1
                    if k2 == goal:
                        return dist[k2]
                    nxt.append(k2)
        frontier = nxt
    raise AssertionError("no chain reaches the whole group")


def height_hat(g: FiniteGroup, cap: int = SUBQUOTIENT_CAP, full: bool = False,
               method: str = "greedy") -> int:
    """max of ℌ over subquotients.

    Quotients never have larger ℌ than the group itself, so by default only
    subgroups are scanned; ``full`` also scans their quotients.  ``method``
    picks the socle series ("greedy") or shortest-path search ("exhaustive").
    """
    if g.order > cap:
        raise CapacityError(f"group order {g.order} exceeds subquotient cap {cap}")
    if method == "greedy":
        hfun = lambda x: height(x, verify=False)  # noqa: E731
    elif method == "exhaustive":
        hfun = height_exhaustive
    else:
        raise PreconditionError("method must be 'greedy' or 'exhaustive'")
    best = 0
    for s in all_subgroups(g):
        sub, _ = subgroup_group(g, s)
        hv = hfun(sub)
        if full:
            for n in normal_subgroups(sub):
                q, _ = quotient(sub, n)
                hq = hfun(q)
                if hq > hv:
                    raise AssertionError("a quotient has larger height than its group")
        best = max(best, hv)
    return best


def height_hat_of_variety(c: VarietySpec, cap: int = SUBQUOTIENT_CAP) -> int:
    return max(height_hat(m.g, cap=cap) for m in c.members)


@dataclass
class HeightReport:
    order: int
    h_value: int
    hhat_value: int | None
    witness: list

    def to_dict(self) -> dict:
        return {"order": self.order, "h": self.h_value, "hhat": self.hhat_value,
                "witness": [sorted(s) for s in self.witness]}


def height_report(g: FiniteGroup, hat: bool = False) -> HeightReport:
    chain = socle_series(g)
    for a, b in zip(chain, chain[1:]):
        q, proj = quotient(g, a)
        if not _is_product_of_minimals(q, frozenset(int(proj.full_map[x]) for x in b)):
            raise AssertionError("witness chain step is not a product of minimal normal subgroups")
    return HeightReport(g.order, height(g), height_hat(g) if hat else None, chain)
