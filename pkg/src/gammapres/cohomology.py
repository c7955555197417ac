"""Dimensions of H^0, H^1, H^2 of finite groups with coefficients in F_ℓ-modules.

H^1 is solved on generator values: a crossed homomorphism is determined by f(s)
for generators s, and consistency is imposed on every Cayley-graph edge.
H^2 has two independent routes:

* ``relation``: the inflation-restriction sequence for a free presentation
  gives dim H^2 = dim Hom_G(R, A) - k·d + d - dim A^G + dim H^1, where
  R = ker(F_ℓ[G]^k -> F_ℓ[G], e_j -> s_j - 1) is the mod-ℓ relation module.
* ``cochain``: normalized 2-cocycles f(1,x) = f(x,1) = 0.  Associativity of
  the factor-set multiplication only needs checking against generators in
  the last slot, which keeps the system at |G|²·k·d rows.
"""

from __future__ import annotations

from collections import deque
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from .config import COCHAIN_H2_ORDER_CAP, H1_ORDER_CAP, H2_ORDER_CAP
from .errors import CapacityError, PreconditionError
from .groups import FiniteGroup, GammaGroup, elementary_abelian
from .linalg import inverse, nullspace, rank, rref
from .modules import FpModule, hom_dim, invariant_subspace

__all__ = [
    "CocycleReport",
    "h0_dim",
    "h1_dim",
    "h2_dim",
    "h1_report",
    "h2_report",
    "h1_presented",
    "split_extension_presentation",
    "h1_split_extension",
    "relation_module",
    "vector_gamma_group",
    "semidirect_cohomology",
]


@dataclass(frozen=True)
class CocycleReport:
    degree: int
    dim_cocycles: int
    dim_coboundaries: int
    dim_cohomology: int
    prime: int
    group_order: int
    module_dim: int
    method: str = "cayley"

    def __post_init__(self):
        if self.dim_cohomology != self.dim_cocycles - self.dim_coboundaries or self.dim_cohomology < 0:
            raise AssertionError("inconsistent cocycle report")

    def to_dict(self) -> dict:
        return asdict(self)


def _check(g: FiniteGroup, a: FpModule):
    if a.group is not g and a.group.order != g.order:
        raise PreconditionError("module is not over this group")


def h0_dim(g: FiniteGroup, a: FpModule) -> int:
    _check(g, a)
    return invariant_subspace(a).shape[0]


def _z1_system(a: FpModule, gens: Sequence[int]) -> tuple[np.ndarray, np.ndarray]:
    """Per-element value matrices F[x] (d × kd) along a BFS tree and the edge constraints."""
    g, p, d = a.group, a.prime, a.dim
    k = len(gens)
    mats = a.element_matrices
    f = np.zeros((g.order, d, k * d), dtype=np.int64)
    seen = np.zeros(g.order, dtype=bool)
    seen[g.identity] = True
    rows = []
    queue = deque([g.identity])
    while queue:
        x = queue.popleft()
        for j, s in enumerate(gens):
            y = g.table[x, s]
            val = f[x].copy()
            val[:, j * d:(j + 1) * d] += mats[x]
            val %= p
            if not seen[y]:
                seen[y] = True
                f[y] = val
                queue.append(y)
            else:
                diff = (f[y] - val) % p
                if diff.any():
                    rows.append(diff)
    cons = np.vstack(rows) if rows else np.zeros((0, k * d), dtype=np.int64)
    return f, cons


def h1_report(g: FiniteGroup, a: FpModule, cap: int = H1_ORDER_CAP) -> CocycleReport:
    _check(g, a)
    if g.order > cap:
        raise CapacityError(f"group order {g.order} exceeds degree-1 cap {cap}")
    d, p = a.dim, a.prime
    gens = list(g.generators)
    _, cons = _z1_system(a, gens)
    z1 = len(gens) * d - rank(cons, p)
    b1 = d - h0_dim(g, a)
    return CocycleReport(1, z1, b1, z1 - b1, p, g.order, d)


def h1_dim(g: FiniteGroup, a: FpModule, cap: int = H1_ORDER_CAP) -> int:
    return h1_report(g, a, cap).dim_cohomology


def relation_module(g: FiniteGroup, p: int, gens: Sequence[int] | None = None) -> tuple[FpModule, np.ndarray, list[int]]:
    """Kernel of F_p[G]^k -> F_p[G], e_j -> s_j - 1, as a G-module.

    Returns the module, its RREF basis inside F_p[G]^k (rows; coordinate j·|G| + x
    is the element x in copy j) and the pivot columns.
    """
    gens = list(g.generators if gens is None else gens)
    n, k = g.order, len(gens)
    phi = np.zeros((n, k * n), dtype=np.int64)
    xs = np.arange(n)
    for j, s in enumerate(gens):
        phi[g.table[xs, s], j * n + xs] += 1
        phi[xs, j * n + xs] -= 1
    basis = nullspace(phi % p, p, k * n)
    basis, piv = rref(basis, p)
    mats = []
    for s in g.generators:
        perm = np.concatenate([j * n + g.table[s, xs] for j in range(k)])
        moved = np.zeros_like(basis)
        moved[:, perm] = basis
        mats.append(moved[:, piv].T % p)
    mod = FpModule(p, g, mats, check=False, dim=basis.shape[0])
    return mod, basis, piv


def _h2_relation(g: FiniteGroup, a: FpModule) -> CocycleReport:
    d, p = a.dim, a.prime
    gens = list(g.generators)
    k = len(gens)
    if k == 0:
        return CocycleReport(2, 0, 0, 0, p, g.order, d, "relation")
    r, _, _ = relation_module(g, p, gens)
    homs = hom_dim(r, a)
    h0 = h0_dim(g, a)
    h1 = h1_dim(g, a, cap=max(g.order, H1_ORDER_CAP))
    h2 = homs - k * d + d - h0 + h1
    # report the normalized-cochain shape: B^2 = C^1_norm / Z^1
    z1 = h1 + d - h0
    b2 = (g.order - 1) * d - z1
    return CocycleReport(2, b2 + h2, b2, h2, p, g.order, d, "relation")


def _z2_cochain_system(a: FpModule) -> tuple[np.ndarray, int]:
    g, p, d = a.group, a.prime, a.dim
    n = g.order
    e = g.identity
    others = [x for x in range(n) if x != e]
    pos = np.full(n, -1, dtype=np.int64)
    pos[others] = np.arange(n - 1)
    nvars = (n - 1) ** 2 * d
    mats = a.element_matrices
    t = g.table
    blocks = []
    eye = np.eye(d, dtype=np.int64)
    for s in g.generators:
        if s == e:
            continue
        for x in others:
            for y in others:
                # x f(y,s) - f(xy,s) + f(x,ys) - f(x,y)
                row = np.zeros((d, nvars), dtype=np.int64)
                terms = [(y, s, mats[x]), (t[x, y], s, -eye), (x, t[y, s], eye), (x, y, -eye)]
                for u, v, coef in terms:
                    if u == e or v == e:
                        continue
                    c = (pos[u] * (n - 1) + pos[v]) * d
                    row[:, c:c + d] += coef
                row %= p
                if row.any():
                    blocks.append(row)
    cons = np.vstack(blocks) if blocks else np.zeros((0, nvars), dtype=np.int64)
    return cons, nvars


def _h2_cochain(g: FiniteGroup, a: FpModule, cap: int) -> CocycleReport:
    if g.order > cap:
        raise CapacityError(f"group order {g.order} exceeds normalized-cochain cap {cap}")
    d, p = a.dim, a.prime
    cons, nvars = _z2_cochain_system(a)
    z2 = nvars - rank(cons, p)
    z1 = h1_dim(g, a) + d - h0_dim(g, a)
    b2 = (g.order - 1) * d - z1
    return CocycleReport(2, z2, b2, z2 - b2, p, g.order, d, "cochain")


def h2_report(g: FiniteGroup, a: FpModule, method: str = "relation", cap: int | None = None) -> CocycleReport:
    _check(g, a)
    if method == "relation":
        cap = H2_ORDER_CAP if cap is None else cap
        if g.order > cap:
            raise CapacityError(f"group order {g.order} exceeds degree-2 cap {cap}")
        return _h2_relation(g, a)
    if method == "cochain":
        return _h2_cochain(g, a, COCHAIN_H2_ORDER_CAP if cap is None else cap)
    raise PreconditionError(f"unknown H^2 method {method!r}")


def h2_dim(g: FiniteGroup, a: FpModule, method: str = "relation", cap: int | None = None) -> int:
    return h2_report(g, a, method, cap).dim_cohomology


# presentations and split extensions V ⋊ Γ

Word = list[tuple[int, int]]


def h1_presented(p: int, gen_mats: Sequence[np.ndarray], relators: Sequence[Word]) -> CocycleReport:
    """H^1 of <X | R> acting on F_p^d through gen_mats, by Fox calculus on the relators."""
    mats = [np.mod(np.asarray(m, dtype=np.int64), p) for m in gen_mats]
    k = len(mats)
    d = mats[0].shape[0]
    invs = [inverse(m, p) for m in mats]
    eye = np.eye(d, dtype=np.int64)
    rows = []
    for word in relators:
        cur_m = eye.copy()
        cur_f = np.zeros((d, k * d), dtype=np.int64)
        for j, e in word:
            step = 1 if e > 0 else -1
            for _ in range(abs(e)):
                if step > 0:
                    cur_f[:, j * d:(j + 1) * d] += cur_m
                    cur_m = cur_m @ mats[j] % p
                else:
                    cur_m = cur_m @ invs[j] % p
                    cur_f[:, j * d:(j + 1) * d] -= cur_m
                cur_f %= p
        rows.append(cur_f)
    cons = np.vstack(rows) if rows else np.zeros((0, k * d), dtype=np.int64)
    z1 = k * d - rank(cons, p)
    stack = np.vstack([m - eye for m in mats]) if mats else np.zeros((0, d), dtype=np.int64)
    h0 = nullspace(stack, p, d).shape[0]
    b1 = d - h0
    return CocycleReport(1, z1, b1, z1 - b1, p, -1, d, "presentation")


def _cayley_words(g: FiniteGroup, offset: int) -> tuple[list[Word], list[Word]]:
    """Tree words for every element and the loop relators of the Cayley graph."""
    words: dict[int, Word] = {g.identity: []}
    rels: list[Word] = []
    queue = deque([g.identity])
    order = []
    while queue:
        x = queue.popleft()
        order.append(x)
        for j, s in enumerate(g.generators):
            y = int(g.table[x, s])
            if y not in words:
                words[y] = words[x] + [(offset + j, 1)]
                queue.append(y)
    for x in order:
        for j, s in enumerate(g.generators):
            y = int(g.table[x, s])
            if words[y] == words[x] + [(offset + j, 1)]:
                continue
            inv = [(gi, -e) for gi, e in reversed(words[y])]
            rels.append(words[x] + [(offset + j, 1)] + inv)
    return [words[x] for x in range(g.order)], rels


def split_extension_presentation(v: FpModule) -> tuple[int, list[Word]]:
    """Presentation of V ⋊ Γ: generators e_0..e_{m-1} (a basis of V) then Γ's generators."""
    p, m = v.prime, v.dim
    gam = v.group
    rels: list[Word] = []
    for i in range(m):
        rels.append([(i, p)])
        for j in range(i + 1, m):
            rels.append([(i, 1), (j, 1), (i, -1), (j, -1)])
    for s_idx, mat in enumerate(v.gen_matrices):
        t = m + s_idx
        for i in range(m):
            col = mat[:, i]
            w_inv = [(j, -int(c)) for j, c in reversed(list(enumerate(col))) if c]
            rels.append([(t, 1), (i, 1), (t, -1)] + w_inv)
    _, grels = _cayley_words(gam, m)
    rels.extend(grels)
    return m + len(gam.generators), rels


def h1_split_extension(v: FpModule, a: FpModule) -> CocycleReport:
    """H^1(V ⋊ Γ, A) for Γ-modules V and A, with V acting trivially on A."""
    if v.group.order != a.group.order or v.prime != a.prime:
        raise PreconditionError("V and A must be modules over the same Γ and prime")
    ngen, rels = split_extension_presentation(v)
    d = a.dim
    mats = [np.eye(d, dtype=np.int64)] * v.dim + list(a.gen_matrices)
    if ngen == 0:
        return CocycleReport(1, 0, 0, 0, a.prime, 1, d, "presentation")
    rep = h1_presented(a.prime, mats, rels)
    return CocycleReport(1, rep.dim_cocycles, rep.dim_coboundaries, rep.dim_cohomology, a.prime,
                         a.prime ** v.dim * v.group.order, d, "presentation")


def vector_gamma_group(v: FpModule) -> GammaGroup:
    """The additive group of V with Γ acting through the module matrices."""
    p, m = v.prime, v.dim
    g = elementary_abelian(p, m)
    idx = np.arange(p**m)
    digits = (idx[:, None] // p ** np.arange(m)) % p
    weights = p ** np.arange(m)
    act = np.stack([((mat @ digits.T) % p).T @ weights for mat in v.element_matrices])
    return GammaGroup(g, v.group, act, check=False)


# semidirect products

def _fixed_dim_in(span_rows: np.ndarray, actions: Sequence[np.ndarray], p: int) -> int:
    """Dimension of the vectors in the row span fixed by every action matrix."""
    if span_rows.shape[0] == 0:
        return 0
    n = span_rows.shape[1]
    eye = np.eye(n, dtype=np.int64)
    if not actions:
        return rank(span_rows, p)
    stack = np.vstack([((r - eye) @ span_rows.T) % p for r in actions])
    sol = nullspace(stack, p, span_rows.shape[0])
    return rank(sol @ span_rows % p, p) if sol.shape[0] else 0


def _gamma_fixed_h1(h: GammaGroup, a_g: FpModule, a_gamma: np.ndarray, cap: int) -> int:
    g, p, d = h.g, a_g.prime, a_g.dim
    gens = list(g.generators)
    k = len(gens)
    f, cons = _z1_system(a_g, gens)
    acts = []
    for gm in h.gamma.generators:
        ginv = h.gamma.inv(gm)
        r = np.vstack([a_gamma[gm] @ f[h.action[ginv, s]] for s in gens]) % p
        acts.append(r)
    z1 = nullspace(cons, p, k * d)
    z1_fixed = _fixed_dim_in(z1, acts, p)
    b1_rows = np.vstack([
        np.concatenate([(a_g.matrix(s) - np.eye(d, dtype=np.int64))[:, c] for s in gens]) for c in range(d)
    ]) % p if k else np.zeros((0, 0), dtype=np.int64)
    b1_fixed = _fixed_dim_in(b1_rows, acts, p) if k else 0
    return z1_fixed - b1_fixed


def _gamma_fixed_h2(h: GammaGroup, a_g: FpModule, a_gamma: np.ndarray) -> int:
    g, p, d = h.g, a_g.prime, a_g.dim
    n = g.order
    e = g.identity
    others = [x for x in range(n) if x != e]
    pos = np.full(n, -1, dtype=np.int64)
    pos[others] = np.arange(n - 1)
    cons, nvars = _z2_cochain_system(a_g)
    acts2, acts1 = [], []
    for gm in h.gamma.generators:
        ginv = h.gamma.inv(gm)
        r2 = np.zeros((nvars, nvars), dtype=np.int64)
        for x in others:
            for y in others:
                src = (pos[h.action[ginv, x]] * (n - 1) + pos[h.action[ginv, y]]) * d
                dst = (pos[x] * (n - 1) + pos[y]) * d
                r2[dst:dst + d, src:src + d] = a_gamma[gm]
        acts2.append(r2)
        r1 = np.zeros(((n - 1) * d, (n - 1) * d), dtype=np.int64)
        for x in others:
            src, dst = pos[h.action[ginv, x]] * d, pos[x] * d
            r1[dst:dst + d, src:src + d] = a_gamma[gm]
        acts1.append(r1)
    z2 = nullspace(cons, p, nvars)
    z2_fixed = _fixed_dim_in(z2, acts2, p)
    c1_fixed = _fixed_dim_in(np.eye((n - 1) * d, dtype=np.int64), acts1, p)
    z1_fixed = _gamma_fixed_z1(h, a_g, a_gamma)
    return z2_fixed - (c1_fixed - z1_fixed)


def _gamma_fixed_z1(h: GammaGroup, a_g: FpModule, a_gamma: np.ndarray) -> int:
    p, d = a_g.prime, a_g.dim
    gens = list(h.g.generators)
    f, cons = _z1_system(a_g, gens)
    acts = []
    for gm in h.gamma.generators:
        ginv = h.gamma.inv(gm)
        acts.append(np.vstack([a_gamma[gm] @ f[h.action[ginv, s]] for s in gens]) % p)
    return _fixed_dim_in(nullspace(cons, p, len(gens) * d), acts, p)


def semidirect_cohomology(h: GammaGroup, a: FpModule, cochain_cap: int = COCHAIN_H2_ORDER_CAP,
                          h2_cap: int = H2_ORDER_CAP) -> dict:
    """H^1, H^2 of G⋊Γ and, when |G| is small enough, dims of H^i(G, A)^Γ for comparison."""
    p = a.prime
    if h.gamma.order % p == 0:
        raise PreconditionError("ℓ divides |Γ|")
    sd = h.semidirect
    if a.group.order != sd.group.order:
        raise PreconditionError("module must be over the semidirect product")
    out = {
        "h1": h1_dim(sd.group, a),
        "h2": h2_dim(sd.group, a, cap=h2_cap),
        "h1_gamma_fixed": None,
        "h2_gamma_fixed": None,
    }
    if h.g.order <= cochain_cap:
        a_g = a.inflate(sd.g_embedding)
        a_gamma = a.element_matrices[sd.gamma_embedding.full_map]
        out["h1_gamma_fixed"] = _gamma_fixed_h1(h, a_g, a_gamma, cochain_cap)
        out["h2_gamma_fixed"] = _gamma_fixed_h2(h, a_g, a_gamma) if h.g.order > 1 else 0
    return out
