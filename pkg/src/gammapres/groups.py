"""Finite groups as dense multiplication tables, Γ-actions and subgroup machinery."""

from __future__ import annotations

from collections import Counter, deque
from functools import cached_property
from itertools import product as iproduct
from typing import Callable, Hashable, Iterable, Iterator, Sequence

import numpy as np

from .config import GROUP_ORDER_CAP
from .errors import CapacityError, NotNormal, PreconditionError

__all__ = [
    "FiniteGroup",
    "GroupHom",
    "GammaGroup",
    "GammaHom",
    "SemidirectProduct",
    "semidirect_product",
    "gamma_normal_closure",
    "quotient",
    "quotient_gamma",
    "is_admissible",
    "normal_subgroups",
    "minimal_normal_subgroups",
    "maximal_proper_gnormal_subgroups_of",
    "is_isomorphic",
    "homomorphisms",
    "all_subgroups",
    "subgroup_group",
    "sub_gamma",
    "direct_product",
    "direct_product_gamma",
    "cyclic",
    "elementary_abelian",
    "symmetric",
    "alternating",
    "dihedral",
    "quaternion",
    "trivial_group",
    "from_permutations",
    "from_elements",
]

Subgroup = frozenset


def _mask_key(mask: np.ndarray) -> bytes:
    return np.packbits(mask).tobytes()


class FiniteGroup:
    """A finite group on elements 0..order-1 given by its multiplication table."""

    def __init__(
        self,
        table,
        generators: Sequence[int] | None = None,
        identity: int | None = None,
        name: str | None = None,
        check: bool = True,
        cap: int = GROUP_ORDER_CAP,
    ):
        t = np.asarray(table, dtype=np.int32)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise PreconditionError("table must be a nonempty square array")
        n = t.shape[0]
        if n > cap:
            raise CapacityError(f"group order {n} exceeds cap {cap}")
        if t.min() < 0 or t.max() >= n:
            raise PreconditionError("table entries out of range")
        t.setflags(write=False)
        self.table = t
        self.order = n
        if identity is None:
            hits = [e for e in range(n) if np.array_equal(t[e], np.arange(n))]
            if not hits:
                raise PreconditionError("no identity element in table")
            identity = hits[0]
        self.identity = int(identity)
        self.name = name
        if check:
            self._validate()
        if generators is None:
            generators = self._greedy_generators()
        self.generators = tuple(int(x) for x in generators)
        if check and self.subgroup_mask(self.generators).sum() != n:
            raise PreconditionError("generators do not generate the group")

    def __repr__(self):
        return f"FiniteGroup({self.name or 'unnamed'}, order={self.order})"

    def _validate(self):
        t, n, e = self.table, self.order, self.identity
        ar = np.arange(n)
        if not (np.array_equal(t[e], ar) and np.array_equal(t[:, e], ar)):
            raise PreconditionError("identity is not two-sided")
        for row in t:
            if len(np.unique(row)) != n:
                raise PreconditionError("table is not a Latin square")
        if n <= 256:
            for a in range(n):
                if not np.array_equal(t[t[a]], t[a][t]):
                    raise PreconditionError("table is not associative")
        else:
            rng = np.random.default_rng(0)
            a, b, c = rng.integers(0, n, size=(3, 20000))
            if not np.array_equal(t[t[a, b], c], t[a, t[b, c]]):
                raise PreconditionError("table is not associative")

    # element arithmetic
    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    @cached_property
    def inverse(self) -> np.ndarray:
        inv = np.argmax(self.table == self.identity, axis=1).astype(np.int32)
        inv.setflags(write=False)
        return inv

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        r = self.identity
        while k:
            if k & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            k >>= 1
        return r

    def conj_perm(self, g: int) -> np.ndarray:
        """x -> g^-1 x g on all elements."""
        return self.table[self.inverse[g]][self.table[:, g]]

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        cur = np.arange(n)
        for k in range(1, n + 1):
            hit = (cur == self.identity) & (orders == 0)
            orders[hit] = k
            if orders.all():
                break
            cur = self.table[cur, np.arange(n)]
        return orders

    @cached_property
    def exponent(self) -> int:
        return int(np.lcm.reduce(self.element_orders))

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    # subgroups
    def subgroup_mask(self, gens: Iterable[int]) -> np.ndarray:
        mask = np.zeros(self.order, dtype=bool)
        mask[self.identity] = True
        g = np.unique(np.fromiter((int(x) for x in gens), dtype=np.int64))
        if g.size == 0:
            return mask
        frontier = np.array([self.identity])
        while frontier.size:
            cand = self.table[np.ix_(frontier, g)].ravel()
            cand = np.unique(cand[~mask[cand]])
            mask[cand] = True
            frontier = cand
        return mask

    def subgroup(self, gens: Iterable[int]) -> Subgroup:
        return frozenset(np.flatnonzero(self.subgroup_mask(gens)).tolist())

    def is_subgroup(self, s: Iterable[int]) -> bool:
        s = frozenset(s)
        if self.identity not in s:
            return False
        idx = np.fromiter(s, dtype=np.int64)
        mask = np.zeros(self.order, dtype=bool)
        mask[idx] = True
        return bool(mask[self.table[np.ix_(idx, idx)]].all())

    def is_normal(self, s: Iterable[int]) -> bool:
        s = frozenset(s)
        if not self.is_subgroup(s):
            return False
        mask = np.zeros(self.order, dtype=bool)
        mask[list(s)] = True
        idx = np.flatnonzero(mask)
        return all(mask[self.conj_perm(g)[idx]].all() for g in self.generators)

    def _greedy_generators(self) -> list[int]:
        order = np.argsort(-self.element_orders, kind="stable")
        gens: list[int] = []
        mask = self.subgroup_mask([])
        for x in order:
            if mask.all():
                break
            if not mask[x]:
                gens.append(int(x))
                mask = self.subgroup_mask(gens)
        return gens

    def generating_set(self, subset: Iterable[int]) -> list[int]:
        """A small generating list for the subgroup with the given elements."""
        subset = sorted(subset, key=lambda x: (-int(self.element_orders[x]), x))
        gens: list[int] = []
        mask = self.subgroup_mask([])
        for x in subset:
            if not mask[x]:
                gens.append(int(x))
                mask = self.subgroup_mask(gens)
        return gens

    @cached_property
    def conjugacy_classes(self) -> list[frozenset]:
        return _orbits(self.order, [self.conj_perm(g) for g in self.generators])

    def normal_closure_mask(self, seeds: Iterable[int], perms: Sequence[np.ndarray] = ()) -> np.ndarray:
        """Smallest normal subgroup containing seeds and stable under perms."""
        maps = [self.conj_perm(g) for g in self.generators] + list(perms)
        gens: list[int] = []
        mask = self.subgroup_mask([])
        pending = deque(int(x) for x in seeds)
        while True:
            while pending:
                x = pending.popleft()
                if not mask[x]:
                    gens.append(x)
                    mask = self.subgroup_mask(gens)
            elems = np.flatnonzero(mask)
            fresh = np.unique(np.concatenate([m[elems] for m in maps])) if maps else np.array([], dtype=int)
            fresh = fresh[~mask[fresh]]
            if fresh.size == 0:
                return mask
            pending.extend(fresh.tolist())

    @cached_property
    def derived_subgroup(self) -> Subgroup:
        comms = [
            self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
            for a in self.generators
            for b in self.generators
        ]
        return frozenset(np.flatnonzero(self.normal_closure_mask(comms)).tolist())

    @cached_property
    def derived_length(self) -> int:
        """Length of the derived series, or -1 when it stalls above the identity."""
        g: FiniteGroup = self
        k = 0
        while g.order > 1:
            d = g.derived_subgroup
            if len(d) == g.order:
                return -1
            g = subgroup_group(g, d)[0]
            k += 1
        return k

    @cached_property
    def abelianization(self) -> tuple:
        q, _ = quotient(self, self.derived_subgroup)
        return (q.order, tuple(sorted(Counter(q.element_orders.tolist()).items())))

    def fingerprint(self) -> tuple:
        return (
            self.order,
            tuple(sorted(Counter(self.element_orders.tolist()).items())),
            tuple(sorted(Counter(len(c) for c in self.conjugacy_classes).items())),
            self.abelianization,
            self.derived_length,
        )

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "order": self.order,
            "table": self.table.tolist(),
            "generators": list(self.generators),
        }


def _orbits(n: int, perms: Sequence[np.ndarray]) -> list[frozenset]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in perms:
        for x, y in enumerate(np.asarray(p).tolist()):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
    groups: dict[int, list[int]] = {}
    for x in range(n):
        groups.setdefault(find(x), []).append(x)
    return [frozenset(v) for _, v in sorted(groups.items())]


class GroupHom:
    """A homomorphism given by its full element map."""

    def __init__(self, source: FiniteGroup, target: FiniteGroup, full_map, check: bool = True):
        self.source = source
        self.target = target
        fm = np.asarray(full_map, dtype=np.int32)
        if fm.shape != (source.order,):
            raise PreconditionError("full map has the wrong length")
        fm.setflags(write=False)
        self.full_map = fm
        if check and not self.respects_multiplication():
            raise PreconditionError("map is not a homomorphism")

    @classmethod
    def from_images(cls, source: FiniteGroup, target: FiniteGroup, images: Sequence[int]) -> "GroupHom":
        fm = _extend_map(source, target, source.generators, list(images))
        if fm is None:
            raise PreconditionError("generator images do not define a homomorphism")
        return cls(source, target, fm, check=False)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(int(self.full_map[g]) for g in self.source.generators)

    def __call__(self, x: int) -> int:
        return int(self.full_map[x])

    def respects_multiplication(self) -> bool:
        f = self.full_map
        return bool(np.array_equal(f[self.source.table], self.target.table[np.ix_(f, f)]))

    def kernel(self) -> Subgroup:
        return frozenset(np.flatnonzero(self.full_map == self.target.identity).tolist())

    def image(self) -> Subgroup:
        return frozenset(np.unique(self.full_map).tolist())

    def is_surjective(self) -> bool:
        return len(self.image()) == self.target.order

    def compose(self, other: "GroupHom") -> "GroupHom":
        """self after other."""
        return GroupHom(other.source, self.target, self.full_map[other.full_map], check=False)

    def is_equivariant(self, src_action: np.ndarray, tgt_action: np.ndarray) -> bool:
        f = self.full_map
        return bool(np.array_equal(f[src_action], tgt_action[:, f]))


def _extend_map(src: FiniteGroup, tgt: FiniteGroup, gens: Sequence[int], imgs: Sequence[int]) -> np.ndarray | None:
    """Extend generator images along the Cayley graph; None on inconsistency."""
    phi = np.full(src.order, -1, dtype=np.int64)
    phi[src.identity] = tgt.identity
    queue = deque([src.identity])
    st, tt = src.table, tgt.table
    pairs = list(zip((int(g) for g in gens), (int(i) for i in imgs)))
    while queue:
        x = queue.popleft()
        px = phi[x]
        for s, t in pairs:
            y = st[x, s]
            v = tt[px, t]
            if phi[y] < 0:
                phi[y] = v
                queue.append(y)
            elif phi[y] != v:
                return None
    return phi


class GammaGroup:
    """A finite group g with Γ acting by automorphisms, one permutation per Γ-element."""

    def __init__(self, g: FiniteGroup, gamma: FiniteGroup, action, check: bool = True):
        self.g = g
        self.gamma = gamma
        act = np.asarray(action, dtype=np.int32)
        if act.shape != (gamma.order, g.order):
            raise PreconditionError("action must have one permutation of G per element of Γ")
        act.setflags(write=False)
        self.action = act
        if check:
            self._validate()

    def __repr__(self):
        return f"GammaGroup(|G|={self.g.order}, |Γ|={self.gamma.order})"

    def _validate(self):
        g, gam, act = self.g, self.gamma, self.action
        if not np.array_equal(act[gam.identity], np.arange(g.order)):
            raise PreconditionError("identity of Γ must act trivially")
        for row in act:
            if len(np.unique(row)) != g.order:
                raise PreconditionError("action entry is not a permutation")
            if not np.array_equal(row[g.table], g.table[np.ix_(row, row)]):
                raise PreconditionError("action entry is not an automorphism")
        # action[ab] = action[a] o action[b]
        for a in range(gam.order):
            for b in gam.generators:
                if not np.array_equal(act[gam.table[a, b]], act[a][act[b]]):
                    raise PreconditionError("action is not a homomorphism from Γ")

    @classmethod
    def trivial_action(cls, g: FiniteGroup, gamma: FiniteGroup | None = None) -> "GammaGroup":
        gamma = gamma or trivial_group()
        return cls(g, gamma, np.tile(np.arange(g.order), (gamma.order, 1)), check=False)

    @classmethod
    def from_generator_action(cls, g: FiniteGroup, gamma: FiniteGroup, gen_perms: Sequence) -> "GammaGroup":
        """Build the full action from permutations for Γ's designated generators."""
        act = np.full((gamma.order, g.order), -1, dtype=np.int64)
        act[gamma.identity] = np.arange(g.order)
        perms = [np.asarray(p, dtype=np.int64) for p in gen_perms]
        queue = deque([gamma.identity])
        while queue:
            x = queue.popleft()
            for s, p in zip(gamma.generators, perms):
                y = gamma.table[x, s]
                v = act[x][p]
                if act[y, 0] < 0:
                    act[y] = v
                    queue.append(y)
                elif not np.array_equal(act[y], v):
                    raise PreconditionError("generator permutations do not define a Γ-action")
        return cls(g, gamma, act)

    def act(self, gamma_elt: int, x: int) -> int:
        return int(self.action[gamma_elt, x])

    @property
    def generator_perms(self) -> list[np.ndarray]:
        return [self.action[s] for s in self.gamma.generators]

    def fixed_points(self, gamma_elt: int | None = None) -> Subgroup:
        rows = self.action if gamma_elt is None else self.action[[gamma_elt]]
        return frozenset(np.flatnonzero((rows == np.arange(self.g.order)).all(axis=0)).tolist())

    @cached_property
    def semidirect(self) -> "SemidirectProduct":
        return semidirect_product(self)

    def is_gamma_stable(self, s: Iterable[int]) -> bool:
        s = frozenset(s)
        idx = np.fromiter(s, dtype=np.int64)
        return all(set(self.action[gm][idx].tolist()) <= s for gm in self.gamma.generators)

    def fingerprint(self) -> tuple:
        fixed = tuple(len(self.fixed_points(x)) for x in range(self.gamma.order))
        return (self.g.fingerprint(), fixed)

    def to_dict(self) -> dict:
        return {"group": self.g.to_dict(), "gamma": self.gamma.to_dict(), "action": self.action.tolist()}


class SemidirectProduct:
    """G⋊Γ with element (h, γ) stored at index γ·|G| + h."""

    def __init__(self, h: GammaGroup, group: FiniteGroup):
        self.gamma_group = h
        self.group = group
        ng = h.g.order
        self.g_embedding = GroupHom(h.g, group, np.arange(ng), check=False)
        self.gamma_embedding = GroupHom(h.gamma, group, np.arange(h.gamma.order) * ng + h.g.identity, check=False)
        self.projection = GroupHom(group, h.gamma, np.arange(group.order) // ng, check=False)

    def index(self, h: int, gamma_elt: int) -> int:
        return gamma_elt * self.gamma_group.g.order + h

    @property
    def normal_part(self) -> Subgroup:
        return frozenset(range(self.gamma_group.g.order))

    @property
    def gamma_part(self) -> Subgroup:
        return frozenset(self.gamma_embedding.full_map.tolist())


def semidirect_product(h: GammaGroup, cap: int = GROUP_ORDER_CAP) -> SemidirectProduct:
    ng, nq = h.g.order, h.gamma.order
    n = ng * nq
    if n > cap:
        raise CapacityError(f"semidirect product order {n} exceeds cap {cap}")
    idx = np.arange(n)
    hh, gg = idx % ng, idx // ng
    # (h1, g1)(h2, g2) = (h1 * g1(h2), g1 g2)
    prod_h = h.g.table[hh[:, None], h.action[gg[:, None], hh[None, :]]]
    prod_g = h.gamma.table[gg[:, None], gg[None, :]]
    table = prod_g * ng + prod_h
    gens = list(h.g.generators) + [s * ng + h.g.identity for s in h.gamma.generators]
    if not gens:
        gens = []
    name = f"({h.g.name or 'G'})x|({h.gamma.name or 'Gamma'})"
    grp = FiniteGroup(table, generators=gens, identity=h.g.identity, name=name, check=False, cap=cap)
    return SemidirectProduct(h, grp)


def gamma_normal_closure(h: GammaGroup, seeds: Iterable[int]) -> Subgroup:
    mask = h.g.normal_closure_mask(seeds, h.generator_perms)
    return frozenset(np.flatnonzero(mask).tolist())


def quotient(g: FiniteGroup, n: Iterable[int]) -> tuple[FiniteGroup, GroupHom]:
    n = frozenset(n)
    if not g.is_normal(n):
        raise NotNormal("subgroup is not normal")
    label = np.full(g.order, -1, dtype=np.int64)
    nidx = np.fromiter(sorted(n), dtype=np.int64)
    reps = []
    for x in range(g.order):
        if label[x] < 0:
            label[g.table[x, nidx]] = len(reps)
            reps.append(x)
    reps_a = np.array(reps)
    table = label[g.table[np.ix_(reps_a, reps_a)]]
    gens = sorted({int(label[s]) for s in g.generators} - {int(label[g.identity])})
    q = FiniteGroup(table, generators=gens, identity=int(label[g.identity]), check=False,
                    name=f"{g.name or 'G'}/N")
    return q, GroupHom(g, q, label, check=False)


def quotient_gamma(h: GammaGroup, n: Iterable[int]) -> tuple[GammaGroup, GroupHom]:
    n = frozenset(n)
    if not h.is_gamma_stable(n):
        raise NotNormal("subgroup is not Γ-stable")
    q, proj = quotient(h.g, n)
    reps = np.array([int(np.flatnonzero(proj.full_map == i)[0]) for i in range(q.order)])
    act = proj.full_map[h.action[:, reps]]
    return GammaGroup(q, h.gamma, act, check=False), proj


def is_admissible(h: GammaGroup) -> bool:
    if np.gcd(h.g.order, h.gamma.order) != 1:
        return False
    g = h.g
    vals = {g.mul(g.inv(x), int(h.action[gm, x])) for gm in range(h.gamma.order) for x in range(g.order)}
    return len(gamma_normal_closure(h, vals)) == g.order


# normal subgroup lattices

def _gamma_classes(g: FiniteGroup, perms: Sequence[np.ndarray]) -> list[frozenset]:
    return _orbits(g.order, [g.conj_perm(x) for x in g.generators] + list(perms))


def normal_subgroups(
    g: FiniteGroup,
    perms: Sequence[np.ndarray] = (),
    within: Iterable[int] | None = None,
    limit: int = 50000,
) -> list[Subgroup]:
    """All normal subgroups stable under perms (optionally inside a given normal subgroup).

    Each is a join of normal closures of conjugacy-class orbits.
    """
    classes = _gamma_classes(g, perms)
    if within is not None:
        w = frozenset(within)
        classes = [c for c in classes if c <= w]
    reps = [min(c) for c in classes if g.identity not in c]
    closures = []
    seen_cl = set()
    for r in reps:
        m = g.normal_closure_mask([r], perms)
        k = _mask_key(m)
        if k not in seen_cl:
            seen_cl.add(k)
            closures.append((m, r))
    start = g.subgroup_mask([])
    found = {_mask_key(start): (start, [])}
    queue = deque([_mask_key(start)])
    while queue:
        key = queue.popleft()
        mask, gens = found[key]
        for cm, r in closures:
            if (cm & ~mask).any():
                new_gens = gens + [r]
                nm = g.normal_closure_mask(new_gens, perms)
                nk = _mask_key(nm)
                if nk not in found:
                    found[nk] = (nm, new_gens)
                    queue.append(nk)
                    if len(found) > limit:
                        raise CapacityError(f"more than {limit} normal subgroups")
    out = [frozenset(np.flatnonzero(m).tolist()) for m, _ in found.values()]
    out.sort(key=lambda s: (len(s), sorted(s)))
    return out


def _perms_of(under_gamma: GammaGroup | None) -> list[np.ndarray]:
    return under_gamma.generator_perms if under_gamma is not None else []


def minimal_normal_subgroups(g: FiniteGroup, under_gamma: GammaGroup | None = None,
                             cap: int = GROUP_ORDER_CAP) -> list[Subgroup]:
    if g.order > cap:
        raise CapacityError(f"group order {g.order} exceeds cap {cap}")
    perms = _perms_of(under_gamma)
    cands = {}
    for c in _gamma_classes(g, perms):
        if g.identity in c:
            continue
        m = g.normal_closure_mask([min(c)], perms)
        cands[_mask_key(m)] = frozenset(np.flatnonzero(m).tolist())
    subs = sorted(cands.values(), key=lambda s: (len(s), sorted(s)))
    return [s for s in subs if not any(t < s for t in subs)]


def maximal_proper_gnormal_subgroups_of(amb: GammaGroup, n: Iterable[int],
                                        cap: int = GROUP_ORDER_CAP) -> list[Subgroup]:
    """Subgroups of n maximal among proper ones normal in amb and Γ-stable."""
    n = frozenset(n)
    if amb.g.order > cap:
        raise CapacityError(f"group order {amb.g.order} exceeds cap {cap}")
    if not (amb.g.is_normal(n) and amb.is_gamma_stable(n)):
        raise NotNormal("n must be normal and Γ-stable")
    if len(n) == 1:
        return []
    subs = [s for s in normal_subgroups(amb.g, amb.generator_perms, within=n) if s != n]
    return [s for s in subs if not any(s < t for t in subs)]


# isomorphism testing

def _backtrack_isos(
    g: FiniteGroup,
    h: FiniteGroup,
    g_action: np.ndarray | None,
    h_action: np.ndarray | None,
    injective: bool = True,
) -> Iterator[np.ndarray]:
    gens = g.generating_set(range(g.order)) if g.order > 1 else []
    if injective:
        g_cls = {x: len(c) for c in g.conjugacy_classes for x in c}
        h_cls = {x: len(c) for c in h.conjugacy_classes for x in c}
        cands = [
            [y for y in range(h.order)
             if h.element_orders[y] == g.element_orders[s] and h_cls[y] == g_cls[s]]
            for s in gens
        ]
    else:
        cands = [[y for y in range(h.order) if g.element_orders[s] % h.element_orders[y] == 0] for s in gens]

    def rec(i, imgs):
        if i > 0:
            fm = _extend_map(g, h, gens[:i], imgs)
            if fm is None:
                return
            if injective:
                dom = fm >= 0
                if len(np.unique(fm[dom])) != dom.sum():
                    return
        if i == len(gens):
            fm = _extend_map(g, h, gens, imgs)
            if injective and len(np.unique(fm)) != h.order:
                return
            if g_action is not None and not np.array_equal(fm[g_action], h_action[:, fm]):
                return
            yield fm
            return
        for y in cands[i]:
            yield from rec(i + 1, imgs + [y])

    yield from rec(0, [])


def is_isomorphic(g, h, g_action: np.ndarray | None = None, h_action: np.ndarray | None = None) -> GroupHom | None:
    """An isomorphism g -> h (Γ-equivariant when actions are given), else None.

    GammaGroup arguments are accepted and compared as Γ-groups.
    """
    if isinstance(g, GammaGroup) and isinstance(h, GammaGroup):
        if g.gamma.order != h.gamma.order:
            return None
        if g.fingerprint() != h.fingerprint():
            return None
        return is_isomorphic(g.g, h.g, g.action, h.action)
    if g.fingerprint() != h.fingerprint():
        return None
    if g_action is not None and h_action is not None:
        ga, ha = np.asarray(g_action), np.asarray(h_action)
        if sorted((ga == np.arange(g.order)).sum(axis=1)) != sorted((ha == np.arange(h.order)).sum(axis=1)):
            return None
    else:
        ga = ha = None
    for fm in _backtrack_isos(g, h, ga, ha):
        return GroupHom(g, h, fm, check=False)
    return None


def homomorphisms(g: FiniteGroup, h: FiniteGroup) -> Iterator[GroupHom]:
    """Every homomorphism g -> h, by exhaustive search over generator images."""
    gens = list(g.generators)
    for imgs in iproduct(*[
        [y for y in range(h.order) if g.element_orders[s] % h.element_orders[y] == 0] for s in gens
    ]):
        fm = _extend_map(g, h, gens, imgs)
        if fm is not None:
            yield GroupHom(g, h, fm, check=False)


# subgroups

def all_subgroups(g: FiniteGroup, limit: int = 20000, perms: Sequence[np.ndarray] = ()) -> list[Subgroup]:
    """Every subgroup (stable under perms), as joins of cyclic ones."""
    def close(gens):
        if not perms:
            return g.subgroup_mask(gens)
        mask = g.subgroup_mask(gens)
        while True:
            elems = np.flatnonzero(mask)
            img = np.unique(np.concatenate([p[elems] for p in perms]))
            fresh = img[~mask[img]]
            if fresh.size == 0:
                return mask
            gens = list(gens) + [int(fresh[0])]
            mask = g.subgroup_mask(gens)

    cyc = {}
    for x in range(g.order):
        m = close([x])
        cyc.setdefault(_mask_key(m), (m, [x]))
    found = dict(cyc)
    queue = deque(found)
    while queue:
        key = queue.popleft()
        mask, gens = found[key]
        for cm, cg in cyc.values():
            if (cm & ~mask).any():
                ng = gens + cg
                nm = close(ng)
                nk = _mask_key(nm)
                if nk not in found:
                    found[nk] = (nm, ng)
                    queue.append(nk)
                    if len(found) > limit:
                        raise CapacityError(f"more than {limit} subgroups")
    out = [frozenset(np.flatnonzero(m).tolist()) for m, _ in found.values()]
    out.sort(key=lambda s: (len(s), sorted(s)))
    return out


def subgroup_group(g: FiniteGroup, s: Iterable[int]) -> tuple[FiniteGroup, np.ndarray]:
    """The subgroup as a group on 0..|s|-1, plus the inclusion map."""
    elems = np.array(sorted(s), dtype=np.int64)
    pos = np.full(g.order, -1, dtype=np.int64)
    pos[elems] = np.arange(len(elems))
    table = pos[g.table[np.ix_(elems, elems)]]
    if (table < 0).any():
        raise PreconditionError("subset is not closed under multiplication")
    gens = [int(pos[x]) for x in g.generating_set(elems.tolist())]
    sub = FiniteGroup(table, generators=gens, identity=int(pos[g.identity]), check=False)
    return sub, elems


def sub_gamma(h: GammaGroup, s: Iterable[int]) -> tuple[GammaGroup, np.ndarray]:
    s = frozenset(s)
    if not h.is_gamma_stable(s):
        raise PreconditionError("subgroup is not Γ-stable")
    sub, incl = subgroup_group(h.g, s)
    pos = np.full(h.g.order, -1, dtype=np.int64)
    pos[incl] = np.arange(len(incl))
    act = pos[h.action[:, incl]]
    return GammaGroup(sub, h.gamma, act, check=False), incl


# constructions

def from_elements(gens: Sequence[Hashable], mul: Callable, identity: Hashable,
                  cap: int = GROUP_ORDER_CAP, name: str | None = None) -> tuple[FiniteGroup, list]:
    """Enumerate the group generated by gens under mul; returns the group and element list."""
    elems = [identity]
    index = {identity: 0}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = mul(x, s)
            if y not in index:
                index[y] = len(elems)
                elems.append(y)
                queue.append(y)
                if len(elems) > cap:
                    raise CapacityError(f"group order exceeds cap {cap}")
    n = len(elems)
    table = np.empty((n, n), dtype=np.int32)
    for i, a in enumerate(elems):
        table[i] = [index[mul(a, b)] for b in elems]
    g = FiniteGroup(table, generators=[index[s] for s in gens if index[s] != 0] or None,
                    identity=0, name=name, check=False, cap=cap)
    return g, elems


def from_permutations(perms: Sequence[Sequence[int]], degree: int | None = None,
                      cap: int = GROUP_ORDER_CAP, name: str | None = None) -> FiniteGroup:
    """Permutation group; the product ab applies a first, then b."""
    perms = [tuple(int(x) for x in p) for p in perms]
    if degree is None:
        degree = len(perms[0]) if perms else 1
    for p in perms:
        if len(p) != degree or sorted(p) != list(range(degree)):
            raise PreconditionError("perm_generators must be permutations of 0..degree-1")
    ident = tuple(range(degree))
    elems = [ident]
    index = {ident: 0}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for s in perms:
            y = tuple(s[i] for i in x)
            if y not in index:
                index[y] = len(elems)
                elems.append(y)
                queue.append(y)
                if len(elems) > cap:
                    raise CapacityError(f"group order exceeds cap {cap}")
    arr = np.array(elems, dtype=np.int64)
    n = len(elems)
    keys = np.ascontiguousarray(arr).view(np.dtype((np.void, arr.dtype.itemsize * degree))).ravel()
    order = np.argsort(keys)
    sorted_keys = keys[order]
    table = np.empty((n, n), dtype=np.int32)
    for i in range(n):
        prod = arr[:, arr[i]]  # row j: apply elems[i] then elems[j]
        pk = np.ascontiguousarray(prod).view(keys.dtype).ravel()
        table[i] = order[np.searchsorted(sorted_keys, pk)]
    gens = [index[p] for p in perms if index[p] != 0]
    return FiniteGroup(table, generators=gens, identity=0, name=name, check=False, cap=cap)


def trivial_group() -> FiniteGroup:
    return FiniteGroup([[0]], generators=[], identity=0, name="1", check=False)


def cyclic(n: int) -> FiniteGroup:
    a = np.arange(n)
    return FiniteGroup((a[:, None] + a[None, :]) % n, generators=[1] if n > 1 else [], identity=0,
                       name=f"Z/{n}", check=False)


def elementary_abelian(p: int, d: int) -> FiniteGroup:
    """(Z/p)^d with element index sum v_i p^i."""
    n = p**d
    idx = np.arange(n)
    digits = (idx[:, None] // p ** np.arange(d)) % p
    weights = p ** np.arange(d)
    table = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
    return FiniteGroup(table, generators=[p**i for i in range(d)], identity=0,
                       name=f"({p})^{d}" if d != 1 else f"Z/{p}", check=False)


def direct_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    """Element (x, y) at index x·|b| + y."""
    nb = b.order
    table = a.table[:, None, :, None] * nb + b.table[None, :, None, :]
    table = table.reshape(a.order * nb, a.order * nb)
    gens = [x * nb + b.identity for x in a.generators] + [a.identity * nb + y for y in b.generators]
    return FiniteGroup(table, generators=gens, identity=a.identity * nb + b.identity,
                       name=f"{a.name}x{b.name}", check=False)


def direct_product_gamma(a: GammaGroup, b: GammaGroup) -> GammaGroup:
    if a.gamma.order != b.gamma.order:
        raise PreconditionError("factors must share Γ")
    g = direct_product(a.g, b.g)
    act = a.action[:, :, None] * b.g.order + b.action[:, None, :]
    return GammaGroup(g, a.gamma, act.reshape(a.gamma.order, -1), check=False)


def symmetric(n: int) -> FiniteGroup:
    if n <= 1:
        return trivial_group()
    gens = [tuple([1, 0] + list(range(2, n)))]
    if n > 2:
        gens.append(tuple(list(range(1, n)) + [0]))
    return from_permutations(gens, n, name=f"S{n}")


def alternating(n: int) -> FiniteGroup:
    if n <= 2:
        return trivial_group()
    gens = [tuple([(i + 1) % 3 if i < 3 else i for i in range(n)])]
    for k in range(3, n):
        p = list(range(n))
        p[0], p[1], p[k] = 1, k, 0
        gens.append(tuple(p))
    return from_permutations(gens, n, name=f"A{n}")


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n."""
    if n == 1:
        return cyclic(2)
    if n == 2:
        return elementary_abelian(2, 2)
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return from_permutations([rot, ref], n, name=f"D{2 * n}")


def quaternion() -> FiniteGroup:
    # units ±1, ±i, ±j, ±k as (sign, axis)
    mult = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 1): (-1, 0), (2, 2): (-1, 0), (3, 3): (-1, 0),
        (1, 2): (1, 3), (2, 3): (1, 1), (3, 1): (1, 2),
        (2, 1): (-1, 3), (3, 2): (-1, 1), (1, 3): (-1, 2),
        (1, 0): (1, 1), (2, 0): (1, 2), (3, 0): (1, 3),
    }

    def mul(x, y):
        s, a = mult[(x[1], y[1])]
        return (x[0] * y[0] * s, a)

    g, _ = from_elements([(1, 1), (1, 2)], mul, (1, 0), name="Q8")
    return g


class GammaHom:
    """A Γ-equivariant homomorphism between Γ-groups over the same Γ."""

    def __init__(self, source: GammaGroup, target: GammaGroup, hom: GroupHom, check: bool = True):
        if source.gamma.order != target.gamma.order:
            raise PreconditionError("source and target must share Γ")
        self.source = source
        self.target = target
        self.hom = hom
        if check and not hom.is_equivariant(source.action, target.action):
            raise PreconditionError("map is not Γ-equivariant")

    def kernel(self) -> Subgroup:
        return self.hom.kernel()

    def is_surjective(self) -> bool:
        return self.hom.is_surjective()

    def compose(self, other: "GammaHom") -> "GammaHom":
        """self after other."""
        return GammaHom(other.source, self.target, self.hom.compose(other.hom), check=False)

    def semidirect_map(self) -> GroupHom:
        """(x, γ) -> (f(x), γ) between the semidirect products."""
        ns, nt = self.source.g.order, self.target.g.order
        idx = np.arange(ns * self.source.gamma.order)
        fm = (idx // ns) * nt + self.hom.full_map[idx % ns]
        return GroupHom(self.source.semidirect.group, self.target.semidirect.group, fm, check=False)

    @classmethod
    def identity(cls, h: GammaGroup) -> "GammaHom":
        return cls(h, h, GroupHom(h.g, h.g, np.arange(h.g.order), check=False), check=False)
