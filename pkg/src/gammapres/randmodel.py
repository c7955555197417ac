"""The random Γ-group model: Y-map, generation probability, sampling.

Relations r are drawn uniformly and the quotient is taken by the normal
Γ-subgroup generated by Y(r) = (r⁻¹γ(r))_{γ∈Γ}.  Inside a finite F the process is
a Markov chain on normal Γ-subgroups: adding r moves the state S to the normal
Γ-closure of S ∪ Y(r).  The exhaustive oracles run this chain exactly with
Fractions; the sampler runs it on seeded random draws.
"""

from __future__ import annotations

import itertools
import math
import warnings
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .config import ENUMERATION_BUDGET, GROUP_ORDER_CAP
from .errors import BudgetExceeded, CapacityError, PreconditionError
from .groups import (FiniteGroup, GammaGroup, is_admissible, is_isomorphic, minimal_normal_subgroups,
                     quotient_gamma)
from .modules import FpModule, composition_factors, hom_dim, invariant_subspace

__all__ = [
    "y_map",
    "Factor",
    "RelationModuleDecomposition",
    "decompose",
    "generation_probability",
    "positivity_threshold",
    "exhaustive_generation_probability",
    "brute_force_generation_probability",
    "exhaustive_quotient_distribution",
    "SampleHistogram",
    "sample_quotients",
    "BLOCK_SIZE",
]

BLOCK_SIZE = 1024


def y_map(h: GammaGroup, gamma_generators: Sequence[int], g: int) -> tuple[int, ...]:
    """(g⁻¹γ_1(g), ..., g⁻¹γ_d(g))."""
    gam = h.gamma
    if not gam.subgroup_mask(gamma_generators).all():
        raise PreconditionError("the listed elements do not generate Γ")
    gi = h.g.inv(g)
    return tuple(int(h.g.table[gi, h.action[s, g]]) for s in gamma_generators)


def _y_all(h: GammaGroup) -> np.ndarray:
    """Row x holds x⁻¹γ(x) for every γ ∈ Γ."""
    g = h.g
    inv = g.inverse
    return g.table[inv[:, None], h.action.T]


@dataclass(frozen=True)
class Factor:
    """An irreducible F⋊Γ-group A_i appearing m_i times in R."""

    multiplicity: int
    abelian: bool
    y_size: int
    prime: int | None = None
    h: int | None = None
    dim: int | None = None

    def to_dict(self) -> dict:
        return {"multiplicity": self.multiplicity, "abelian": self.abelian, "y_size": self.y_size,
                "prime": self.prime, "h": self.h, "dim": self.dim}


@dataclass(frozen=True)
class RelationModuleDecomposition:
    factors: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        for f in self.factors:
            if f.multiplicity <= 0:
                raise PreconditionError("multiplicities must be positive")
            if f.abelian and (f.prime is None or f.h is None):
                raise PreconditionError("abelian factors need ℓ and h")
            if f.abelian and not _is_power(f.y_size, f.prime ** f.h):
                # Y(A) = A/A^Γ is a vector space over the endomorphism field F_{ℓ^h}
                raise PreconditionError("|Y(A)| must be a power of ℓ^h")
            if f.y_size < 1:
                raise PreconditionError("|Y(A)| must be positive")

    @classmethod
    def from_dict(cls, d: dict) -> "RelationModuleDecomposition":
        return cls(tuple(Factor(**f) for f in d["factors"]))

    def to_dict(self) -> dict:
        return {"factors": [f.to_dict() for f in self.factors]}


def _is_power(x: int, q: int) -> bool:
    while x > 1 and x % q == 0:
        x //= q
    return x == 1


def _normal_closure(h: GammaGroup, seeds) -> np.ndarray:
    return h.g.normal_closure_mask(seeds, h.generator_perms)


def _conj_module(f: GammaGroup, elems: list[int], p: int) -> FpModule:
    """An elementary abelian normal Γ-subgroup as an F_p[F⋊Γ]-module."""
    g = f.g
    basis = g.generating_set(elems)
    d = len(basis)
    coords = {g.identity: np.zeros(d, dtype=np.int64)}
    frontier = [g.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for i, b in enumerate(basis):
                y = int(g.table[x, b])
                if y not in coords:
                    v = coords[x].copy()
                    v[i] = (v[i] + 1) % p
                    coords[y] = v
                    nxt.append(y)
        frontier = nxt
    sd = f.semidirect
    n = g.order
    mats = {}
    for s in sd.group.generators:
        x, gm = s % n, s // n
        xi = g.inv(x)
        cols = [coords[int(g.table[g.table[x, f.action[gm, b]], xi])] for b in basis]
        mats[s] = np.array(cols, dtype=np.int64).T.reshape(d, d)
    return FpModule(p, sd.group, mats, check=True, dim=d)


def decompose(f: GammaGroup, r) -> RelationModuleDecomposition:
    """Split a semisimple normal Γ-subgroup r of F into irreducible F⋊Γ-factors.

    Abelian minimal normal Γ-subgroups inside r are grouped into isotypic
    components via module decomposition.  Nonabelian ones are listed one by
    one; grouping them would not change the probability product.
    """
    r = frozenset(r)
    g = f.g
    if not (g.is_normal(r) and f.is_gamma_stable(r)):
        raise PreconditionError("r must be a normal Γ-subgroup")
    if len(r) == 1:
        return RelationModuleDecomposition(())
    mins = [m for m in minimal_normal_subgroups(g, under_gamma=f) if m <= r]
    if not mins or int(g.subgroup_mask(set().union(*mins)).sum()) != len(r):
        raise PreconditionError("r is not a product of minimal normal Γ-subgroups")
    ab = [m for m in mins if _is_abelian_subset(g, m)]
    nonab = [m for m in mins if not _is_abelian_subset(g, m)]
    factors = []
    yrows = _y_all(f)
    if ab:
        primes = sorted({_prime_of(len(m)) for m in ab})
        for p in primes:
            part = [m for m in ab if _prime_of(len(m)) == p]
            elems = sorted(np.flatnonzero(g.subgroup_mask(set().union(*part))).tolist())
            mod = _conj_module(f, elems, p)
            gamma_part = f.semidirect.gamma_part
            for a, mult in composition_factors(mod):
                hv = hom_dim(a, a)
                if hom_dim(mod, a) != mult * hv:
                    raise PreconditionError("r is not semisimple as an F⋊Γ-module")
                fixed = len(invariant_subspace(a, gamma_part))
                factors.append(Factor(mult, True, p ** (a.dim - fixed), p, hv, a.dim))
    for m in nonab:
        ys = {tuple(yrows[x]) for x in m}
        factors.append(Factor(1, False, len(ys)))
    return RelationModuleDecomposition(tuple(factors))


def _is_abelian_subset(g: FiniteGroup, s) -> bool:
    idx = np.fromiter(s, dtype=np.int64)
    sub = g.table[np.ix_(idx, idx)]
    return bool((sub == sub.T).all())


def _prime_of(n: int) -> int:
    p = 2
    while n % p:
        p += 1
    return p


def generation_probability(decomp: RelationModuleDecomposition, n_plus_u: int) -> Fraction:
    """Chance that Y-values of n+u uniform elements of R normally generate R.

    Abelian factor with End-field F_q, q = ℓ^h: Π_{j<m} (1 − q^j·|Y(A)|^{−(n+u)}).
    Nonabelian factor: (1 − |Y(A)|^{−(n+u)})^m.
    """
    if n_plus_u < 0:
        raise PreconditionError("n+u must be nonnegative")
    out = Fraction(1)
    for f in decomp.factors:
        base = Fraction(1, f.y_size ** n_plus_u)
        if f.abelian:
            q = f.prime ** f.h
            for j in range(f.multiplicity):
                out *= 1 - q ** j * base
        else:
            out *= (1 - base) ** f.multiplicity
    return out


def positivity_threshold(n_plus_u: int, factor: Factor) -> Fraction:
    """Largest multiplicity with a positive abelian term: (n+u)·log_ℓ|Y(A)|/h."""
    if not factor.abelian:
        raise PreconditionError("threshold applies to abelian factors")
    logy = round(math.log(factor.y_size, factor.prime)) if factor.y_size > 1 else 0
    return Fraction(n_plus_u * logy, factor.h)


class _Chain:
    """Transitions between normal Γ-subgroups under adding one relation."""

    def __init__(self, f: GammaGroup, pool: Sequence[int]):
        self.f = f
        self.pool = list(pool)
        self.yrows = _y_all(f)
        start = np.zeros(f.g.order, dtype=bool)
        start[f.g.identity] = True
        self.states = [start]
        self.index = {start.tobytes(): 0}
        rows = []
        i = 0
        while i < len(self.states):
            s = self.states[i]
            row = np.empty(len(self.pool), dtype=np.int64)
            cache = {}
            for k, x in enumerate(self.pool):
                ys = self.yrows[x]
                if s[ys].all():
                    row[k] = i
                    continue
                key = ys.tobytes()
                if key not in cache:
                    m = _normal_closure(f, np.concatenate([np.flatnonzero(s), ys]))
                    mk = m.tobytes()
                    if mk not in self.index:
                        self.index[mk] = len(self.states)
                        self.states.append(m)
                    cache[key] = self.index[mk]
                row[k] = cache[key]
            rows.append(row)
            i += 1
        self.table = np.array(rows)

    def distribution(self, steps: int) -> list[Fraction]:
        n = len(self.pool)
        counts = [0] * len(self.states)
        counts[0] = 1
        for _ in range(steps):
            new = [0] * len(self.states)
            for s, c in enumerate(counts):
                if c:
                    for t, k in zip(*np.unique(self.table[s], return_counts=True)):
                        new[int(t)] += c * int(k)
            counts = new
        total = n ** steps
        return [Fraction(c, total) for c in counts]


def _pool(f: GammaGroup, r, draw_from: str) -> list[int]:
    if draw_from == "relations":
        return sorted(r)
    if draw_from == "group":
        return list(range(f.g.order))
    raise PreconditionError("draw_from must be 'relations' or 'group'")


def exhaustive_generation_probability(f: GammaGroup, r, n_plus_u: int, draw_from: str = "relations",
                                      budget: int = ENUMERATION_BUDGET) -> Fraction:
    """Exact probability that the normal Γ-closure of the Y-values equals r."""
    r = frozenset(r)
    pool = _pool(f, r, draw_from)
    if len(pool) ** n_plus_u > budget:
        raise BudgetExceeded(f"{len(pool)}^{n_plus_u} tuples exceed budget {budget}")
    chain = _Chain(f, pool)
    dist = chain.distribution(n_plus_u)
    target = np.zeros(f.g.order, dtype=bool)
    target[list(r)] = True
    return sum((p for s, p in zip(chain.states, dist) if np.array_equal(s, target)), Fraction(0))


def brute_force_generation_probability(f: GammaGroup, r, n_plus_u: int,
                                       draw_from: str = "relations", budget: int = 200_000) -> Fraction:
    """Same quantity by enumerating every tuple; for cross-checking the chain."""
    r = frozenset(r)
    pool = _pool(f, r, draw_from)
    if len(pool) ** n_plus_u > budget:
        raise BudgetExceeded("tuple count exceeds budget")
    yrows = _y_all(f)
    hits = 0
    for tup in itertools.product(pool, repeat=n_plus_u):
        seeds = np.concatenate([yrows[x] for x in tup]) if tup else np.array([f.g.identity])
        m = _normal_closure(f, seeds)
        if int(m.sum()) == len(r) and all(m[x] for x in r):
            hits += 1
    return Fraction(hits, len(pool) ** n_plus_u)


def _classify(f: GammaGroup, states: list[np.ndarray]) -> tuple[list[int], list[GammaGroup]]:
    """Γ-isomorphism class label of F/S for each state, plus representatives."""
    reps: list[GammaGroup] = []
    labels = []
    for s in states:
        q, _ = quotient_gamma(f, np.flatnonzero(s).tolist())
        for i, rep in enumerate(reps):
            if rep.g.order == q.g.order and rep.fingerprint() == q.fingerprint() \
                    and is_isomorphic(rep, q) is not None:
                labels.append(i)
                break
        else:
            labels.append(len(reps))
            reps.append(q)
    return labels, reps


def _fingerprint_text(q: GammaGroup) -> str:
    return repr(q.fingerprint())


def exhaustive_quotient_distribution(f: GammaGroup, n_plus_u: int,
                                     budget: int = ENUMERATION_BUDGET) -> list[dict]:
    """Exact law of F/[Y(r_1..r_{n+u})] for uniform r_i ∈ F, by Γ-isomorphism class."""
    if f.g.order ** n_plus_u > budget:
        raise BudgetExceeded("tuple count exceeds budget")
    chain = _Chain(f, range(f.g.order))
    dist = chain.distribution(n_plus_u)
    labels, reps = _classify(f, chain.states)
    probs = [Fraction(0)] * len(reps)
    for lab, p in zip(labels, dist):
        probs[lab] += p
    return [{"order": rep.g.order, "fingerprint": _fingerprint_text(rep), "probability": p,
             "representative": rep}
            for rep, p in zip(reps, probs)]


@dataclass
class SampleHistogram:
    seed: int
    draws: int
    n_plus_u: int
    buckets: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "draws": self.draws,
            "n_plus_u": self.n_plus_u,
            "buckets": [{"order": b["order"], "fingerprint": b["fingerprint"], "count": b["count"],
                         "frequency": b["count"] / self.draws if self.draws else 0.0,
                         "representative": b["representative"].to_dict()} for b in self.buckets],
        }


def _block_draws(seed: int, block: int, size: int, k: int, n: int) -> np.ndarray:
    bitgen = np.random.Philox(key=seed, counter=[0, 0, block, 0])
    return np.random.Generator(bitgen).integers(0, n, size=(size, k))


def sample_quotients(f: GammaGroup, n_plus_u: int, draws: int, seed: int,
                     cap: int = GROUP_ORDER_CAP) -> SampleHistogram:
    """Monte-Carlo histogram of Γ-isomorphism classes of F/[Y(r_1..r_{n+u})].

    Draw i uses block i // BLOCK_SIZE of a Philox stream keyed by the seed, so the
    i-th draw depends only on (seed, i).
    """
    if f.g.order > cap:
        raise CapacityError(f"|F| = {f.g.order} exceeds cap {cap}")
    if draws < 0 or n_plus_u < 0:
        raise PreconditionError("draws and n+u must be nonnegative")
    if not is_admissible(f):
        warnings.warn("F is not an admissible Γ-group", stacklevel=2)
    hist = SampleHistogram(seed=seed, draws=draws, n_plus_u=n_plus_u)
    if draws == 0:
        return hist
    chain = _Chain(f, range(f.g.order))
    counts = Counter()
    for block in range((draws + BLOCK_SIZE - 1) // BLOCK_SIZE):
        size = min(BLOCK_SIZE, draws - block * BLOCK_SIZE)
        xs = _block_draws(seed, block, size, n_plus_u, f.g.order)
        state = np.zeros(size, dtype=np.int64)
        for j in range(n_plus_u):
            state = chain.table[state, xs[:, j]]
        for st, c in enumerate(np.bincount(state, minlength=len(chain.states)).tolist()):
            counts[st] += c
    labels, reps = _classify(f, chain.states)
    agg = Counter()
    for s, c in counts.items():
        agg[labels[s]] += c
    order = sorted(agg, key=lambda i: (reps[i].g.order, _fingerprint_text(reps[i])))
    hist.buckets = [{"order": reps[i].g.order, "fingerprint": _fingerprint_text(reps[i]),
                     "count": agg[i], "representative": reps[i]} for i in order if agg[i]]
    return hist
