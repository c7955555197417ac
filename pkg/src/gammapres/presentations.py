"""Multiplicities of simple modules in kernels of Γ-presentations.

For a Γ-surjection ω: F -> G with kernel N, the multiplicity of a simple
F_ℓ[G⋊Γ]-module A is the number of copies of A in N/M, where M is the
intersection of the maximal proper F⋊Γ-normal subgroups U of N with N/U ≅ A.

Three routes are provided:

* ``multiplicity_formula``: closed form in dim H¹, dim H² of G⋊Γ.
* ``multiplicity_oracle``: the definition, evaluated on a finite cover.
* ``abelian_multiplicity_oracle``: Hom-dimension count when everything is a
  Γ-module (the elementary-abelian truncation).

``relation_cover`` builds the finite cover F_A = F_n(Γ)/M_A explicitly, as the
subgroup of (P/W)⋊G generated by the images of the free Γ-generators, where P is
a free F_ℓ[G]-module on the symbols x_{i,γ} and W cuts the relation module
down to its A-isotypic head.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .cohomology import h1_dim, h2_dim
from .config import DEFAULT_PRIMES, GROUP_ORDER_CAP
from .errors import (CapacityError, NegativeMultiplicity, NonIntegralMultiplicity,
                     PreconditionError)
from .groups import (FiniteGroup, GammaGroup, GammaHom, GroupHom, from_elements, is_admissible,
                     maximal_proper_gnormal_subgroups_of, quotient, subgroup_group)
from .linalg import nullspace, row_basis, rref
from .modules import (FpModule, hom_dim, hom_space, invariant_subspace, is_isomorphic_module,
                      simple_modules, xi)

__all__ = [
    "MultiplicityTerms",
    "PresentationReport",
    "multiplicity_terms",
    "multiplicity_formula",
    "admissible_multiplicity",
    "multiplicity_oracle",
    "abelian_multiplicity_oracle",
    "relation_cover",
    "generating_tuple",
    "relator_rank",
    "msum_decompose",
    "presentation_report",
]


@dataclass(frozen=True)
class MultiplicityTerms:
    """The ingredients of the closed-form multiplicity."""

    n: int
    prime: int
    dim_a: int
    xi: int
    h1: int
    h2: int
    h: int
    dim_a_gamma: int

    @property
    def numerator(self) -> int:
        return self.n * self.dim_a - self.xi + self.h2 - self.h1

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in
                ("n", "prime", "dim_a", "xi", "h1", "h2", "h", "dim_a_gamma")}


def _check_module(h_gamma: GammaGroup, a: FpModule):
    sd = h_gamma.semidirect
    if a.group is not sd.group:
        if a.group.order != sd.group.order or not np.array_equal(a.group.table, sd.group.table):
            raise PreconditionError("module must live on the semidirect product G⋊Γ")
    return sd


def multiplicity_terms(n: int, h_gamma: GammaGroup, a: FpModule) -> MultiplicityTerms:
    sd = _check_module(h_gamma, a)
    g = sd.group
    gamma_part = sd.gamma_part
    return MultiplicityTerms(
        n=n,
        prime=a.prime,
        dim_a=a.dim,
        xi=xi(a, gamma_part),
        h1=h1_dim(g, a),
        h2=h2_dim(g, a),
        h=hom_dim(a, a),
        dim_a_gamma=len(invariant_subspace(a, gamma_part)),
    )


def multiplicity_formula(n: int, h_gamma: GammaGroup, a: FpModule) -> int:
    """(n·dim A − ξ(A) + dim H² − dim H¹)/h over G⋊Γ; zero when ℓ divides |Γ|."""
    if n < 0:
        raise PreconditionError("n must be nonnegative")
    _check_module(h_gamma, a)
    if h_gamma.gamma.order % a.prime == 0:
        return 0
    t = multiplicity_terms(n, h_gamma, a)
    q, r = divmod(t.numerator, t.h)
    if r or q < 0:
        generating_tuple(h_gamma, n)  # raises if n elements cannot Γ-generate G
        raise NonIntegralMultiplicity(
            f"numerator {t.numerator} over h = {t.h} is not a nonnegative integer; "
            "is the module simple over G⋊Γ?")
    return q


def admissible_multiplicity(n: int, h_gamma: GammaGroup, a: FpModule) -> Fraction:
    """m(n, Γ, G, A) − n·dim A^Γ / h for admissible G."""
    if not is_admissible(h_gamma):
        raise PreconditionError("G is not an admissible Γ-group")
    m = multiplicity_formula(n, h_gamma, a)
    t = multiplicity_terms(n, h_gamma, a)
    out = Fraction(m) - Fraction(n * t.dim_a_gamma, t.h)
    if out < 0:
        warnings.warn(f"admissible multiplicity {out} is negative; A cannot occur in the kernel",
                      NegativeMultiplicity, stacklevel=2)
    return out


# definition-level oracle

def _elementary_quotient_module(omega: GammaHom, n_elems: Sequence[int], u: frozenset,
                                p: int) -> FpModule | None:
    """N/U as an F_p[G⋊Γ]-module, or None if N/U is not elementary abelian of exponent p."""
    f = omega.source.g
    nsub, incl = subgroup_group(f, n_elems)
    pos = {int(x): i for i, x in enumerate(incl)}
    q, proj = quotient(nsub, [pos[x] for x in u])
    if not q.is_abelian or (q.order > 1 and q.exponent != p):
        return None
    d = round(math.log(q.order, p))
    basis = q.generating_set(range(q.order)) if q.order > 1 else []
    if len(basis) != d:
        return None
    coords = {}
    for c in itertools.product(range(p), repeat=d):
        x = q.identity
        for b, k in zip(basis, c):
            x = q.table[x, q.power(b, k)]
        coords[int(x)] = np.array(c, dtype=np.int64)
    lift = [int(incl[np.flatnonzero(proj.full_map == b)[0]]) for b in basis]

    def matrix_of(fn) -> np.ndarray:
        cols = [coords[int(proj.full_map[pos[fn(y)]])] for y in lift]
        return np.array(cols, dtype=np.int64).T.reshape(d, d)

    tgt = omega.target
    sd = tgt.semidirect
    ng = tgt.g.order
    preimage = {}
    for x in range(f.order):
        preimage.setdefault(int(omega.hom.full_map[x]), x)
    mats = {}
    for s in sd.group.generators:
        gpart, gm = s % ng, s // ng
        x = preimage[gpart]
        xi_ = f.inv(x)
        act = omega.source.action[gm]
        # (x, γ) sends y to x·γ(y)·x⁻¹
        mats[s] = matrix_of(lambda y, x=x, xi_=xi_, act=act: int(f.table[f.table[x, act[y]], xi_]))
    return FpModule(p, sd.group, mats, check=True, dim=d)


def multiplicity_oracle(omega: GammaHom, a: FpModule, cap: int = GROUP_ORDER_CAP) -> int:
    """Copies of A in N/M for N = ker ω, M the intersection of the A-type maximal U."""
    if not omega.is_surjective():
        raise PreconditionError("ω must be surjective")
    f = omega.source.g
    if f.order > cap:
        raise CapacityError(f"|F| = {f.order} exceeds cap {cap}")
    _check_module(omega.target, a)
    n = omega.kernel()
    p, d = a.prime, a.dim
    if len(n) == 1:
        return 0
    inter = set(n)
    for u in maximal_proper_gnormal_subgroups_of(omega.source, n, cap=cap):
        if len(n) != len(u) * p ** d:
            continue
        mod = _elementary_quotient_module(omega, sorted(n), u, p)
        if mod is not None and is_isomorphic_module(mod, a):
            inter &= u
    k = round(math.log(len(n) // len(inter), p)) if len(inter) < len(n) else 0
    if len(n) != len(inter) * p ** k or k % d:
        raise AssertionError("head of the kernel is not a power of A")
    return k // d


def abelian_multiplicity_oracle(f_module: FpModule, target_map: np.ndarray, a: FpModule) -> int:
    """Multiplicity of A in the head of ker(f_module -> target), all over one group.

    ``target_map`` is the matrix (target dim × source dim) of an equivariant
    surjection; the kernel is abelian, so its head is read off Hom(kernel, A).
    """
    p = f_module.prime
    t = np.asarray(target_map, dtype=np.int64) % p
    if t.ndim != 2 or t.shape[1] != f_module.dim:
        raise PreconditionError("target map has the wrong shape")
    ker = nullspace(t, p, f_module.dim)
    if len(ker) == 0:
        return 0
    sub, _ = f_module.split(ker)
    q, r = divmod(hom_dim(sub, a), hom_dim(a, a))
    if r:
        raise NonIntegralMultiplicity("Hom-dimension is not a multiple of h; is A simple?")
    return q


# explicit covers

def generating_tuple(h_gamma: GammaGroup, n: int) -> list[int]:
    """n elements whose Γ-orbits generate G (identity-padded), first in lexicographic order."""
    g = h_gamma.g
    if g.order == 1:
        return [g.identity] * n
    act = h_gamma.action
    nonid = [x for x in range(g.order) if x != g.identity]
    for k in range(1, n + 1):
        for tup in itertools.combinations(nonid, k):
            orb = {int(act[s, x]) for s in range(h_gamma.gamma.order) for x in tup}
            if g.subgroup_mask(orb).all():
                return list(tup) + [g.identity] * (n - k)
        if math.comb(len(nonid), k + 1) > 10 ** 6:
            break
    raise PreconditionError(f"G is not Γ-generated by {n} elements")


def relation_cover(h_gamma: GammaGroup, n: int, a: FpModule,
                   cap: int = GROUP_ORDER_CAP) -> GammaHom:
    """The Γ-surjection F_n(Γ)/M_A -> G, with kernel a direct power of A."""
    sd = _check_module(h_gamma, a)
    g, gam = h_gamma.g, h_gamma.gamma
    p = a.prime
    ng, nga = g.order, gam.order
    gens = generating_tuple(h_gamma, n)
    act = h_gamma.action
    dim_p = n * nga * ng

    def idx(i, gm, x):
        return (i * nga + gm) * ng + x

    # P -> F_p[G], x e_{i,γ} -> x·γ(g_i) − x
    phi = np.zeros((ng, dim_p), dtype=np.int64)
    for i in range(n):
        for gm in range(nga):
            t = int(act[gm, gens[i]])
            for x in range(ng):
                phi[g.table[x, t], idx(i, gm, x)] += 1
                phi[x, idx(i, gm, x)] -= 1
    kb, kpiv = rref(nullspace(phi % p, p, dim_p), p)
    kb = kb[: len(kpiv)]

    def perm_matrix(s: int) -> np.ndarray:
        hpart, sg = s % ng, s // ng
        m = np.zeros((dim_p, dim_p), dtype=np.int64)
        for i in range(n):
            for gm in range(nga):
                for x in range(ng):
                    y = int(g.table[hpart, act[sg, x]])
                    m[idx(i, int(gam.table[sg, gm]), y), idx(i, gm, x)] = 1
        return m

    pmats = {s: perm_matrix(s) for s in sd.group.generators}
    kmats = {s: (m @ kb.T % p)[kpiv, :] for s, m in pmats.items()}
    kmod = FpModule(p, sd.group, kmats, check=False, dim=len(kpiv))
    homs = hom_space(kmod, a)
    if homs:
        wk = nullspace(np.vstack(homs), p, kmod.dim)
    else:
        wk = np.eye(kmod.dim, dtype=np.int64)
    w = row_basis(wk @ kb % p, p) if len(wk) else np.zeros((0, dim_p), dtype=np.int64)
    wr, wpiv = rref(w, p) if len(w) else (w, [])
    wr = wr[: len(wpiv)]
    keep = [c for c in range(dim_p) if c not in set(wpiv)]
    red = np.eye(dim_p, dtype=np.int64)
    if len(wpiv):
        red = (red - wr.T @ np.eye(dim_p, dtype=np.int64)[wpiv]) % p
    proj = red[keep]
    lift = np.eye(dim_p, dtype=np.int64)[:, keep]

    def quotient_action(m):
        return proj @ m @ lift % p

    # G acts on P by left multiplication: the element (h, 1) of G⋊Γ
    gmat = [quotient_action(perm_matrix(h)) for h in range(ng)]
    sigma = [quotient_action(perm_matrix(gm * ng + g.identity)) for gm in range(nga)]
    dq = len(keep)

    def mul(u, v):
        (a1, g1), (a2, g2) = u, v
        vec = (np.frombuffer(a1, dtype=np.int64) + gmat[g1] @ np.frombuffer(a2, dtype=np.int64)) % p
        return (vec.tobytes(), int(g.table[g1, g2]))

    def unit(i, gm):
        e = np.zeros(dim_p, dtype=np.int64)
        e[idx(i, gm, g.identity)] = 1
        return ((proj @ e % p).tobytes(), int(act[gm, gens[i]]))

    free_gens = [unit(i, gm) for i in range(n) for gm in range(nga)]
    ident = (np.zeros(dq, dtype=np.int64).tobytes(), g.identity)
    fgrp, elems = from_elements(free_gens, mul, ident, cap=cap, name="cover")
    index = {e: k for k, e in enumerate(elems)}
    gperms = []
    for s in gam.generators:
        perm = [index[((sigma[s] @ np.frombuffer(u, dtype=np.int64) % p).tobytes(), int(act[s, x]))]
                for u, x in elems]
        gperms.append(perm)
    cover = GammaGroup.from_generator_action(fgrp, gam, gperms)
    hom = GroupHom(fgrp, g, np.array([x for _, x in elems]), check=False)
    return GammaHom(cover, h_gamma, hom, check=True)


# relator rank

def relator_rank(n: int, g_prime: GammaGroup, modules: Sequence[FpModule] | None = None,
                 primes: Sequence[int] = DEFAULT_PRIMES, cap: int = 64) -> dict:
    """max over simple modules of ⌈(dim H² − dim H¹ − ξ)/dim A⌉ + n.

    The supremum runs over the given primes only, so the value is a lower bound
    for the true minimal number of normal Γ-generators of the kernel.  The sup
    term is never below 0: the trivial module at any prime coprime to |G⋊Γ|
    contributes exactly 0.
    """
    sd = g_prime.semidirect
    gam_order = g_prime.gamma.order
    if modules is None:
        if sd.group.order > cap:
            raise CapacityError(f"|G⋊Γ| = {sd.group.order} exceeds module enumeration cap {cap}")
        modules = [m for p in primes if gam_order % p
                   for m in simple_modules(sd.group, p)]
    best, witness = 0, None
    for a in modules:
        if gam_order % a.prime == 0:
            continue
        t = multiplicity_terms(n, g_prime, a)
        val = -((-(t.h2 - t.h1 - t.xi)) // t.dim_a)
        if witness is None or val > best:
            best, witness = val, (a.prime, a.dim, a.key().hex()[:16])
    if best < 0 or witness is None:
        best, witness = 0, "trivial module at a prime coprime to |G⋊Γ|"
    return {
        "value": best + n,
        "attained_by": witness,
        "primes": [p for p in primes if gam_order % p],
        "lower_bound": True,
    }


# additivity along towers

def msum_decompose(alpha: GammaHom, beta: GammaHom, a: FpModule, section: GroupHom | None = None,
                   cap: int = GROUP_ORDER_CAP) -> dict:
    """Oracle multiplicities for E -α-> F -β-> G and the composite.

    A lives on G⋊Γ and is inflated to F⋊Γ for α.  Equality m_π = m_α + m_β is
    asserted when H²(F⋊Γ, A) = 0, which forces every Γ-extension of F by A to split.
    """
    if alpha.target.g is not beta.source.g:
        raise PreconditionError("α must land in the source of β")
    if section is not None:
        comp = alpha.hom.compose(section)
        if not np.array_equal(comp.full_map, np.arange(alpha.target.g.order)):
            raise PreconditionError("section is not a right inverse of α")
        if not section.is_equivariant(alpha.target.action, alpha.source.action):
            raise PreconditionError("section is not Γ-equivariant")
    pi = beta.compose(alpha)
    a_f = a.inflate(beta.semidirect_map())
    m_alpha = multiplicity_oracle(alpha, a_f, cap=cap)
    m_beta = multiplicity_oracle(beta, a, cap=cap)
    m_pi = multiplicity_oracle(pi, a, cap=cap)
    split = None
    if beta.source.gamma.order % a.prime:
        split = h2_dim(beta.source.semidirect.group, a_f) == 0
    if m_pi > m_alpha + m_beta:
        raise AssertionError("multiplicity of the composite exceeds the sum")
    if split and m_pi != m_alpha + m_beta:
        raise AssertionError("split tower with strict inequality")
    return {"m_alpha": m_alpha, "m_beta": m_beta, "m_pi": m_pi, "all_extensions_split": split}


# reports

@dataclass
class PresentationReport:
    n: int
    gamma: dict
    target: dict
    rows: list = field(default_factory=list)
    relator_rank: dict | None = None

    def to_dict(self) -> dict:
        return {"n": self.n, "gamma": self.gamma, "target": self.target,
                "rows": self.rows, "relator_rank": self.relator_rank}


def presentation_report(n: int, h_gamma: GammaGroup, modules: Sequence[FpModule],
                        oracle: GammaHom | None = None, with_relator_rank: bool = True) -> PresentationReport:
    rep = PresentationReport(n=n, gamma=h_gamma.gamma.to_dict(), target=h_gamma.g.to_dict())
    admissible = is_admissible(h_gamma)
    for a in modules:
        row = {"module": a.to_dict(),
               "m_formula": {"value": multiplicity_formula(n, h_gamma, a), "provenance": "computed"}}
        if oracle is not None:
            row["m_oracle"] = {"value": multiplicity_oracle(oracle, a), "provenance": "oracle"}
        if admissible:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", NegativeMultiplicity)
                v = admissible_multiplicity(n, h_gamma, a)
            row["m_admissible"] = {"value": f"{v.numerator}/{v.denominator}", "provenance": "computed"}
        rep.rows.append(row)
    if with_relator_rank:
        rr = relator_rank(n, h_gamma, modules=list(modules))
        rr["provenance"] = "lower-bound"
        rep.relator_rank = rr
    return rep
