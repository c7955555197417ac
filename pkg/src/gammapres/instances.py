"""Small worked instances shared by the acceptance suite, tests and demos."""

from __future__ import annotations

import numpy as np

from . import groups as G
from .cohomology import vector_gamma_group
from .linalg import nullspace
from .modules import FpModule, hom_space, simple_modules

__all__ = [
    "inversion_gamma_group",
    "regular_module",
    "augmentation_module",
    "power",
    "gamma_by_name",
    "pulled_back",
    "abelian_truncation",
    "sign_module",
    "z3_on_klein",
    "frobenius_21",
]


def gamma_by_name(name: str) -> G.FiniteGroup:
    return {
        "1": G.trivial_group,
        "Z2": lambda: G.cyclic(2),
        "Z3": lambda: G.cyclic(3),
        "Z4": lambda: G.cyclic(4),
        "S3": lambda: G.symmetric(3),
    }[name]()


def inversion_gamma_group(g: G.FiniteGroup) -> G.GammaGroup:
    """Z/2 acting on an abelian group by inversion."""
    return G.GammaGroup.from_generator_action(g, G.cyclic(2), [[g.inv(x) for x in range(g.order)]])


def z3_on_klein() -> G.GammaGroup:
    """Z/3 permuting the three involutions of the Klein four-group."""
    return G.GammaGroup.from_generator_action(G.elementary_abelian(2, 2), G.cyclic(3), [[0, 2, 3, 1]])


def regular_module(gamma: G.FiniteGroup, p: int) -> FpModule:
    return FpModule.regular(gamma, p)


def augmentation_module(gamma: G.FiniteGroup, p: int) -> FpModule:
    """The augmentation ideal of F_p[Γ]: coefficient sum zero."""
    r = FpModule.regular(gamma, p)
    return r.split(nullspace(np.ones((1, gamma.order), dtype=np.int64), p, gamma.order))[0]


def power(m: FpModule, n: int) -> FpModule:
    out = m
    for _ in range(n - 1):
        out = out.direct_sum(m)
    return out


def pulled_back(h: G.GammaGroup, a: FpModule) -> FpModule:
    """A Γ-module viewed as a G⋊Γ-module with G acting trivially."""
    return a.inflate(h.semidirect.projection)


def sign_module(group: G.FiniteGroup, p: int, odd) -> FpModule:
    """One-dimensional module where the listed generators act by −1."""
    odd = set(odd)
    return FpModule(p, group, [[[p - 1 if s in odd else 1]] for s in group.generators], dim=1)


def abelian_truncation(gamma: G.FiniteGroup, p: int, n: int, targets):
    """J^n with an equivariant surjection onto the direct sum of ``targets``.

    Copy i of J maps onto targets[i] by a nonzero (hence surjective) Γ-map;
    remaining copies map to zero.  Returns (J^n, map matrix, target module).
    """
    j = augmentation_module(gamma, p)
    f = power(j, n)
    if len(targets) > n:
        raise ValueError("more targets than copies of J")
    if not targets:
        return f, np.zeros((0, f.dim), dtype=np.int64), None
    rows = []
    for i, s in enumerate(targets):
        hs = hom_space(j, s)
        if not hs:
            raise ValueError("target is not a quotient of J")
        block = np.zeros((s.dim, f.dim), dtype=np.int64)
        block[:, i * j.dim:(i + 1) * j.dim] = hs[0]
        rows.append(block)
    tgt = targets[0]
    for s in targets[1:]:
        tgt = tgt.direct_sum(s)
    return f, np.vstack(rows) % p, tgt


def nontrivial_simples(gamma: G.FiniteGroup, p: int) -> list[FpModule]:
    out = []
    for s in simple_modules(gamma, p):
        if not (s.dim == 1 and all((m == 1).all() for m in s.gen_matrices)):
            out.append(s)
    return out


def frobenius_21() -> G.FiniteGroup:
    """Z/7 ⋊ Z/3 as permutations of seven points."""
    return G.from_permutations([[1, 2, 3, 4, 5, 6, 0], [0, 2, 4, 6, 1, 3, 5]], name="F21")


def vector_group(m: FpModule) -> G.GammaGroup:
    return vector_gamma_group(m)
