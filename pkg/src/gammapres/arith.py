"""Closed-form evaluators for the arithmetic multiplicity bounds.

Every Galois-cohomological dimension is an input carried by ``LocalData``;
nothing here computes a Galois group.  All outputs are exact integers or
Fractions.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields
from fractions import Fraction

from .errors import PreconditionError
from .linalg import is_prime

__all__ = [
    "LocalData",
    "log_chi",
    "delta_ff",
    "delta_nf_bound",
    "mult_bound_from_delta",
    "mult_bound_main",
    "mult_bound_other_signatures",
    "mult_bound_roots_of_unity",
    "fin_pres_relation_bound",
    "EVALUATORS",
]

_KINDS = ("trivial", "mu", "general")


@dataclass(frozen=True)
class LocalData:
    """Dimension data for one module A over F_ℓ.

    ``module_kind`` is "trivial" for A = F_ℓ, "mu" for A = μ_ℓ, else "general".
    ε is given directly or as ``ell_adic_ords``: ord_v(ℓ) for each ℓ-adic place
    v in the relevant set, so ε = dim A · Σ ord_v(ℓ).
    """

    ell: int
    dim_a: int
    dim_a_gamma: int = 0
    h: int = 1
    field: str = "nf"
    module_kind: str = "general"
    r1: int = 0
    r2: int = 0
    hhat0_dims: tuple = ()
    h0_dims: tuple = ()
    eps: int | None = None
    ell_adic_ords: tuple | None = None
    dim_dual_inv: int = 0
    dim_inv: int = 0
    dim_coinv: int | None = None
    genus: int | None = None
    real_place_fixed_dims: tuple | None = None
    xi: int = 0

    def __post_init__(self):
        for name in ("hhat0_dims", "h0_dims", "ell_adic_ords", "real_place_fixed_dims"):
            v = getattr(self, name)
            if v is not None:
                object.__setattr__(self, name, tuple(v))
        if not is_prime(self.ell):
            raise PreconditionError("ℓ must be prime")
        if self.field not in ("nf", "ff"):
            raise PreconditionError("field must be 'nf' or 'ff'")
        if self.module_kind not in _KINDS:
            raise PreconditionError(f"module_kind must be one of {_KINDS}")
        ints = [self.dim_a, self.dim_a_gamma, self.r1, self.r2, self.dim_dual_inv, self.dim_inv,
                self.xi, *self.hhat0_dims, *self.h0_dims]
        if any(x < 0 for x in ints) or self.h < 1 or self.dim_a < 1:
            raise PreconditionError("dimensions must be nonnegative, dim A and h positive")
        if self.dim_a_gamma > self.dim_a:
            raise PreconditionError("dim A^Γ exceeds dim A")
        if len(self.hhat0_dims) != len(self.h0_dims):
            raise PreconditionError("Ĥ⁰ and H⁰ dims must be given for the same places")
        if self.ell_adic_ords is not None:
            if any(e < 1 for e in self.ell_adic_ords):
                raise PreconditionError("ℓ-adic valuations must be positive")
            from_ords = self.dim_a * sum(self.ell_adic_ords)
            if self.eps is not None and self.eps != from_ords:
                raise PreconditionError("ε disagrees with the ℓ-adic valuation data")
        if self.eps is not None and (self.eps < 0 or self.eps % self.dim_a):
            raise PreconditionError("ε must be a nonnegative multiple of dim A")
        if self.real_place_fixed_dims is not None:
            if len(self.real_place_fixed_dims) != self.r1:
                raise PreconditionError("one fixed-space dimension per real place is required")
            if any(not 0 <= x <= self.dim_a for x in self.real_place_fixed_dims):
                raise PreconditionError("fixed-space dims must lie in [0, dim A]")

    @property
    def epsilon(self) -> int:
        if self.eps is not None:
            return self.eps
        if self.ell_adic_ords is not None:
            return self.dim_a * sum(self.ell_adic_ords)
        return 0

    @classmethod
    def from_dict(cls, d: dict) -> "LocalData":
        known = {f.name for f in fields(cls)}
        extra = set(d) - known
        if extra:
            raise PreconditionError(f"unknown LocalData keys: {sorted(extra)}")
        return cls(**d)

    def to_dict(self) -> dict:
        out = asdict(self)
        for k, v in out.items():
            if isinstance(v, tuple):
                out[k] = list(v)
        return out


def log_chi(data: LocalData) -> dict:
    """log_ℓ of the Euler characteristic: Σ_v (dim Ĥ⁰ − dim H⁰) over archimedean places."""
    if data.field == "ff":
        return {"value": 0, "note": "no archimedean places: the characteristic is 1"}
    return {"value": sum(a - b for a, b in zip(data.hhat0_dims, data.h0_dims)), "note": ""}


def delta_ff(data: LocalData) -> int:
    """Function field, S empty: −dim A_Gal in genus 0, dim (A′)^Gal − dim A^Gal otherwise."""
    if data.field != "ff":
        raise PreconditionError("delta_ff needs function-field data")
    if data.genus is None:
        raise PreconditionError("genus is required")
    if data.genus == 0:
        if data.dim_coinv is None:
            raise PreconditionError("genus 0 needs dim of coinvariants")
        return -data.dim_coinv
    return data.dim_dual_inv - data.dim_inv


def delta_nf_bound(data: LocalData) -> dict:
    """Upper bound log_ℓ χ + dim (A′)^Gal − dim A^Gal + ε for number fields.

    Whether equality holds depends on a comparison of global duality groups
    that is not computed here, so the flag is always "undecided".
    """
    if data.field != "nf":
        raise PreconditionError("delta_nf_bound needs number-field data")
    val = log_chi(data)["value"] + data.dim_dual_inv - data.dim_inv + data.epsilon
    return {"value": val, "equality": "undecided"}


def mult_bound_from_delta(n: int, data: LocalData, delta: int) -> Fraction:
    """(n·dim A − ξ + δ)/h."""
    return Fraction(n * data.dim_a - data.xi + delta, data.h)


def mult_bound_main(n: int, data: LocalData, case: str) -> Fraction:
    d, a, h = data.dim_a, data.dim_a_gamma, data.h
    if case == "nf":
        return Fraction((n + 1) * d - a, h)
    if case == "ff":
        if data.module_kind == "mu":
            raise PreconditionError("the function-field bound excludes A = μ_ℓ")
        return Fraction(n * d - a, h)
    if case == "admissible":
        return Fraction((n + 1) * (d - a), h)
    raise PreconditionError("case must be 'nf', 'ff' or 'admissible'")


def mult_bound_other_signatures(n: int, data: LocalData) -> Fraction:
    eps = data.epsilon
    if data.module_kind == "trivial":
        return Fraction(eps - data.r2 - 1)
    if data.module_kind == "mu":
        return Fraction(eps + n - data.r1 - data.r2)
    if data.real_place_fixed_dims is None:
        raise PreconditionError("fixed-space dims at real places are required")
    d = data.dim_a
    real = sum(d - x for x in data.real_place_fixed_dims)
    return Fraction(eps + (n - data.r2) * d - real - (n + 1) * data.dim_a_gamma, data.h)


def mult_bound_roots_of_unity(n: int, data: LocalData) -> Fraction:
    d, a, h = data.dim_a, data.dim_a_gamma, data.h
    if data.field == "ff":
        return Fraction((n + 1) * d - data.xi - n * a, h)
    return Fraction((n - data.r2) * d + data.epsilon - data.xi - n * a, h)


def fin_pres_relation_bound(n: int, degree: int) -> int:
    """At most [k:ℚ] + n relations."""
    if degree < 1 or n < 0:
        raise PreconditionError("degree ≥ 1 and n ≥ 0 required")
    return degree + n


EVALUATORS = {
    "log_chi": lambda n, d: log_chi(d)["value"],
    "delta_ff": lambda n, d: delta_ff(d),
    "delta_nf_bound": lambda n, d: delta_nf_bound(d)["value"],
    "mult_bound_main_nf": lambda n, d: mult_bound_main(n, d, "nf"),
    "mult_bound_main_ff": lambda n, d: mult_bound_main(n, d, "ff"),
    "mult_bound_main_admissible": lambda n, d: mult_bound_main(n, d, "admissible"),
    "mult_bound_other_signatures": mult_bound_other_signatures,
    "mult_bound_roots_of_unity": mult_bound_roots_of_unity,
}
