"""F_ℓ[G]-modules: invariants, Hom spaces, chopping into simple factors."""

from __future__ import annotations

from collections import deque
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from sympy import ZZ
from sympy.polys.galoistools import gf_factor

from .config import MODULE_DIM_CAP
from .errors import CapacityError, PreconditionError
from .groups import FiniteGroup, GroupHom
from .linalg import MAX_PRIME, inverse, is_prime, nullspace, rank, row_basis, rref

__all__ = [
    "FpModule",
    "invariant_subspace",
    "hom_space",
    "hom_dim",
    "xi",
    "composition_factors",
    "simple_modules",
    "y_size",
    "charpoly",
    "spin",
    "is_isomorphic_module",
]


class FpModule:
    """A d-dimensional F_p-space with one invertible matrix per group generator.

    Vectors are columns; the matrix of xy is M_x @ M_y.
    """

    def __init__(self, prime: int, group: FiniteGroup, matrices, check: bool = True,
                 dim: int | None = None):
        if not is_prime(prime) or prime > MAX_PRIME:
            raise PreconditionError(f"prime must be a prime ≤ {MAX_PRIME}")
        self.prime = prime
        self.group = group
        if isinstance(matrices, dict):
            matrices = [matrices[g] if g in matrices else matrices[str(g)] for g in group.generators]
        mats = [np.mod(np.asarray(m, dtype=np.int64), prime) for m in matrices]
        if len(mats) != len(group.generators):
            raise PreconditionError("need one matrix per group generator")
        d = mats[0].shape[0] if mats else dim
        self._dim_hint = d
        for m in mats:
            m.setflags(write=False)
            if m.shape != (d, d):
                raise PreconditionError("matrices must be square of equal size")
        self.gen_matrices = mats
        if check:
            for m in mats:
                if rank(m, prime) != d:
                    raise PreconditionError("module matrix is not invertible")
            _ = self.element_matrices

    @classmethod
    def from_element_matrices(cls, prime: int, group: FiniteGroup, mats: np.ndarray) -> "FpModule":
        mats = np.mod(np.asarray(mats, dtype=np.int64), prime)
        mod = cls(prime, group, [mats[g] for g in group.generators], check=False, dim=mats.shape[1])
        mats.setflags(write=False)
        mod.__dict__["element_matrices"] = mats
        return mod

    @property
    def dim(self) -> int:
        if self._dim_hint is None:
            raise PreconditionError("module over a group with no generators needs an explicit dim")
        return self._dim_hint

    def __repr__(self):
        return f"FpModule(p={self.prime}, dim={self.dim}, |G|={self.group.order})"

    @cached_property
    def element_matrices(self) -> np.ndarray:
        g, p, d = self.group, self.prime, self.dim
        out = np.zeros((g.order, d, d), dtype=np.int64)
        seen = np.zeros(g.order, dtype=bool)
        out[g.identity] = np.eye(d, dtype=np.int64)
        seen[g.identity] = True
        queue = deque([g.identity])
        while queue:
            x = queue.popleft()
            for s, m in zip(g.generators, self.gen_matrices):
                y = g.table[x, s]
                v = (out[x] @ m) % p
                if not seen[y]:
                    out[y] = v
                    seen[y] = True
                    queue.append(y)
                elif not np.array_equal(out[y], v):
                    raise PreconditionError("matrices do not satisfy the group relations")
        out.setflags(write=False)
        return out

    def matrix(self, x: int) -> np.ndarray:
        return self.element_matrices[x]

    # constructors
    @classmethod
    def trivial(cls, group: FiniteGroup, prime: int, dim: int = 1) -> "FpModule":
        return cls(prime, group, [np.eye(dim, dtype=np.int64)] * len(group.generators), check=False, dim=dim)

    @classmethod
    def from_character(cls, group: FiniteGroup, prime: int, values: Sequence[int]) -> "FpModule":
        """One-dimensional module with the given scalar per generator."""
        return cls(prime, group, [[[v]] for v in values])

    @classmethod
    def permutation(cls, group: FiniteGroup, prime: int, perms: Sequence[Sequence[int]]) -> "FpModule":
        """Permutation module: generator s sends basis vector e_i to e_{perms[s][i]}."""
        mats = []
        for pm in perms:
            pm = np.asarray(pm)
            m = np.zeros((len(pm), len(pm)), dtype=np.int64)
            m[pm, np.arange(len(pm))] = 1
            mats.append(m)
        return cls(prime, group, mats, check=False, dim=len(perms[0]) if len(perms) else 1)

    @classmethod
    def regular(cls, group: FiniteGroup, prime: int) -> "FpModule":
        if group.order == 1:
            return cls.trivial(group, prime)
        return cls.permutation(group, prime, [group.table[s] for s in group.generators])

    def inflate(self, hom: GroupHom) -> "FpModule":
        """Pull back along hom: source -> self.group."""
        if hom.target is not self.group and hom.target.order != self.group.order:
            raise PreconditionError("hom target must be the acting group")
        mats = self.element_matrices[hom.full_map]
        return FpModule.from_element_matrices(self.prime, hom.source, mats)

    def restrict(self, sub: FiniteGroup, inclusion: np.ndarray) -> "FpModule":
        return FpModule.from_element_matrices(self.prime, sub, self.element_matrices[np.asarray(inclusion)])

    def change_basis(self, b: np.ndarray) -> "FpModule":
        """Same module written in the basis given by the columns of b."""
        p = self.prime
        bi = inverse(b, p)
        mats = np.einsum("ij,gjk,kl->gil", bi, self.element_matrices, b) % p
        return FpModule.from_element_matrices(p, self.group, mats)

    def dual(self) -> "FpModule":
        p = self.prime
        mats = np.stack([inverse(m, p).T for m in self.element_matrices])
        return FpModule.from_element_matrices(p, self.group, mats)

    def direct_sum(self, other: "FpModule") -> "FpModule":
        a, b = self.element_matrices, other.element_matrices
        n, da, db = a.shape[0], self.dim, other.dim
        out = np.zeros((n, da + db, da + db), dtype=np.int64)
        out[:, :da, :da] = a
        out[:, da:, da:] = b
        return FpModule.from_element_matrices(self.prime, self.group, out)

    def tensor(self, other: "FpModule") -> "FpModule":
        mats = np.stack([np.kron(x, y) for x, y in zip(self.element_matrices, other.element_matrices)])
        return FpModule.from_element_matrices(self.prime, self.group, mats % self.prime)

    def exterior_square(self) -> "FpModule":
        d, p = self.dim, self.prime
        pairs = [(i, j) for i in range(d) for j in range(i + 1, d)]
        out = np.zeros((self.group.order, len(pairs), len(pairs)), dtype=np.int64)
        for gi, m in enumerate(self.element_matrices):
            # g(e_i ^ e_j) = sum_{k<l} (m_ki m_lj - m_li m_kj) e_k ^ e_l
            for c, (i, j) in enumerate(pairs):
                for r, (k, l) in enumerate(pairs):
                    out[gi, r, c] = (m[k, i] * m[l, j] - m[l, i] * m[k, j]) % p
        return FpModule.from_element_matrices(p, self.group, out)

    def split(self, sub_basis: np.ndarray) -> tuple["FpModule", "FpModule"]:
        """Submodule spanned by the rows of sub_basis and the corresponding quotient."""
        p, d = self.prime, self.dim
        sb = row_basis(sub_basis, p)
        k = sb.shape[0]
        _, piv = rref(sb, p)
        comp = np.eye(d, dtype=np.int64)[[c for c in range(d) if c not in set(piv)]]
        b = np.vstack([sb, comp]).T
        m = self.change_basis(b).element_matrices
        if m[:, k:, :k].any():
            raise PreconditionError("subspace is not a submodule")
        sub = FpModule.from_element_matrices(p, self.group, m[:, :k, :k].copy())
        quo = FpModule.from_element_matrices(p, self.group, m[:, k:, k:].copy())
        return sub, quo

    def to_dict(self) -> dict:
        return {
            "prime": self.prime,
            "dim": self.dim,
            "matrices": {str(g): m.tolist() for g, m in zip(self.group.generators, self.gen_matrices)},
        }

    def key(self) -> bytes:
        return np.asarray(self.gen_matrices, dtype=np.int64).tobytes() + bytes([self.prime, self.dim % 256])


def _sub_gens(a: FpModule, acting_subset: Iterable[int] | None) -> list[int]:
    if acting_subset is None:
        return list(a.group.generators)
    return a.group.generating_set(acting_subset)


def invariant_subspace(a: FpModule, acting_subset: Iterable[int] | None = None) -> np.ndarray:
    """Basis (rows) of the vectors fixed by every element of the subgroup."""
    d, p = a.dim, a.prime
    if acting_subset is None:
        mats = list(a.gen_matrices)
    else:
        mats = [a.matrix(g) for g in _sub_gens(a, acting_subset)]
    if not mats:
        return np.eye(d, dtype=np.int64)
    stack = np.vstack([m - np.eye(d, dtype=np.int64) for m in mats])
    return nullspace(stack, p, d)


def hom_space(a: FpModule, b: FpModule) -> list[np.ndarray]:
    """Basis of equivariant maps a -> b as (dim b × dim a) matrices."""
    if a.prime != b.prime or a.group.order != b.group.order:
        raise PreconditionError("modules must share prime and acting group")
    p, da, db = a.prime, a.dim, b.dim
    gens = a.group.generators
    if not gens:
        return [e.reshape(db, da) for e in np.eye(da * db, dtype=np.int64)]
    mb = b.gen_matrices if b.group is a.group else [b.matrix(g) for g in gens]
    blocks = [
        np.kron(np.eye(db, dtype=np.int64), ma.T) - np.kron(mbg, np.eye(da, dtype=np.int64))
        for ma, mbg in zip(a.gen_matrices, mb)
    ]
    sol = nullspace(np.vstack(blocks), p, da * db)
    return [v.reshape(db, da) for v in sol]


def hom_dim(a: FpModule, b: FpModule) -> int:
    return len(hom_space(a, b))


def xi(a: FpModule, gamma_part: Iterable[int], full_group: Iterable[int] | None = None) -> int:
    return invariant_subspace(a, gamma_part).shape[0] - invariant_subspace(a, full_group).shape[0]


def y_size(a: FpModule, gamma: Iterable[int]) -> int:
    return a.prime ** (a.dim - invariant_subspace(a, gamma).shape[0])


# characteristic polynomials and chopping

def charpoly(m: np.ndarray, p: int) -> list[int]:
    """Characteristic polynomial mod p, coefficients from the leading term down."""
    h = np.mod(np.array(m, dtype=np.int64), p)
    n = h.shape[0]
    for j in range(n - 2):
        nz = np.flatnonzero(h[j + 1:, j])
        if nz.size == 0:
            continue
        i = j + 1 + nz[0]
        if i != j + 1:
            h[[i, j + 1]] = h[[j + 1, i]]
            h[:, [i, j + 1]] = h[:, [j + 1, i]]
        inv = pow(int(h[j + 1, j]), p - 2, p)
        for k in range(j + 2, n):
            u = (h[k, j] * inv) % p
            if u:
                h[k] = (h[k] - u * h[j + 1]) % p
                h[:, j + 1] = (h[:, j + 1] + u * h[:, k]) % p
    # recurrence on leading principal minors; polys stored low -> high
    polys = [np.array([1], dtype=np.int64)]
    for k in range(1, n + 1):
        prev = polys[k - 1]
        pk = np.zeros(k + 1, dtype=np.int64)
        pk[1:] += prev
        pk[:k] -= h[k - 1, k - 1] * prev
        t = 1
        for m_ in range(1, k):
            t = (t * h[k - m_, k - m_ - 1]) % p
            if t == 0:
                break
            q = polys[k - m_ - 1]
            pk[: len(q)] -= (t * h[k - m_ - 1, k - 1]) % p * q
        polys.append(pk % p)
    return [int(c) for c in polys[n][::-1]]


def _poly_at(coeffs: Sequence[int], m: np.ndarray, p: int) -> np.ndarray:
    n = m.shape[0]
    out = np.zeros((n, n), dtype=np.int64)
    for c in coeffs:
        out = (out @ m + c * np.eye(n, dtype=np.int64)) % p
    return out


def spin(vectors: np.ndarray, mats: Sequence[np.ndarray], p: int) -> np.ndarray:
    """Row basis of the smallest subspace containing the vectors and stable under mats."""
    basis = row_basis(np.atleast_2d(vectors), p)
    while True:
        if basis.shape[0] == 0:
            return basis
        imgs = [(m @ basis.T).T % p for m in mats]
        nb = row_basis(np.vstack([basis] + imgs), p)
        if nb.shape[0] == basis.shape[0]:
            return nb
        basis = nb


def _find_submodule(a: FpModule, rng: np.random.Generator, tries: int = 64) -> np.ndarray | None:
    """A proper nonzero submodule basis, or None once irreducibility is certified or the budget runs out."""
    p, d = a.prime, a.dim
    if d <= 1:
        return None
    gens = [m for m in a.gen_matrices]
    if not gens:
        return np.eye(d, dtype=np.int64)[:1]
    gens_t = [m.T.copy() for m in gens]
    pool = list(gens)
    for _ in range(tries):
        i, j = rng.integers(0, len(pool), size=2)
        pool.append((pool[i] @ pool[j]) % p)
        coeffs = rng.integers(0, p, size=len(pool))
        x = sum(int(c) * m for c, m in zip(coeffs, pool)) % p
        cp = charpoly(x, p)
        _, factors = gf_factor([int(c) for c in cp], p, ZZ)
        for f, _mult in sorted(factors, key=lambda t: (len(t[0]), t[0])):
            f = [int(c) % p for c in f]
            fx = _poly_at(f, x, p)
            null = nullspace(fx, p, d)
            s = spin(null[:1], gens, p)
            if s.shape[0] < d:
                return s
            null_t = nullspace(fx.T, p, d)
            s2 = spin(null_t[:1], gens_t, p)
            if s2.shape[0] < d:
                return nullspace(s2, p, d)
            if null.shape[0] == len(f) - 1:
                return None
    return None


def _chop(a: FpModule, rng: np.random.Generator) -> list[FpModule]:
    sub = _find_submodule(a, rng)
    if sub is None:
        return [a]
    s, q = a.split(sub)
    return _chop(s, rng) + _chop(q, rng)


def is_isomorphic_module(a: FpModule, b: FpModule) -> bool:
    """Isomorphism test valid when a is simple."""
    if a.dim != b.dim:
        return False
    for x in hom_space(a, b):
        if rank(x, a.prime) == a.dim:
            return True
    return False


def composition_factors(a: FpModule, rng: np.random.Generator | None = None,
                        cap: int = MODULE_DIM_CAP) -> list[tuple[FpModule, int]]:
    if a.dim > cap:
        raise CapacityError(f"module dimension {a.dim} exceeds cap {cap}")
    rng = rng if rng is not None else np.random.default_rng(0)
    out: list[list] = []
    for f in _chop(a, rng):
        for entry in out:
            if entry[0].dim == f.dim and hom_dim(entry[0], f) > 0:
                entry[1] += 1
                break
        else:
            out.append([f, 1])
    return [(m, k) for m, k in out]


def simple_modules(g: FiniteGroup, p: int, rng: np.random.Generator | None = None,
                   cap: int = MODULE_DIM_CAP) -> list[FpModule]:
    if g.order > cap:
        raise CapacityError(f"group order {g.order} exceeds regular-module cap {cap}")
    if g.order == 1:
        return [FpModule.trivial(g, p)]
    facs = [m for m, _ in composition_factors(FpModule.regular(g, p), rng, cap)]
    return sorted(facs, key=lambda m: m.dim)
