"""Dense linear algebra over the prime field F_p.

Matrices are numpy integer arrays with entries in [0, p).  For p = 2 the row
reduction runs on bit-packed rows (eight columns per byte, XOR updates);
otherwise it works on int64 rows with one vectorized update per pivot.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "as_matrix",
    "rref",
    "rank",
    "nullspace",
    "row_basis",
    "inverse",
    "solve_left",
    "is_prime",
    "MAX_PRIME",
]

MAX_PRIME = 97


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


def as_matrix(a, p: int, ncols: int | None = None) -> np.ndarray:
    m = np.asarray(a, dtype=np.int64)
    if m.ndim == 1:
        m = m.reshape(1, -1) if m.size else np.zeros((0, ncols or 0), dtype=np.int64)
    return np.mod(m, p)


def _rref_gf2(a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    rows, cols = a.shape
    if rows == 0 or cols == 0:
        return a.copy(), []
    packed = np.packbits(a.astype(np.uint8), axis=1)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        byte, shift = c >> 3, 7 - (c & 7)
        bits = (packed[r:, byte] >> shift) & 1
        nz = np.flatnonzero(bits)
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            packed[[r, piv]] = packed[[piv, r]]
        hit = ((packed[:, byte] >> shift) & 1).astype(bool)
        hit[r] = False
        if hit.any():
            packed[hit] ^= packed[r]
        pivots.append(c)
        r += 1
    out = np.unpackbits(packed, axis=1, count=cols).astype(np.int64)
    return out, pivots


def _rref_modp(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    m = a.copy()
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        col = m[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            m[hit] = (m[hit] - np.outer(col[hit], m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rref(a, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = as_matrix(a, p)
    if p == 2:
        return _rref_gf2(m)
    return _rref_modp(m, p)


def rank(a, p: int) -> int:
    return len(rref(a, p)[1])


def row_basis(a, p: int) -> np.ndarray:
    """Echelon basis of the row space."""
    r, piv = rref(a, p)
    return r[: len(piv)]


def nullspace(a, p: int, ncols: int | None = None) -> np.ndarray:
    """Rows spanning {v : a @ v = 0 mod p}."""
    m = as_matrix(a, p, ncols)
    n = m.shape[1] if ncols is None else ncols
    if m.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    r, piv = rref(m, p)
    free = [c for c in range(n) if c not in set(piv)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for k, c in enumerate(piv):
            basis[i, c] = (-r[k, f]) % p
    return basis


def inverse(a, p: int) -> np.ndarray:
    m = as_matrix(a, p)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("matrix is not square")
    r, piv = rref(np.hstack([m, np.eye(n, dtype=np.int64)]), p)
    if [c for c in piv if c < n] != list(range(n)):
        raise ValueError("matrix is singular mod p")
    return r[:, n:]


def solve_left(basis: np.ndarray, pivots: list[int], vectors: np.ndarray) -> np.ndarray:
    """Coordinates of vectors in an RREF basis (read off at pivot columns)."""
    return vectors[:, pivots]
