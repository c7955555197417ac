import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import GF, Matrix
from sympy.polys.matrices import DomainMatrix

from gammapres.linalg import inverse, is_prime, nullspace, rank, rref

PRIMES = st.sampled_from([2, 3, 5, 7])


def sympy_rank(a, p):
    return DomainMatrix.from_Matrix(Matrix(a.tolist())).convert_to(GF(p)).rank()


@st.composite
def matrices(draw):
    p = draw(PRIMES)
    r = draw(st.integers(0, 6))
    c = draw(st.integers(1, 6))
    vals = draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
    return p, np.array(vals, dtype=np.int64).reshape(r, c)


@given(matrices())
def test_rank_matches_sympy(pm):
    p, a = pm
    assert rank(a, p) == (sympy_rank(a, p) if a.size else 0)


@given(matrices())
def test_rank_nullity(pm):
    p, a = pm
    ns = nullspace(a, p, a.shape[1])
    assert rank(a, p) + len(ns) == a.shape[1]
    if len(ns):
        assert not ((a @ ns.T) % p).any()


@given(matrices())
def test_rref_is_idempotent(pm):
    p, a = pm
    r, piv = rref(a, p)
    r2, piv2 = rref(r, p)
    assert piv == piv2 and np.array_equal(r % p, r2 % p)


def test_inverse():
    a = np.array([[1, 2], [3, 4]])
    b = inverse(a, 5)
    assert np.array_equal((a @ b) % 5, np.eye(2, dtype=np.int64))


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


@pytest.mark.parametrize("p", [2, 3])
def test_zero_matrix(p):
    assert rank(np.zeros((3, 4), dtype=np.int64), p) == 0
