from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gammapres import groups as G
from gammapres.errors import BudgetExceeded, PreconditionError
from gammapres.instances import inversion_gamma_group, z3_on_klein
from gammapres.randmodel import (Factor, RelationModuleDecomposition,
                                 brute_force_generation_probability, decompose,
                                 exhaustive_generation_probability, exhaustive_quotient_distribution,
                                 generation_probability, positivity_threshold, sample_quotients, y_map)

Z3INV = inversion_gamma_group(G.cyclic(3))
Z3SQ = inversion_gamma_group(G.elementary_abelian(3, 2))
W = z3_on_klein()
W2 = G.direct_product_gamma(W, W)


def whole(f):
    return range(f.g.order)


@pytest.mark.parametrize("f, nu, want", [
    (Z3INV, 2, Fraction(8, 9)),       # 81 pairs, 9 of them fail
    (Z3SQ, 3, Fraction(208, 243)),    # three vectors spanning F_3^2
    (W, 1, Fraction(3, 4)),
    (W2, 1, Fraction(0)),
    (W2, 2, Fraction(45, 64)),
    (W2, 3, Fraction(945, 1024)),
])
def test_closed_form_against_enumeration(f, nu, want):
    d = decompose(f, whole(f))
    assert generation_probability(d, nu) == want
    assert exhaustive_generation_probability(f, whole(f), nu) == want
    assert brute_force_generation_probability(f, whole(f), nu) == want


def test_decomposition_of_w2():
    d = decompose(W2, whole(W2))
    (fac,) = d.factors
    # End field F_4: q = 4 in the product
    assert (fac.multiplicity, fac.abelian, fac.y_size, fac.prime, fac.h) == (2, True, 4, 2, 2)


def test_decomposition_roundtrip():
    d = decompose(Z3SQ, whole(Z3SQ))
    assert RelationModuleDecomposition.from_dict(d.to_dict()) == d


def test_y_map():
    # Γ = Z/2 by inversion: y(x) = x^{-1}·x^{-1} = x^{-2}
    assert y_map(Z3INV, [1], 1) == (2 * 2 % 3,)


def test_non_normal_rejected():
    s3 = G.GammaGroup.trivial_action(G.symmetric(3))
    sub = [0, int(next(x for x in range(6) if s3.g.element_orders[x] == 2))]
    with pytest.raises(PreconditionError):
        decompose(s3, sub)


def test_factor_y_size_must_match_end_field():
    with pytest.raises(PreconditionError):
        RelationModuleDecomposition((Factor(2, True, 2, 2, 2, 2),))


def test_budget():
    with pytest.raises(BudgetExceeded):
        exhaustive_generation_probability(Z3SQ, whole(Z3SQ), 4, budget=100)


FACTORS = st.builds(lambda m, p, k, j, h: Factor(m, True, p ** (h * min(j, k)), p, h, h * k),
                    st.integers(1, 4), st.sampled_from([2, 3, 5]), st.integers(1, 3),
                    st.integers(0, 3), st.integers(1, 2))


@given(FACTORS, st.integers(0, 5))
def test_probability_increases_with_relations(fac, nu):
    d = RelationModuleDecomposition((fac,))
    assert generation_probability(d, nu) <= generation_probability(d, nu + 1)


@given(FACTORS, st.integers(0, 5))
def test_positivity_threshold(fac, nu):
    d = RelationModuleDecomposition((fac,))
    positive = generation_probability(d, nu) > 0
    assert positive == (fac.multiplicity - 1 < positivity_threshold(nu, fac))


def test_sample_is_deterministic_and_matches_frozen_counts():
    a = sample_quotients(Z3INV, 2, 100_000, seed=7)
    b = sample_quotients(Z3INV, 2, 100_000, seed=7)
    assert a.to_dict() == b.to_dict()
    assert [x["count"] for x in a.buckets] == [88921, 11079]


def test_sample_prefix_stability():
    # draw i depends only on (seed, i)
    big = sample_quotients(Z3INV, 2, 2048, seed=3)
    small = sample_quotients(Z3INV, 2, 1024, seed=3)
    assert sum(b["count"] for b in small.buckets) == 1024
    assert all(s["count"] <= b["count"] for s, b in zip(small.buckets, big.buckets))


def test_quotient_distribution_sums_to_one():
    law = exhaustive_quotient_distribution(W2, 2)
    assert sum(d["probability"] for d in law) == 1
    assert {d["order"] for d in law} == {1, 4, 16}
