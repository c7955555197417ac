from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gammapres.arith import (EVALUATORS, LocalData, delta_ff, delta_nf_bound, fin_pres_relation_bound,
                             log_chi, mult_bound_from_delta, mult_bound_main,
                             mult_bound_other_signatures, mult_bound_roots_of_unity)
from gammapres.errors import PreconditionError
from gammapres.randmodel import Factor, positivity_threshold


def test_log_chi():
    assert log_chi(LocalData(ell=3, dim_a=2, field="ff"))["value"] == 0
    # totally imaginary, ℓ odd: Ĥ⁰ vanishes and H⁰ is everything at each complex place
    r2, d = 3, 2
    data = LocalData(ell=5, dim_a=d, r2=r2, hhat0_dims=(0,) * r2, h0_dims=(d,) * r2)
    assert log_chi(data)["value"] == -r2 * d
    assert log_chi(LocalData(ell=3, dim_a=1))["value"] == 0


def test_delta_ff_cases():
    assert delta_ff(LocalData(ell=3, dim_a=1, field="ff", genus=0, dim_coinv=1)) == -1
    assert delta_ff(LocalData(ell=3, dim_a=1, field="ff", genus=1, dim_inv=1)) == -1
    assert delta_ff(LocalData(ell=3, dim_a=2, field="ff", genus=4)) == 0
    with pytest.raises(PreconditionError):
        delta_ff(LocalData(ell=3, dim_a=1, field="ff"))
    with pytest.raises(PreconditionError):
        delta_ff(LocalData(ell=3, dim_a=1))


def test_delta_nf_bound_cases():
    triv = LocalData(ell=3, dim_a=1, module_kind="trivial", dim_inv=1, ell_adic_ords=(1,))
    assert delta_nf_bound(triv) == {"value": 0, "equality": "undecided"}
    assert delta_nf_bound(LocalData(ell=3, dim_a=2, ell_adic_ords=(1,)))["value"] == 2
    assert delta_nf_bound(LocalData(ell=3, dim_a=1))["value"] == 0


def test_mult_bound_main_examples():
    assert mult_bound_main(5, LocalData(ell=3, dim_a=2, dim_a_gamma=2), "admissible") == 0
    assert mult_bound_main(3, LocalData(ell=3, dim_a=2), "nf") == 8
    ff = LocalData(ell=3, dim_a=1, dim_a_gamma=1, field="ff", module_kind="trivial")
    assert [mult_bound_main(n, ff, "ff") for n in range(4)] == [-1, 0, 1, 2]
    with pytest.raises(PreconditionError):
        mult_bound_main(1, LocalData(ell=3, dim_a=1, module_kind="mu"), "ff")
    with pytest.raises(PreconditionError):
        mult_bound_main(1, ff, "other")


def test_other_signatures():
    assert mult_bound_other_signatures(2, LocalData(ell=3, dim_a=1, module_kind="trivial", r1=1, eps=1)) == 0
    data = LocalData(ell=5, dim_a=3, dim_a_gamma=1, h=1, r1=1, eps=3, real_place_fixed_dims=(1,))
    assert mult_bound_other_signatures(2, data) == 4
    assert mult_bound_other_signatures(0, LocalData(ell=3, dim_a=1, module_kind="trivial")) == -1
    with pytest.raises(PreconditionError):
        mult_bound_other_signatures(1, LocalData(ell=3, dim_a=1, r1=1))


def test_roots_of_unity():
    # Q(ζ_7): r2 = 3 and one place above 7 with ord = 6
    data = LocalData(ell=7, dim_a=2, dim_a_gamma=1, r2=3, xi=1, ell_adic_ords=(6,))
    n = 2
    assert mult_bound_roots_of_unity(n, data) == (n + 3) * 2 - 1 - n * 1
    ff = LocalData(ell=3, dim_a=1, dim_a_gamma=1, field="ff", module_kind="trivial")
    assert mult_bound_roots_of_unity(4, ff) == 1
    assert mult_bound_roots_of_unity(0, LocalData(ell=3, dim_a=1)) == 0


def test_fin_pres():
    assert fin_pres_relation_bound(0, 1) == 1 and fin_pres_relation_bound(5, 2) == 7
    with pytest.raises(PreconditionError):
        fin_pres_relation_bound(1, 0)


def test_validation():
    with pytest.raises(PreconditionError):
        LocalData(ell=4, dim_a=1)
    with pytest.raises(PreconditionError):
        LocalData(ell=3, dim_a=1, dim_a_gamma=2)
    with pytest.raises(PreconditionError):
        LocalData(ell=3, dim_a=2, eps=3)
    with pytest.raises(PreconditionError):
        LocalData(ell=3, dim_a=1, eps=2, ell_adic_ords=(1,))
    with pytest.raises(PreconditionError):
        LocalData.from_dict({"ell": 3, "dim_a": 1, "bogus": 0})


DATA = st.builds(
    lambda ell, d, a, h, r1, r2, ords, xi: LocalData(
        ell=ell, dim_a=d, dim_a_gamma=min(a, d), h=h, r1=r1, r2=r2, xi=min(xi, d),
        ell_adic_ords=tuple(ords), real_place_fixed_dims=(min(a, d),) * r1),
    st.sampled_from([3, 5, 7]), st.integers(1, 4), st.integers(0, 4), st.integers(1, 3),
    st.integers(0, 2), st.integers(0, 3), st.lists(st.integers(1, 4), max_size=3), st.integers(0, 2))


@given(DATA, st.integers(0, 6))
def test_admissible_is_corrected_nf(data, n):
    nf = mult_bound_main(n, data, "nf")
    assert mult_bound_main(n, data, "admissible") == nf - Fraction(n * data.dim_a_gamma, data.h)


@given(DATA, st.integers(0, 6))
def test_evaluators_are_exact(data, n):
    for name, fn in EVALUATORS.items():
        if name in ("delta_ff", "mult_bound_main_ff"):
            continue
        v = fn(n, data)
        assert isinstance(v, (int, Fraction))


@given(DATA)
def test_nf_bound_reduces_without_archimedean_terms(data):
    if data.epsilon == 0 and not data.hhat0_dims:
        assert delta_nf_bound(data)["value"] == log_chi(data)["value"] + data.dim_dual_inv - data.dim_inv


@given(DATA, st.integers(0, 6), st.sampled_from([0, 1]))
def test_threshold_matches_imaginary_quadratic_bound(data, n, u):
    d, a, h = data.dim_a, data.dim_a_gamma, data.h
    if (d - a) % h:
        return
    iq = LocalData(ell=data.ell, dim_a=d, dim_a_gamma=a, h=h, r1=1, eps=d, real_place_fixed_dims=(a,))
    fac = Factor(1, True, data.ell ** (d - a), data.ell, h, d)
    bound = mult_bound_other_signatures(n, iq) if u == 0 else mult_bound_main(n, iq, "admissible")
    assert positivity_threshold(n + u, fac) == bound


@given(st.integers(0, 5), st.integers(1, 4), st.integers(1, 4), st.data())
def test_relator_sup_term_at_most_degree(n, degree, d, data):
    delta = data.draw(st.integers(-d, degree * d))
    xi = data.draw(st.integers(0, d))
    sup_term = -((-(delta - xi)) // d)
    assert n + sup_term <= fin_pres_relation_bound(n, degree)


def test_bound_from_delta():
    assert mult_bound_from_delta(2, LocalData(ell=3, dim_a=2, h=2, xi=1), 3) == Fraction(3)
