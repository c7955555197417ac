from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gammapres import groups as G
from gammapres.acceptance import cover_instances, towers
from gammapres.errors import PreconditionError
from gammapres.instances import inversion_gamma_group, sign_module, z3_on_klein
from gammapres.modules import FpModule, invariant_subspace, simple_modules
from gammapres.presentations import (abelian_multiplicity_oracle, admissible_multiplicity,
                                     generating_tuple, msum_decompose, multiplicity_formula,
                                     multiplicity_oracle, multiplicity_terms, presentation_report,
                                     relation_cover, relator_rank)

Z3INV = inversion_gamma_group(G.cyclic(3))


def sign_on(h):
    sd = h.semidirect.group
    odd = [s for s in sd.generators if s in set(h.semidirect.gamma_part) - {sd.identity}]
    return sign_module(sd, 3, odd)


def test_sign_module_terms():
    a = sign_on(Z3INV)
    t = multiplicity_terms(1, Z3INV, a)
    # ξ vanishes: Γ fixes nothing in the sign module
    assert (t.xi, t.h1, t.h2, t.h, t.dim_a_gamma) == (0, 1, 1, 1, 0)
    assert multiplicity_formula(1, Z3INV, a) == 1
    assert admissible_multiplicity(1, Z3INV, a) == Fraction(1)


def test_sign_module_cover_matches_oracle():
    a = sign_on(Z3INV)
    omega = relation_cover(Z3INV, 1, a)
    assert omega.source.g.order == 9
    assert multiplicity_oracle(omega, a) == 1


@pytest.mark.parametrize("inst", list(cover_instances(max_order=81)),
                         ids=lambda i: f"{i[0]}-n{i[2]}-l{i[3].prime}-d{i[3].dim}")
def test_cover_formula_equals_oracle(inst):
    label, h, n, a, m = inst
    omega = relation_cover(h, n, a)
    assert omega.is_surjective()
    assert omega.source.g.order == h.g.order * a.prime ** (m * a.dim)
    assert multiplicity_oracle(omega, a) == m


def test_known_cover_orders():
    gam = G.cyclic(3)
    triv = G.GammaGroup.trivial_action(G.trivial_group(), gam)
    sizes = []
    for n in (1, 2, 3):
        for a in simple_modules(triv.semidirect.group, 2):
            sizes.append(relation_cover(triv, n, a).source.g.order)
    assert sizes == [2, 4, 4, 16, 8, 64]


def test_oracle_zero_for_identity():
    a = sign_on(Z3INV)
    assert multiplicity_oracle(G.GammaHom.identity(Z3INV), a) == 0


def test_projection_oracle():
    e = inversion_gamma_group(G.elementary_abelian(3, 2))
    proj = G.GammaHom(e, Z3INV, G.GroupHom(e.g, Z3INV.g, np.arange(9) % 3))
    sd = Z3INV.semidirect.group
    sign, triv = sign_on(Z3INV), FpModule.trivial(sd, 3)
    assert multiplicity_oracle(proj, sign) == 1
    assert multiplicity_oracle(proj, triv) == 0


def test_abelian_oracle_counts_hom_space():
    gam = G.cyclic(2)
    r = FpModule.regular(gam, 3)
    triv = FpModule.trivial(gam, 3)
    # kernel of the zero map is all of F_3[Z/2] = trivial ⊕ sign
    assert abelian_multiplicity_oracle(r, np.zeros((0, 2), dtype=np.int64), triv) == 1
    assert abelian_multiplicity_oracle(r.direct_sum(r), np.zeros((0, 4), dtype=np.int64), triv) == 2


def test_relator_rank_values():
    rr = relator_rank(2, G.GammaGroup.trivial_action(G.elementary_abelian(3, 2)))
    assert rr["value"] == 3 and rr["lower_bound"] is True
    assert relator_rank(1, G.GammaGroup.trivial_action(G.cyclic(3)))["value"] == 1
    triv = relator_rank(3, G.GammaGroup.trivial_action(G.trivial_group()))
    assert triv["value"] == 3


def test_generating_tuple():
    assert len(generating_tuple(z3_on_klein(), 1)) == 1
    with pytest.raises(PreconditionError):
        generating_tuple(G.GammaGroup.trivial_action(G.elementary_abelian(2, 3)), 2)


def test_msum_example():
    e = G.GammaGroup.trivial_action(G.elementary_abelian(3, 2))
    f = G.GammaGroup.trivial_action(G.cyclic(3))
    one = G.GammaGroup.trivial_action(G.trivial_group())
    alpha = G.GammaHom(e, f, G.GroupHom(e.g, f.g, np.arange(9) // 3))
    beta = G.GammaHom(f, one, G.GroupHom(f.g, one.g, np.zeros(3, dtype=np.int64)))
    r = msum_decompose(alpha, beta, FpModule.trivial(one.semidirect.group, 3))
    assert (r["m_alpha"], r["m_beta"], r["m_pi"]) == (1, 1, 2)
    assert r["all_extensions_split"] is False


@given(st.sampled_from(towers()), st.data())
def test_msum_inequality(tower, data):
    label, alpha, beta, sec, ell = tower
    a = data.draw(st.sampled_from(simple_modules(beta.target.semidirect.group, ell)))
    r = msum_decompose(alpha, beta, a, section=sec)
    assert r["m_pi"] <= r["m_alpha"] + r["m_beta"]


@given(st.sampled_from([(Z3INV, 3), (z3_on_klein(), 2),
                        (G.GammaGroup.trivial_action(G.symmetric(3)), 5),
                        (G.GammaGroup.trivial_action(G.quaternion()), 3)]),
       st.integers(2, 5), st.data())
def test_formula_monotone_in_n(hp, n, data):
    h, p = hp
    a = data.draw(st.sampled_from(simple_modules(h.semidirect.group, p)))
    m0, m1 = multiplicity_formula(n, h, a), multiplicity_formula(n + 1, h, a)
    assert m1 - m0 == a.dim // multiplicity_terms(n, h, a).h


def test_admissible_requires_admissible():
    h = G.GammaGroup.trivial_action(G.cyclic(3), G.cyclic(2))
    with pytest.raises(PreconditionError):
        admissible_multiplicity(1, h, FpModule.trivial(h.semidirect.group, 3))


def test_wrong_module_group_rejected():
    with pytest.raises(PreconditionError):
        multiplicity_formula(1, Z3INV, FpModule.trivial(G.cyclic(6), 3))


def test_presentation_report_provenance():
    a = sign_on(Z3INV)
    rep = presentation_report(1, Z3INV, [a], oracle=relation_cover(Z3INV, 1, a)).to_dict()
    row = rep["rows"][0]
    assert row["m_formula"] == {"value": 1, "provenance": "computed"}
    assert row["m_oracle"] == {"value": 1, "provenance": "oracle"}
    assert row["m_admissible"]["value"] == "1/1"
    assert rep["relator_rank"]["provenance"] == "lower-bound"


def test_formula_rejects_too_few_generators():
    h = G.GammaGroup.trivial_action(G.symmetric(3))
    sign = [a for a in simple_modules(h.semidirect.group, 5)
            if a.dim == 1 and not len(invariant_subspace(a))][0]
    with pytest.raises(PreconditionError):
        multiplicity_formula(0, h, sign)
