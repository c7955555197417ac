import pytest
from hypothesis import given
from hypothesis import strategies as st

from gammapres import groups as G
from gammapres.errors import CapacityError, PreconditionError
from gammapres.instances import inversion_gamma_group
from gammapres.varieties import (VarietySpec, complete_cover, height, height_exhaustive, height_hat,
                                 height_hat_of_variety, pro_c_completion, socle, socle_series,
                                 variety_contains)


def T(g):
    return G.GammaGroup.trivial_action(g)


C2 = VarietySpec((T(G.cyclic(2)),))
CS3 = VarietySpec((T(G.symmetric(3)),))


@pytest.mark.parametrize("c, g, contains, status", [
    (C2, G.cyclic(4), False, "excluded-exponent"),
    (C2, G.elementary_abelian(2, 3), True, "certificate"),
    (CS3, G.direct_product(G.symmetric(3), G.symmetric(3)), True, "certificate"),
    (CS3, G.cyclic(6), True, "certificate"),
    (CS3, G.dihedral(6), True, "certificate"),
    (CS3, G.direct_product(G.cyclic(3), G.symmetric(3)), True, "certificate"),
    (CS3, G.dihedral(4), False, "excluded-exponent"),
    (CS3, G.symmetric(4), False, "excluded-exponent"),
    (CS3, G.cyclic(9), False, "excluded-exponent"),
    (CS3, G.cyclic(5), False, None),
    (CS3, G.trivial_group(), True, "trivial"),
], ids=lambda x: getattr(x, "name", None) if hasattr(x, "order") else None)
def test_membership(c, g, contains, status):
    m = variety_contains(c, T(g))
    assert m.contains is contains
    if status:
        assert m.status == status


def test_relatively_free_exclusion():
    # S3 satisfies [x², y²] = 1 while two 3-cycles of A4 do not commute;
    # exponent and prime tests cannot see this
    m = variety_contains(CS3, T(G.alternating(4)))
    assert m.contains is False and m.status == "excluded-relatively-free"
    assert variety_contains(CS3, T(G.elementary_abelian(3, 2))).contains is True


def test_q8_lies_in_variety_of_d8():
    # D8 and Q8 generate the same variety
    assert variety_contains(VarietySpec((T(G.dihedral(4)),)), T(G.quaternion())).contains is True


@pytest.mark.parametrize("c, g, order", [(C2, G.cyclic(4), 2), (CS3, G.dihedral(4), 4),
                                         (CS3, G.symmetric(4), 6), (CS3, G.cyclic(9), 3)],
                         ids=lambda x: getattr(x, "name", None) if hasattr(x, "order") else None)
def test_completion_orders(c, g, order):
    q, hom = pro_c_completion(T(g), c)
    assert q.g.order == order and hom.is_surjective()


POOL = [G.cyclic(2), G.cyclic(4), G.symmetric(3), G.dihedral(4), G.cyclic(6), G.quaternion(),
        G.elementary_abelian(2, 2), G.cyclic(3)]


@given(st.sampled_from(POOL), st.sampled_from(POOL))
def test_completion_is_idempotent_and_in_variety(g, m):
    c = VarietySpec((T(m),))
    q, _ = pro_c_completion(T(g), c)
    assert variety_contains(c, q).contains is True
    q2, _ = pro_c_completion(q, c)
    assert q2.g.order == q.g.order


@given(st.sampled_from(POOL))
def test_member_completes_to_itself(g):
    q, _ = pro_c_completion(T(g), VarietySpec((T(g),)))
    assert q.g.order == g.order


def test_complete_cover_gamma():
    h = inversion_gamma_group(G.cyclic(3))
    e = inversion_gamma_group(G.cyclic(9))
    import numpy as np
    omega = G.GammaHom(e, h, G.GroupHom(e.g, h.g, np.arange(9) % 3))
    induced, pg = complete_cover(omega, VarietySpec((h,)))
    assert induced.target.g.order == 3 and induced.source.g.order == 3
    assert induced.is_surjective()


def test_variety_needs_common_gamma():
    with pytest.raises(PreconditionError):
        VarietySpec((T(G.cyclic(2)), inversion_gamma_group(G.cyclic(3))))


def test_capacity():
    tiny = VarietySpec((T(G.symmetric(3)),), product_order_bound=8)
    with pytest.raises(CapacityError):
        pro_c_completion(T(G.symmetric(4)), tiny)


@pytest.mark.parametrize("g, h", [(G.symmetric(3), 2), (G.cyclic(4), 2), (G.elementary_abelian(2, 3), 1),
                                  (G.symmetric(4), 3), (G.quaternion(), 2), (G.cyclic(8), 3),
                                  (G.alternating(4), 2), (G.trivial_group(), 0)],
                         ids=lambda x: getattr(x, "name", str(x)))
def test_heights(g, h):
    assert height(g) == h == height_exhaustive(g)


def test_socle():
    s4 = G.symmetric(4)
    assert len(socle(s4)) == 4
    assert [len(x) for x in socle_series(s4)] == [1, 4, 12, 24]


@pytest.mark.parametrize("g, hh", [(G.cyclic(8), 3), (G.symmetric(3), 2), (G.elementary_abelian(3, 2), 1),
                                   (G.symmetric(4), 3)], ids=lambda x: getattr(x, "name", str(x)))
def test_height_hat(g, hh):
    assert height_hat(g) == hh == height_hat(g, method="exhaustive", full=True)


def test_height_hat_of_variety():
    c = VarietySpec((T(G.cyclic(8)), T(G.symmetric(3))))
    assert height_hat_of_variety(c) == 3


@given(st.sampled_from(POOL[:6]), st.sampled_from(POOL[:6]))
def test_height_hat_of_products(a, b):
    assert height_hat(G.direct_product(a, b)) <= max(height_hat(a), height_hat(b))


@given(st.sampled_from(POOL))
def test_quotients_do_not_raise_height(g):
    assert height_hat(g) == height_hat(g, full=True)
