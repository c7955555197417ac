import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gammapres import groups as G
from gammapres.errors import PreconditionError
from gammapres.instances import frobenius_21, inversion_gamma_group, z3_on_klein

SMALL = [G.cyclic(6), G.symmetric(3), G.quaternion(), G.dihedral(4), G.alternating(4),
         G.elementary_abelian(2, 3), frobenius_21()]


@pytest.mark.parametrize("g", SMALL, ids=lambda g: g.name)
def test_group_axioms(g):
    t = g.table
    e = g.identity
    assert (t[e] == np.arange(g.order)).all()
    inv = g.inverse
    assert (t[np.arange(g.order), inv] == e).all()
    for a, b, c in itertools.islice(itertools.product(range(g.order), repeat=3), 2000):
        assert t[t[a, b], c] == t[a, t[b, c]]


@pytest.mark.parametrize("g, count", [(G.symmetric(3), 3), (G.quaternion(), 6), (G.dihedral(4), 6),
                                      (G.alternating(4), 3), (G.elementary_abelian(2, 2), 5),
                                      (G.symmetric(4), 4)], ids=lambda x: getattr(x, "name", x))
def test_normal_subgroup_counts(g, count):
    # counts from the standard subgroup lattices
    assert len(G.normal_subgroups(g)) == count


@pytest.mark.parametrize("g, count", [(G.symmetric(3), 6), (G.quaternion(), 6), (G.dihedral(4), 10),
                                      (G.alternating(4), 10), (G.symmetric(4), 30)],
                         ids=lambda x: getattr(x, "name", x))
def test_subgroup_counts(g, count):
    assert len(G.all_subgroups(g)) == count


def test_orders():
    assert G.symmetric(4).order == 24 and G.alternating(5).order == 60
    assert G.dihedral(5).order == 10 and frobenius_21().order == 21


def test_isomorphism():
    assert G.is_isomorphic(G.cyclic(6), G.direct_product(G.cyclic(2), G.cyclic(3))) is not None
    assert G.is_isomorphic(G.quaternion(), G.dihedral(4)) is None
    assert G.is_isomorphic(G.symmetric(3), G.dihedral(3)) is not None


def test_quotient():
    s4 = G.symmetric(4)
    v4 = [n for n in G.normal_subgroups(s4) if len(n) == 4][0]
    q, hom = G.quotient(s4, v4)
    assert q.order == 6 and not q.is_abelian
    assert hom.is_surjective() and set(hom.kernel()) == set(v4)


def test_semidirect_indexing():
    h = inversion_gamma_group(G.cyclic(3))
    sd = h.semidirect
    assert sd.group.order == 6 and not sd.group.is_abelian
    assert len(sd.normal_part) == 3 and len(sd.gamma_part) == 2
    assert sd.index(1, 1) == 1 * 3 + 1


def test_gamma_action_must_be_automorphisms():
    g = G.cyclic(3)
    with pytest.raises(PreconditionError):
        G.GammaGroup.from_generator_action(g, G.cyclic(2), [[1, 0, 2]])


def test_admissible():
    assert G.is_admissible(inversion_gamma_group(G.cyclic(3)))
    assert G.is_admissible(z3_on_klein())
    assert not G.is_admissible(G.GammaGroup.trivial_action(G.cyclic(3), G.cyclic(2)))
    assert not G.is_admissible(inversion_gamma_group(G.cyclic(4)))


def test_gamma_hom_rejects_non_equivariant():
    src = inversion_gamma_group(G.cyclic(3))
    tgt = G.GammaGroup.trivial_action(G.cyclic(3), G.cyclic(2))
    with pytest.raises(PreconditionError):
        G.GammaHom(src, tgt, G.GroupHom(src.g, tgt.g, np.arange(3)))


@given(st.sampled_from(SMALL), st.data())
def test_normal_closure_is_normal(g, data):
    seeds = data.draw(st.lists(st.integers(0, g.order - 1), max_size=3))
    mask = g.normal_closure_mask(seeds)
    s = np.flatnonzero(mask).tolist()
    assert g.is_normal(s) and all(mask[x] for x in seeds)


@given(st.sampled_from(SMALL), st.data())
def test_subgroup_order_divides(g, data):
    seeds = data.draw(st.lists(st.integers(0, g.order - 1), max_size=3))
    assert g.order % int(g.subgroup_mask(seeds).sum()) == 0
