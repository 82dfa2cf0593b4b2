import pytest

from conftest import heavy
from hilbstab.curves import fixture
from hilbstab.fan import (
    enumerate_initial_ideals,
    flip,
    groebner_cone,
    interior_point,
    primitive_vector,
    random_generic_weight,
)
from hilbstab.groebner import MonomialIdeal, buchberger, initial_ideal
from hilbstab.polyring import Ideal, Ring, TermOrder, parse_polynomial

def test_primitive_vector():
    assert primitive_vector([2, 4, -6]) == (1, 2, -3)
    assert primitive_vector([0, 0]) == (0, 0)


def test_interior_point():
    w = interior_point([(1, -1, 0), (0, 1, -1)])
    assert w[0] > w[1] > w[2]
    assert interior_point([(1, 0), (-1, 0)]) is None


def test_cone_contains_its_witness():
    I = fixture("twisted_cubic")
    G = buchberger(I, TermOrder((5, 3, 2, 1)))
    c = groebner_cone(G)
    assert c.contains(c.witness)
    assert initial_ideal(I, c.witness).ideal == c.initial_ideal


def test_flip_crosses_one_facet():
    I = fixture("twisted_cubic")
    G = buchberger(I)
    c = groebner_cone(G)
    for f in c.facets:
        H = flip(c, f)
        assert H.initial_ideal() != c.initial_ideal
        assert len(H.elements) >= 1


def test_twisted_cubic_fan():
    fan = enumerate_initial_ideals(fixture("twisted_cubic"))
    assert fan.complete
    assert len(fan) == 8
    # every initial ideal is degree-3 saturated with Hilbert polynomial 3t+1
    for J in fan.initial_ideals():
        for m in (1, 2, 3, 4):
            assert len(J.standard_monomials(m)) == 3 * m + 1


def test_fan_is_reproducible_and_worker_independent():
    I = fixture("twisted_cubic")
    a = enumerate_initial_ideals(I).to_json()
    b = enumerate_initial_ideals(I, workers=2).to_json()
    assert a == b


def test_budget_stops_early():
    fan = enumerate_initial_ideals(fixture("ribbon_g4"), budget_cones=3)
    assert not fan.complete
    assert len(fan) == 3


def test_random_weight_is_seeded_and_generic():
    a = random_generic_weight(6, seed=4)
    assert a == random_generic_weight(6, seed=4)
    assert len(set(a)) == 6


def test_fan_rejects_inhomogeneous():
    R = Ring(("x", "y"))
    with pytest.raises(ValueError):
        enumerate_initial_ideals(Ideal(R, (parse_polynomial("x^2-y", R),)))


@heavy
def test_wiman_genus3_full_fan():
    fan = enumerate_initial_ideals(fixture("wiman3"))
    assert fan.complete
    assert len(fan) == 4615
