from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from zetadist.exactnum import CycloElem
from zetadist.groupring import (GroupRingElem, MissingRoots, NonInvertibleOrder, NotAUnit,
                                TowerLayer, compose_from_orbits, project, reduced_norm_abelian,
                                rho_compose, rho_decompose)
from zetadist.padic import PadicInt


def one(order):
    return CycloElem.from_rational(order, 1)


def test_layer_shape():
    for p, n in [(3, 0), (3, 2), (5, 1), (7, 2)]:
        L = TowerLayer.get(p, n)
        assert L.order == (p - 1) * p**n == len(list(L.elements()))
        # residues realise (Z/p^(n+1))^* exactly once
        res = {L.residue(i, j) for i, j in L.elements()}
        assert len(res) == L.order and all(r % p for r in res)


def test_artin_symbol_round_trip():
    L = TowerLayer.get(5, 2)
    for a in range(1, 125):
        if a % 5:
            assert L.residue(*L.artin(a)) == a


def test_identity_decomposes_to_ones():
    L = TowerLayer.get(3, 1)
    comps = rho_decompose(GroupRingElem.one(L))
    assert all(v == one(v.order) for v in comps.values())
    assert rho_compose(L, comps) == GroupRingElem.one(L)


def test_order_two_group():
    L = TowerLayer.get(3, 0)  # {1, sigma}, sigma = complex conjugation
    a, b = Fraction(2, 3), Fraction(-5)
    x = GroupRingElem(L, [a, b])
    comps = rho_decompose(x)
    got = sorted(v.to_rational() for v in comps.values())
    assert got == sorted([a + b, a - b])
    assert rho_compose(L, comps) == x


def test_group_element_components_are_roots_of_unity():
    L = TowerLayer.get(5, 1)
    g = (1, 3)
    comps = rho_decompose(GroupRingElem.group_element(L, g))
    for rho, v in comps.items():
        assert v == rho.value(g)
        assert v ** L.order == one(v.order)


@pytest.mark.parametrize("p,n", [(3, 0), (3, 1), (3, 2), (5, 0), (5, 1), (5, 2), (7, 0), (7, 1)])
def test_orthogonality(p, n):
    assert TowerLayer.get(p, n).character_table.orthogonality_defect() == []


def test_orthogonality_p7_n2():
    assert TowerLayer.get(7, 2).character_table.orthogonality_defect() == []


def test_projection_examples():
    L = TowerLayer.get(5, 1)
    c = Fraction(3, 7)
    x = GroupRingElem(L, [c] * L.order)
    assert project(x) == GroupRingElem(L.quotient(), [5 * c] * L.quotient().order)
    assert project(GroupRingElem.one(L)) == GroupRingElem.one(L.quotient())
    L2 = TowerLayer.get(3, 2)
    y = GroupRingElem(L2, [Fraction(i * i - 3, 5) for i in range(L2.order)])
    # composite of two projections = quotient straight to level 0
    direct = [Fraction(0)] * 2
    for (i, j), v in y.items():
        direct[i] += v
    assert project(project(y)) == GroupRingElem(TowerLayer.get(3, 0), direct)


def test_reduced_norm_abelian():
    L = TowerLayer.get(5, 1)
    cert = reduced_norm_abelian(GroupRingElem.one(L))
    assert cert.element == GroupRingElem.one(L)
    reduced_norm_abelian(GroupRingElem.group_element(L, (2, 1)))
    # 1 + sigma_{-1} kills every odd character
    minus_one = L.artin(-1)
    z = GroupRingElem.one(L) + GroupRingElem.group_element(L, minus_one)
    with pytest.raises(NotAUnit) as err:
        reduced_norm_abelian(z)
    assert err.value.components


def test_padic_restrictions():
    L0, L1 = TowerLayer.get(5, 0), TowerLayer.get(5, 1)
    x = GroupRingElem(L0, [PadicInt(a, 5, 6) for a in (1, 7, 0, 3)])
    comps = rho_decompose(x)
    assert rho_compose(L0, comps) == x
    y = GroupRingElem(L1, [PadicInt(a, 5, 6) for a in range(L1.order)])
    with pytest.raises(MissingRoots):
        rho_decompose(y)
    delta_only = {rho: PadicInt(1, 5, 6) for rho in L1.characters() if rho.is_delta_character}
    with pytest.raises(NonInvertibleOrder):
        rho_compose(L1, delta_only)


def test_orbit_composition_matches_generic():
    L = TowerLayer.get(5, 1)
    x = GroupRingElem(L, [Fraction((7 * i) % 11 - 5, 3) for i in range(L.order)])
    comps = rho_decompose(x)
    reps = {rho: comps[rho] for rho in L.character_table.orbit_representatives()}
    assert compose_from_orbits(L, reps) == x


layers = st.sampled_from([(3, 0), (3, 1), (3, 2), (5, 0), (5, 1), (5, 2)])
small = st.fractions(min_value=-9, max_value=9, max_denominator=6)


@st.composite
def elements(draw, layer=None):
    p, n = draw(layers) if layer is None else layer
    L = TowerLayer.get(p, n)
    return GroupRingElem(L, draw(st.lists(small, min_size=L.order, max_size=L.order)))


@settings(max_examples=100, deadline=None)
@given(elements())
def test_dft_round_trip(x):
    assert rho_compose(x.layer, rho_decompose(x)) == x


@settings(max_examples=100, deadline=None)
@given(layers.flatmap(lambda pn: st.tuples(elements(pn), elements(pn))))
def test_decomposition_is_multiplicative(pair):
    x, y = pair
    cx, cy, cxy = rho_decompose(x), rho_decompose(y), rho_decompose(x * y)
    assert all(cxy[r] == cx[r] * cy[r] for r in cxy)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([(3, 1), (3, 2), (5, 1)]).flatmap(lambda pn: st.tuples(elements(pn), elements(pn))))
def test_projection_is_ring_homomorphism(pair):
    x, y = pair
    assert project(x * y) == project(x) * project(y)
    assert project(x + y) == project(x) + project(y)
