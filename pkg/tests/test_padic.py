from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from zetadist.padic import (AtLeastN, NotAUnit, NotPIntegral, PadicInt, PrimeMismatch,
                            from_rational, teichmuller, valuation)


def test_from_rational_examples():
    assert from_rational(Fraction(1, 2), 5, 2).residue == 13
    assert from_rational(0, 7, 4).residue == 0
    with pytest.raises(NotPIntegral):
        from_rational(Fraction(1, 5), 5, 3)


def test_teichmuller_examples():
    assert teichmuller(1, 5, 6).residue == 1
    for p in (3, 5, 7):
        assert teichmuller(p - 1, p, 5).residue == p**5 - 1
    assert teichmuller(2, 5, 2).residue == 7
    with pytest.raises(NotAUnit):
        teichmuller(10, 5, 3)


def test_valuation_examples():
    assert valuation(PadicInt(25, 5, 4)) == 2
    assert valuation(PadicInt(3, 5, 4)) == 0
    v = valuation(PadicInt(0, 5, 6))
    assert v == AtLeastN(6) and not v.exact


def test_rejects_p2_and_mixed_primes():
    with pytest.raises(ValueError):
        PadicInt(1, 2, 3)
    with pytest.raises(ValueError):
        PadicInt(1, 9, 3)
    with pytest.raises(PrimeMismatch):
        PadicInt(1, 3, 2) + PadicInt(1, 5, 2)


def test_precision_is_minimum_and_division_keeps_it():
    a, b = PadicInt(7, 5, 6), PadicInt(3, 5, 3)
    assert (a + b).prec == 3 and (a * b).prec == 3
    q = a / PadicInt(2, 5, 6)
    assert q.prec == 6 and (q * 2).residue == 7
    with pytest.raises(NotAUnit):
        a / PadicInt(5, 5, 6)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([3, 5, 7, 37]), st.integers(1, 10**6), st.integers(1, 10**6))
def test_teichmuller_roots_of_unity_and_multiplicative(p, a, b):
    if a % p == 0 or b % p == 0:
        return
    N = 8
    ta, tb = teichmuller(a, p, N), teichmuller(b, p, N)
    assert ta ** (p - 1) == PadicInt(1, p, N)
    assert ta.residue % p == a % p
    assert ta * tb == teichmuller(a * b, p, N)


p_integral = st.tuples(st.integers(-10**6, 10**6), st.integers(1, 10**4))


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([3, 5, 7, 11]), p_integral, p_integral)
def test_from_rational_is_ring_homomorphism(p, x, y):
    if x[1] % p == 0 or y[1] % p == 0:
        return
    q1, q2 = Fraction(*x), Fraction(*y)
    N = 6
    a, b = from_rational(q1, p, N), from_rational(q2, p, N)
    assert a + b == from_rational(q1 + q2, p, N)
    assert a * b == from_rational(q1 * q2, p, N)


def test_valuation_of_product_adds():
    a, b = PadicInt(50, 5, 8), PadicInt(15, 5, 8)
    assert valuation(a * b).value == valuation(a).value + valuation(b).value
