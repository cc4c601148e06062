from fractions import Fraction
from math import gcd, isqrt

import pytest

from zetadist.exactnum import bernoulli, bernoulli_poly_eval, is_prime
from zetadist.lfunc import (IMAG_QUADRATIC_FIXTURE, BoundExceeded, CharacterFormatError,
                            DirichletChar, PoleAtOne, UnknownFixture, class_number_formula_check,
                            euler_strip, gen_bernoulli, irregular_indices, l_value,
                            minus_class_number, ord_p)

QUAD3 = DirichletChar.parse("chi:3:2:1:2")


def reduced_form_count(D):
    """h(D) for D < 0 by counting reduced forms (a, b, c): |b| <= a <= c."""
    h = 0
    for a in range(1, isqrt(-D // 3) + 1):
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a or gcd(gcd(a, abs(b)), c) != 1:
                continue
            if b < 0 and a == c:
                continue
            h += 1
    return h


def test_fixture_matches_reduced_forms():
    for D, (h, w) in IMAG_QUADRATIC_FIXTURE.items():
        assert reduced_form_count(D) == h, D
        assert w == {-3: 6, -4: 4}.get(D, 2)


def test_gen_bernoulli_examples():
    triv = DirichletChar.trivial()
    for k in range(2, 10):
        assert gen_bernoulli(triv, k) == bernoulli(k)
    assert gen_bernoulli(triv, 1) == Fraction(1, 2)
    assert gen_bernoulli(QUAD3, 1) == Fraction(-1, 3)
    assert gen_bernoulli(QUAD3, 2) == 0


def test_l_value_examples():
    triv = DirichletChar.trivial()
    assert l_value(triv, 2).value == Fraction(-1, 12)
    assert l_value(triv, 12).value == Fraction(691, 32760)
    assert l_value(QUAD3, 1).value == Fraction(1, 3)
    with pytest.raises(PoleAtOne):
        l_value(triv, 1)
    assert l_value(triv, 1, cross_check=True).value == Fraction(-1, 2)


def test_euler_strip_examples():
    z = l_value(DirichletChar.trivial(), 2)
    assert euler_strip(z, set()).value == z.value
    s = euler_strip(z, {3})
    assert s.value == Fraction(1, 6) and s.S == frozenset({3})
    v = l_value(QUAD3, 3)
    assert euler_strip(v, {3}).value == v.value  # 3 divides the conductor


def test_character_format():
    assert QUAD3.serialize() == "chi:3:2:1:2"
    assert QUAD3.conductor == 3 and QUAD3.parity == -1
    for bad in ("chi:3:2:1", "chi:9:2:1:5", "psi:3:2:1:2", "chi:3:1:1:2"):
        with pytest.raises((CharacterFormatError, ValueError)):
            DirichletChar.parse(bad)


def test_character_values_multiplicative():
    chi = DirichletChar.parse("chi:25:2:3:20")
    for a in range(1, 25):
        for b in range(1, 25):
            if a % 5 and b % 5:
                assert chi(a) * chi(b) == chi(a * b)
    assert chi(5).is_zero()
    assert chi.conductor == 25


def imprimitive_bernoulli(chi, m, k):
    """B_{k, chi_m} for chi viewed mod m, straight from the defining sum."""
    total = None
    for a in range(1, m + 1):
        if gcd(a, m) != 1:
            continue
        term = chi(a) * bernoulli_poly_eval(k, Fraction(a, m))
        total = term if total is None else total + term
    return total * Fraction(m) ** (k - 1)


@pytest.mark.parametrize("text,m", [("chi:3:2:1:2", 15), ("chi:5:2:1:4", 10), ("chi:7:3:2:6", 21),
                                    ("chi:1:1:0:1", 6)])
def test_conductor_inflation(text, m):
    chi = DirichletChar.parse(text)
    for k in (1, 2, 3, 4):
        if chi.is_trivial() and k == 1:
            continue
        direct = imprimitive_bernoulli(chi, m, k)
        lv = l_value(chi, k)
        extra = {q for q in range(2, m + 1) if m % q == 0 and is_prime(q)}
        stripped = euler_strip(lv, extra).value * (-k)
        assert direct == stripped


@pytest.mark.parametrize("text", ["chi:3:2:1:2", "chi:5:2:1:4", "chi:7:3:1:6", "chi:5:2:2:4"])
def test_parity_vanishing(text):
    chi = DirichletChar.parse(text)
    for k in range(2, 9):
        if chi.parity != (-1) ** k:
            assert gen_bernoulli(chi, k).is_zero()


def test_class_number_formula():
    q = class_number_formula_check(1)
    assert q["lhs"] == Fraction(-1, 2) and q["pass"]
    assert class_number_formula_check(-3)["lhs"] == Fraction(1, 3)
    assert class_number_formula_check(-23)["lhs"] == 3
    assert all(class_number_formula_check(D)["pass"] for D in IMAG_QUADRATIC_FIXTURE)
    with pytest.raises(UnknownFixture):
        class_number_formula_check(-5)


def test_minus_class_number():
    assert minus_class_number(3) == 1
    assert minus_class_number(23) == 3
    assert ord_p(minus_class_number(37), 37) == 1
    with pytest.raises(BoundExceeded):
        minus_class_number(101)


@pytest.mark.parametrize("p", [q for q in range(3, 51) if is_prime(q)])
def test_kummer_criterion(p):
    h = minus_class_number(p)
    assert isinstance(h, int) and h > 0
    assert (h % p == 0) == bool(irregular_indices(p))


def test_irregular_pairs():
    assert irregular_indices(37) == [32]
    assert irregular_indices(59) == [44]
    assert irregular_indices(67) == [58]
    assert irregular_indices(31) == []


def test_conductor_four_serializes():
    chi = DirichletChar.kronecker(-4)
    assert chi.serialize() == "chi:4:3:1:2"
    assert DirichletChar.parse("chi:4:3:1:2") == chi.primitive()
    with pytest.raises(CharacterFormatError):
        DirichletChar.kronecker(-8).serialize()
