from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from motzkin_tn.semiring import Poly, format_scalar, parse_scalar, power, scalar_kind

polys = st.dictionaries(st.integers(0, 6), st.integers(-5, 5), max_size=4).map(Poly)


def test_poly_basics():
    t = Poly.var()
    p = (1 + t) * (1 + t)
    assert p == Poly({0: 1, 1: 2, 2: 1})
    assert p.evaluate(2) == 9
    assert p.evaluate(Fraction(1, 2)) == Fraction(9, 4)
    assert Poly({4: 3, 2: 1}).halve_exponents() == Poly({2: 3, 1: 1})
    with pytest.raises(ValueError):
        Poly({3: 1}).halve_exponents()
    assert t**3 == Poly.var(3)
    assert power(t, 0) == 1


@given(polys, polys, polys)
def test_poly_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(polys, st.integers(-3, 3))
def test_evaluation_is_a_homomorphism(a, x):
    b = a * a + 1
    assert b.evaluate(x) == a.evaluate(x) ** 2 + 1


@given(polys)
def test_format_parse_round_trip(p):
    assert parse_scalar(format_scalar(p)) == p


def test_format_examples():
    t = Poly.var()
    assert format_scalar(1 + 2 * t * t + t**4) == "1 + 2*t^2 + t^4"
    assert format_scalar(Fraction(1, 2)) == "1/2"
    assert parse_scalar("3/4") == Fraction(3, 4)
    assert parse_scalar("7") == 7


def test_scalar_kind():
    assert scalar_kind([1, 2]) == "integer"
    assert scalar_kind([1, Fraction(1, 2)]) == "rational"
    assert scalar_kind([Poly.var(), 1]) == "poly_t"
    assert scalar_kind([0.5]) == "float"
    with pytest.raises(TypeError):
        scalar_kind([True])
