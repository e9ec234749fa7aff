from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wickgit.errors import PolyParseError, UnknownVariableError
from wickgit.poly import Poly

VARS = ("u", "v", "U", "V")


def test_parse_and_print_roundtrip():
    p = Poly.parse("3*v^2 - 1/2*u*V + 7")
    assert Poly.parse(str(p)) == p
    assert p.degree() == 2


def test_parse_rational_and_parentheses():
    p = Poly.parse("(v + 1)^2 - 2*v", VARS)
    assert p == Poly.parse("v^2 + 1", VARS)
    assert Poly.parse("2/6*u") == Poly.parse("1/3*u")


def test_parse_error_has_column():
    with pytest.raises(PolyParseError) as exc:
        Poly.parse("v + * U")
    assert exc.value.detail["column"] == 5


def test_unknown_variable_rejected():
    with pytest.raises(PolyParseError):
        Poly.parse("x + v")
    with pytest.raises(UnknownVariableError):
        Poly.parse("v^2").diff("U")


def test_diff_and_exact_evaluation():
    p = Poly.parse("v^4 + u*V", VARS)
    assert p.diff("v") == Poly.parse("4*v^3", VARS)
    val = p.evaluate({"u": Fraction(1, 2), "v": 2, "U": 0, "V": Fraction(2, 3)})
    assert val == Fraction(16) + Fraction(1, 3)
    assert isinstance(val, Fraction)
    assert isinstance(p.evaluate([0.5, 2.0, 0.0, 1.0]), float)


def test_zero_is_empty():
    p = Poly.parse("v - v")
    assert p.is_zero() and str(p) == "0" and p.degree() == -1


polys = st.builds(
    lambda terms: Poly(VARS, {e: c for e, c in terms}),
    st.lists(st.tuples(st.tuples(*[st.integers(0, 3)] * 4), st.fractions(max_denominator=5)), max_size=5),
)
points = st.tuples(*[st.fractions(-3, 3, max_denominator=4)] * 4)


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


@settings(max_examples=60, deadline=None)
@given(polys, polys, points)
def test_evaluation_is_a_homomorphism(a, b, pt):
    assert (a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt)
    assert (a + b).evaluate(pt) == a.evaluate(pt) + b.evaluate(pt)


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_leibniz_rule(a, b):
    for x in VARS:
        assert (a * b).diff(x) == a.diff(x) * b + a * b.diff(x)
