from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from polarcycle.poly import (
    ParseError,
    Polynomial,
    PolyError,
    UnknownVariable,
    VarContext,
    gradient,
    parse_poly,
    substitute,
    translate,
    vanishing_order,
)

from strategies import XY, XYZ, points, polys, rationals

XYT = VarContext(("x", "y", "t"))


def P(text, ctx=XYT):
    return parse_poly(text, ctx)


def test_parse_and_canonical_print():
    f = P("y*(y^2 - x^3 - t^2*x^2)")
    assert str(f) == "-x^2*y*t^2 - x^3*y + y^3"
    assert str(P("3/2*x - x/2")) == "x"
    assert str(P("0")) == "0"
    assert P("x**2") == P("x^2")
    assert str(P("-(x+1)^2")) == "-x^2 - 2*x - 1"


@pytest.mark.parametrize("text", ["x +", "x ^ y", "(x", "2x", "x^-1", ""])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        P(text)


def test_parse_error_location():
    with pytest.raises(ParseError) as exc:
        P("x + * y")
    assert exc.value.pos == 4


def test_unknown_variable():
    with pytest.raises(UnknownVariable):
        P("x + q")


def test_division_by_constant_only():
    assert P("x^2") / 2 == P("1/2*x^2")
    assert P("x^2 - y^2") / P("x - y") == P("x + y")
    with pytest.raises(PolyError):
        P("x^2 + 1") / P("x")


def test_evaluate_and_gradient():
    f = P("y^2 - x^3 - t^2*x^2")
    assert f.evaluate((-1, 0, 1)) == 0
    assert [str(g) for g in gradient(f)] == ["-2*x*t^2 - 3*x^2", "2*y", "-2*x^2*t"]


def test_vanishing_order():
    F = P("y*(y^2 - x^3 - t^2*x^2)")
    assert vanishing_order(F, (0, 0, 1)) == 3
    assert vanishing_order(F, (-1, 0, 1)) == 2
    assert vanishing_order(F, (0, 0, 0)) == 3
    with pytest.raises(PolyError):
        vanishing_order(P("0"), (0, 0, 0))


def test_embed_and_restrict():
    f = P("x*t + 1")
    zw = XYT.with_cotangent()
    assert zw.names == ("x", "y", "t", "w0", "w1", "w2")
    assert f.embed(zw).restrict(XYT) == f
    with pytest.raises(PolyError):
        parse_poly("w0", zw).restrict(XYT)


def test_substitute_into_other_context():
    st_ = VarContext(("s",))
    s = Polynomial.var(st_, "s")
    f = P("x^2 + y*t")
    assert substitute(f, {"x": s, "y": s, "t": 2 * s}, st_) == 3 * s**2


# properties


@given(polys())
def test_print_parse_round_trip(p):
    assert parse_poly(str(p), XYZ) == p


@given(polys(), polys(), st.sampled_from(["x", "y", "z"]))
def test_leibniz(p, q, v):
    assert (p * q).diff(v) == p.diff(v) * q + p * q.diff(v)


@given(polys(max_deg=2), polys(XY, max_deg=2), polys(XY, max_deg=2), polys(XY, max_deg=2), points(XY))
def test_substitute_commutes_with_evaluation(p, a, b, c, pt):
    q = substitute(p, {"x": a, "y": b, "z": c}, XY)
    inner = tuple(h.evaluate(pt) for h in (a, b, c))
    assert q.evaluate(pt) == p.evaluate(inner)


@given(polys(max_deg=2), polys(max_deg=1), polys(max_deg=1))
def test_substitute_composition(p, a, b):
    once = substitute(substitute(p, {"x": a}), {"y": b})
    both = substitute(p, {"x": substitute(a, {"y": b}), "y": b})
    assert once == both


@given(polys(), st.tuples(rationals, rationals, rationals), points())
def test_translate(p, shift, pt):
    moved = tuple(a + b for a, b in zip(pt, shift))
    assert translate(p, shift).evaluate(pt) == p.evaluate(moved)


@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert p * (q + r) == p * q + p * r
    assert (p * q) * r == p * (q * r)
    assert p - p == Polynomial(XYZ)


@given(polys(max_terms=3), polys(max_terms=3).filter(lambda q: not q.is_zero()))
def test_exact_division(p, q):
    assert (p * q).exact_div(q) == p


def test_rational_coefficients_are_exact():
    f = P("1/3*x + 1/6*x")
    assert f == P("x/2")
    assert f.evaluate((Fraction(2, 3), 0, 0)) == Fraction(1, 3)
