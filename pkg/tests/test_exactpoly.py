from fractions import Fraction

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from chowforge.exactpoly import ExponentOverflow, Q, RingMismatch, RingSpec, parse, serialize

R = RingSpec(["x", "y", "z"])
S = RingSpec(["t0", "t1", "t2", "w"], simplices=[("t0", "t1", "t2")])

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
exps = st.tuples(*[st.integers(0, 3)] * 3)


@st.composite
def polys(draw, ring=R):
    terms = draw(st.dictionaries(exps, coeffs, max_size=5))
    return ring.from_terms({e: Q(c.numerator, c.denominator) for e, c in terms.items()})


@given(polys(), polys(), polys())
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == R.zero()
    assert f * R.one() == f


@given(polys(), polys())
def test_leibniz(f, g):
    for v in ("x", "y", "z"):
        assert (f * g).diff(v) == f.diff(v) * g + f * g.diff(v)


@given(polys())
def test_serialize_round_trip(f):
    assert parse(R, serialize(f)) == f


@given(polys(), polys(), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_evaluation_is_a_ring_hom(f, g, pt):
    point = dict(zip("xyz", pt))
    assert (f * g).evaluate(point) == f.evaluate(point) * g.evaluate(point)
    assert (f + g).evaluate(point) == f.evaluate(point) + g.evaluate(point)


@settings(max_examples=30)
@given(polys(), polys())
def test_substitution_is_a_ring_hom(f, g):
    # functor of points: a substitution composed with evaluation is evaluation at the image point
    x, y, z = R.gens("x", "y", "z")
    sub = {"x": y * z + 1, "y": x - z, "z": x * x}
    fg = (f * g).substitute(sub)
    assert fg == f.substitute(sub) * g.substitute(sub)
    point = {"x": 2, "y": -1, "z": Fraction(1, 3)}
    image = {v: p.evaluate(point) for v, p in sub.items()}
    assert fg.evaluate(point) == (f * g).evaluate(image)


def test_simplex_coordinate_eliminated():
    t0, t1, t2 = S.gens("t0", "t1", "t2")
    assert t0 + t1 + t2 == S.one()
    assert t0 == S.one() - t1 - t2
    assert "t0" not in S.free_vars


def test_parse_examples():
    x, y = R.gens("x", "y")
    assert R.parse("(x+y)^2") == x * x + 2 * x * y + y * y
    assert R.parse("3/2*x - x") == x * Q(1, 2)


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        R.var("x") + S.var("w")


def test_exponent_cap():
    small = RingSpec(["x"], exp_cap=8)
    with pytest.raises(ExponentOverflow):
        small.var("x") ** 9


def test_bad_names_rejected():
    with pytest.raises(ValueError):
        RingSpec(["x", "x"])
    with pytest.raises(ValueError):
        RingSpec(["1x"])
