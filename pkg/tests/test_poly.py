from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from smtlab.poly import (
    MovingPoly,
    NonHomogeneousError,
    Order,
    Poly,
    PoleError,
    PolySyntaxError,
    RationalFunction,
    UnknownVariableError,
    UPoly,
    ZeroDenominatorError,
    evaluate_moving,
    format_poly,
    grevlex_compare,
    mono_mul,
    monomials_of_degree,
    parse_fixed,
    parse_poly,
    parse_upoly,
    poly_arith,
    squarefree_decomposition,
    upoly_gcd,
)

X3 = ["x0", "x1", "x2"]
X2 = ["x0", "x1"]


def P(text, variables=X3):
    return parse_fixed(text, variables)


# --- parsing ---------------------------------------------------------------


def test_parse_conic():
    p = P("x0*x2 - x1^2")
    assert p.degree == 2
    assert p.terms == {(1, 0, 1): 1, (0, 2, 0): -1}


def test_parse_rational_coefficient():
    p = parse_fixed("3/2*x0^2", X2)
    assert p.terms == {(2, 0): Fraction(3, 2)}


def test_parse_rejects_mixed_degrees():
    with pytest.raises(NonHomogeneousError):
        parse_poly("x0 + x1^2", X2)


def test_parse_reports_syntax_position():
    with pytest.raises(PolySyntaxError) as err:
        parse_poly("x0 +* x1", X2)
    assert err.value.position == 4


def test_parse_unknown_variable():
    with pytest.raises(UnknownVariableError):
        parse_poly("x0 + y", X2)


def test_parse_zero_denominator():
    with pytest.raises(ZeroDenominatorError):
        parse_poly("1/0*x0", X2)
    with pytest.raises(ZeroDenominatorError):
        parse_poly("(z/(z-z))*x0", X2)


def test_parse_no_implicit_multiplication():
    with pytest.raises(PolySyntaxError):
        parse_poly("2 x0", X2)


def test_parse_moving_coefficient():
    q = parse_poly("(z/(z-1))*x0 + x1", X2)
    assert not q.is_constant()
    assert q.terms[(1, 0)] == RationalFunction(UPoly([0, 1]), UPoly([-1, 1]))


def test_parse_collects_like_terms():
    assert P("x0*x1 + x1*x0 - 2*x0*x1").is_zero()


def test_parse_fixed_rejects_moving():
    with pytest.raises(ValueError):
        parse_fixed("(z)*x0", X2)


def test_parse_upoly():
    assert parse_upoly("3/2*z^2 - z + 1") == UPoly([1, -1, Fraction(3, 2)])


# --- arithmetic -----------------------------------------------------------


def test_difference_of_squares():
    assert poly_arith("mul", P("x0 + x1"), P("x0 - x1")) == P("x0^2 - x1^2")


def test_cancellation_keeps_degree():
    z = poly_arith("add", P("x0^2"), P("-x0^2"))
    assert z.is_zero() and z.degree == 2


def test_scale():
    assert poly_arith("scale", P("x0*x2 - x1^2"), 2) == P("2*x0*x2 - 2*x1^2")


def test_add_degree_mismatch():
    with pytest.raises(ValueError):
        P("x0") + P("x0^2")


def test_zero_polynomial_needs_degree():
    with pytest.raises(ValueError):
        Poly({})


# --- grevlex ----------------------------------------------------------------


def test_grevlex_examples():
    assert grevlex_compare((0, 2, 0), (1, 0, 1)) == Order.GREATER
    assert grevlex_compare((2, 0, 0), (1, 1, 0)) == Order.GREATER
    assert grevlex_compare((1, 0, 0), (1, 0, 0)) == Order.EQUAL
    with pytest.raises(ValueError):
        grevlex_compare((1, 0), (1, 0, 0))


def test_monomials_of_degree_descending():
    monos = monomials_of_degree(3, 2)
    assert len(monos) == 6
    assert all(grevlex_compare(a, b) == Order.GREATER for a, b in zip(monos, monos[1:]))


monomial3 = st.tuples(*[st.integers(0, 4)] * 3)


@settings(max_examples=300, deadline=None)
@given(monomial3, monomial3, monomial3)
def test_grevlex_total_and_multiplicative(a, b, m):
    ab, ba = grevlex_compare(a, b), grevlex_compare(b, a)
    assert ab == -ba
    assert (ab == Order.EQUAL) == (a == b)
    assert grevlex_compare(mono_mul(a, m), mono_mul(b, m)) == ab


# --- evaluation ---------------------------------------------------------------


def test_evaluate_moving():
    q = parse_poly("(z/(z-1))*x0 + x1", X2)
    assert evaluate_moving(q, 2) == parse_fixed("2*x0 + x1", X2)
    assert evaluate_moving(q, 0) == parse_fixed("x1", X2)
    with pytest.raises(PoleError, match="pole"):
        evaluate_moving(q, 1)


# --- univariate helpers ----------------------------------------------------


def test_rational_function_canonical():
    a = RationalFunction(UPoly([-1, 0, 1]), UPoly([-2, 2]))  # (z^2-1)/(2z-2)
    assert a.den == UPoly([1])
    assert a.num == UPoly([Fraction(1, 2), Fraction(1, 2)])


def test_upoly_gcd_and_squarefree():
    p = UPoly([-1, 1]) ** 3 * UPoly([2, 0, 1])
    assert upoly_gcd(p, UPoly([-1, 1]) ** 2 * UPoly([5, 1])) == UPoly([-1, 1]) ** 2
    parts = {k: s for s, k in squarefree_decomposition(p)}
    assert parts == {1: UPoly([2, 0, 1]), 3: UPoly([-1, 1])}


# --- random polynomials: ring axioms and round-trip ---------------------------


@st.composite
def polys(draw, degree=None, moving=False):
    d = draw(st.integers(0, 3)) if degree is None else degree
    monos = monomials_of_degree(3, d)
    terms = {}
    for m in draw(st.lists(st.sampled_from(monos), max_size=5)):
        c = Fraction(draw(st.integers(-9, 9)), draw(st.integers(1, 5)))
        if moving and draw(st.booleans()):
            c = RationalFunction(UPoly([c, draw(st.integers(-3, 3))]),
                                 UPoly([draw(st.integers(1, 4)), 1]))
        terms[m] = c
    if moving:
        return MovingPoly(terms, degree=d, nvars=3)
    return Poly(terms, degree=d, nvars=3)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_ring_axioms(data):
    d = data.draw(st.integers(0, 2))
    a, b, c = (data.draw(polys(degree=d)) for _ in range(3))
    e = data.draw(polys())
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert e * (b + c) == e * b + e * c
    assert (a * b) * e == a * (b * e)
    for r in (a + b, e * c, a - a):
        assert all(v != 0 for v in r.terms.values())
        assert all(sum(m) == r.degree for m in r.terms)


@settings(max_examples=200, deadline=None)
@given(polys(moving=True))
def test_parse_print_round_trip(p):
    # the text "0" carries no degree, so only nonzero polynomials round-trip
    assume(not p.is_zero())
    text = format_poly(p, X3)
    assert parse_poly(text, X3) == p
