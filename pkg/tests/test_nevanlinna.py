import math
from fractions import Fraction

import numpy as np
import pytest

from smtlab.nevanlinna import (
    CurveSpec,
    DegenerateCompositionError,
    ExpPoly,
    QuadratureConfig,
    QuadratureError,
    SMTScenario,
    characteristic_T,
    circle_mean,
    compose_with_curve,
    counting_N,
    fmt_check,
    locate_zeros,
    polynomial_roots,
    proximity_m,
    ratfun_characteristic,
    slowness_ratio,
    smt_check,
    truncation_bound,
    winding_number,
    zero_count,
)
from smtlab.poly import RationalFunction, UPoly, parse_fixed, parse_poly
from smtlab.position import HypersurfaceFamily
from smtlab.variety import Ideal

X2 = ["x0", "x1"]
X3 = ["x0", "x1", "x2"]
LINE = CurveSpec.polynomial([1], [0, 1])
CONIC_CURVE = CurveSpec.polynomial([1], [0, 1], [0, 0, 1])
EXP_CURVE = CurveSpec.from_coefficients([([1], []), ([1], [0, 1])])
CONIC = Ideal.parse(["x0*x2 - x1^2"], X3)
LINES5 = ["x0", "x2", "x0 + x1 + x2", "x0 + 2*x1 + 4*x2", "x0 - x1 + x2"]


def Q(text, variables=X2):
    return parse_poly(text, variables)


def pure(coeffs):
    return ExpPoly({UPoly(): UPoly(coeffs)})


# --- composition -------------------------------------------------------------


def test_compose_examples():
    assert compose_with_curve(Q("x0*x2 - x1^2", X3), CONIC_CURVE).is_zero()
    assert compose_with_curve(Q("x1", X3), CONIC_CURVE) == pure([0, 1])
    g = compose_with_curve(Q("x0 + x1"), EXP_CURVE)
    assert g == ExpPoly({UPoly(): UPoly([1]), UPoly([0, 1]): UPoly([1])})


def test_compose_moving_coefficients():
    g = compose_with_curve(Q("(z/(z-1))*x0 + x1"), LINE)
    assert g.terms == {UPoly(): UPoly([0, 0, 1])} and g.den == UPoly([-1, 1])
    # a common factor of all coefficients is removed, not counted as zeros and poles
    g = compose_with_curve(Q("(1/(z-1))*x0 + (1/(z-1))*x1"), LINE)
    assert g.terms == {UPoly(): UPoly([1, 1])} and g.den == UPoly([-1, 1])
    g = compose_with_curve(Q("(z-1)*x0 + (z-1)*x1"), LINE)
    assert g.terms == {UPoly(): UPoly([-1, 0, 1])} and g.den == UPoly([1])


def test_compose_variable_mismatch():
    with pytest.raises(ValueError):
        compose_with_curve(Q("x0"), CONIC_CURVE)


def test_exp_poly_evaluation_matches_numpy():
    g = compose_with_curve(Q("x0 + 2*x1"), EXP_CURVE)
    z = np.array([0.3 + 1j, -2.0, 4j])
    assert np.allclose(g(z), 1 + 2 * np.exp(z))


def test_reduced_representation():
    assert LINE.reduced
    assert not CurveSpec.polynomial([0, 1], [0, 2]).reduced
    # the exponential factor never vanishes, so (z, z e^z) is not reduced either
    assert not CurveSpec.from_coefficients([([0, 1], []), ([0, 1], [0, 1])]).reduced
    with pytest.raises(ValueError):
        CurveSpec.polynomial([0], [0])


# --- quadrature and the characteristic -----------------------------------------


def test_characteristic_closed_form():
    assert characteristic_T(LINE, 10) == pytest.approx(0.5 * math.log(101 / 2), abs=1e-12)
    assert characteristic_T(LINE, 1) == 0


def test_characteristic_slope_for_rational_curve():
    T = [characteristic_T(CONIC_CURVE, r) for r in (10.0, 100.0, 1000.0)]
    slope = (T[2] - T[1]) / math.log(10)
    assert slope == pytest.approx(2, rel=1e-3)
    assert all(b > a for a, b in zip(T, T[1:]))


def test_characteristic_of_exponential_curve():
    # ||(1, e^z)|| is dominated by max(1, |e^z|); T(r) ~ r / pi
    T = characteristic_T(EXP_CURVE, 50.0)
    assert T == pytest.approx(50 / math.pi, rel=0.05)


def test_quadrature_refinement_is_stable():
    cfg = QuadratureConfig(initial_nodes=16, tolerance=1e-10)
    a = characteristic_T(CONIC_CURVE, 7.0, cfg)
    b = characteristic_T(CONIC_CURVE, 7.0, QuadratureConfig(initial_nodes=256, tolerance=1e-12))
    assert a == pytest.approx(b, abs=1e-9)


def test_quadrature_budget():
    cfg = QuadratureConfig(initial_nodes=16, tolerance=1e-15, max_doublings=2)
    with pytest.raises(QuadratureError):
        circle_mean(lambda z: np.maximum(np.abs(z.real), 0.0), 1.0, cfg)


def test_quadrature_config_validation():
    with pytest.raises(ValueError):
        QuadratureConfig(initial_nodes=8)
    with pytest.raises(ValueError):
        QuadratureConfig(tolerance=0)


# --- counting ------------------------------------------------------------------


def test_counting_examples():
    assert counting_N(pure([-1, 0, 1]), 2) == pytest.approx(2 * math.log(2))
    assert counting_N(pure([0, 1]), 7) == pytest.approx(math.log(7))
    with pytest.raises(DegenerateCompositionError):
        counting_N(ExpPoly({}), 2)


def test_truncated_counting():
    g = pure([0, 0, 0, 1])  # z^3
    assert counting_N(g, 5) == pytest.approx(3 * math.log(5))
    assert counting_N(g, 5, M=1) == pytest.approx(math.log(5))
    with pytest.raises(ValueError):
        counting_N(compose_with_curve(Q("x0 + x1"), EXP_CURVE), 5, M=1)


def test_polynomial_roots_with_multiplicity():
    p = UPoly([-1, 1]) ** 2 * UPoly([4, 0, 1])
    roots = sorted(polynomial_roots(p), key=lambda x: (x[1], x[0].imag))
    assert roots[0][1] == 1 and roots[1][1] == 1 and roots[2][1] == 2
    assert abs(roots[2][0] - 1) < 1e-30 + 1e-14
    assert {round(r[0].imag, 12) for r in roots[:2]} == {-2.0, 2.0}


def test_exponential_zero_counts():
    g = compose_with_curve(Q("x0 + x1"), EXP_CURVE)
    assert zero_count(g, 10) == 4 and zero_count(g, 4) == 2 and zero_count(g, 1) == 0
    w = winding_number(g, 10)
    assert abs(w.raw - 4) < 1e-3


def test_exponential_zero_locations():
    g = compose_with_curve(Q("x0 + x1"), EXP_CURVE)
    inside, zeros = locate_zeros(g, 1.0, 20.0)
    assert inside == 0 and len(zeros) == 6
    expected = sorted([k * math.pi for k in (1, 3, 5)] * 2)
    assert sorted(abs(z) for z in zeros) == pytest.approx(expected, abs=1e-9)
    N = counting_N(g, 10)
    assert N == pytest.approx(2 * math.log(10 / math.pi) + 2 * math.log(10 / (3 * math.pi)), abs=1e-8)


def test_counting_is_monotone():
    g = compose_with_curve(Q("x0 - x1"), EXP_CURVE)  # zeros at 2 pi i k
    counts = [zero_count(g, t) for t in (0.5, 3.0, 7.0, 13.0, 19.0)]
    assert counts == [1, 1, 3, 5, 7]


# --- proximity and first main theorem ---------------------------------------------


def test_proximity_examples():
    assert proximity_m(LINE, Q("x1"), 10) == pytest.approx(math.log(math.sqrt(101) / 10) - math.log(math.sqrt(2)))
    assert proximity_m(LINE, Q("x0"), 10) == pytest.approx(characteristic_T(LINE, 10))
    assert proximity_m(CurveSpec.polynomial([1], [0]), Q("x0"), 10) == pytest.approx(0, abs=1e-12)
    with pytest.raises(DegenerateCompositionError):
        proximity_m(CONIC_CURVE, Q("x0*x2 - x1^2", X3), 3)


def test_proximity_with_root_on_circle():
    # the root -1 of 1 + z sits on |z| = 1, where the base integral is taken
    m = proximity_m(LINE, Q("x0 + x1"), 5)
    N = counting_N(compose_with_curve(Q("x0 + x1"), LINE), 5)
    assert characteristic_T(LINE, 5) - m - N == pytest.approx(0, abs=1e-9)


def test_fmt_constant_residual():
    rep = fmt_check(LINE, Q("x0 + x1"), [2, 5, 10, 50, 100])
    assert rep.passed and not rep.moving
    rep = fmt_check(CONIC_CURVE, Q("x0 + 3*x1 - x2", X3), [2, 4, 8, 16])
    assert rep.passed


def test_fmt_exponential_curve():
    rep = fmt_check(EXP_CURVE, Q("x0 + x1"), [2, 4, 6, 10, 16])
    assert rep.passed
    assert max(abs(r) for r in rep.residuals) < 1e-7


def test_fmt_moving_target():
    rep = fmt_check(LINE, Q("(z/(z-1))*x0 + x1"), [2, 5, 10, 50, 100])
    assert rep.moving and rep.passed
    for r, rho, T in zip(rep.r_grid, rep.residuals, rep.T):
        assert abs(rho) <= (math.log(r) + 1) + 1e-9
        assert abs(rho) / T <= (math.log(r) + 1) / T


def test_fmt_grid_validation():
    with pytest.raises(ValueError):
        fmt_check(LINE, Q("x1"), [2, 2, 3])
    with pytest.raises(ValueError):
        fmt_check(LINE, Q("x1"), [0.5, 2])


# --- moving coefficients -------------------------------------------------------------


def test_ratfun_characteristic():
    assert ratfun_characteristic(RationalFunction(UPoly([0, 1])), 10) == pytest.approx(math.log(10), abs=1e-6)
    assert ratfun_characteristic(RationalFunction.constant(5), 10) == 0
    a = RationalFunction(UPoly([1, 0, 1]), UPoly([-2, 1]))
    ratio = ratfun_characteristic(a, 1e6) / math.log(1e6)
    assert ratio == pytest.approx(2, rel=0.05)
    with pytest.raises(ValueError):
        ratfun_characteristic(RationalFunction.constant(0), 10)


def test_slowness_ratio():
    assert slowness_ratio(Q("x0 + x1"), LINE, 50) == 0
    assert 0 < slowness_ratio(Q("(z)*x0 + x1"), EXP_CURVE, 50) < 0.5


# --- second main theorem -------------------------------------------------------------


def test_smt_conic_scenario():
    fam = HypersurfaceFamily.parse(LINES5, X3)
    rep = smt_check(SMTScenario(CONIC, CONIC_CURVE, fam, Fraction(1, 2), 5, 200, 12))
    assert (rep.n_f, rep.degree_f, rep.delta_f) == (1, 2, 1)
    assert rep.coefficient == Fraction(5, 2)
    assert rep.fraction_holding == 1 and rep.passed
    for T, left, right, N, margin in zip(rep.T, rep.lhs, rep.rhs, rep.N, rep.margin):
        assert left == pytest.approx(2.5 * T) and right == pytest.approx(sum(N))
        assert margin == pytest.approx(right - left)


def test_smt_p1_scenario():
    fam = HypersurfaceFamily.parse(["x0", "x1", "x0 + x1"], X2)
    rep = smt_check(SMTScenario(Ideal.zero(2), LINE, fam, Fraction(1, 2), 2, 50, 6))
    assert rep.delta_f == 1 and rep.n_f == 1 and rep.passed
    for r, right in zip(rep.r_grid, rep.rhs):
        assert right == pytest.approx(2 * math.log(r))


def test_smt_degenerate_member_is_named():
    fam = HypersurfaceFamily.parse(LINES5[:2], X3).from_polys(
        [parse_poly(t, X3) for t in LINES5[:2]] + [parse_poly("x0*x2 - x1^2", X3)], ["A", "B", "Cq"])
    with pytest.raises(DegenerateCompositionError, match="Cq"):
        smt_check(SMTScenario(CONIC, CONIC_CURVE, fam, Fraction(1, 2), 5, 50, 3))


def test_smt_checks_curve_lies_on_v():
    fam = HypersurfaceFamily.parse(LINES5, X3)
    with pytest.raises(ValueError, match="does not lie on V"):
        smt_check(SMTScenario(CONIC, CurveSpec.polynomial([1], [0, 1], [0, 0, 2]), fam,
                              Fraction(1, 2), 5, 50, 3))


# --- truncation bound ---------------------------------------------------------------


def test_truncation_bound_examples():
    assert truncation_bound(1, Fraction(1, 2)) == 17
    assert truncation_bound(2, Fraction(999, 1000)) == 31
    assert truncation_bound(2, 0.999) == 31
    for q in range(1, 6):
        assert truncation_bound(q, Fraction(1, 3)) >= 1
    with pytest.raises(ValueError):
        truncation_bound(1, 1)
    with pytest.raises(ValueError):
        truncation_bound(0, Fraction(1, 2))


def test_truncation_bound_independent_evaluation():
    for q, eps in [(1, 0.5), (3, 0.25), (7, 0.9)]:
        base = 1 + eps
        expected = math.floor(base ** (math.floor(q / math.log(base) ** 2) + 1))
        assert truncation_bound(q, Fraction(eps).limit_denominator(100)) == expected
