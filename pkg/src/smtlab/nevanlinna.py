"""Numerical Nevanlinna theory for curves z -> (p_i(z) exp(q_i(z)))_i.

Everything here is one complex variable with base radius r0 = 1:

    T_f(r)   = mean log||f|| on |z| = r  minus the same on |z| = 1
    m_f(r,Q) = mean log(||f||^d / |Q(f)|) on |z| = r  minus the same on |z| = 1
    N_g(r)   = integral_1^r n_g(t) dt / t

Circle means use the periodic trapezoidal rule with node doubling.  Zeros of
a composed function are found exactly-then-numerically when it is a
polynomial times an exponential, and by argument-principle contour integrals
otherwise.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import mpmath
import numpy as np

from .poly import (
    MovingPoly,
    Poly,
    RationalFunction,
    UPoly,
    as_moving,
    as_ratfun,
    squarefree_decomposition,
    upoly_gcd,
)
from .position import HypersurfaceFamily, SamplingConfig, distributive_constant
from .variety import EMPTY, EmptyVarietyError, Ideal, projective_dimension, variety_degree

log = logging.getLogger(__name__)

# roots closer than this relative distance to an integration circle are
# integrated analytically rather than by quadrature
SINGULAR_BAND = 0.05
WINDING_TOLERANCE = 1e-3


class QuadratureError(RuntimeError):
    """Node doubling did not reach the requested tolerance."""


class WindingNumberError(RuntimeError):
    """A contour integral did not settle on an integer."""


class DegenerateCompositionError(ValueError):
    """Q(f) vanishes identically."""


@dataclass(frozen=True)
class QuadratureConfig:
    initial_nodes: int = 64
    tolerance: float = 1e-9
    max_doublings: int = 16

    def __post_init__(self):
        if self.initial_nodes < 16:
            raise ValueError("initial_nodes must be at least 16")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.max_doublings < 2:
            raise ValueError("max_doublings must be at least 2")


DEFAULT_QUADRATURE = QuadratureConfig()


def circle_mean(func: Callable[[np.ndarray], np.ndarray], r: float,
                cfg: QuadratureConfig = DEFAULT_QUADRATURE, tolerance: float | None = None):
    """Mean of ``func`` over |z| = r by the trapezoidal rule.

    Nodes are doubled (reusing the old ones) until two successive refinements
    both change the estimate by less than the tolerance.
    """
    tol = cfg.tolerance if tolerance is None else tolerance
    n = cfg.initial_nodes
    theta = 2 * np.pi * np.arange(n) / n
    total = np.sum(func(r * np.exp(1j * theta)))
    est = total / n
    calm = 0
    for _ in range(cfg.max_doublings):
        theta = 2 * np.pi * (np.arange(n) + 0.5) / n
        total = total + np.sum(func(r * np.exp(1j * theta)))
        n *= 2
        new = total / n
        if abs(new - est) < tol:
            calm += 1
            if calm >= 2:
                return new
        else:
            calm = 0
        est = new
    raise QuadratureError(f"circle mean at r={r} not converged to {tol} with {n} nodes")


# ---------------------------------------------------------------------------
# polynomial helpers


def _coeffs_high(p: UPoly) -> np.ndarray:
    return np.array([complex(c) for c in reversed(p.coeffs)], dtype=complex)


def _polyval(p: UPoly, z: np.ndarray) -> np.ndarray:
    if p.is_zero():
        return np.zeros_like(z, dtype=complex)
    return np.polyval(_coeffs_high(p), z)


def polynomial_roots(p: UPoly) -> List[Tuple[complex, int]]:
    """Roots with exact multiplicities (squarefree decomposition), located numerically."""
    out = []
    for s, k in squarefree_decomposition(p):
        if s.degree == 1:
            out.append((complex(-s.coeffs[0] / s.coeffs[1]), k))
            continue
        with mpmath.workdps(60):
            coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(s.coeffs)]
            roots = mpmath.polyroots(coeffs, maxsteps=400, extraprec=200)
        out.extend((complex(rt), k) for rt in roots)
    return out


def _log_abs_factored(lead: Fraction, roots: Sequence[Tuple[complex, int]], z: np.ndarray,
                      skip: Sequence[int] = ()) -> np.ndarray:
    out = np.full(z.shape, math.log(abs(float(lead))))
    for i, (a, k) in enumerate(roots):
        if i not in skip:
            out = out + k * np.log(np.abs(z - a))
    return out


# ---------------------------------------------------------------------------
# curves and exponential polynomials


@dataclass(frozen=True)
class CurveSpec:
    """f = (p_0 e^{q_0}, ..., p_N e^{q_N})."""

    components: Tuple[Tuple[UPoly, UPoly], ...]

    def __post_init__(self):
        if not self.components:
            raise ValueError("a curve needs at least one component")
        if all(p.is_zero() for p, _ in self.components):
            raise ValueError("all curve components vanish identically")

    @classmethod
    def from_coefficients(cls, comps: Sequence) -> "CurveSpec":
        """``comps`` is a list of (p, q) coefficient lists, lowest degree first."""
        return cls(tuple((UPoly(p), UPoly(q)) for p, q in comps))

    @classmethod
    def polynomial(cls, *ps: Sequence) -> "CurveSpec":
        return cls(tuple((UPoly(p), UPoly()) for p in ps))

    @property
    def num_vars(self) -> int:
        return len(self.components)

    @property
    def reduced(self) -> bool:
        """No common zero among the components (exponential factors never vanish)."""
        g = UPoly()
        for p, _ in self.components:
            if not p.is_zero():
                g = upoly_gcd(g, p)
        return g.degree <= 0

    def is_polynomial(self) -> bool:
        return all(q.is_constant() for _, q in self.components)

    def log_norm(self, z: np.ndarray) -> np.ndarray:
        logs = []
        with np.errstate(divide="ignore"):
            for p, q in self.components:
                if p.is_zero():
                    continue
                logs.append(np.log(np.abs(_polyval(p, z))) + _polyval(q, z).real)
        stack = np.vstack(logs)
        top = np.max(stack, axis=0)
        return top + 0.5 * np.log(np.sum(np.exp(2 * (stack - top)), axis=0))

    def degree_bound(self) -> int:
        return max(p.degree for p, _ in self.components)


class ExpPoly:
    """(sum_k c_k(z) exp(e_k(z))) / den(z) with polynomial c_k, e_k, den.

    Terms with equal exponent polynomials are merged; distinct exponents give
    functions independent over rational functions, so the value is zero
    exactly when no terms remain.
    """

    __slots__ = ("terms", "den")

    def __init__(self, terms: Dict[UPoly, UPoly], den: UPoly | None = None):
        merged: Dict[UPoly, UPoly] = {}
        for e, c in terms.items():
            merged[e] = merged[e] + c if e in merged else c
        self.terms = {e: c for e, c in merged.items() if not c.is_zero()}
        self.den = UPoly.constant(1) if den is None else den

    def is_zero(self) -> bool:
        return not self.terms

    def is_pure(self) -> bool:
        """A single exponential term: the zeros are those of a polynomial."""
        return len(self.terms) == 1

    def __eq__(self, other):
        if not isinstance(other, ExpPoly):
            return NotImplemented
        return self.terms == other.terms and self.den == other.den

    def __repr__(self):
        parts = []
        for e, c in self.terms.items():
            parts.append(f"({c})" if e.is_zero() else f"({c})*exp({e})")
        body = " + ".join(parts) or "0"
        return body if self.den.degree <= 0 else f"[{body}] / ({self.den})"

    @property
    def numerator(self) -> "ExpPoly":
        return ExpPoly(self.terms)

    def derivative_numerator(self) -> "ExpPoly":
        return ExpPoly({e: c.derivative() + c * e.derivative() for e, c in self.terms.items()})

    def pure_parts(self) -> Tuple[UPoly, UPoly]:
        (e, c), = self.terms.items()
        return c, e

    def _scaled(self, z: np.ndarray, terms=None):
        terms = self.terms if terms is None else terms
        exps = [(_polyval(e, z), c) for e, c in terms.items()]
        scale = np.max(np.vstack([x.real for x, _ in exps]), axis=0)
        total = np.zeros(z.shape, dtype=complex)
        for x, c in exps:
            total += _polyval(c, z) * np.exp(x - scale)
        return total, scale

    def __call__(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        s, scale = self._scaled(z)
        return s * np.exp(scale) / _polyval(self.den, z)

    def log_abs_numerator(self, z: np.ndarray) -> np.ndarray:
        s, scale = self._scaled(z)
        with np.errstate(divide="ignore"):
            return np.log(np.abs(s)) + scale

    def log_derivative(self, z: np.ndarray) -> np.ndarray:
        """g'/g of the numerator, evaluated with a shared exponential scale."""
        d = self.derivative_numerator()
        exps = {e: _polyval(e, z) for e in self.terms}
        scale = np.max(np.vstack([x.real for x in exps.values()]), axis=0)
        num = np.zeros(z.shape, dtype=complex)
        den = np.zeros(z.shape, dtype=complex)
        for e, c in self.terms.items():
            w = np.exp(exps[e] - scale)
            den += _polyval(c, z) * w
            if e in d.terms:
                num += _polyval(d.terms[e], z) * w
        return num / den


def compose_with_curve(Q, f: CurveSpec) -> ExpPoly:
    """Q(f) with the moving coefficients brought to a common denominator.

    The coefficient vector is made primitive first (common polynomial factors
    of numerators and the common denominator cancel), so zeros and poles that
    come only from rescaling Q are not counted.
    """
    Q = as_moving(Q)
    if Q.nvars != f.num_vars:
        raise ValueError(f"Q has {Q.nvars} variables, the curve has {f.num_vars} components")
    L = UPoly.constant(1)
    for a in Q.terms.values():
        L = (L * a.den) // upoly_gcd(L, a.den)
    powers: Dict[Tuple[int, int], UPoly] = {}

    def ppow(i, k):
        if (i, k) not in powers:
            powers[(i, k)] = f.components[i][0] ** k
        return powers[(i, k)]

    acc: Dict[UPoly, UPoly] = {}
    for mono, a in Q.terms.items():
        c = a.num * (L // a.den)
        expo = UPoly()
        for i, k in enumerate(mono):
            if k:
                c = c * ppow(i, k)
                expo = expo + f.components[i][1] * k
        acc[expo] = acc[expo] + c if expo in acc else c
    g = ExpPoly(acc)
    if g.is_zero():
        return ExpPoly({}, UPoly.constant(1))
    content = L
    for c in g.terms.values():
        content = upoly_gcd(content, c)
    if content.degree > 0:
        g = ExpPoly({e: c // content for e, c in g.terms.items()})
        L = L // content
    return ExpPoly(g.terms, L.monic())


# ---------------------------------------------------------------------------
# zeros via the argument principle


@dataclass(frozen=True)
class WindingResult:
    count: int
    raw: complex
    radius: float
    nodes_converged: bool = True


def winding_number(g: ExpPoly, t: float, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> WindingResult:
    """Number of zeros of the numerator of ``g`` in |z| < t, with multiplicity."""
    if g.is_zero():
        raise DegenerateCompositionError("zero function has no winding number")
    num = g.numerator
    try:
        raw = circle_mean(lambda z: z * num.log_derivative(z), t, cfg, tolerance=1e-9)
    except QuadratureError as exc:
        raise WindingNumberError(f"winding integral at t={t} did not converge") from exc
    count = int(round(raw.real))
    if abs(raw.real - count) > WINDING_TOLERANCE or abs(raw.imag) > WINDING_TOLERANCE:
        raise WindingNumberError(f"winding number {raw} at t={t} is not close to an integer")
    return WindingResult(count, complex(raw), t)


def _robust_winding(g: ExpPoly, t: float, cfg: QuadratureConfig) -> WindingResult:
    """Winding number, nudging the radius once if a zero sits on the contour."""
    try:
        return winding_number(g, t, cfg)
    except WindingNumberError:
        nudged = t * (1 + 1e-4)
        log.info("winding number at t=%g unstable; retrying at %g", t, nudged)
        return winding_number(g, nudged, cfg)


def zero_count(g: ExpPoly, t: float, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> int:
    """n_g(t): zeros of the numerator in |z| < t."""
    if g.is_zero():
        raise DegenerateCompositionError("zero function")
    if g.is_pure():
        c, _ = g.pure_parts()
        return sum(k for a, k in polynomial_roots(c) if abs(a) < t)
    return _robust_winding(g, t, cfg).count


def _power_sums(g: ExpPoly, inner: float, outer: float, k: int, centre: float,
                cfg: QuadratureConfig) -> np.ndarray:
    num = g.numerator
    sums = np.zeros(k + 1, dtype=complex)

    def moments(radius):
        out = []
        for p in range(1, k + 1):
            out.append(circle_mean(lambda z: (z / centre) ** p * z * num.log_derivative(z),
                                   radius, cfg, tolerance=1e-11))
        return np.array(out)

    sums[1:] = moments(outer) - moments(inner)
    sums[0] = k
    return sums


def _newton_polish(g: ExpPoly, a: complex, steps: int = 60) -> complex:
    num = g.numerator
    for _ in range(steps):
        ld = num.log_derivative(np.array([a]))[0]
        if not np.isfinite(ld) or ld == 0:
            break
        step = 1 / ld
        a = a - step
        if abs(step) < 1e-15 * max(1.0, abs(a)):
            break
    return a


def _annulus_zeros(g: ExpPoly, inner: float, outer: float, k: int, cfg: QuadratureConfig) -> List[complex]:
    centre = math.sqrt(inner * outer)
    s = _power_sums(g, inner, outer, k, centre, cfg)
    e = [1.0 + 0j]
    for j in range(1, k + 1):
        acc = sum((-1) ** (i - 1) * e[j - i] * s[i] for i in range(1, j + 1))
        e.append(acc / j)
    poly = [((-1) ** j) * e[j] for j in range(k + 1)]
    roots = np.roots(poly) * centre if k > 0 else []
    return [_newton_polish(g, complex(a)) for a in roots]


def locate_zeros(g: ExpPoly, r_lo: float, r_hi: float,
                 cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> Tuple[int, List[complex]]:
    """Zeros of the numerator with r_lo <= |a| < r_hi, plus the count in |a| < r_lo."""
    if g.is_zero():
        raise DegenerateCompositionError("zero function")
    if g.is_pure():
        c, _ = g.pure_parts()
        roots = polynomial_roots(c)
        inside = sum(k for a, k in roots if abs(a) < r_lo)
        zs = [a for a, k in roots for _ in range(k) if r_lo <= abs(a) < r_hi]
        return inside, zs
    steps = max(1, math.ceil(math.log(r_hi / r_lo) / math.log(1.1)))
    radii = [r_lo * (r_hi / r_lo) ** (i / steps) for i in range(steps + 1)]
    counts = [_robust_winding(g, t, cfg) for t in radii]
    zeros: List[complex] = []
    stack = [(counts[i], counts[i + 1]) for i in range(steps)]
    while stack:
        lo, hi = stack.pop()
        k = hi.count - lo.count
        if k < 0:
            raise WindingNumberError(f"zero count decreased between t={lo.radius} and t={hi.radius}")
        if k == 0:
            continue
        if k > 4 and hi.radius / lo.radius > 1.0 + 1e-6:
            mid = _robust_winding(g, math.sqrt(lo.radius * hi.radius), cfg)
            stack.extend([(lo, mid), (mid, hi)])
            continue
        zeros.extend(_annulus_zeros(g, lo.radius, hi.radius, k, cfg))
    return counts[0].count, sorted(zeros, key=abs)


# ---------------------------------------------------------------------------
# Nevanlinna functionals


def characteristic_T(f: CurveSpec, r: float, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    if r <= 0:
        raise ValueError("radius must be positive")
    if r == 1:
        return 0.0
    at_r = circle_mean(f.log_norm, r, cfg).real
    at_1 = circle_mean(f.log_norm, 1.0, cfg).real
    return float(at_r - at_1)


def counting_N(g: ExpPoly, r: float, M: Optional[int] = None,
               cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """N^{[M]}_g(r) = integral_1^r n(t)/t dt with multiplicities truncated at M.

    ``M=None`` means no truncation.  Truncation needs exact multiplicities,
    which are only available when g is a polynomial times an exponential.
    """
    if g.is_zero():
        raise DegenerateCompositionError("zero function has no counting function")
    if r < 1:
        raise ValueError("counting functions are based at r0 = 1; need r >= 1")
    if M is not None and M < 1:
        raise ValueError("truncation level must be positive")
    if g.is_pure():
        c, _ = g.pure_parts()
        total = 0.0
        for a, k in polynomial_roots(c):
            if abs(a) < r:
                kk = k if M is None else min(k, M)
                total += kk * math.log(r / max(abs(a), 1.0))
        return total
    if M is not None:
        raise ValueError("truncated counting needs exact multiplicities (polynomial case only)")
    inside, zeros = locate_zeros(g, 1.0, r, cfg)
    return inside * math.log(r) + sum(math.log(r / abs(a)) for a in zeros)


def _mean_log_abs_poly(p: UPoly, rho: float, cfg: QuadratureConfig, roots=None) -> float:
    """Mean of log|p| on |z| = rho; roots near the circle are integrated exactly."""
    if p.degree <= 0:
        return math.log(abs(float(p.lead)))
    roots = polynomial_roots(p) if roots is None else roots
    band = [i for i, (a, _) in enumerate(roots) if abs(abs(a) - rho) < SINGULAR_BAND * rho]
    exact = sum(k * math.log(max(rho, abs(a))) for i, (a, k) in enumerate(roots) if i in band)
    if len(band) == len(roots):
        return math.log(abs(float(p.lead))) + exact
    numeric = circle_mean(lambda z: _log_abs_factored(p.lead, roots, z, band), rho, cfg).real
    return float(numeric + exact)


def _mean_log_abs_numerator(g: ExpPoly, rho: float, cfg: QuadratureConfig) -> float:
    if g.is_pure():
        c, e = g.pure_parts()
        # Re e(z) is harmonic: its circle mean is Re e(0)
        return _mean_log_abs_poly(c, rho, cfg) + float(e(Fraction(0)))
    _, near = locate_zeros(g, rho * (1 - SINGULAR_BAND), rho * (1 + SINGULAR_BAND), cfg)
    exact = sum(math.log(max(rho, abs(a))) for a in near)

    def integrand(z):
        out = g.log_abs_numerator(z)
        for a in near:
            out = out - np.log(np.abs(z - a))
        return out

    return float(circle_mean(integrand, rho, cfg).real + exact)


def _mean_log_abs(g: ExpPoly, rho: float, cfg: QuadratureConfig) -> float:
    return _mean_log_abs_numerator(g, rho, cfg) - _mean_log_abs_poly(g.den, rho, cfg)


def proximity_m(f: CurveSpec, Q, r: float, cfg: QuadratureConfig = DEFAULT_QUADRATURE,
                composed: ExpPoly | None = None) -> float:
    """m_f(r, Q) based at r0 = 1."""
    Q = as_moving(Q)
    g = compose_with_curve(Q, f) if composed is None else composed
    if g.is_zero():
        raise DegenerateCompositionError("Q(f) vanishes identically")
    d = Q.degree

    def value(rho):
        return d * circle_mean(f.log_norm, rho, cfg).real - _mean_log_abs(g, rho, cfg)

    return float(value(r) - value(1.0))


@dataclass(frozen=True)
class FMTReport:
    r_grid: Tuple[float, ...]
    T: Tuple[float, ...]
    m: Tuple[float, ...]
    N: Tuple[float, ...]
    residuals: Tuple[float, ...]
    moving: bool
    passed: bool
    criterion: str
    degree: int


def fmt_check(f: CurveSpec, Q, r_grid: Sequence[float],
              cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> FMTReport:
    """Residuals rho(r) = d T_f(r) - m_f(r,Q) - N_{Q(f)}(r) on a radius grid.

    Constant Q passes when rho is flat to 10x the quadrature tolerance.  For
    moving Q the o(T_f) term is not computable, so the pass rule is that
    |rho|/T_f does not increase past the first quarter of the grid.
    """
    grid = [float(r) for r in r_grid]
    if not grid or any(r <= 1 for r in grid) or any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("grid values must exceed 1 and increase")
    Q = as_moving(Q)
    g = compose_with_curve(Q, f)
    if g.is_zero():
        raise DegenerateCompositionError("Q(f) vanishes identically")
    d = Q.degree
    Ts, ms, Ns, rhos = [], [], [], []
    for r in grid:
        T = characteristic_T(f, r, cfg)
        m = proximity_m(f, Q, r, cfg, composed=g)
        N = counting_N(g, r, None, cfg)
        Ts.append(T)
        ms.append(m)
        Ns.append(N)
        rhos.append(d * T - m - N)
    moving = not Q.is_constant()
    tol = 10 * cfg.tolerance
    if not moving:
        passed = max(abs(x - rhos[-1]) for x in rhos) <= tol
        criterion = f"max |rho(r) - rho(r_max)| <= {tol:g}"
    else:
        start = len(grid) // 4
        ratios = [abs(x) / T for x, T in zip(rhos, Ts)]
        passed = all(ratios[i + 1] <= ratios[i] + tol / Ts[i + 1] for i in range(start, len(grid) - 1))
        criterion = "|rho|/T_f non-increasing beyond the first quartile (artifact convention)"
    return FMTReport(tuple(grid), tuple(Ts), tuple(ms), tuple(Ns), tuple(rhos), moving,
                     passed, criterion, d)


def ratfun_characteristic(a, r: float, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """T(r, a) - T(1, a) with T(r, a) = N(r, poles of a) + mean log+|a| on |z| = r."""
    a = as_ratfun(a)
    if a.is_zero():
        raise ValueError("characteristic of the zero function is undefined")
    if r < 1:
        raise ValueError("need r >= 1")
    if a.is_constant() or r == 1:
        return 0.0
    poles = polynomial_roots(a.den) if a.den.degree > 0 else []
    N = sum(k * math.log(r / max(abs(b), 1.0)) for b, k in poles if abs(b) < r)

    def logplus(z):
        with np.errstate(divide="ignore"):
            v = np.log(np.abs(_polyval(a.num, z))) - np.log(np.abs(_polyval(a.den, z)))
        return np.maximum(v, 0.0)

    # log+ has kinks; the trapezoidal rule converges only algebraically there
    loose = max(cfg.tolerance, 1e-7)
    m_r = circle_mean(logplus, r, cfg, tolerance=loose).real
    m_1 = circle_mean(logplus, 1.0, cfg, tolerance=loose).real
    return float(N + m_r - m_1)


# ---------------------------------------------------------------------------
# second main theorem scenarios


@dataclass(frozen=True)
class SMTScenario:
    V: Ideal
    f: CurveSpec
    family: HypersurfaceFamily
    epsilon: Fraction
    r_min: float
    r_max: float
    samples: int = 40
    sampling: SamplingConfig = SamplingConfig()
    quadrature: QuadratureConfig = DEFAULT_QUADRATURE

    def r_grid(self) -> List[float]:
        if self.samples == 1:
            return [float(self.r_min)]
        ratio = self.r_max / self.r_min
        return [float(self.r_min * ratio ** (i / (self.samples - 1))) for i in range(self.samples)]


@dataclass(frozen=True)
class NevanlinnaReport:
    r_grid: Tuple[float, ...]
    T: Tuple[float, ...]
    m: Tuple[Tuple[float, ...], ...]
    N: Tuple[Tuple[float, ...], ...]
    lhs: Tuple[float, ...]
    rhs: Tuple[float, ...]
    margin: Tuple[float, ...]
    fraction_holding: float
    n_f: int
    delta_f: Fraction
    degree_f: int
    coefficient: Fraction
    distributive_stable: bool
    slowness: Tuple[float, ...] = field(default=())
    names: Tuple[str, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return self.fraction_holding >= 0.95


def check_curve_on_variety(V: Ideal, f: CurveSpec) -> None:
    for gen in V.generators:
        if not compose_with_curve(gen, f).is_zero():
            raise ValueError(f"the curve does not lie on V: generator {gen} does not vanish on it")


def slowness_ratio(Q, f: CurveSpec, r: float, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """max over coefficient ratios a_I/a_J of T_{a_I/a_J}(r) / T_f(r)."""
    Q = as_moving(Q)
    lead = Q.leading_coefficient()
    Tf = characteristic_T(f, r, cfg)
    worst = 0.0
    for c in Q.terms.values():
        ratio = c / lead
        if not ratio.is_constant():
            worst = max(worst, ratfun_characteristic(ratio, r, cfg) / Tf)
    return worst


def smt_check(scenario: SMTScenario) -> NevanlinnaReport:
    """Both sides of (q - Delta_f (n_f + 1) - eps) T_f(r) <= sum_i N_{Q_i(f)}(r) / d_i."""
    V, f, fam, cfg = scenario.V, scenario.f, scenario.family, scenario.quadrature
    if V.nvars != f.num_vars or fam.num_vars != f.num_vars:
        raise ValueError("V, the curve and the family must share the ambient space")
    if not f.reduced:
        raise ValueError("the curve components share a common zero; supply a reduced representation")
    n_f = projective_dimension(V)
    if n_f is EMPTY:
        raise EmptyVarietyError("V is empty")
    check_curve_on_variety(V, f)
    composed = []
    for e in fam.entries:
        g = compose_with_curve(e.poly, f)
        if g.is_zero():
            raise DegenerateCompositionError(f"{e.name}: Q(f) vanishes identically")
        composed.append(g)
    degree_f = variety_degree(V)
    report = distributive_constant(V, fam, scenario.sampling)
    delta_f = report.delta
    q = len(fam)
    coefficient = Fraction(q) - delta_f * (n_f + 1) - Fraction(scenario.epsilon)
    grid = scenario.r_grid()
    Ts, ms, Ns, lhs, rhs, margin = [], [], [], [], [], []
    for r in grid:
        T = characteristic_T(f, r, cfg)
        Ts.append(T)
        per_m, per_N = [], []
        for e, g in zip(fam.entries, composed):
            per_m.append(proximity_m(f, e.poly, r, cfg, composed=g))
            per_N.append(counting_N(g, r, None, cfg))
        ms.append(tuple(per_m))
        Ns.append(tuple(per_N))
        left = float(coefficient) * T
        right = sum(N / d for N, d in zip(per_N, fam.degrees))
        lhs.append(left)
        rhs.append(right)
        margin.append(right - left)
    holding = sum(1 for x in margin if x > 0) / len(margin)
    slowness = tuple(slowness_ratio(e.poly, f, grid[-1], cfg) for e in fam.entries)
    return NevanlinnaReport(tuple(grid), tuple(Ts), tuple(ms), tuple(Ns), tuple(lhs), tuple(rhs),
                            tuple(margin), holding, n_f, delta_f, degree_f, coefficient,
                            report.stable, slowness, tuple(e.name for e in fam.entries))


def truncation_bound(q: int, epsilon) -> int:
    """floor((1+eps)^(floor(q / log^2(1+eps)) + 1)) in high precision."""
    if q < 1:
        raise ValueError("q must be at least 1")
    eps = Fraction(epsilon) if not isinstance(epsilon, float) else Fraction(epsilon)
    if not 0 < eps < 1:
        raise ValueError("epsilon must lie in (0, 1)")

    def evaluate(dps):
        with mpmath.workdps(dps):
            base = 1 + mpmath.mpf(eps.numerator) / eps.denominator
            expo = int(mpmath.floor(q / mpmath.log(base) ** 2)) + 1
            return int(mpmath.floor(base ** expo)), expo

    low, high = evaluate(50), evaluate(100)
    if low != high:
        raise ArithmeticError(f"truncation bound unstable across precisions: {low} vs {high}")
    return high[0]
