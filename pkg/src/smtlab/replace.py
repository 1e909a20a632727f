"""Randomised replacement of a hypersurface chain by n+1 linear combinations
that cut V down one dimension at a time, plus the threshold/exponent
combinatorics that goes with it."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .poly import Poly
from .variety import EMPTY, EmptyVarietyError, Ideal, projective_dimension


class ProfileError(ValueError):
    pass


class RetryBudgetExhausted(RuntimeError):
    def __init__(self, step: int, last_dims: Sequence, budget: int):
        self.step = step
        self.last_dims = list(last_dims)
        super().__init__(
            f"no admissible combination at step u={step} after {budget} retries "
            f"(last candidate dimensions: {self.last_dims})")


def _fmt_dim(d):
    return "EMPTY" if d is EMPTY else d


@dataclass(frozen=True)
class DimensionProfile:
    dims: Tuple[object, ...]

    def __post_init__(self):
        for a, b in zip(self.dims, self.dims[1:]):
            if b > a:
                raise ProfileError(f"dimension profile increases: {[_fmt_dim(d) for d in self.dims]}")


def dimension_profile(V: Ideal, ordered_family: Sequence[Poly]) -> DimensionProfile:
    """D_s = dim(V cap Q_0 cap ... cap Q_s) for each prefix."""
    if not ordered_family:
        raise ValueError("empty family")
    degrees = {q.degree for q in ordered_family}
    if len(degrees) != 1:
        raise ValueError(f"family members must share one degree, got {sorted(degrees)}")
    if projective_dimension(V) is EMPTY:
        raise EmptyVarietyError("V is empty")
    dims = []
    acc = V
    for q in ordered_family:
        acc = acc.with_generators([q])
        dims.append(projective_dimension(acc))
    return DimensionProfile(tuple(dims))


@dataclass(frozen=True)
class Thresholds:
    """Integers t_0 < t_1 < ... < t_n.

    ``t[0]`` is 0 for chains indexed from Q_0 and 1 for the other common
    convention; only differences t_s - t_0 matter downstream.
    """

    t: Tuple[int, ...]
    l: int

    def __post_init__(self):
        if len(self.t) < 1:
            raise ValueError("thresholds need at least t_0")
        if any(b <= a for a, b in zip(self.t, self.t[1:])):
            raise ValueError(f"thresholds must be strictly increasing: {self.t}")
        if self.t[-1] != self.l:
            raise ValueError(f"t_n = {self.t[-1]} must equal l = {self.l}")

    @classmethod
    def of(cls, t: Sequence[int]) -> "Thresholds":
        t = tuple(int(x) for x in t)
        return cls(t, t[-1])

    @property
    def n(self) -> int:
        return len(self.t) - 1

    @property
    def convention(self) -> str:
        return f"t0={self.t[0]}"


def thresholds_from_profile(p: DimensionProfile, n: int) -> Thresholds:
    """t_u = first index s at which D_s <= n - u - 1 (EMPTY counts as -inf)."""
    dims = p.dims
    if dims[-1] is not EMPTY:
        raise ProfileError("the family never empties V; extend it")
    first = dims[0]
    expected = EMPTY if n == 0 else n - 1
    if first != expected:
        raise ProfileError(f"D_0 = {_fmt_dim(first)}, expected n - 1 = {_fmt_dim(expected)}")
    t = []
    for u in range(n + 1):
        target = n - u - 1
        s = next(i for i, d in enumerate(dims) if d is EMPTY or d <= target)
        t.append(s)
    return Thresholds(tuple(t), t[-1])


@dataclass(frozen=True)
class ReplacementResult:
    coefficients: Tuple[Tuple[int, ...], ...]
    polys: Tuple[Poly, ...]
    certificate: Tuple[object, ...]
    retries_used: Tuple[int, ...]
    thresholds: Thresholds
    profile: DimensionProfile

    @property
    def n(self) -> int:
        return len(self.polys) - 1


def _combine(coeffs: Sequence[int], family: Sequence[Poly]) -> Poly:
    acc = Poly.zero(family[0].nvars, family[0].degree)
    for c, q in zip(coeffs, family):
        if c:
            acc = acc + q.scale(c)
    return acc


def replace_family(V: Ideal, ordered_family: Sequence[Poly], seed: int = 0,
                   retry_budget: int = 10, initial_bound: int = 4,
                   try_unit_first: bool = False) -> ReplacementResult:
    """Build P_0 = Q_0 and P_u = sum_{j <= t_u} c_uj Q_j with
    dim(V cap P_0 cap ... cap P_u) <= n - u - 1, each step verified exactly.

    Coefficients are random integers in [-B, B]; B doubles after every
    rejected candidate.  With ``try_unit_first`` the candidate P_u = Q_{t_u}
    is tried before any random draw.
    """
    profile = dimension_profile(V, ordered_family)
    n = projective_dimension(V)
    th = thresholds_from_profile(profile, n)
    rng = random.Random(seed)
    polys = [ordered_family[0]]
    coefficients: List[Tuple[int, ...]] = [(1,)]
    certificate = [profile.dims[0]]
    retries = [0]
    acc = V.with_generators([ordered_family[0]])
    for u in range(1, n + 1):
        tu = th.t[u]
        target = n - u - 1
        bound = initial_bound
        last_dims = []
        accepted = None
        attempts = 0
        while attempts <= retry_budget:
            if try_unit_first and attempts == 0:
                c = tuple(1 if j == tu else 0 for j in range(tu + 1))
            else:
                c = tuple(rng.randint(-bound, bound) for _ in range(tu + 1))
                bound *= 2
            attempts += 1
            if not any(c):
                last_dims.append("zero combination")
                continue
            cand = _combine(c, ordered_family[: tu + 1])
            if cand.is_zero():
                last_dims.append("zero combination")
                continue
            trial = acc.with_generators([cand])
            d = projective_dimension(trial)
            if d is EMPTY or d <= target:
                accepted = (c, cand, trial, d)
                break
            last_dims.append(d)
        if accepted is None:
            raise RetryBudgetExhausted(u, [_fmt_dim(d) if not isinstance(d, str) else d for d in last_dims[-3:]],
                                       retry_budget)
        c, cand, acc, d = accepted
        coefficients.append(c)
        polys.append(cand)
        certificate.append(d)
        retries.append(attempts - 1)
    return ReplacementResult(tuple(coefficients), tuple(polys), tuple(certificate),
                             tuple(retries), th, profile)


@dataclass(frozen=True)
class CertificateCheck:
    valid: bool
    dims: Tuple[object, ...]
    messages: Tuple[str, ...] = ()


def verify_certificate(V: Ideal, ordered_family: Sequence[Poly],
                       result: ReplacementResult) -> CertificateCheck:
    """Recompute every P_u from its stored coefficients and re-derive the dimensions
    from scratch; the stored polynomials and dimensions are not trusted."""
    n = projective_dimension(V)
    msgs = []
    dims = []
    if len(result.coefficients) != n + 1:
        msgs.append(f"expected {n + 1} hypersurfaces, got {len(result.coefficients)}")
    acc = []
    for u, c in enumerate(result.coefficients):
        tu = result.thresholds.t[u]
        if len(c) != tu + 1:
            msgs.append(f"P_{u} combines {len(c)} members, expected t_{u} + 1 = {tu + 1}")
        p = _combine(c, ordered_family[: len(c)])
        if p != result.polys[u]:
            msgs.append(f"stored P_{u} differs from its coefficient vector")
        acc.append(p)
        d = projective_dimension(Ideal(V.generators + tuple(acc), nvars=V.nvars))
        dims.append(d)
        if not (d is EMPTY or d <= n - u - 1):
            msgs.append(f"dim after P_{u} is {_fmt_dim(d)} > {n - u - 1}")
    if dims and dims[-1] is not EMPTY:
        msgs.append("final intersection is not empty")
    return CertificateCheck(not msgs, tuple(dims), tuple(msgs))


# ---------------------------------------------------------------------------
# threshold combinatorics


def _as_thresholds(t) -> Thresholds:
    return t if isinstance(t, Thresholds) else Thresholds.of(t)


def delta_from_thresholds(t) -> Fraction:
    """max over 1 <= s <= n of (t_s - t_0)/s."""
    t = _as_thresholds(t).t
    if len(t) < 2:
        raise ValueError("need at least t_0 and t_1")
    return max(Fraction(t[s] - t[0], s) for s in range(1, len(t)))


def m_sequence(t) -> List[Fraction]:
    """[m_n, ..., m_0] with m_n = Delta and m_i = t_{i+1} - t_i + max(0, m_{i+1} - Delta)."""
    t = _as_thresholds(t).t
    delta = delta_from_thresholds(t)
    n = len(t) - 1
    ms = [delta]
    for i in range(n - 1, -1, -1):
        ms.append(Fraction(t[i + 1] - t[i]) + max(Fraction(0), ms[-1] - delta))
    return ms


@dataclass(frozen=True)
class ProductInequality:
    holds: bool
    lhs: Fraction
    rhs: object
    delta: Fraction
    lhs_power: Fraction
    rhs_power: Fraction


def weighted_product_inequality(t, a: Sequence) -> ProductInequality:
    """a_0^(t_1-t_0) ... a_{n-1}^(t_n-t_{n-1}) <= (a_0 ... a_{n-1})^Delta, exactly.

    For Delta = p/q both sides are raised to the q-th power before comparing;
    ``rhs`` is exact when q = 1 and a float otherwise.
    """
    t = _as_thresholds(t).t
    a = [Fraction(x) for x in a]
    n = len(t) - 1
    if len(a) != n:
        raise ValueError(f"need {n} values a_0..a_(n-1), got {len(a)}")
    if any(x < 1 for x in a) or any(y > x for x, y in zip(a, a[1:])):
        raise ValueError("need a_0 >= a_1 >= ... >= a_(n-1) >= 1")
    delta = delta_from_thresholds(t)
    lhs = Fraction(1)
    for i in range(n):
        lhs *= a[i] ** (t[i + 1] - t[i])
    prod = Fraction(1)
    for x in a:
        prod *= x
    p, q = delta.numerator, delta.denominator
    lhs_q = lhs ** q
    rhs_q = prod ** p
    rhs = rhs_q if q == 1 else float(prod) ** float(delta)
    return ProductInequality(lhs_q <= rhs_q, lhs, rhs, delta, lhs_q, rhs_q)


def random_threshold_instance(rng: random.Random, max_n: int = 5, max_gap: int = 4,
                              max_value: int = 20) -> Tuple[Thresholds, List[Fraction]]:
    """Random strictly increasing thresholds and a non-increasing sequence a_i >= 1."""
    n = rng.randint(1, max_n)
    t = [rng.randint(0, 1)]
    for _ in range(n):
        t.append(t[-1] + rng.randint(1, max_gap))
    a = sorted((Fraction(rng.randint(1, max_value * 4), rng.randint(1, 4)) for _ in range(n)),
               reverse=True)
    a = [max(x, Fraction(1)) for x in a]
    return Thresholds.of(t), a
