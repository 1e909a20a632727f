"""Hilbert weights S_X(u, c), Chow weights of linear spaces, and the combined
Evertse-Ferretti lower bound."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, List, Sequence, Tuple

from . import linalg
from .linalg import Echelon
from .poly import Monomial, Poly, monomials_of_degree
from .variety import (
    EMPTY,
    EmptyVarietyError,
    Ideal,
    hilbert_function,
    ideal_degree_part,
    projective_dimension,
    variety_degree,
)

BRUTE_FORCE_MAX_MONOMIALS = 20


class OracleScaleError(ValueError):
    pass


class PreconditionError(ValueError):
    pass


def _weights(c: Sequence, nvars: int) -> Tuple[Fraction, ...]:
    c = tuple(Fraction(x) for x in c)
    if len(c) != nvars:
        raise ValueError(f"weight vector has {len(c)} entries, expected {nvars}")
    if any(x < 0 for x in c):
        raise ValueError("weights must be nonnegative")
    return c


def monomial_weight(m: Monomial, c: Sequence[Fraction]) -> Fraction:
    return sum((e * w for e, w in zip(m, c)), Fraction(0))


@dataclass(frozen=True)
class WeightBasisReport:
    basis: Tuple[Monomial, ...]
    value: Fraction
    u: int
    c: Tuple[Fraction, ...]


def _require_nonempty(I: Ideal):
    if projective_dimension(I) is EMPTY:
        raise EmptyVarietyError("the variety is empty")


def max_weight_basis(I: Ideal, u: int, c: Sequence) -> WeightBasisReport:
    """Greedy maximum-weight monomial basis of R_u / I_u.

    Monomial bases of the quotient are the bases of a linear matroid, so
    scanning monomials by decreasing weight and keeping each one independent
    of the current choice modulo I_u attains the maximum.  Ties are scanned in
    grevlex-descending order.
    """
    if u < 1:
        raise ValueError("u must be at least 1")
    _require_nonempty(I)
    c = _weights(c, I.nvars)
    part = ideal_degree_part(I, u)
    target = len(part.monomials) - part.rank
    ech = Echelon()
    for row in part.sparse_rows():
        ech.add(row)
    order = sorted(range(len(part.monomials)),
                   key=lambda j: (-monomial_weight(part.monomials[j], c), j))
    chosen: List[Monomial] = []
    for j in order:
        if len(chosen) == target:
            break
        if ech.add({j: Fraction(1)}):
            chosen.append(part.monomials[j])
    if len(chosen) != target or target != hilbert_function(I, u):
        raise RuntimeError("greedy basis size disagrees with the Hilbert function")
    value = sum((monomial_weight(m, c) for m in chosen), Fraction(0))
    return WeightBasisReport(tuple(chosen), value, u, c)


def hilbert_weight(I: Ideal, u: int, c: Sequence) -> Fraction:
    return max_weight_basis(I, u, c).value


def brute_force_hilbert_weight(I: Ideal, u: int, c: Sequence) -> Fraction:
    """Exhaustive maximum over all monomial subsets of size H(u) that are bases mod I_u."""
    c = _weights(c, I.nvars)
    total = comb(I.nvars - 1 + u, I.nvars - 1)
    if total > BRUTE_FORCE_MAX_MONOMIALS:
        raise OracleScaleError(f"{total} monomials in degree {u}; oracle cap is {BRUTE_FORCE_MAX_MONOMIALS}")
    monos = monomials_of_degree(I.nvars, u)
    rows = []
    for g in I.generators:
        if g.degree <= u:
            for s in monomials_of_degree(I.nvars, u - g.degree):
                sh = g.shift(s)
                rows.append([sh.terms.get(m, Fraction(0)) for m in monos])
    base_rank = linalg.rank(rows)
    h = total - base_rank
    best = None
    for subset in combinations(range(total), h):
        units = [[Fraction(1) if j == k else Fraction(0) for j in range(total)] for k in subset]
        if linalg.rank(rows + units) == base_rank + h:
            w = sum((monomial_weight(monos[k], c) for k in subset), Fraction(0))
            if best is None or w > best:
                best = w
    if best is None:
        raise RuntimeError("no monomial basis found")
    return best


def chow_weight_linear(subspace, c: Sequence, nvars: int | None = None) -> Fraction:
    """Chow weight of a linear subspace of P^N.

    ``subspace`` is either a list of spanning points (rows of coordinates) or
    a set of coordinate indices.  Its Chow form is the determinant of the
    pairing with the spanning matrix, which expands by Cauchy-Binet into
    brackets [J] times the J-minors; the weight is the largest sum of c_j over
    J with a nonzero minor.
    """
    if subspace and all(isinstance(x, int) for x in subspace):
        if nvars is None:
            nvars = len(c)
        idx = sorted(set(subspace))
        points = [[1 if j == i else 0 for j in range(nvars)] for i in idx]
    else:
        points = [list(p) for p in subspace]
    if not points:
        raise ValueError("empty spanning set")
    ncols = len(points[0])
    c = _weights(c, ncols)
    k = len(points)
    if linalg.rank(points) != k:
        raise ValueError(f"{k} points do not span a projective subspace of dimension {k - 1}")
    best = None
    for J in combinations(range(ncols), k):
        minor = [[Fraction(p[j]) for j in J] for p in points]
        if linalg.det(minor) != 0:
            w = sum((c[j] for j in J), Fraction(0))
            if best is None or w > best:
                best = w
    return best


def chow_weight_estimate(I: Ideal, c: Sequence, u: int) -> Fraction:
    """(n+1) * delta * S_X(u, c) / (u * H_X(u)), a finite-u stand-in for e_X(c)."""
    _require_nonempty(I)
    n = projective_dimension(I)
    delta = variety_degree(I)
    if u <= delta:
        raise ValueError(f"u = {u} must exceed the degree {delta}")
    s = hilbert_weight(I, u, c)
    return Fraction((n + 1) * delta) * s / (u * hilbert_function(I, u))


@dataclass(frozen=True)
class EFCheck:
    holds: bool
    lhs: Fraction
    rhs: Fraction
    slack: Fraction
    u: int
    J: Tuple[int, ...]
    u_exceeds_degree: bool

    @property
    def margin(self) -> Fraction:
        return self.lhs - self.rhs


def coordinates_avoid(I: Ideal, J: Iterable[int]) -> bool:
    """True when V(I) meets {x_j = 0 for j in J} emptily."""
    J = list(J)
    extra = [Poly.variable(j, I.nvars) for j in J]
    return projective_dimension(I.with_generators(extra)) is EMPTY


def ef_inequality_check(I: Ideal, c: Sequence, u: int, J: Sequence[int]) -> EFCheck:
    """S_X(u,c)/(u H_X(u)) >= (sum_{j in J} c_j)/(n+1) - (2n+1) delta max(c)/u, exactly."""
    _require_nonempty(I)
    c = _weights(c, I.nvars)
    n = projective_dimension(I)
    delta = variety_degree(I)
    J = tuple(sorted(set(int(j) for j in J)))
    if len(J) != n + 1:
        raise PreconditionError(f"J must have n + 1 = {n + 1} coordinates, got {len(J)}")
    if not coordinates_avoid(I, J):
        raise PreconditionError(f"V meets the coordinate subspace {{x_j = 0 : j in {list(J)}}}")
    s = hilbert_weight(I, u, c)
    lhs = s / (u * hilbert_function(I, u))
    slack = Fraction((2 * n + 1) * delta) * max(c) / u
    rhs = sum((c[j] for j in J), Fraction(0)) / (n + 1) - slack
    return EFCheck(lhs >= rhs, lhs, rhs, slack, u, J, u > delta)
