"""Projective invariants of homogeneous ideals: dimension, degree, Hilbert
function and degree-u Macaulay data."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, List, Sequence, Tuple

from . import linalg
from .groebner import (
    GroebnerBasis,
    HilbertData,
    MonomialIdeal,
    buchberger,
    initial_ideal,
    monomial_hilbert_data,
)
from .poly import Monomial, Poly, monomials_of_degree, parse_fixed


class _EmptyType:
    """Dimension of the empty set.  Compares below every integer (dim = -inf)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "EMPTY"

    def __reduce__(self):
        return (_EmptyType, ())

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("EMPTY")

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self


EMPTY = _EmptyType()


class EmptyVarietyError(ValueError):
    pass


class HilbertInconsistencyError(RuntimeError):
    """The two Hilbert-function routes disagree (engine bug)."""


class Ideal:
    """Homogeneous ideal of Q[x0..xN] given by generators.

    Zero generators are dropped; an ideal without generators is the zero
    ideal.  The Groebner basis is computed once, on first use.
    """

    def __init__(self, generators: Iterable[Poly] = (), nvars: int | None = None):
        gens = [g for g in generators]
        if nvars is None:
            if not gens:
                raise ValueError("nvars is required for the zero ideal")
            nvars = gens[0].nvars
        for g in gens:
            if not isinstance(g, Poly):
                raise TypeError(f"ideal generators must be Poly, got {type(g).__name__}")
            if g.nvars != nvars:
                raise ValueError(f"generator over {g.nvars} variables, expected {nvars}")
        self.generators: Tuple[Poly, ...] = tuple(g for g in gens if not g.is_zero())
        self.nvars = nvars
        self._gb: GroebnerBasis | None = None
        self._hilbert: HilbertData | None = None
        self._parts: Dict[int, "DegreePart"] = {}

    @classmethod
    def parse(cls, texts: Sequence[str], variables: Sequence[str]) -> "Ideal":
        return cls([parse_fixed(t, variables) for t in texts], nvars=len(variables))

    @classmethod
    def zero(cls, nvars: int) -> "Ideal":
        return cls((), nvars=nvars)

    def __repr__(self):
        return f"Ideal({list(self.generators)!r}, nvars={self.nvars})"

    def __add__(self, other) -> "Ideal":
        if isinstance(other, Ideal):
            extra = other.generators
        else:
            extra = tuple(other)
        return Ideal(self.generators + tuple(extra), nvars=self.nvars)

    def with_generators(self, polys: Iterable[Poly]) -> "Ideal":
        return self + tuple(polys)

    def groebner_basis(self) -> GroebnerBasis:
        if self._gb is None:
            self._gb = buchberger(self.generators, nvars=self.nvars)
        return self._gb

    def initial_ideal(self) -> MonomialIdeal:
        return initial_ideal(self.groebner_basis())

    def hilbert_data(self) -> HilbertData:
        if self._hilbert is None:
            self._hilbert = monomial_hilbert_data(self.initial_ideal(), self.nvars)
        return self._hilbert

    def contains(self, p: Poly) -> bool:
        return self.groebner_basis().contains(p)


def projective_dimension(I: Ideal):
    """Dimension of V(I) in P^N, or ``EMPTY``."""
    d = I.hilbert_data().affine_dim
    return EMPTY if d == 0 else d - 1


def is_empty(I: Ideal) -> bool:
    return projective_dimension(I) is EMPTY


def variety_degree(I: Ideal) -> int:
    """Degree of the projective scheme (Hilbert-polynomial leading coefficient)."""
    hd = I.hilbert_data()
    if hd.affine_dim == 0:
        raise EmptyVarietyError("the projective zero set is empty")
    return hd.degree


@dataclass(frozen=True)
class DegreePart:
    """Spanning set of I_u in the coordinates ``monomials`` (grevlex descending)."""

    u: int
    monomials: Tuple[Monomial, ...]
    vectors: Tuple[Tuple[Fraction, ...], ...]
    rank: int

    def sparse_rows(self) -> List[Dict[int, Fraction]]:
        return [{j: x for j, x in enumerate(v) if x} for v in self.vectors]


def ideal_degree_part(I: Ideal, u: int) -> DegreePart:
    if u < 0:
        raise ValueError("degree must be nonnegative")
    if u in I._parts:
        return I._parts[u]
    monos = monomials_of_degree(I.nvars, u)
    index = {m: j for j, m in enumerate(monos)}
    vectors = []
    for g in I.generators:
        if g.degree > u:
            continue
        for shift in monomials_of_degree(I.nvars, u - g.degree):
            row = [Fraction(0)] * len(monos)
            for m, c in g.shift(shift).terms.items():
                row[index[m]] = c
            vectors.append(tuple(row))
    part = DegreePart(u, tuple(monos), tuple(vectors), linalg.rank(vectors))
    I._parts[u] = part
    return part


def hilbert_function(I: Ideal, u: int) -> int:
    """H(u), computed from standard monomials and from the Macaulay matrix rank."""
    if u < 0:
        raise ValueError("degree must be nonnegative")
    by_series = I.hilbert_data().hf(u)
    by_count = len(I.initial_ideal().standard_monomials(u))
    by_rank = comb(I.nvars - 1 + u, I.nvars - 1) - ideal_degree_part(I, u).rank
    if not by_series == by_count == by_rank:
        raise HilbertInconsistencyError(
            f"H({u}) mismatch: series {by_series}, standard monomials {by_count}, "
            f"Macaulay rank {by_rank}")
    return by_count


@dataclass(frozen=True)
class VarietyProfile:
    proj_dim: object
    degree: int | None
    hilbert: Tuple[Tuple[int, int], ...]
    degree_convention: str = "scheme (Hilbert polynomial)"

    def H(self, u: int) -> int:
        return dict(self.hilbert)[u]


def variety_profile(I: Ideal, max_u: int = 6) -> VarietyProfile:
    dim = projective_dimension(I)
    deg = None if dim is EMPTY else variety_degree(I)
    hilbert = tuple((u, hilbert_function(I, u)) for u in range(max_u + 1))
    return VarietyProfile(dim, deg, hilbert)
