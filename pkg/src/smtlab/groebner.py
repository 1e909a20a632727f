"""Buchberger's algorithm under grevlex, normal forms, and Hilbert data of
monomial ideals."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Dict, List, Sequence, Tuple

from .poly import (
    Monomial,
    Poly,
    grevlex_key,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
    monomials_of_degree,
)

GREVLEX = "grevlex"

_Terms = Dict[Monomial, Fraction]


def _lm(terms: _Terms) -> Monomial:
    return max(terms, key=grevlex_key)


def _sub_multiple(target: _Terms, coeff: Fraction, shift: Monomial, g: _Terms) -> None:
    for m, c in g.items():
        k = mono_mul(m, shift)
        v = target.get(k, 0) - coeff * c
        if v:
            target[k] = v
        else:
            target.pop(k, None)


def _reduce(terms: _Terms, basis: Sequence[Tuple[Monomial, Fraction, _Terms]]) -> _Terms:
    rem = dict(terms)
    out: _Terms = {}
    while rem:
        m = _lm(rem)
        c = rem[m]
        for lm, lc, g in basis:
            if mono_divides(lm, m):
                _sub_multiple(rem, c / lc, mono_div(m, lm), g)
                break
        else:
            out[m] = c
            del rem[m]
    return out


def _prepared(basis: Sequence[Poly]):
    out = []
    for g in basis:
        if g.is_zero():
            continue
        lm = g.leading_monomial()
        out.append((lm, g.terms[lm], g.terms))
    return out


def normal_form(p: Poly, basis: Sequence[Poly], order: str = GREVLEX) -> Poly:
    """Remainder of full multivariate division of ``p`` by ``basis``."""
    if order != GREVLEX:
        raise ValueError(f"unsupported term order {order!r}")
    rem = _reduce(p.terms, _prepared(basis))
    return Poly(rem, degree=p.degree, nvars=p.nvars)


def s_polynomial(f: Poly, g: Poly) -> Poly:
    lf, lg = f.leading_monomial(), g.leading_monomial()
    l = mono_lcm(lf, lg)
    a = f.shift(mono_div(l, lf)).scale(1 / f.terms[lf])
    b = g.shift(mono_div(l, lg)).scale(1 / g.terms[lg])
    return a - b


@dataclass(frozen=True)
class GroebnerBasis:
    generators: Tuple[Poly, ...]
    order: str = GREVLEX
    nvars: int = 0

    def leading_monomials(self) -> List[Monomial]:
        return [g.leading_monomial() for g in self.generators]

    def reduce(self, p: Poly) -> Poly:
        return normal_form(p, self.generators, self.order)

    def contains(self, p: Poly) -> bool:
        return self.reduce(p).is_zero()

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)


def _monic_terms(terms: _Terms) -> _Terms:
    lc = terms[_lm(terms)]
    return {m: c / lc for m, c in terms.items()}


def buchberger(gens: Sequence[Poly], order: str = GREVLEX, nvars: int | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Pairs are processed by the normal strategy (smallest lcm degree, then
    pair indices), with the coprime and chain criteria.  The output is sorted
    by leading monomial, descending, so it is reproducible.
    """
    if order != GREVLEX:
        raise ValueError(f"unsupported term order {order!r}")
    if nvars is None:
        if not gens:
            raise ValueError("nvars is required for an empty generator list")
        nvars = gens[0].nvars
    basis: List[_Terms] = []
    lms: List[Monomial] = []
    seen = set()
    for g in gens:
        if g.nvars != nvars:
            raise ValueError("generators live in different rings")
        if g.is_zero():
            continue
        t = _monic_terms(g.terms)
        key = frozenset(t.items())
        if key in seen:
            continue
        seen.add(key)
        basis.append(t)
        lms.append(_lm(t))
    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}

    def pair_key(p):
        i, j = p
        return (sum(mono_lcm(lms[i], lms[j])), i, j)

    while pairs:
        i, j = min(pairs, key=pair_key)
        pairs.discard((i, j))
        li, lj = lms[i], lms[j]
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        l = mono_lcm(li, lj)
        if any(
            k != i and k != j
            and mono_divides(lms[k], l)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(basis))
        ):
            continue
        s = {}
        for m, c in basis[i].items():
            s[mono_mul(m, mono_div(l, li))] = c
        _sub_multiple(s, Fraction(1), mono_div(l, lj), basis[j])
        prepared = [(lms[k], Fraction(1), basis[k]) for k in range(len(basis))]
        h = _reduce(s, prepared)
        if h:
            h = _monic_terms(h)
            new = len(basis)
            basis.append(h)
            lms.append(_lm(h))
            pairs.update((k, new) for k in range(new))

    # minimalise, then interreduce
    minimal = [
        basis[k] for k, lm in enumerate(lms)
        if not any(o != k and mono_divides(lms[o], lm) and (lms[o] != lm or o < k)
                   for o in range(len(lms)))
    ]
    reduced: List[_Terms] = []
    for k, t in enumerate(minimal):
        others = [(_lm(o), Fraction(1), o) for o2, o in enumerate(minimal) if o2 != k]
        lm = _lm(t)
        tail = {m: c for m, c in t.items() if m != lm}
        r = _reduce(tail, others)
        r[lm] = Fraction(1)
        reduced.append(r)
    reduced.sort(key=lambda t: grevlex_key(_lm(t)), reverse=True)
    polys = tuple(Poly(t, nvars=nvars) for t in reduced)
    return GroebnerBasis(polys, order, nvars)


def buchberger_criterion_holds(gb: GroebnerBasis) -> bool:
    """Every S-polynomial of ``gb`` reduces to zero modulo ``gb``."""
    gens = list(gb.generators)
    for f, g in combinations(gens, 2):
        if not normal_form(s_polynomial(f, g), gens).is_zero():
            return False
    return True


# ---------------------------------------------------------------------------
# monomial ideals


def minimalize(monos) -> Tuple[Monomial, ...]:
    uniq = sorted(set(tuple(m) for m in monos), key=lambda m: (sum(m), grevlex_key(m)))
    out: List[Monomial] = []
    for m in uniq:
        if not any(mono_divides(o, m) for o in out):
            out.append(m)
    return tuple(sorted(out, key=grevlex_key, reverse=True))


@dataclass(frozen=True)
class MonomialIdeal:
    minimal_generators: Tuple[Monomial, ...]
    nvars: int

    @classmethod
    def from_monomials(cls, monos, nvars: int) -> "MonomialIdeal":
        return cls(minimalize(monos), nvars)

    def contains(self, m: Monomial) -> bool:
        return any(mono_divides(g, m) for g in self.minimal_generators)

    def standard_monomials(self, u: int) -> List[Monomial]:
        return [m for m in monomials_of_degree(self.nvars, u) if not self.contains(m)]


def initial_ideal(gb: GroebnerBasis) -> MonomialIdeal:
    return MonomialIdeal.from_monomials(gb.leading_monomials(), gb.nvars)


def _tpoly_sub(a: List[int], b: List[int]) -> List[int]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


@lru_cache(maxsize=4096)
def _series_numerator(gens: Tuple[Monomial, ...]) -> Tuple[int, ...]:
    """K(t) with Hilbert series K(t)/(1-t)^n, via K(I + m) = K(I) - t^deg(m) K(I : m)."""
    if not gens:
        return (1,)
    *rest, last = gens
    rest = tuple(rest)
    base = list(_series_numerator(rest))
    colon = minimalize(mono_div(g, tuple(min(a, b) for a, b in zip(g, last))) for g in rest)
    shifted = [0] * sum(last) + list(_series_numerator(colon))
    return tuple(_tpoly_sub(base, shifted))


@dataclass(frozen=True)
class HilbertData:
    """Hilbert series data of ``R/M`` for a monomial ideal ``M``.

    ``numerator`` is K(t) in HS = K(t)/(1-t)^nvars; ``h_numerator`` is the
    reduced numerator over (1-t)^affine_dim.
    """

    affine_dim: int
    degree: int
    numerator: Tuple[int, ...]
    h_numerator: Tuple[int, ...]
    nvars: int
    generators: Tuple[Monomial, ...] = field(default=())

    def hf(self, u: int) -> int:
        if u < 0:
            return 0
        n = self.nvars
        if n == 0:
            return self.numerator[u] if u < len(self.numerator) else 0
        return sum(k * comb(u - i + n - 1, n - 1) for i, k in enumerate(self.numerator) if i <= u)


def _combinatorial_affine_dim(gens: Sequence[Monomial], nvars: int) -> int:
    supports = [frozenset(i for i, e in enumerate(g) if e) for g in gens]
    for size in range(nvars, -1, -1):
        for s in combinations(range(nvars), size):
            ss = set(s)
            if not any(sup <= ss for sup in supports):
                return size
    return 0


def monomial_hilbert_data(m: MonomialIdeal, num_vars: int | None = None) -> HilbertData:
    nvars = m.nvars if num_vars is None else num_vars
    gens = tuple(sorted(m.minimal_generators, key=grevlex_key))
    k = list(_series_numerator(gens))
    h = list(k)
    dim = nvars
    while dim > 0 and sum(h) == 0:
        # synthetic division by (1 - t)
        q = []
        acc = 0
        for c in h[:-1]:
            acc += c
            q.append(acc)
        h = q or [0]
        dim -= 1
    comb_dim = _combinatorial_affine_dim(gens, nvars)
    if comb_dim != dim:
        raise RuntimeError(
            f"Hilbert series pole order {dim} disagrees with combinatorial dimension {comb_dim}")
    return HilbertData(dim, sum(h), tuple(k), tuple(h), nvars, gens)
