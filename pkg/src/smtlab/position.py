"""Distributive constants, subgeneral-position checks and genericity sampling
for families of moving hypersurfaces."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from .poly import MovingPoly, PoleError, Poly, as_moving, evaluate_moving, parse_poly
from .variety import EMPTY, EmptyVarietyError, Ideal, projective_dimension

log = logging.getLogger(__name__)

MAX_FAMILY_SIZE = 15


class _InfiniteType:
    """Codimension of the empty intersection; compares above every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"

    def __reduce__(self):
        return (_InfiniteType, ())

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("INFINITE")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True


INFINITE = _InfiniteType()


class SubsetCapExceeded(ValueError):
    pass


class ContainmentError(ValueError):
    """Some hypersurface contains V at every sampled parameter value."""


class SamplingError(RuntimeError):
    """No admissible sample point could be drawn."""


@dataclass(frozen=True)
class Hypersurface:
    name: str
    degree: int
    poly: MovingPoly

    def __post_init__(self):
        if self.poly.degree != self.degree:
            raise ValueError(f"{self.name}: declared degree {self.degree}, polynomial has {self.poly.degree}")
        if self.poly.is_zero():
            raise ValueError(f"{self.name}: hypersurface polynomial is identically zero")


@dataclass(frozen=True)
class HypersurfaceFamily:
    entries: Tuple[Hypersurface, ...]
    num_vars: int

    def __post_init__(self):
        for e in self.entries:
            if e.poly.nvars != self.num_vars:
                raise ValueError(f"{e.name} lives over {e.poly.nvars} variables, expected {self.num_vars}")
        names = [e.name for e in self.entries]
        if len(set(names)) != len(names):
            raise ValueError(f"hypersurface names are not unique: {names}")

    @classmethod
    def from_polys(cls, polys: Sequence, names: Sequence[str] | None = None) -> "HypersurfaceFamily":
        polys = [as_moving(p) for p in polys]
        if not polys:
            raise ValueError("empty family")
        names = list(names) if names is not None else [f"Q{i + 1}" for i in range(len(polys))]
        return cls(tuple(Hypersurface(n, p.degree, p) for n, p in zip(names, polys)), polys[0].nvars)

    @classmethod
    def parse(cls, texts: Sequence[str], variables: Sequence[str],
              names: Sequence[str] | None = None) -> "HypersurfaceFamily":
        return cls.from_polys([parse_poly(t, variables) for t in texts], names)

    def __len__(self):
        return len(self.entries)

    @property
    def polys(self) -> List[MovingPoly]:
        return [e.poly for e in self.entries]

    @property
    def degrees(self) -> List[int]:
        return [e.degree for e in self.entries]

    def is_constant(self) -> bool:
        return all(p.is_constant() for p in self.polys)

    def evaluate(self, z0) -> List[Poly]:
        return [evaluate_moving(p, z0) for p in self.polys]


@dataclass(frozen=True)
class SamplingConfig:
    seed: int = 0
    num_points: int = 5
    coeff_bound: int = 100

    def __post_init__(self):
        if self.num_points < 3:
            raise ValueError("num_points must be at least 3")
        if self.coeff_bound < 1:
            raise ValueError("coeff_bound must be positive")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be an unsigned 64-bit integer")


def _specialize(polys: Sequence[MovingPoly], z0) -> Optional[List[Poly]]:
    try:
        out = [evaluate_moving(p, z0) for p in polys]
    except PoleError:
        return None
    if any(p.is_zero() for p in out):
        return None
    return out


def draw_samples(polys: Sequence[MovingPoly], cfg: SamplingConfig,
                 accept: Callable[[Fraction, List[Poly]], bool] | None = None,
                 max_tries: int | None = None) -> List[Tuple[Fraction, List[Poly]]]:
    """Random rational parameter values avoiding poles and vanishing specialisations."""
    rng = random.Random(cfg.seed)
    max_tries = max_tries or 50 * cfg.num_points
    out = []
    seen = set()
    for _ in range(max_tries):
        if len(out) == cfg.num_points:
            break
        z0 = Fraction(rng.randint(-cfg.coeff_bound, cfg.coeff_bound), rng.randint(1, cfg.coeff_bound))
        if z0 in seen:
            continue
        seen.add(z0)
        spec = _specialize(polys, z0)
        if spec is None or (accept is not None and not accept(z0, spec)):
            continue
        out.append((z0, spec))
    if len(out) < cfg.num_points:
        raise SamplingError(
            f"only {len(out)} of {cfg.num_points} admissible samples in {max_tries} draws; "
            "increase coeff_bound")
    return out


def codim_in_V(V: Ideal, polys: Sequence[Poly]):
    """dim V - dim(V cap Z(polys)), or INFINITE when the intersection is empty."""
    dim_v = projective_dimension(V)
    if dim_v is EMPTY:
        raise EmptyVarietyError("V is empty")
    return _codim(V, dim_v, polys)


def _codim(V: Ideal, dim_v: int, polys: Sequence[Poly]):
    d = projective_dimension(V.with_generators(polys))
    return INFINITE if d is EMPTY else dim_v - d


@dataclass(frozen=True)
class DistributiveReport:
    delta: Fraction
    witness: Tuple[int, ...]
    table: Dict[Tuple[int, ...], object]
    stable: bool
    samples_used: Tuple[Fraction, ...]
    per_sample_delta: Tuple[Fraction, ...] = ()
    dim_V: int = 0


def _subset_table(V: Ideal, dim_v: int, polys: Sequence[Poly]) -> Dict[Tuple[int, ...], object]:
    """Codimension of every nonempty subset (1-based indices).

    Depth-first in lexicographic order; once a subset meets V emptily, all its
    supersets are recorded as INFINITE without further computation.
    """
    q = len(polys)
    table: Dict[Tuple[int, ...], object] = {}

    def visit(subset: Tuple[int, ...]):
        c = _codim(V, dim_v, [polys[i - 1] for i in subset])
        table[subset] = c
        if c is INFINITE:
            return
        for k in range(subset[-1] + 1, q + 1):
            visit(subset + (k,))

    for i in range(1, q + 1):
        visit((i,))
    for size in range(2, q + 1):
        for s in combinations(range(1, q + 1), size):
            if s not in table:
                table[s] = INFINITE
    return table


def _delta_from_table(table) -> Tuple[Fraction, Tuple[int, ...]]:
    best, witness = Fraction(0), ()
    for s in sorted(table, key=lambda s: (len(s), s)):
        c = table[s]
        if c is INFINITE:
            continue
        if c == 0:
            raise ContainmentError(f"subset {set(s)} contains V")
        ratio = Fraction(len(s), c)
        if ratio > best:
            best, witness = ratio, s
    return best, witness


def _check_family(V: Ideal, fam: HypersurfaceFamily):
    if fam.num_vars != V.nvars:
        raise ValueError(f"family over {fam.num_vars} variables, V over {V.nvars}")
    if len(fam) > MAX_FAMILY_SIZE:
        raise SubsetCapExceeded(f"family has {len(fam)} members; the exhaustive cap is {MAX_FAMILY_SIZE}")
    dim_v = projective_dimension(V)
    if dim_v is EMPTY:
        raise EmptyVarietyError("V is empty")
    return dim_v


def _generic_samples(V: Ideal, fam: HypersurfaceFamily, dim_v: int, cfg: SamplingConfig):
    """Samples at which no member contains V.

    A member that contains V at every draw violates the standing hypothesis
    and raises ``ContainmentError``.
    """
    bad_counts = [0] * len(fam)

    def accept(z0, spec):
        ok = True
        for i, p in enumerate(spec):
            if _codim(V, dim_v, [p]) == 0:
                bad_counts[i] += 1
                ok = False
        return ok

    try:
        return draw_samples(fam.polys, cfg, accept)
    except SamplingError:
        worst = max(range(len(fam)), key=lambda i: bad_counts[i])
        if bad_counts[worst]:
            raise ContainmentError(
                f"{fam.entries[worst].name} contains V at the sampled parameter values") from None
        raise


def distributive_constant(V: Ideal, fam: HypersurfaceFamily,
                          cfg: SamplingConfig = SamplingConfig()) -> DistributiveReport:
    """Max over subsets G of #G / codim_V(intersection of G), at generic z.

    Evaluated at ``cfg.num_points`` random parameter values; the largest value
    is reported and ``stable`` says whether every sample agreed.
    """
    dim_v = _check_family(V, fam)
    samples = _generic_samples(V, fam, dim_v, cfg)
    cache: Dict[Tuple[Poly, ...], Dict] = {}
    results = []
    for z0, spec in samples:
        key = tuple(spec)
        if key not in cache:
            cache[key] = _subset_table(V, dim_v, spec)
        table = cache[key]
        delta, witness = _delta_from_table(table)
        results.append((delta, witness, table))
    deltas = tuple(r[0] for r in results)
    best = max(range(len(results)), key=lambda i: (results[i][0], -i))
    delta, witness, table = results[best]
    stable = len(set(deltas)) == 1
    if not stable:
        log.warning("distributive constant differs across samples: %s", [str(d) for d in deltas])
    return DistributiveReport(delta, witness, table, stable,
                              tuple(z for z, _ in samples), deltas, dim_v)


@dataclass(frozen=True)
class SubgeneralResult:
    holds: bool
    violating_subset: Optional[Tuple[int, ...]] = None
    sample: Optional[Fraction] = None
    l: int = 0


def subgeneral_position_check(V: Ideal, fam: HypersurfaceFamily, l: int,
                              cfg: SamplingConfig = SamplingConfig()) -> SubgeneralResult:
    """Every (l+1)-subset of the family misses V at all sampled parameters."""
    dim_v = _check_family(V, fam)
    if len(fam) < l + 1:
        raise ValueError(f"need at least l+1 = {l + 1} hypersurfaces, have {len(fam)}")
    samples = _generic_samples(V, fam, dim_v, cfg)
    seen = set()
    for z0, spec in samples:
        key = tuple(spec)
        if key in seen:
            continue
        seen.add(key)
        for s in combinations(range(1, len(fam) + 1), l + 1):
            if projective_dimension(V.with_generators([spec[i - 1] for i in s])) is not EMPTY:
                return SubgeneralResult(False, s, z0, l)
    return SubgeneralResult(True, None, None, l)


@dataclass(frozen=True)
class GenericityResult:
    values: Tuple[object, ...]
    samples: Tuple[Fraction, ...]
    stable: bool
    disagreeing: Tuple[Fraction, ...] = field(default=())


def genericity_sample(obj: Union[HypersurfaceFamily, Sequence[MovingPoly]],
                      cfg: SamplingConfig = SamplingConfig(), V: Ideal | None = None,
                      samples: Sequence = None) -> GenericityResult:
    """Evaluate a parameter-dependent invariant at random z and compare.

    For a list of moving polynomials the invariant is the projective dimension
    of their common zero set; for a family it is the full subset-codimension
    table relative to ``V`` (default: the whole space).
    """
    if isinstance(obj, HypersurfaceFamily):
        polys = obj.polys
    else:
        polys = [as_moving(p) for p in obj]
    if not polys:
        raise ValueError("nothing to sample")
    nvars = polys[0].nvars
    if samples is not None:
        drawn = []
        for z0 in samples:
            spec = _specialize(polys, Fraction(z0))
            if spec is not None:
                drawn.append((Fraction(z0), spec))
        if not drawn:
            raise SamplingError("every supplied sample is a pole or a vanishing point")
    else:
        drawn = draw_samples(polys, cfg)
    values = []
    if isinstance(obj, HypersurfaceFamily):
        V = V or Ideal.zero(nvars)
        dim_v = projective_dimension(V)
        for _, spec in drawn:
            values.append(_subset_table(V, dim_v, spec))
    else:
        base = V or Ideal.zero(nvars)
        for _, spec in drawn:
            values.append(projective_dimension(base.with_generators(spec)))
    reference = values[0]
    disagreeing = tuple(z for (z, _), v in zip(drawn, values) if v != reference)
    return GenericityResult(tuple(values), tuple(z for z, _ in drawn), not disagreeing, disagreeing)


def subgeneral_index(V: Ideal, fam: HypersurfaceFamily, cfg: SamplingConfig = SamplingConfig()) -> Optional[int]:
    """Smallest l (>= dim V) for which the family is in l-subgeneral position, if any."""
    dim_v = _check_family(V, fam)
    for l in range(dim_v, len(fam)):
        if subgeneral_position_check(V, fam, l, cfg).holds:
            return l
    return None
