import random
from math import comb

import pytest

from smtlab.poly import parse_fixed
from smtlab.variety import (
    EMPTY,
    EmptyVarietyError,
    Ideal,
    hilbert_function,
    ideal_degree_part,
    is_empty,
    projective_dimension,
    variety_degree,
    variety_profile,
)

import oracles
from randgen import random_ideal, random_poly

X3 = ["x0", "x1", "x2"]
X4 = ["x0", "x1", "x2", "x3"]
CONIC = Ideal.parse(["x0*x2 - x1^2"], X3)
CUBIC = Ideal.parse(["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"], X4)


def test_dimensions():
    assert projective_dimension(CONIC) == 1
    assert projective_dimension(Ideal.parse(["x0", "x1", "x2"], X3)) is EMPTY
    assert projective_dimension(Ideal.zero(3)) == 2
    assert is_empty(Ideal.parse(["x0", "x1", "x2"], X3))


def test_degrees():
    assert variety_degree(CONIC) == 2
    assert variety_degree(CUBIC) == 3
    assert variety_degree(Ideal.parse(["x0"], X3)) == 1
    with pytest.raises(EmptyVarietyError):
        variety_degree(Ideal.parse(["x0", "x1", "x2"], X3))


def test_hilbert_function_catalog():
    assert hilbert_function(Ideal.zero(3), 2) == 6
    assert hilbert_function(CUBIC, 2) == 7
    assert hilbert_function(CONIC, 2) == 5
    assert [hilbert_function(CUBIC, u) for u in range(6)] == [1, 4, 7, 10, 13, 16]


def test_degree_parts():
    assert (len(ideal_degree_part(CONIC, 2).vectors), ideal_degree_part(CONIC, 2).rank) == (1, 1)
    assert (len(ideal_degree_part(CONIC, 3).vectors), ideal_degree_part(CONIC, 3).rank) == (3, 3)
    zero = ideal_degree_part(Ideal.zero(3), 4)
    assert zero.vectors == () and zero.rank == 0


def test_profile_flags_degree_convention():
    prof = variety_profile(Ideal.parse(["x0^2"], X3), max_u=3)
    assert prof.proj_dim == 1 and prof.degree == 2
    assert "scheme" in prof.degree_convention


def test_hilbert_function_against_sympy_rank():
    rng = random.Random(4)
    for _ in range(12):
        nvars = rng.randint(2, 3)
        gens = random_ideal(rng, nvars, rng.randint(1, 3))
        I = Ideal(gens, nvars=nvars)
        for u in range(0, 5):
            assert hilbert_function(I, u) == oracles.macaulay_hilbert(gens, nvars, u)


def test_linear_dimension_against_rank():
    rng = random.Random(9)
    for _ in range(30):
        nvars = rng.randint(2, 4)
        forms = [random_poly(rng, nvars, 1, max_terms=nvars) for _ in range(rng.randint(1, nvars + 1))]
        forms = [f for f in forms if not f.is_zero()]
        if not forms:
            continue
        d = projective_dimension(Ideal(forms, nvars=nvars))
        expected = oracles.linear_dimension(forms, nvars)
        assert (d is EMPTY) if expected is None else d == expected


def test_adding_generators_never_raises_dimension():
    rng = random.Random(12)
    for _ in range(20):
        nvars = rng.randint(2, 4)
        I = Ideal(random_ideal(rng, nvars, 1), nvars=nvars)
        J = I.with_generators(random_ideal(rng, nvars, 1))
        assert projective_dimension(J) <= projective_dimension(I)


def test_hypersurface_section_drops_dimension_by_at_most_one():
    rng = random.Random(13)
    for _ in range(30):
        nvars = rng.randint(3, 4)
        I = Ideal(random_ideal(rng, nvars, 1, max_deg=2), nvars=nvars)
        d = projective_dimension(I)
        if d is EMPTY or d < 1:
            continue
        h = random_poly(rng, nvars, rng.randint(1, 2), max_terms=4)
        if h.is_zero():
            continue
        dj = projective_dimension(I.with_generators([h]))
        assert dj is not EMPTY and d - 1 <= dj <= d


def test_generic_hypersurface_drops_dimension_by_exactly_one():
    rng = random.Random(14)
    checked = 0
    for _ in range(15):
        nvars = rng.randint(3, 4)
        I = Ideal(random_ideal(rng, nvars, 1, max_deg=2), nvars=nvars)
        d = projective_dimension(I)
        if d is EMPTY or d < 1:
            continue
        # dense coefficients from a large box avoid every component with high probability
        h = random_poly(rng, nvars, 2, max_terms=100, bound=10 ** 6)
        assert projective_dimension(I.with_generators([h])) == d - 1
        checked += 1
    assert checked >= 5


def test_monomials_count_identity():
    for u in range(5):
        part = ideal_degree_part(CUBIC, u)
        assert len(part.monomials) == comb(u + 3, 3)
