import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from smtlab.poly import parse_fixed
from smtlab.position import HypersurfaceFamily, distributive_constant
from smtlab.replace import (
    DimensionProfile,
    ProfileError,
    RetryBudgetExhausted,
    Thresholds,
    delta_from_thresholds,
    dimension_profile,
    m_sequence,
    random_threshold_instance,
    replace_family,
    thresholds_from_profile,
    verify_certificate,
    weighted_product_inequality,
)
from smtlab.variety import EMPTY, Ideal, projective_dimension

X3 = ["x0", "x1", "x2"]
P2 = Ideal.zero(3)
CONIC = Ideal.parse(["x0*x2 - x1^2"], X3)


def polys(*texts):
    return [parse_fixed(t, X3) for t in texts]


def test_profiles():
    assert dimension_profile(P2, polys("x1", "x2", "x1 + x2", "x0")).dims == (1, 0, 0, EMPTY)
    assert dimension_profile(CONIC, polys("x1", "x2")).dims == (0, 0)
    assert dimension_profile(P2, polys("x0")).dims == (1,)
    with pytest.raises(ValueError):
        dimension_profile(P2, polys("x0", "x1^2"))


def test_profile_must_not_increase():
    with pytest.raises(ProfileError):
        DimensionProfile((0, 1))


def test_thresholds_from_profile():
    assert thresholds_from_profile(DimensionProfile((1, 0, 0, EMPTY)), 2).t == (0, 1, 3)
    assert thresholds_from_profile(DimensionProfile((1, 0, EMPTY)), 2).t == (0, 1, 2)
    with pytest.raises(ProfileError):
        thresholds_from_profile(DimensionProfile((EMPTY,)), 2)
    with pytest.raises(ProfileError):
        thresholds_from_profile(DimensionProfile((1, 0)), 2)


def test_replacement_on_p2():
    family = polys("x1", "x2", "x1 + x2", "x0")
    res = replace_family(P2, family, seed=1)
    assert res.polys[0] == family[0]
    assert res.certificate == (1, 0, EMPTY)
    assert res.thresholds.t == (0, 1, 3)
    assert [len(c) for c in res.coefficients] == [1, 2, 4]
    assert verify_certificate(P2, family, res).valid


def test_pencil_through_conic_point_cannot_empty_it():
    # every combination of x1 and x2 vanishes at (1:0:0), which lies on the conic
    with pytest.raises(ProfileError):
        replace_family(CONIC, polys("x1", "x2"))


def test_replacement_on_conic():
    family = polys("x1", "x0 + x2")
    res = replace_family(CONIC, family, seed=0)
    assert res.certificate == (0, EMPTY)
    assert verify_certificate(CONIC, family, res).valid


def test_unit_candidates_when_thresholds_are_consecutive():
    family = polys("x0", "x1", "x2")
    res = replace_family(P2, family, try_unit_first=True)
    assert res.coefficients == ((1,), (0, 1), (0, 0, 1))
    assert res.certificate == dimension_profile(P2, family).dims


def test_certificate_tampering_is_detected():
    family = polys("x1", "x2", "x1 + x2", "x0")
    res = replace_family(P2, family, seed=2)
    forged = res.__class__(((1,), (1, 0), res.coefficients[2]), res.polys, res.certificate,
                           res.retries_used, res.thresholds, res.profile)
    check = verify_certificate(P2, family, forged)
    assert not check.valid and check.messages


def test_budget_exhaustion_reports_step(monkeypatch):
    import smtlab.replace as rp

    family = polys("x0", "x1", "x2")
    real = rp.projective_dimension

    def stubborn(I):
        # every proper combination is reported as failing to cut V down
        return 1 if any(g not in family for g in I.generators) else real(I)

    monkeypatch.setattr(rp, "projective_dimension", stubborn)
    with pytest.raises(RetryBudgetExhausted) as err:
        replace_family(P2, family, retry_budget=3)
    assert err.value.step == 1 and err.value.last_dims


# --- threshold combinatorics ---------------------------------------------------


def test_delta_examples():
    assert delta_from_thresholds((1, 2, 3)) == 1
    assert delta_from_thresholds((1, 3, 4)) == 2
    assert delta_from_thresholds((0, 1, 3)) == Fraction(3, 2)


def test_delta_matches_subset_delta_on_catalog():
    fam = polys("x1", "x2", "x1 + x2", "x0")
    t = thresholds_from_profile(dimension_profile(P2, fam), 2)
    sub = distributive_constant(P2, HypersurfaceFamily.from_polys(fam)).delta
    assert delta_from_thresholds(t) == sub == Fraction(3, 2)


def test_m_sequence_examples():
    assert m_sequence((1, 3, 4)) == [2, 1, 2]
    assert m_sequence((1, 2, 3)) == [1, 1, 1]
    assert m_sequence((1, 2)) == [1, 1]


def test_product_inequality_examples():
    r = weighted_product_inequality((1, 2, 3), (3, 2))
    assert r.holds and r.lhs == 6 and r.rhs == 6
    r = weighted_product_inequality((1, 3, 4), (3, 2))
    assert r.holds and r.lhs == 18 and r.rhs == 36
    r = weighted_product_inequality((1, 3, 4), (3, 1))
    assert r.holds and r.lhs == 9 and r.rhs == 9


def test_product_inequality_fractional_delta():
    r = weighted_product_inequality((0, 1, 3), (5, 2))
    assert r.delta == Fraction(3, 2)
    assert r.lhs_power == (5 * 2 ** 2) ** 2 and r.rhs_power == 10 ** 3 and r.holds


def test_product_inequality_preconditions():
    with pytest.raises(ValueError):
        weighted_product_inequality((1, 2, 3), (2, 3))
    with pytest.raises(ValueError):
        weighted_product_inequality((1, 2, 3), (3, Fraction(1, 2)))
    with pytest.raises(ValueError):
        Thresholds.of((1, 1, 2))


thresholds = st.lists(st.integers(1, 4), min_size=1, max_size=5).flatmap(
    lambda gaps: st.integers(0, 1).map(lambda t0: [t0] + [t0 + sum(gaps[: i + 1]) for i in range(len(gaps))]))


@settings(max_examples=500, deadline=None)
@given(thresholds, st.data())
def test_product_inequality_and_m0(t, data):
    n = len(t) - 1
    a = sorted((Fraction(data.draw(st.integers(10, 100)), 10) for _ in range(n)), reverse=True)
    assert weighted_product_inequality(t, a).holds
    ms = m_sequence(t)
    assert ms[0] == ms[-1] == delta_from_thresholds(t)


def test_offset_convention_does_not_matter():
    rng = random.Random(40)
    for _ in range(50):
        th, a = random_threshold_instance(rng)
        shifted = Thresholds.of([x + 1 for x in th.t])
        assert delta_from_thresholds(th) == delta_from_thresholds(shifted)
        assert m_sequence(th) == m_sequence(shifted)
        assert weighted_product_inequality(th, a).lhs == weighted_product_inequality(shifted, a).lhs


def test_random_replacements_over_p3():
    rng = random.Random(41)
    V = Ideal.zero(4)
    for k in range(5):
        forms = [parse_fixed(t, ["x0", "x1", "x2", "x3"]) for t in ("x0", "x1", "x0 + x1", "x2", "x3")]
        rng.shuffle(forms)
        res = replace_family(V, forms, seed=k)
        assert verify_certificate(V, forms, res).valid
        assert projective_dimension(V.with_generators(res.polys)) is EMPTY
