import math
import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from localglobal.elliptic import LSeriesProfile, WeierstrassCurve, l_coefficients, l_value, rank_estimate, upper_gamma
from localglobal.elliptic.lseries import _analytic_l, completed_l, terms_needed
from localglobal.errors import NeedConductor, NeedRootNumber, OutOfConvergenceRegion, SIsOne

CURVES = {"[0,-1,1,0,0]": 1, "[0,0,1,-1,0]": -1, "[0,0,1,-7,6]": -1}
PROFILES = {c: LSeriesProfile.for_curve(WeierstrassCurve.parse(c)) for c in CURVES}


@settings(max_examples=80)
@given(st.floats(-3, 4, allow_nan=False), st.floats(0.01, 40, allow_nan=False))
def test_upper_gamma_matches_mpmath(a, x):
    with mpmath.workdps(30):
        ours = upper_gamma(a, x)
        ref = mpmath.gammainc(a, x)
        assert abs(ours - ref) <= mpmath.mpf(10) ** -20 * max(1, abs(ref))


@pytest.mark.parametrize("a", [0, -1, -2])
def test_upper_gamma_nonpositive_integers(a):
    with mpmath.workdps(30):
        for x in (0.05, 0.7, 3.0):
            ref = mpmath.gammainc(a, x)
            assert abs(upper_gamma(a, x) - ref) < mpmath.mpf(10) ** -25 * abs(ref)


def test_coefficients_multiplicative():
    E = PROFILES["[0,-1,1,0,0]"].curve
    a = l_coefficients(E, 200)
    assert a[1:11] == [1, -2, -1, 2, 1, 2, -2, 0, -2, -2]
    for m in range(1, 15):
        for n in range(1, 15):
            if m * n <= 200 and math.gcd(m, n) == 1:
                assert a[m * n] == a[m] * a[n]


@pytest.mark.parametrize("curve", list(CURVES))
def test_root_numbers(curve):
    assert l_value(PROFILES[curve], 2) > 0
    assert PROFILES[curve].root_number == CURVES[curve]


@pytest.mark.parametrize("curve", list(CURVES))
def test_modes_agree(curve):
    prof = PROFILES[curve]
    for s in (1.6, 2, 2.5, 3):
        assert abs(l_value(prof, s, mode="euler", cut=10**4) - l_value(prof, s)) < 1e-3


@pytest.mark.parametrize("curve", list(CURVES))
def test_lambda_symmetry(curve):
    prof = PROFILES[curve]
    l_value(prof, 2)  # selects w
    w = prof.root_number
    T = terms_needed(prof.conductor, 1e-12, (1.3, 0.7))
    for split in (1, 1.1):
        lhs = completed_l(prof, 1.3, w, T, split)
        rhs = completed_l(prof, 0.7, w, T, split)
        assert abs(lhs - w * rhs) < 1e-6


def test_rank_zero_value():
    assert abs(l_value(PROFILES["[0,-1,1,0,0]"], 1)) > 0.1


def test_errors():
    prof = PROFILES["[0,-1,1,0,0]"]
    with pytest.raises(SIsOne):
        rank_estimate(prof, 1)
    with pytest.raises(OutOfConvergenceRegion):
        l_value(prof, 1.2, mode="euler")
    with pytest.raises(NeedConductor):
        l_value(WeierstrassCurve(0, 0, 0, -1, 0), 2)
    fresh = LSeriesProfile.for_curve(WeierstrassCurve.parse("[0,0,1,-1,0]"))
    with pytest.raises(NeedRootNumber):
        _analytic_l(fresh, 2, 50, 1e-8)


def test_supplied_conductor():
    # y^2 = x^3 - x has conductor 32 and rank 0
    prof = LSeriesProfile.for_curve(WeierstrassCurve(0, 0, 0, -1, 0), conductor_value=32)
    assert abs(float(rank_estimate(prof)) - 0) < 0.2
