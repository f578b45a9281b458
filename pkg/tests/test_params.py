import math

import pytest
from hypothesis import given, settings

from levelwalk import RangeError, SumError, WalkParams, single_spectrum, two_level_spectrum, validate
from levelwalk.params import quadratic_roots

from conftest import walk_params


def test_validate_accepts_exact_sum():
    params = validate(0.3, 0.2, 0.3, 0.2)
    assert params.p == 0.3 and params.q == 0.2 and params.r == 0.3
    assert math.isclose(params.s, 0.2, abs_tol=1e-15)


def test_validate_symmetric():
    params = validate(0.25, 0.25, 0.25, 0.25)
    assert params.p + params.q + params.r + params.s == 1.0


def test_validate_renormalizes_small_drift():
    params = validate(0.3, 0.2, 0.3, 0.2 + 5e-10)
    assert abs(params.p + params.q + params.r + params.s - 1.0) <= 1e-12
    assert params.s == 1.0 - 0.3 - 0.2 - 0.3


@pytest.mark.parametrize("raw", [(0.5, 0.5, 0.0, 0.0), (0.3, 0.2, 0.5, 0.0), (1.0, 0.1, 0.1, 0.1),
                                 (-0.1, 0.5, 0.3, 0.3), (float("nan"), 0.2, 0.3, 0.2),
                                 (float("inf"), 0.2, 0.3, 0.2)])
def test_validate_range_errors(raw):
    with pytest.raises(RangeError):
        validate(*raw)


def test_validate_sum_error():
    with pytest.raises(SumError):
        validate(0.3, 0.2, 0.3, 0.25)
    with pytest.raises(SumError):
        validate(0.3, 0.2, 0.3, 0.2 + 2e-9)


def test_direct_construction_is_checked():
    with pytest.raises(SumError):
        WalkParams(0.3, 0.2, 0.3, 0.3)
    with pytest.raises(RangeError):
        WalkParams(0.5, 0.5, 0.0, 0.0)


def test_single_spectrum_p1(p1):
    sp = single_spectrum(p1)
    # quadratic formula on 0.2 x^2 - x + 0.3
    disc = 1 - 4 * 0.3 * 0.2
    assert sp.xi1 == pytest.approx((1 + math.sqrt(disc)) / 0.4, abs=1e-12)
    assert sp.xi2 == pytest.approx((1 - math.sqrt(disc)) / 0.4, abs=1e-12)
    assert sp.xi1 == pytest.approx(4.6794494, abs=1e-7)
    assert sp.xi2 == pytest.approx(0.3205506, abs=1e-7)
    assert sp.zeta == pytest.approx(0.76 ** -0.5, abs=1e-15)
    assert sp.xi1 * sp.xi2 == pytest.approx(1.5, abs=1e-12)


def test_single_spectrum_symmetric(sym):
    sp = single_spectrum(sym)
    assert sp.xi1 == pytest.approx(2 + math.sqrt(3), abs=1e-12)
    assert sp.xi2 == pytest.approx(2 - math.sqrt(3), abs=1e-12)
    assert sp.zeta == pytest.approx(0.75 ** -0.5, abs=1e-15)
    assert sp.xi1 * sp.xi2 == pytest.approx(1.0, abs=1e-12)


def test_two_level_spectrum_p1(p1):
    sp = two_level_spectrum(p1)
    assert sp.mu3 == pytest.approx(3.0, abs=1e-12)
    assert sp.mu4 == pytest.approx(0.5, abs=1e-12)
    assert sp.zeta2 == pytest.approx(2.0, abs=1e-12)
    assert sp.mu1 == pytest.approx((1.3 + math.sqrt(1.45)) / 0.4, abs=1e-12)
    assert sp.mu2 == pytest.approx((1.3 - math.sqrt(1.45)) / 0.4, abs=1e-12)
    assert sp.mu1 == pytest.approx(6.2603986, abs=1e-7)
    assert sp.mu2 == pytest.approx(0.2396014, abs=1e-7)
    assert sp.zeta1 == pytest.approx(1.45 ** -0.5, abs=1e-12)


def test_small_root_has_no_cancellation():
    # p*q tiny: the textbook (c - sqrt(c^2-4pq))/(2q) loses every digit
    large, small, _ = quadratic_roots(1e-9, 1e-9, 1.0)
    assert small == pytest.approx(1e-9, rel=1e-8)
    assert large * small == pytest.approx(1.0, rel=1e-12)


@settings(max_examples=1000, deadline=None)
@given(walk_params(floor=1e-3))
def test_spectrum_invariants(params):
    p, q, r = params.p, params.q, params.r
    sp = single_spectrum(params)
    for x in (sp.xi1, sp.xi2):
        assert abs(q * x * x - x + p) <= 1e-11 * max(1.0, q * x * x)
    assert sp.xi2 < 1 < sp.xi1
    assert sp.zeta > 1
    assert sp.xi1 * sp.xi2 == pytest.approx(p / q, rel=1e-12)
    assert sp.xi1 + sp.xi2 == pytest.approx(1 / q, rel=1e-12)

    tw = two_level_spectrum(params)
    for x, c in ((tw.mu1, 1 + r), (tw.mu2, 1 + r), (tw.mu3, 1 - r), (tw.mu4, 1 - r)):
        assert abs(q * x * x - c * x + p) <= 1e-11 * max(1.0, q * x * x)
    assert tw.mu2 < tw.mu4 < 1 < tw.mu3 < tw.mu1
    assert tw.zeta2 > tw.zeta1 > 0
    assert tw.mu1 * tw.mu2 == pytest.approx(p / q, rel=1e-12)
    assert tw.mu3 * tw.mu4 == pytest.approx(p / q, rel=1e-12)


@settings(max_examples=300, deadline=None)
@given(walk_params())
def test_reflection_maps_small_root_to_inverse_large_root(params):
    sp = single_spectrum(params)
    ref = single_spectrum(params.swapped())
    assert ref.xi2 == pytest.approx(1 / sp.xi1, abs=1e-12)
    assert ref.zeta == pytest.approx(sp.zeta, abs=1e-12)
