import math
import random

import mpmath
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from bentmodes.specfun import (
    MAX_ARG,
    MIN_ARG,
    BesselDomainError,
    bessel_jy,
    cross_product,
    cross_product_scale,
)

mpmath.mp.dps = 30


def series_j(order, x, terms=80):
    """Power series for J, summed in extended precision (independent oracle)."""
    with mpmath.workdps(40):
        half = mpmath.mpf(x) / 2
        total = mpmath.mpf(0)
        for k in range(terms):
            total += (-1) ** k * half ** (2 * k + order) / (mpmath.factorial(k) * mpmath.gamma(k + order + 1))
        return float(total)


def reference(order, x):
    kw = {"maxprec": 100000, "maxterms": 10**6}
    return mpmath.besselj(order, x, **kw), mpmath.bessely(order, x, **kw)


def test_half_order_closed_form_at_quarter_period():
    pair = bessel_jy(0.5, math.pi / 2)
    assert pair.j_val == pytest.approx(2 / math.pi, rel=1e-14)
    assert abs(pair.y_val) < 1e-15


def test_first_zero_of_j0_from_series_bisection():
    lo, hi = 2.0, 3.0
    f_lo = series_j(0, lo)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if (series_j(0, mid) < 0) == (f_lo < 0):
            lo = mid
        else:
            hi = mid
    assert lo == pytest.approx(2.40482555769577, abs=1e-13)
    assert abs(bessel_jy(0, 2.40482555769577).j_val) < 1e-10


def test_order_above_argument_decays():
    pair = bessel_jy(20, 5)
    # golden values from mpmath at 30 digits
    assert 0 < pair.j_val < 1e-10
    assert pair.y_val < -1e8
    assert pair.j_val == pytest.approx(2.77033005212894168739e-11, rel=1e-12)
    assert pair.y_val == pytest.approx(-593396529.691432069214, rel=1e-12)


@pytest.mark.parametrize("order", [0.5, 1.5, 2.5])
def test_half_integer_closed_forms(order):
    for x in [0.1 + 0.5 * j for j in range(100)]:
        s, c = math.sin(x), math.cos(x)
        amp = math.sqrt(2 / (math.pi * x))
        if order == 0.5:
            j, y = amp * s, -amp * c
        elif order == 1.5:
            j, y = amp * (s / x - c), -amp * (c / x + s)
        else:
            j = amp * ((3 / x**2 - 1) * s - 3 * c / x)
            y = -amp * ((3 / x**2 - 1) * c + 3 * s / x)
        pair = bessel_jy(order, x)
        scale = amp * (1 + 3 / x**2)
        assert abs(pair.j_val - j) <= 1e-10 * max(abs(j), 1e-2 * scale)
        assert abs(pair.y_val - y) <= 1e-10 * max(abs(y), 1e-2 * scale)


def test_wronskian_on_random_envelope_points():
    rng = random.Random(20240101)
    worst = 0.0
    done = 0
    while done < 1000:
        order = rng.uniform(0.0, 100.0)
        x = 10 ** rng.uniform(math.log10(MIN_ARG), math.log10(MAX_ARG))
        pair = bessel_jy(order, x)
        if not math.isfinite(pair.y_val) or abs(pair.y_val) > 1e300:
            continue
        w = pair.j_val * pair.yp_val - pair.jp_val * pair.y_val
        worst = max(worst, abs(w - 2 / (math.pi * x)) * math.pi * x / 2)
        done += 1
    assert worst <= 1e-9


def test_accuracy_against_high_precision_reference():
    rng = random.Random(7)
    points = [(rng.uniform(0, 100), 10 ** rng.uniform(-6, 4)) for _ in range(120)]
    points += [(20.564, 8.675), (20.564, 26.03), (0.0, 1.0e4), (8540.5, 8540.0), (3688.3, 8675.0)]
    for order, x in points:
        jr, yr = reference(order, x)
        if abs(yr) > 1e300:
            continue
        pair = bessel_jy(order, x)
        for got, ref in ((pair.j_val, jr), (pair.y_val, yr)):
            ref = float(ref)
            if abs(ref) < 1e-280:
                continue
            err = abs(got - ref)
            assert err <= 1e-10 * abs(ref) or err <= 1e-12, (order, x, got, ref)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.0, 99.0), st.floats(0.01, 500.0))
def test_continuity_in_order(order, x):
    a = bessel_jy(order, x)
    b = bessel_jy(order + 1e-9, x)
    assume(math.isfinite(a.y_val) and math.isfinite(b.y_val))
    assert abs(a.j_val - b.j_val) <= 1e-6 * (1 + abs(a.j_val))
    assert abs(a.y_val - b.y_val) <= 1e-6 * (1 + abs(a.y_val))


def test_integer_order_has_no_reflection_breakdown():
    for order in (0.0, 1.0, 2.0, 5.0):
        for delta in (0.0, 1e-7, 1e-5):
            jr, yr = reference(order + delta, 3.3)
            pair = bessel_jy(order + delta, 3.3)
            assert pair.y_val == pytest.approx(float(yr), rel=1e-12)
            assert pair.j_val == pytest.approx(float(jr), rel=1e-12)


@pytest.mark.parametrize(
    "order, x",
    [(-0.1, 1.0), (1.0, 0.0), (1.0, -2.0), (1.0, 1e-7), (1.0, 2e4), (2e4, 1.0), (math.nan, 1.0)],
)
def test_domain_errors(order, x):
    with pytest.raises(BesselDomainError):
        bessel_jy(order, x)


def test_cross_product_golden_value():
    # J_1(2) Y_1(1) - J_1(1) Y_1(2) from mpmath at 30 digits
    assert cross_product(1.0, 1.0, 1.0, 2.0) == pytest.approx(-0.403445129988319628772, rel=1e-12)


def test_cross_product_vanishes_for_coincident_walls():
    assert cross_product(20.564, 17.35, 0.7, 0.7) == 0.0


@settings(max_examples=100, deadline=None)
@given(st.floats(1.0, 40.0), st.floats(0.5, 30.0), st.floats(0.1, 2.0), st.floats(0.1, 2.0))
def test_cross_product_antisymmetric(alpha, h, a, b):
    assert cross_product(alpha, h, a, b) == -cross_product(alpha, h, b, a)


def test_cross_product_changes_sign_at_tabulated_root():
    h, r1, r2 = 17.35070218626903, 0.5, 1.5
    lo = cross_product(math.hypot(20.52, 1.0), h, r1, r2)
    hi = cross_product(math.hypot(20.56, 1.0), h, r1, r2)
    assert lo * hi < 0
    scale = cross_product_scale(math.hypot(20.54, 1.0), h, r1, r2)
    assert abs(cross_product(math.hypot(20.541049055924468, 1.0), h, r1, r2)) < 1e-6 * scale
