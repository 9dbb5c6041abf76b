import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from couponmax import exact
from couponmax.errors import ConvergenceError
from couponmax.maxprob import _exact_integrand
from couponmax.quadrature import QuadratureSpec, QuadratureResult, integrate, normal_cdf_complement
from couponmax.zeta import hurwitz_zeta

TIGHT = QuadratureSpec(abs_tol=1e-15, rel_tol=1e-13)


def composite_midpoint(f, lo, hi, n):
    h = (hi - lo) / n
    x = lo + h * (np.arange(n) + 0.5)
    return h * math.fsum(f(x))


def test_polynomial_exact():
    res = integrate(lambda x: x * x, 0.0, 1.0)
    assert isinstance(res, QuadratureResult)
    assert abs(res.value - 1 / 3) < 1e-12
    assert res.error_estimate <= max(1e-14, 1e-10 / 3)


def test_flat_endpoint_integrand_against_composite_rule():
    def f(x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore", over="ignore"):
            return np.where(x < 1, np.exp(-1 / (1 - x)) / np.sqrt(np.abs(1 - x)), 0.0)

    ref = composite_midpoint(f, 0.0, 1.0, 1_000_000)
    got = integrate(f, 0.0, 1.0, TIGHT, vectorized=True).value
    assert abs(got - ref) < 1e-10


def test_p1_weighted_zeta_integral():
    p1 = exact.p_poly(1)
    res = integrate(lambda x: p1(x) * hurwitz_zeta(2.0, x + 1.0), 0.0, 1.0, TIGHT)
    # zeta'(0) + 1 with zeta'(0) = -ln(2 pi)/2
    assert res.value == pytest.approx(1 - 0.5 * math.log(2 * math.pi), abs=1e-12)
    assert res.value == pytest.approx(0.0810614668, abs=1e-10)


def test_log_singularity():
    res = integrate(lambda x: math.log(x) ** 3, 0.0, 1.0, TIGHT)
    assert res.value == pytest.approx(-6.0, rel=1e-12)


def test_points_seed_partition():
    res = integrate(lambda x: abs(x - 0.3), 0.0, 1.0, points=[0.3])
    assert res.value == pytest.approx(0.29, abs=1e-14)


def test_budget_exhaustion_carries_partial_value():
    spec = QuadratureSpec(abs_tol=1e-15, rel_tol=1e-12, max_subdivisions=3)
    with pytest.raises(ConvergenceError) as info:
        integrate(lambda x: math.sin(1 / x), 1e-4, 1.0, spec)
    assert math.isfinite(info.value.value)
    assert info.value.error_estimate > 0


def test_non_finite_is_hard_error():
    with pytest.raises(ConvergenceError):
        integrate(lambda x: math.inf if x > 0.5 else 1.0, 0.0, 1.0)


def test_bad_arguments():
    with pytest.raises(ValueError):
        integrate(lambda x: x, 1.0, 0.0)
    with pytest.raises(ValueError):
        QuadratureSpec(rel_tol=1e-3)
    with pytest.raises(ValueError):
        QuadratureSpec(abs_tol=0.0)
    with pytest.raises(ValueError):
        QuadratureSpec(max_subdivisions=2_000_000)


def test_deterministic():
    f = _exact_integrand(3)
    a = integrate(f, 0.0, 0.999, vectorized=True)
    b = integrate(f, 0.0, 0.999, vectorized=True)
    assert a == b


@given(st.floats(-3, 3), st.floats(-3, 3))
def test_linearity(alpha, beta):
    f = lambda x: math.exp(-x * x)
    g = lambda x: math.cos(3 * x)
    lhs = integrate(lambda x: alpha * f(x) + beta * g(x), -1.0, 2.0).value
    rhs = alpha * integrate(f, -1.0, 2.0).value + beta * integrate(g, -1.0, 2.0).value
    assert abs(lhs - rhs) <= 1e-10 * (abs(alpha) + abs(beta)) + 1e-14


@given(st.floats(0.05, 0.95))
def test_interval_additivity_table1_integrand(b):
    f = _exact_integrand(3)
    whole = integrate(f, 0.0, 0.999, vectorized=True).value
    parts = integrate(f, 0.0, b, vectorized=True).value + integrate(f, b, 0.999, vectorized=True).value
    assert abs(whole - parts) <= 1e-10 * whole


def test_normal_tail_values():
    assert normal_cdf_complement(0.0) == 0.5
    z = math.pi * math.sqrt(3) / 3
    density = lambda t: math.exp(-t * t / 2) / math.sqrt(2 * math.pi)
    ref = integrate(density, z, 40.0, QuadratureSpec(abs_tol=1e-17, rel_tol=1e-14)).value
    assert abs(normal_cdf_complement(z) - ref) <= 1e-14 * ref
    assert normal_cdf_complement(z) == pytest.approx(0.034854310219210316, rel=1e-14)


def test_normal_far_tail():
    # relative accuracy holds where 1 - Phi would cancel
    assert normal_cdf_complement(8.0) == pytest.approx(6.22096057427182e-16, rel=1e-12)
    assert 0.0 <= normal_cdf_complement(40.0) < 1e-300


@pytest.mark.parametrize("z", np.linspace(-5, 5, 100))
def test_normal_reflection(z):
    assert abs(normal_cdf_complement(-z) - (1 - normal_cdf_complement(z))) < 1e-15
