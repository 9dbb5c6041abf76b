import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from couponmax.errors import ConvergenceError
from couponmax.partition import (
    PentagonalSeriesConfig,
    euler_function,
    euler_function_asymptotic,
    euler_function_vec,
    log_euler_function,
    partition_asymptotic,
    partition_count,
    partition_ratio,
    pentagonal_series,
)


def product_oracle(x, j_max=None):
    if j_max is None:
        j_max = int(math.ceil(math.log(1e-17) / math.log(x))) if x > 0 else 1
    return math.prod(1 - x**j for j in range(1, j_max + 1))


def partitions_by_parts(n_max):
    """Coin-change count over part sizes 1..n_max (no pentagonal numbers)."""
    ways = [1] + [0] * n_max
    for part in range(1, n_max + 1):
        for total in range(part, n_max + 1):
            ways[total] += ways[total - part]
    return ways


def test_values():
    assert euler_function(0.0) == 1.0
    assert euler_function(0.5) == pytest.approx(0.2887880951, abs=1e-10)
    assert abs(euler_function(0.5) - product_oracle(0.5, 60)) < 1e-15
    assert abs(euler_function(0.9) - product_oracle(0.9, 500)) < 1e-12


@pytest.mark.parametrize("x", [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99])
def test_product_series_equivalence(x):
    assert abs(euler_function(x) - product_oracle(x)) <= 1e-12


def test_relative_accuracy_near_one():
    for x in (0.95, 0.99, 0.995):
        ref = product_oracle(x)
        assert abs(euler_function(x) / ref - 1) < 1e-12


def test_vectorised_matches_scalar():
    xs = np.array([0.0, 0.05, 0.5, 0.93, 0.99, 0.998])
    np.testing.assert_array_equal(euler_function_vec(xs), [euler_function(float(x)) for x in xs])


def test_domain_and_convergence_errors():
    with pytest.raises(ValueError):
        euler_function(1.0)
    with pytest.raises(ValueError):
        euler_function(-0.1)
    with pytest.raises(ValueError):
        PentagonalSeriesConfig(term_tol=1e-6)
    with pytest.raises(ValueError):
        PentagonalSeriesConfig(max_terms=10)
    with pytest.raises(ConvergenceError):
        pentagonal_series(1 - 1e-7, PentagonalSeriesConfig(max_terms=64))


def test_strictly_decreasing_on_grid():
    xs = np.linspace(0.0, 1.0, 1001)[:-1]
    logs = [log_euler_function(float(x)) for x in xs]
    assert all(b < a for a, b in zip(logs, logs[1:]))
    vals = [euler_function(float(x)) for x in xs]
    assert all(b <= a for a, b in zip(vals, vals[1:]))


@given(st.floats(0.0, 0.95))
def test_log_matches_value(x):
    v = euler_function(x)
    assert abs(math.exp(log_euler_function(x)) - v) <= 1e-13 * v


def test_asymptotic_estimate():
    assert euler_function_asymptotic(0.9) == pytest.approx(
        math.sqrt(20 * math.pi) * math.exp(-(math.pi**2) / 0.6 + math.pi**2 / 12), rel=1e-14
    )
    ratio = euler_function(0.99) / euler_function_asymptotic(0.99)
    assert 0.95 <= ratio <= 1.05
    # only an x -> 1 estimate: near 0 it tends to sqrt(2 pi) e^{-pi^2/12}, not 1
    assert euler_function_asymptotic(1e-12) == pytest.approx(1.1012781940263316, rel=1e-10)
    assert euler_function_asymptotic(1 - 1e-4) == 0.0


def test_partition_counts():
    assert partition_count(0) == 1
    assert partition_count(5) == 7
    assert partition_count(50) == 204226
    assert partition_count(100) == 190569292
    ref = partitions_by_parts(200)
    assert [partition_count(m) for m in range(201)] == ref


def test_partition_range():
    with pytest.raises(ValueError):
        partition_count(-1)
    with pytest.raises(ValueError):
        partition_count(100_001)
    with pytest.raises(TypeError):
        partition_count(3.0)


def test_reciprocal_series_coefficients():
    # 1/f(x) = sum p(m) x^m: invert the pentagonal coefficients of f
    n = 30
    f = [0] * (n + 1)
    f[0] = 1
    k = 1
    while k * (3 * k - 1) // 2 <= n:
        for e in (k * (3 * k - 1) // 2, k * (3 * k + 1) // 2):
            if e <= n:
                f[e] += (-1) ** k
        k += 1
    inv = [0] * (n + 1)
    inv[0] = 1
    for m in range(1, n + 1):
        inv[m] = -sum(f[i] * inv[m - i] for i in range(1, m + 1))
    assert inv == [partition_count(m) for m in range(n + 1)]


def test_partition_asymptotic():
    assert partition_asymptotic(100) == pytest.approx(1.993e8, rel=1e-3)
    assert partition_asymptotic(1) == pytest.approx(1.8766704226053694, rel=1e-14)
    assert 1.0 <= partition_ratio(100) <= 1.1
    ratios = [partition_ratio(m) for m in (10, 100, 1000, 10_000)]
    assert all(b < a for a, b in zip(ratios, ratios[1:]))
    assert ratios[-1] > 1
    assert partition_asymptotic(100_000) == math.inf
