import math

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from couponmax.moments import (
    arctan_series_direct,
    arctan_series_value,
    g_series,
    mean_closed_form,
    mean_variance,
    moment_bernoulli,
    moment_hurwitz,
    moment_report,
    moment_series,
    partial_fraction_coeffs,
    second_moment_closed_form,
    variance_closed_form,
)

TABLE2 = {1: 1.255, 2: 2.397, 3: 6.689, 4: 25.453, 5: 123.705}


def g_oracle(k):
    """g(k) summed in 50-digit arithmetic with mpmath's alternating-series acceleration."""
    with mpmath.workdps(50):
        term = lambda m: (-1) ** (int(m) + 1) * (1 / (m**k * (3 * m - 1) ** k) + 1 / (m**k * (3 * m + 1) ** k))
        return float(mpmath.nsum(term, [1, mpmath.inf], method="alternating"))


def test_partial_fraction_examples():
    pf = partial_fraction_coeffs(1, 3)
    assert pf.c == (1.0,) and pf.d == (-3.0,)
    pf = partial_fraction_coeffs(2, 3)
    assert pf.c == (-6.0, 1.0) and pf.d == (18.0, 9.0)
    for x in (1.0, 2.0, 0.5):
        assert pf.evaluate(x) == pytest.approx(1 / (x**2 * (1 + 3 * x) ** 2), abs=1e-12)
    pf = partial_fraction_coeffs(3, -3)
    assert pf.c == tuple(float(math.comb(5 - j, 2) * 3 ** (3 - j)) for j in (1, 2, 3))
    assert pf.d == tuple(float(math.comb(5 - j, 2) * 27) for j in (1, 2, 3))


def test_partial_fraction_rejects_zero():
    with pytest.raises(ValueError):
        partial_fraction_coeffs(2, 0)
    with pytest.raises(ValueError):
        partial_fraction_coeffs(2, 3).evaluate(-1 / 3)


@given(
    st.integers(1, 6),
    st.sampled_from([3, -3, 1, -1, 2]),
    st.lists(st.floats(-5, 5).filter(lambda x: abs(x) > 0.05), min_size=20, max_size=20),
)
def test_partial_fraction_reconstruction(k, a, xs):
    pf = partial_fraction_coeffs(k, a)
    for x in xs:
        if abs(1 + a * x) < 0.05:
            continue
        target = 1 / (x**k * (1 + a * x) ** k)
        assert abs(pf.evaluate(x) - target) <= 1e-10 * abs(target)


def test_g_series_values():
    e = 4 * math.sqrt(3) * math.pi / 3 - 6
    assert g_series(1, 1e-13) == pytest.approx(e / 2, rel=2e-13)
    assert g_series(1, 1e-13) == pytest.approx(0.627599, abs=1e-6)
    assert g_series(2, 1e-13) == pytest.approx(2.3968434291576517 / 8, rel=1e-12)
    for k in (1, 2, 5, 9):
        assert g_series(k, 1e-13) == pytest.approx(g_oracle(k), rel=2e-13)


def test_g_dominated_by_first_term():
    first = 2.0**-8 + 4.0**-8
    assert abs(g_series(8, 1e-13) - first) < 0.01 * first


def test_g_series_rejects_bad_tolerance():
    with pytest.raises(ValueError):
        g_series(2, 1e-3)


@pytest.mark.parametrize("k,printed", sorted(TABLE2.items()))
def test_table2_all_routes(k, printed):
    for fn in (moment_series, moment_hurwitz, moment_bernoulli):
        assert abs(round(fn(k), 3) - printed) <= 5e-4


def test_closed_forms_low_order():
    assert moment_hurwitz(1) == pytest.approx(mean_closed_form(), rel=1e-15)
    assert moment_bernoulli(2) == pytest.approx(second_moment_closed_form(), rel=1e-15)


def test_three_way_agreement():
    for k in range(1, 17):
        r = moment_report(k)
        limit = 1e-9 if k <= 8 else 1e-6
        assert r.max_rel_disagreement <= limit
        vals = (r.via_series, r.via_hurwitz, r.via_bernoulli)
        worst = max(abs(x - y) / max(abs(x), abs(y)) for x in vals for y in vals)
        assert worst == pytest.approx(r.max_rel_disagreement, abs=1e-18)


def test_moment_growth_and_lyapunov():
    m = [moment_bernoulli(k) for k in range(1, 12)]
    assert all(m[k] > m[k - 1] for k in range(2, 11))
    roots = [m[k - 1] ** (1 / k) for k in range(2, 11)]
    assert all(b >= a for a, b in zip(roots, roots[1:]))


def test_range_errors():
    for fn in (moment_series, moment_hurwitz, moment_bernoulli):
        with pytest.raises(ValueError):
            fn(0)
        with pytest.raises(ValueError):
            fn(17)


def test_mean_variance():
    e, v = mean_variance()
    assert e == pytest.approx(1.255, abs=5e-4)
    assert v == pytest.approx(0.821, abs=5e-4)
    assert e == pytest.approx(mean_closed_form(), rel=1e-14)
    assert v == pytest.approx(variance_closed_form(), rel=1e-14)
    # the variance is E(M^2) - E(M)^2
    assert variance_closed_form() == pytest.approx(second_moment_closed_form() - mean_closed_form() ** 2, rel=1e-13)


def test_arctan_series():
    closed = arctan_series_value()
    assert closed == pytest.approx(0.20920, abs=1e-5)
    assert abs(arctan_series_direct() - closed) < 1e-10
    assert 6 * closed == pytest.approx(mean_closed_form(), rel=1e-14)


def test_arctan_partial_sums_bracket():
    s, sums = 0.0, []
    for m in range(1, 40):
        s += (-1) ** (m + 1) * (1 / (3 * m - 1) - 1 / (3 * m + 1))
        sums.append(s)
    v = arctan_series_value()
    for a, b in zip(sums, sums[1:]):
        assert min(a, b) <= v <= max(a, b)
