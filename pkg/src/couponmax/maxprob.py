"""Probabilities that the m-th gap variable attains the maximum M.

    p_m = integral_0^1 m x^{m-1} f(x) / (1 - x^m) dx,

with f Euler's function.  Next to it sit the main asymptotic term
pi sqrt(2m) exp(-pi sqrt(2/3) sqrt(m)) and the comparison integral in which f
is replaced by its x -> 1 estimate.

Integration stops at x = 1 - 1e-3.  Beyond it ln f(x) <= -x/(1-x) < -998, so
the dropped tail is below m * 1e3 * e^-998 (about 1e-430 * m); the same
holds for the comparison integrand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .partition import euler_function_vec, log_euler_function_asymptotic
from .quadrature import QuadratureSpec, integrate, normal_cdf_complement

CUTOFF = 1e-3
M_MAX = 10_000
UNDERFLOW = 1e-300
B_EFF = math.pi**2 / 6

# absolute tolerance must not swamp values as small as 1e-100
DEFAULT_SPEC = QuadratureSpec(abs_tol=1e-300, rel_tol=1e-10, max_subdivisions=10_000)


@dataclass(frozen=True)
class ArgmaxRow:
    m: int
    exact: float
    asymptotic: float
    hr_integral: float
    underflow: bool = False


@dataclass(frozen=True)
class PeakEstimate:
    m: int
    y0: float
    b_eff: float


def _check_m(m: int, hi: int | None = M_MAX) -> None:
    if not isinstance(m, int) or isinstance(m, bool):
        raise TypeError(f"m must be an int, got {type(m).__name__}")
    if m < 1 or (hi is not None and m > hi):
        raise ValueError(f"m must lie in [1, {hi}], got {m}")


def tail_bound_log10(m: int) -> float:
    """log10 of a bound on the integral over [1 - CUTOFF, 1).

    Uses ln f(x) <= -x/(1-x) and 1 - x^m >= 1 - x; with u = x/(1-x) the tail
    is at most m * integral_{u0}^inf (1+u) e^{-u} du = m (u0 + 2) e^{-u0}.
    """
    u0 = (1 - CUTOFF) / CUTOFF
    return (math.log(m) + math.log(u0 + 2) - u0) / math.log(10)


def peak_location(m: int) -> PeakEstimate:
    """Maximiser of J_m(y) = (1-y)^{m-1} y^{-1/2} e^{-b/y} with b = pi^2/6.

    In x = 1 - y this is where the integrand factor m x^{m-1} f(x) peaks.
    """
    _check_m(m, hi=None)
    if m < 2:
        raise ValueError("peak_location needs m >= 2")
    b = B_EFF
    y0 = (-0.5 - b + math.sqrt(4 * b * m + b * b - 5 * b + 0.25)) / (2 * m - 3)
    return PeakEstimate(m, y0, b)


def _hints(m: int) -> list[float]:
    if m < 2:
        return []
    y0 = peak_location(m).y0
    return [x for x in (1 - 2 * y0, 1 - y0, 1 - y0 / 2) if 0 < x < 1 - CUTOFF]


def _weight(x: np.ndarray, m: int) -> np.ndarray:
    # m x^{m-1} / (1 - x^m); 1 - x^m via expm1 for x close to 1
    with np.errstate(divide="ignore", under="ignore"):
        lx = np.log(x)
        head = m * np.exp((m - 1) * lx)
        den = -np.expm1(m * lx)
    return np.where(x > 0, head / np.where(x > 0, den, 1.0), m if m == 1 else 0.0)


def _exact_integrand(m: int):
    def f(x):
        return _weight(x, m) * euler_function_vec(x)
    return f


def _hr_integrand(m: int):
    def f(x):
        lg = np.array([log_euler_function_asymptotic(t) if t > 0 else -np.inf for t in x])
        with np.errstate(under="ignore"):
            env = np.exp(lg)
        return _weight(x, m) * env
    return f


def _finish(value: float) -> tuple[float, bool]:
    if value < UNDERFLOW:
        return 0.0, True
    return value, False


def argmax_probability(m: int, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """P(the m-th variable equals M), by quadrature of the Euler-function integral."""
    _check_m(m)
    res = integrate(_exact_integrand(m), 0.0, 1.0 - CUTOFF, spec, points=_hints(m), vectorized=True)
    return _finish(res.value)[0]


def argmax_asymptotic(m: int) -> float:
    """pi sqrt(2m) exp(-pi sqrt(2/3) sqrt(m))."""
    _check_m(m, hi=None)
    return math.pi * math.sqrt(2 * m) * math.exp(-math.pi * math.sqrt(2.0 / 3.0) * math.sqrt(m))


def hr_integral(m: int, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """The argmax integral with f replaced by sqrt(2pi/(1-x)) e^{-pi^2/(6(1-x)) + pi^2/12}."""
    _check_m(m)
    res = integrate(_hr_integrand(m), 0.0, 1.0 - CUTOFF, spec, points=_hints(m), vectorized=True)
    return _finish(res.value)[0]


def hr_integral_m1_closed() -> float:
    """4 sqrt(3) e^{pi^2/12} (1 - Phi(pi sqrt(3)/3)), the m = 1 comparison integral."""
    return 4 * math.sqrt(3) * math.exp(math.pi**2 / 12) * normal_cdf_complement(math.pi * math.sqrt(3) / 3)


def argmax_row(m: int, spec: QuadratureSpec = DEFAULT_SPEC) -> ArgmaxRow:
    _check_m(m)
    ex = integrate(_exact_integrand(m), 0.0, 1.0 - CUTOFF, spec, points=_hints(m), vectorized=True).value
    ex, flag = _finish(ex)
    return ArgmaxRow(m, ex, argmax_asymptotic(m), hr_integral(m, spec), flag)


def table1(rows: Sequence[int] = (1, 2, 3, 4, 5, 10, 50, 100),
           spec: QuadratureSpec = DEFAULT_SPEC) -> list[ArgmaxRow]:
    return [argmax_row(m, spec) for m in rows]
