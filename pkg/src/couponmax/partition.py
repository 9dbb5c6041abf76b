"""Euler's function f(x) = prod_{j>=1} (1 - x^j), partitions, and asymptotics.

f is evaluated through the pentagonal number series

    f(x) = 1 + sum_{m>=1} (-1)^m (x^{m(3m-1)/2} + x^{m(3m+1)/2}),

which needs only O(sqrt(1/(1-x))) terms.  Near x = 1 the partial sums are
O(1) while f is tiny, so once the series result drops below
``RELATIVE_FALLBACK`` the value is recomputed from the product in log space
to keep relative accuracy.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError

RELATIVE_FALLBACK = 1e-2
# binary64 exp underflows below this exponent
EXP_UNDERFLOW = -745.0


@dataclass(frozen=True)
class PentagonalSeriesConfig:
    term_tol: float = 1e-17
    max_terms: int = 5000

    def __post_init__(self):
        if not 0 < self.term_tol <= 1e-12:
            raise ValueError("term_tol must lie in (0, 1e-12]")
        if self.max_terms < 64:
            raise ValueError("max_terms must be >= 64")


DEFAULT_PENTAGONAL = PentagonalSeriesConfig()


def pentagonal_series(x: float, cfg: PentagonalSeriesConfig = DEFAULT_PENTAGONAL) -> float:
    """Raw pentagonal series sum, no fallback."""
    if not 0.0 <= x < 1.0:
        raise ValueError(f"x must lie in [0, 1), got {x}")
    if x == 0.0:
        return 1.0
    lx = math.log(x)
    total = 1.0
    for m in range(1, cfg.max_terms + 1):
        e1 = m * (3 * m - 1) // 2
        t1 = math.exp(e1 * lx)
        if t1 < cfg.term_tol * max(1.0, abs(total)):
            return total
        t2 = math.exp((e1 + m) * lx)
        total += -(t1 + t2) if m % 2 else (t1 + t2)
    raise ConvergenceError(f"pentagonal series for x={x} did not converge in {cfg.max_terms} terms",
                           value=total)


def log_euler_function(x: float) -> float:
    """ln f(x) as sum_j log1p(-x^j), summed until x^j < 1e-18.

    Cost grows like 1/(1-x); this is the accurate path near x = 1.
    """
    if not 0.0 <= x < 1.0:
        raise ValueError(f"x must lie in [0, 1), got {x}")
    if x == 0.0:
        return 0.0
    lx = math.log(x)
    n_terms = int(math.ceil(-41.5 / lx)) + 1
    total = 0.0
    chunk = 1 << 20
    for start in range(1, n_terms + 1, chunk):
        j = np.arange(start, min(start + chunk, n_terms + 1), dtype=float)
        total += float(np.sum(np.log1p(-np.exp(j * lx))))
    return total


def euler_function(x: float, cfg: PentagonalSeriesConfig = DEFAULT_PENTAGONAL) -> float:
    """f(x) for 0 <= x < 1."""
    s = pentagonal_series(x, cfg)
    if s >= RELATIVE_FALLBACK:
        return s
    return math.exp(log_euler_function(x))


def euler_function_vec(x: np.ndarray, cfg: PentagonalSeriesConfig = DEFAULT_PENTAGONAL) -> np.ndarray:
    """Array version of :func:`euler_function` (same series, same fallback)."""
    x = np.asarray(x, dtype=float)
    if np.any((x < 0) | (x >= 1)):
        raise ValueError("x must lie in [0, 1)")
    out = np.ones_like(x)
    pos = x > 0
    if not np.any(pos):
        return out
    lx = np.log(x[pos])
    total = np.ones_like(lx)
    for m in range(1, cfg.max_terms + 1):
        e1 = m * (3 * m - 1) // 2
        t1 = np.exp(e1 * lx)
        if np.all(t1 < cfg.term_tol * np.maximum(1.0, np.abs(total))):
            break
        t2 = np.exp((e1 + m) * lx)
        total += -(t1 + t2) if m % 2 else (t1 + t2)
    else:
        raise ConvergenceError("pentagonal series did not converge", value=float("nan"))
    out[pos] = total
    for i in np.flatnonzero(out < RELATIVE_FALLBACK):
        out[i] = math.exp(log_euler_function(float(x[i])))
    return out


def log_euler_function_asymptotic(x: float) -> float:
    return 0.5 * math.log(2 * math.pi / (1 - x)) - math.pi**2 / (6 * (1 - x)) + math.pi**2 / 12


def euler_function_asymptotic(x: float) -> float:
    """sqrt(2 pi / (1-x)) exp(-pi^2 / (6(1-x)) + pi^2/12); the x -> 1 estimate.

    Returns exactly 0.0 once the exponent falls below the binary64 underflow
    threshold.  Not a good approximation away from x = 1 (at x -> 0 it tends
    to about 1.097, not f(0) = 1).
    """
    if not 0.0 < x < 1.0:
        raise ValueError(f"x must lie in (0, 1), got {x}")
    lg = log_euler_function_asymptotic(x)
    if lg < EXP_UNDERFLOW:
        return 0.0
    return math.exp(lg)


_plock = threading.Lock()
_partitions: list[int] = [1]
MAX_PARTITION_INDEX = 100_000


def partition_count(m: int) -> int:
    """p(m) via p(m) = sum_{k>=1} (-1)^{k+1} [p(m - k(3k-1)/2) + p(m - k(3k+1)/2)].

    >>> partition_count(100)
    190569292
    """
    if not isinstance(m, int) or isinstance(m, bool):
        raise TypeError("m must be an int")
    if not 0 <= m <= MAX_PARTITION_INDEX:
        raise ValueError(f"m must lie in [0, {MAX_PARTITION_INDEX}], got {m}")
    if m < len(_partitions):
        return _partitions[m]
    with _plock:
        p = _partitions
        for n in range(len(p), m + 1):
            acc = 0
            k = 1
            while True:
                g1 = k * (3 * k - 1) // 2
                if g1 > n:
                    break
                g2 = g1 + k
                term = p[n - g1] + (p[n - g2] if g2 <= n else 0)
                acc += term if k % 2 else -term
                k += 1
            p.append(acc)
    return _partitions[m]


def log_partition_asymptotic(m: int) -> float:
    if m < 1:
        raise ValueError("m must be >= 1")
    return math.pi * math.sqrt(2.0 / 3.0) * math.sqrt(m) - math.log(4 * m * math.sqrt(3.0))


def partition_asymptotic(m: int) -> float:
    """exp(pi sqrt(2m/3)) / (4 m sqrt 3); inf once that exceeds the float range."""
    lg = log_partition_asymptotic(m)
    return math.exp(lg) if lg < 709.0 else math.inf


def partition_ratio(m: int) -> float:
    """partition_asymptotic(m) / p(m), formed in log space."""
    return math.exp(log_partition_asymptotic(m) - math.log(partition_count(m)))
