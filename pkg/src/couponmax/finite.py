"""Finite-n coupon collector quantities.

Continuous model: W_j ~ Exp(rate (n-j)/n), j = 0..n-1, so W_j / n are
independent exponentials with rates 1..n.  Discrete model: D_j ~ Geometric
with success probability (n-j)/n (D_0 = 1).  The offset m refers to the gap
W_{n-m} (rate m/n) or D_{n-m}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .quadrature import QuadratureSpec, integrate

N_MAX = 10_000
# x^j below this cannot change log1p(-x^j) at double precision
_NEGLIGIBLE_LOG = math.log(1e-18)

DEFAULT_SPEC = QuadratureSpec(abs_tol=1e-15, rel_tol=1e-11, max_subdivisions=10_000)


@dataclass(frozen=True)
class FiniteModelParams:
    n: int
    m: int = 1
    k: int = 1

    def __post_init__(self):
        for name in ("n", "m", "k"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise ValueError(f"{name} must be a positive int, got {v!r}")
        if self.m > self.n:
            raise ValueError(f"need m <= n, got m={self.m}, n={self.n}")


def _log_product(x: np.ndarray, n: int, skip: int = 0) -> np.ndarray:
    """sum_{j=1..n, j != skip} log1p(-x^j) for each x in (0, 1)."""
    lx = np.log(x)
    j_max = int(min(n, math.ceil(_NEGLIGIBLE_LOG / float(np.max(lx)))))
    j = np.arange(1, j_max + 1, dtype=float)
    terms = np.log1p(-np.exp(np.outer(lx, j)))
    if 1 <= skip <= j_max:
        terms[:, skip - 1] = 0.0
    return terms.sum(axis=1)


def finite_max_moment(n: int, k: int, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """E((W_(n)/n)^k) = integral_0^1 k (-ln x)^{k-1} (1 - prod_{j<=n}(1-x^j)) dx / x.

    This is the tail-integral formula in t = -ln x.  Near x = 0 the integrand
    behaves like k (-ln x)^{k-1}, which is integrable.  At x = 1 it tends to
    1 for k = 1 and to 0 for k >= 2.
    """
    FiniteModelParams(n=n, k=k)
    if n > N_MAX or k > 8:
        raise ValueError(f"need n <= {N_MAX} and k <= 8, got n={n}, k={k}")

    def f(x):
        one_minus = -np.expm1(_log_product(x, n))
        return k * (-np.log(x)) ** (k - 1) * one_minus / x

    return integrate(f, 0.0, 1.0, spec, vectorized=True).value


def finite_argmax_continuous(m: int, n: int, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """P(W_{n-m} is the maximum) = integral_0^1 m x^{m-1} prod_{j<=n, j!=m}(1-x^j) dx."""
    FiniteModelParams(n=n, m=m)
    if n > N_MAX:
        raise ValueError(f"n must be <= {N_MAX}")

    def f(x):
        with np.errstate(under="ignore"):
            return m * np.exp((m - 1) * np.log(x) + _log_product(x, n, skip=m))

    return integrate(f, 0.0, 1.0, spec, vectorized=True).value


def discrete_argmax_probability(m: int, n: int, tail_tol: float = 1e-12) -> float:
    """Strict-maximum probability p' that D_{n-m} exceeds every other gap.

        p' = sum_{j>=1} (1-m/n)^{j-1} (m/n) prod_{i=1..n, i!=m} (1 - (1-i/n)^{j-1})

    The series stops at J with (1-m/n)^J < tail_tol, which is exactly the
    probability mass of the omitted terms' geometric weights.
    """
    FiniteModelParams(n=n, m=m)
    if not 0 < tail_tol <= 1e-8:
        raise ValueError("tail_tol must lie in (0, 1e-8]")
    if n == 1:
        return 1.0
    q = 1.0 - m / n
    if q == 0.0:
        # m = n is D_0 = 1, which can never strictly exceed another gap
        return 0.0
    n_terms = int(math.ceil(math.log(tail_tol) / math.log(q)))
    # i = n is D_0: its factor 1 - 0^{j-1} kills only j = 1
    i = np.array([v for v in range(1, n) if v != m], dtype=float)
    log_base = np.log1p(-i / n)  # decreasing in i
    total: list[float] = []
    chunk = 512
    for j0 in range(2, n_terms + 1, chunk):
        j = np.arange(j0, min(j0 + chunk, n_terms + 1), dtype=float)
        e = j - 1.0
        # factors with (1-i/n)^{j-1} < 1e-18 are 1 to double precision
        keep = log_base * e[0] > _NEGLIGIBLE_LOG
        with np.errstate(under="ignore"):
            logs = np.log1p(-np.exp(np.outer(e, log_base[keep]))).sum(axis=1)
            w = np.exp(e * math.log(q) + logs) * (m / n)
        total.append(math.fsum(w))
    return math.fsum(total)


def expected_total_draws(n: int) -> float:
    """n H_n, the expected number of draws to see all n coupon types."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive int, got {n!r}")
    return n * math.fsum(1.0 / i for i in range(n, 0, -1))
