"""Moments of M = lim (max gap waiting time) through three independent routes.

All three start from

    E(M^k) = k! 2^k g(k),
    g(k)   = sum_{m>=1} (-1)^{m+1} [1/(m^k (3m-1)^k) + 1/(m^k (3m+1)^k)].

* series:    g(k) summed directly (alternating, so truncation is bounded by
             the first omitted term).
* hurwitz:   partial fractions turn g(k) into zeta(2j) and zeta(j, i/6) terms.
* bernoulli: the same with the odd Hurwitz differences replaced by their
             Bernoulli-number closed forms.

The closed forms add terms of size about 24^k that cancel down to E(M^k), so
both are evaluated in an 80-digit context and rounded once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import exact
from ._mp import MP, mpq
from .zeta import _hurwitz_mp, _zeta_even_mp

K_MAX = 16
SERIES_REL_TOL = 1e-13


def _check_k(k) -> None:
    if not isinstance(k, int) or isinstance(k, bool):
        raise TypeError(f"k must be an int, got {type(k).__name__}")
    if not 1 <= k <= K_MAX:
        raise ValueError(f"k must lie in [1, {K_MAX}], got {k}")


@dataclass(frozen=True)
class PartialFractionCoeffs:
    """1/(x^k (1+ax)^k) = sum_j c_j / x^j + sum_j d_j / (1+ax)^j, j = 1..k."""

    k: int
    a: float
    c: tuple[float, ...]
    d: tuple[float, ...]

    def evaluate(self, x: float) -> float:
        """Sum the decomposition at x.

        The terms are far larger than their sum (which is the point of the
        identity), so the sum is formed exactly in rationals and rounded once.
        """
        if x == 0 or 1 + self.a * x == 0:
            raise ValueError("x is a pole of the decomposition")
        xf = Fraction(x)
        y = 1 + Fraction(self.a) * xf
        total = sum(Fraction(cj) / xf ** (j + 1) for j, cj in enumerate(self.c))
        total += sum(Fraction(dj) / y ** (j + 1) for j, dj in enumerate(self.d))
        return float(total)


def partial_fraction_coeffs(k: int, a: float) -> PartialFractionCoeffs:
    """c_j = C(2k-j-1, k-1) (-a)^{k-j},  d_j = C(2k-j-1, k-1) (-a)^k."""
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive int, got {k!r}")
    if a == 0:
        raise ValueError("a must be nonzero")
    binoms = [math.comb(2 * k - j - 1, k - 1) for j in range(1, k + 1)]
    neg_a = -Fraction(a)
    c = tuple(float(b * neg_a ** (k - j)) for j, b in enumerate(binoms, 1))
    d = tuple(float(b * neg_a**k) for b in binoms)
    return PartialFractionCoeffs(k, a, c, d)


def g_series(k: int, rel_tol: float = SERIES_REL_TOL) -> float:
    """g(k) by direct summation.

    Stops before the first term below rel_tol * |partial sum|; that term
    bounds the truncation error.  k = 1 needs a few million terms.
    """
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive int, got {k!r}")
    if not 0 < rel_tol <= 1e-6:
        raise ValueError("rel_tol must lie in (0, 1e-6]")
    chunk_sums: list[float] = []
    partial = 0.0
    start = 1
    size = 4096
    while True:
        m = np.arange(start, start + size, dtype=float)
        mag = (m * (3 * m - 1)) ** (-k) + (m * (3 * m + 1)) ** (-k)
        terms = np.where(m % 2 == 1, mag, -mag)
        before = partial + np.concatenate(([0.0], np.cumsum(terms)[:-1]))
        stop = np.flatnonzero(mag < rel_tol * np.abs(before))
        if stop.size:
            chunk_sums.append(math.fsum(terms[: stop[0]]))
            return math.fsum(chunk_sums)
        chunk_sums.append(math.fsum(terms))
        partial = math.fsum(chunk_sums)
        start += size
        size = min(size * 2, 1 << 20)


def moment_series(k: int) -> float:
    _check_k(k)
    return math.factorial(k) * 2**k * g_series(k, SERIES_REL_TOL)


def _odd_combination_mp(j: int):
    """(-1)^j (z(j,1/3) - z(j,5/6)) + z(j,2/3) - z(j,1/6) for odd j.

    The four Hurwitz values are evaluated directly (shifted Euler-Maclaurin),
    not through their closed forms.
    """
    z = {p: _hurwitz_mp(j, mpq(Fraction(p, 6)), 64, 30) for p in (1, 2, 4, 5)}
    return -(z[2] - z[5]) + z[4] - z[1]


def _moment_hurwitz_mp(k: int):
    # k! (-1)^k * [ -6^k (2pi/(3 sqrt 3) - 1) C(2k-2,k-1)
    #               + sum_j 2^{k+1} C(2k-2j-1,k-1) 3^{k-2j} zeta(2j) (1 - 2^{1-2j})
    #               + sum_{j>=2} C(2k-j-1,k-1) 6^{k-j} T_j ]
    pi = MP.pi
    terms = [-(MP.mpf(6) ** k) * (2 * pi / (3 * MP.sqrt(3)) - 1) * math.comb(2 * k - 2, k - 1)]
    for j in range(1, k // 2 + 1):
        z = _zeta_even_mp(2 * j)
        terms.append(2 ** (k + 1) * math.comb(2 * k - 2 * j - 1, k - 1) * MP.mpf(3) ** (k - 2 * j)
                     * z * (1 - MP.mpf(2) ** (1 - 2 * j)))
    for j in range(2, k + 1):
        if j % 2 == 0:
            # sums over i/6 collapse to zeta(j)
            z = _zeta_even_mp(j)
            t = MP.mpf(6) ** j * (1 + z * (MP.mpf(2) ** (1 - j) + MP.mpf(3) ** (-j)
                                          - 2 * MP.mpf(6) ** (-j) - 1))
        else:
            t = _odd_combination_mp(j) + MP.mpf(6) ** j
        terms.append(math.comb(2 * k - j - 1, k - 1) * MP.mpf(6) ** (k - j) * t)
    return math.factorial(k) * (-1) ** k * MP.fsum(terms)


def moment_hurwitz(k: int) -> float:
    """E(M^k) from the Hurwitz-zeta closed form."""
    _check_k(k)
    return float(_moment_hurwitz_mp(k))


def _moment_bernoulli_mp(k: int):
    pi = MP.pi
    B = exact.bernoulli_exact
    fact = math.factorial
    rational = Fraction(math.comb(2 * k - 1, k))
    terms = [mpq(rational),
             -2 * pi / (3 * MP.sqrt(3)) * math.comb(2 * k - 2, k - 1)]
    for j in range(1, k // 2 + 1):
        coef = (Fraction((-1) ** j, fact(2 * j)) * B(2 * j) * (2 ** (2 * j - 1) - 1)
                * (1 - Fraction(3, 3 ** (2 * j))) * math.comb(2 * k - 2 * j - 1, k - 1))
        terms.append(mpq(coef) * pi ** (2 * j))
    for j in range(1, (k - 1) // 2 + 1):
        inner = Fraction(3 * j + 1, fact(2 * j + 1)) - 3 * sum(
            Fraction(6 ** (2 * l - 1), fact(2 * j - 2 * l + 1) * fact(2 * l)) * B(2 * l)
            for l in range(1, j + 1)
        )
        coef = (-1) ** j * math.comb(2 * k - 2 * j - 2, k - 1) * inner
        terms.append(-2 / MP.sqrt(3) * (pi / 3) ** (2 * j + 1) * mpq(coef))
    return fact(k) * MP.mpf(-6) ** k * MP.fsum(terms)


def moment_bernoulli(k: int) -> float:
    """E(M^k) from the Bernoulli-number form (no zeta values at all)."""
    _check_k(k)
    return float(_moment_bernoulli_mp(k))


@dataclass(frozen=True)
class MomentReport:
    k: int
    via_series: float
    via_hurwitz: float
    via_bernoulli: float
    max_rel_disagreement: float


def _rel_diff(x: float, y: float) -> float:
    scale = max(abs(x), abs(y))
    return 0.0 if scale == 0 else abs(x - y) / scale


def moment_report(k: int) -> MomentReport:
    _check_k(k)
    vals = (moment_series(k), moment_hurwitz(k), moment_bernoulli(k))
    worst = max(_rel_diff(vals[i], vals[j]) for i in range(3) for j in range(i + 1, 3))
    return MomentReport(k, *vals, worst)


def mean_closed_form() -> float:
    return 4 * math.sqrt(3) * math.pi / 3 - 6


def variance_closed_form() -> float:
    return float(-28 * MP.pi**2 / 3 - 16 * MP.sqrt(3) * MP.pi + 180)


def second_moment_closed_form() -> float:
    return float(-4 * MP.pi**2 - 32 * MP.sqrt(3) * MP.pi + 216)


def mean_variance() -> tuple[float, float]:
    """(E(M), V(M)); V = E(M^2) - E(M)^2 is formed before rounding."""
    e1 = _moment_bernoulli_mp(1)
    e2 = _moment_bernoulli_mp(2)
    return float(e1), float(e2 - e1**2)


def arctan_series_value() -> float:
    """sum_{m>=1} (-1)^{m+1} [1/(3m-1) - 1/(3m+1)] = 2 sqrt(3) pi / 9 - 1."""
    return 2 * math.sqrt(3) * math.pi / 9 - 1


def arctan_series_direct(n_terms: int = 100_000) -> float:
    """The same sum by direct summation, averaging two consecutive partial sums.

    The terms 2/(9m^2 - 1) alternate and decrease, so the average of S_N and
    S_{N+1} has error O(N^-3).
    """
    if n_terms < 2:
        raise ValueError("n_terms must be >= 2")
    m = np.arange(1, n_terms + 2, dtype=float)
    terms = np.where(m % 2 == 1, 1.0, -1.0) * 2.0 / (9.0 * m * m - 1.0)
    s_n = math.fsum(terms[:-1])
    return s_n + 0.5 * float(terms[-1])
