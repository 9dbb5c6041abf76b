"""Riemann and Hurwitz zeta values for real arguments.

General evaluation is shift-then-correct: sum the first N terms of the series
directly, then apply the Euler-Maclaurin type expansion

    zeta(s, A) = A^{1-s}/(s-1) + A^{-s}/2
                 + sum_{j=1}^{k+1} s(s+1)...(s+j-1) q_j(1) A^{-s-j}  + R_k,
    R_k = s(s+1)...(s+k+2) * integral_0^1 p_{k+2}(x) zeta(s+k+3, x+A) dx

at A = a + N.  R_k is bounded, not computed, and the bound must sit below
the requested tolerance.  The same expansion is the analytic continuation
for s <= 1.

Special rational points a = p/q with q in {2, 3, 4, 6} have closed forms in
terms of zeta(2m+1) and the coefficient K_m(q).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import exact
from ._mp import MP, mpq
from .errors import ConvergenceError
from .quadrature import QuadratureSpec, integrate


@dataclass(frozen=True)
class ZetaEvalConfig:
    rel_tol: float = 1e-14
    direct_terms: int = 32
    correction_order: int = 8

    def __post_init__(self):
        if not 0 < self.rel_tol <= 1e-6:
            raise ValueError("rel_tol must lie in (0, 1e-6]")
        if self.direct_terms < 8:
            raise ValueError("direct_terms must be >= 8")
        if not 1 <= self.correction_order <= 12:
            raise ValueError("correction_order must lie in [1, 12]")


DEFAULT_CONFIG = ZetaEvalConfig()
MAX_SHIFT = 1024


@dataclass(frozen=True)
class SpecialPoint:
    p: int
    q: int

    def __post_init__(self):
        if self.q not in (2, 3, 4, 6):
            raise ValueError(f"q must be one of 2, 3, 4, 6; got {self.q}")
        if not 0 < self.p < self.q or math.gcd(self.p, self.q) != 1:
            raise ValueError(f"{self.p}/{self.q} is not a reduced fraction in (0, 1)")

    @classmethod
    def parse(cls, text: str) -> "SpecialPoint":
        """Build from a literal ``"p/q"`` string (no float round trip)."""
        try:
            p, q = text.strip().split("/")
            return cls(int(p), int(q))
        except (ValueError, TypeError) as exc:
            raise ValueError(f"expected 'p/q', got {text!r}: {exc}") from None

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.q)

    def __str__(self):
        return f"{self.p}/{self.q}"


ALL_SPECIAL_POINTS = tuple(
    SpecialPoint(p, q) for q in (2, 3, 4, 6) for p in range(1, q) if math.gcd(p, q) == 1
)


def _pochhammer(s: float, n: int) -> float:
    out = 1.0
    for i in range(n):
        out *= s + i
    return out


@lru_cache(maxsize=None)
def _p_sup(j: int) -> float:
    """sup |p_j| on [0, 1], from a dense grid with a safety margin."""
    coeffs = exact.p_poly(j).float_coeffs()
    x = np.linspace(0.0, 1.0, 4001)
    vals = np.polynomial.polynomial.polyval(x, coeffs)
    return 1.05 * float(np.max(np.abs(vals)))


@lru_cache(maxsize=None)
def _q_at_one_float(order: int) -> tuple[float, ...]:
    return tuple(float(exact.qj_at_one(j)) for j in range(1, order + 2))


def _remainder_bound(s: float, A: float, k: int) -> float:
    lead = _pochhammer(s, k + 3)
    if lead == 0.0:
        return 0.0
    sigma = s + k + 3
    if sigma <= 1.0:
        return math.inf
    zeta_bound = A ** (-sigma) + A ** (1.0 - sigma) / (sigma - 1.0)
    return abs(lead) * _p_sup(k + 2) * zeta_bound


def _em_tail(s: float, A: float, k: int) -> float:
    qs = _q_at_one_float(k)
    terms = [A ** (1.0 - s) / (s - 1.0), 0.5 * A ** (-s)]
    poch = 1.0
    for j in range(1, k + 2):
        poch *= s + j - 1
        if poch == 0.0:
            break
        terms.append(poch * qs[j - 1] * A ** (-s - j))
    return math.fsum(terms)


def _hurwitz_mp(s, a, n_shift: int, k: int):
    """Shift-then-correct evaluation carried out in the 80-digit context."""
    s = MP.mpf(s)
    a = MP.mpf(a)
    head = MP.fsum((n + a) ** (-s) for n in range(n_shift))
    A = a + n_shift
    terms = [A ** (1 - s) / (s - 1), A ** (-s) / 2]
    poch = MP.mpf(1)
    for j in range(1, k + 2):
        poch *= s + j - 1
        if poch == 0:
            break
        terms.append(poch * mpq(exact.qj_at_one(j)) * A ** (-s - j))
    return head + MP.fsum(terms)


def hurwitz_zeta(s: float, a: float, cfg: ZetaEvalConfig = DEFAULT_CONFIG) -> float:
    """zeta(s, a) for real s != 1 and a > 0 (analytic continuation for s < 1).

    The first ``cfg.direct_terms`` series terms are summed directly and the
    expansion of order ``cfg.correction_order`` handles the rest.  For s < 1
    the direct terms cancel against the A^{1-s}/(s-1) term, so
    that branch runs in extended precision before rounding once; there the
    shift is doubled (up to MAX_SHIFT) while the bound misses the tolerance.
    """
    s = float(s)
    a = float(a)
    if not a > 0 or not math.isfinite(a):
        raise ValueError(f"a must be positive and finite, got {a}")
    if abs(s - 1.0) < 1e-6:
        raise ValueError("s within 1e-6 of the pole at s = 1")
    if not math.isfinite(s):
        raise ValueError("s must be finite")
    k = cfg.correction_order
    n_shift = cfg.direct_terms

    bound = _remainder_bound(s, a + n_shift, k)
    if s > 1:
        value = math.fsum((n + a) ** (-s) for n in range(n_shift)) + _em_tail(s, a + n_shift, k)
    else:
        value = float(_hurwitz_mp(s, a, n_shift, k))
        # extended precision makes a longer head free of cancellation
        while bound > cfg.rel_tol * abs(value) and n_shift < MAX_SHIFT:
            n_shift *= 2
            bound = _remainder_bound(s, a + n_shift, k)
            value = float(_hurwitz_mp(s, a, n_shift, k))
    if bound > cfg.rel_tol * abs(value):
        raise ConvergenceError(
            f"zeta({s}, {a}): remainder bound {bound:.3e} exceeds rel_tol "
            f"with correction_order={k}, direct_terms={n_shift}",
            value=value,
            error_estimate=bound,
        )
    return value


@lru_cache(maxsize=None)
def _zeta_odd_mp(n: int):
    """zeta(n) to roughly 40 digits, for closed forms that cancel heavily."""
    return _hurwitz_mp(n, 1, 64, 30)


def hurwitz_zeta_neg(k: int, a: float) -> float:
    """zeta(-k, a) from its closed polynomial form in a."""
    if not isinstance(k, int) or not 0 <= k <= 30:
        raise ValueError(f"k must be an int in [0, 30], got {k!r}")
    if not a > 0:
        raise ValueError("a must be positive")
    terms = [-(a ** (k + 1)) / (k + 1), 0.5 * a**k]
    for j in range(1, k + 1):
        c = (-1) ** j * exact.qj_at_one(j) * exact.falling_factorial(k, j)
        terms.append(float(c) * a ** (k - j))
    return math.fsum(terms)


def _zeta_even_mp(two_j: int):
    if not isinstance(two_j, int) or two_j % 2 or not 2 <= two_j <= 64:
        raise ValueError(f"need an even integer in [2, 64], got {two_j!r}")
    j = two_j // 2
    b = exact.bernoulli_exact(two_j)
    coef = Fraction((-1) ** (j + 1) * 2 ** (two_j - 1), math.factorial(two_j)) * b
    return mpq(coef) * MP.pi**two_j


def zeta_even(two_j: int) -> float:
    """zeta(2j) = (-1)^{j+1} 2^{2j-1} pi^{2j} B_{2j} / (2j)!"""
    return float(_zeta_even_mp(two_j))


def zeta_integer(s: int, cfg: ZetaEvalConfig = DEFAULT_CONFIG) -> float:
    if not isinstance(s, int) or s < 2:
        raise ValueError(f"s must be an integer >= 2, got {s!r}")
    if s % 2 == 0 and s <= 64:
        return zeta_even(s)
    return hurwitz_zeta(s, 1.0, cfg)


def _km_bracket(m: int, q: int) -> Fraction:
    f2m = math.factorial(2 * m)
    acc = Fraction(q, 2)
    for j in range(m + 1):
        acc -= exact.bernoulli_exact(2 * j) * Fraction(
            f2m * q ** (2 * j), math.factorial(2 * m - 2 * j + 1) * math.factorial(2 * j)
        )
    return acc


def _km_mp(m: int, q: int):
    if not isinstance(m, int) or not 1 <= m <= 16:
        raise ValueError(f"m must be an int in [1, 16], got {m!r}")
    if q not in (3, 4, 6):
        raise ValueError(f"q must be 3, 4 or 6; got {q!r}")
    pref = (2 * MP.pi) ** (2 * m + 1) * (-1) ** m / (2 * math.factorial(2 * m))
    return pref * mpq(_km_bracket(m, q))


def km_coefficient(m: int, q: int) -> float:
    """K_m(q): the pi-power part of odd Hurwitz values at a = p/q.

    The bracket is summed exactly, so the float conversion happens once.
    """
    return float(_km_mp(m, q))


def _special_odd_mp(m: int, point: SpecialPoint):
    n = 2 * m + 1
    z = _zeta_odd_mp(n)
    p, q = point.p, point.q
    if q == 2:
        return (2**n - 1) * z
    sign = 1 if p == 1 else -1
    root3 = MP.sqrt(3)
    if q == 3:
        return MP.mpf(3**n - 1) / 2 * z + sign * _km_mp(m, 3) / root3
    if q == 4:
        return 2 ** (2 * m) * (2**n - 1) * z + sign * _km_mp(m, 4) / 2
    return MP.mpf((2**n - 1) * (3**n - 1)) / 2 * z + sign * (_km_mp(m, 6) - _km_mp(m, 3)) / root3


def hurwitz_special_odd(m: int, point: SpecialPoint) -> float:
    """zeta(2m+1, p/q) in closed form.

    For q = 6 and growing m the zeta(2m+1) term and the K-term nearly cancel
    (about 6^{2m+1} against a result of size (q/p)^{2m+1}), so the
    combination is formed in extended precision and rounded once.
    """
    if not isinstance(point, SpecialPoint):
        raise TypeError("point must be a SpecialPoint")
    if not isinstance(m, int) or not 1 <= m <= 16:
        raise ValueError(f"m must be an int in [1, 16], got {m!r}")
    return float(_special_odd_mp(m, point))


def hurwitz_half(k: int, cfg: ZetaEvalConfig = DEFAULT_CONFIG) -> float:
    """zeta(k, 1/2) = (2^k - 1) zeta(k) for integer k >= 2 (odd or even)."""
    return (2**k - 1) * zeta_integer(k, cfg)


_DERIV_QUAD = QuadratureSpec(abs_tol=1e-15, rel_tol=1e-12)


def zeta_derivative_neg(k: int, quad: QuadratureSpec = _DERIV_QUAD, cfg: ZetaEvalConfig = DEFAULT_CONFIG) -> float:
    """zeta'(-k) for 0 <= k <= 10.

    Differentiating the continuation formula at s = -k leaves harmonic-number
    weighted q_j(1) terms plus (-1)^k k! * integral_0^1 p_{k+1}(x) zeta(2, x+1) dx.
    """
    if not isinstance(k, int) or not 0 <= k <= 10:
        raise ValueError(f"k must be an int in [0, 10], got {k!r}")
    harmonic = [Fraction(0)]
    for i in range(1, k + 1):
        harmonic.append(harmonic[-1] + Fraction(1, i))
    exact_part = Fraction(-1, (k + 1) ** 2)
    for j in range(1, k + 1):
        exact_part += ((-1) ** (j + 1) * exact.falling_factorial(k, j) * exact.qj_at_one(j)
                       * (harmonic[k] - harmonic[k - j]))
    poly = exact.p_poly(k + 1)
    res = integrate(lambda x: poly(x) * hurwitz_zeta(2.0, x + 1.0, cfg), 0.0, 1.0, quad)
    return float(exact_part) + (-1) ** k * math.factorial(k) * res.value
