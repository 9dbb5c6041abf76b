"""Exact rational machinery: Bernoulli numbers and the p_j / q_j polynomials.

The polynomials are defined by

    p_1(x) = (x - x^2) / 2,
    q_j(x) = integral_0^x p_j(t) dt,
    p_{j+1}(x) = q_j(x) - x q_j(1),

and tie to the Bernoulli numbers through B_n = (-1)^n q_{n-1}(1) n! for n >= 2.
Everything here is exact (``fractions.Fraction``); floats only appear when a
caller evaluates a polynomial at a float point.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

ExactRational = Fraction

MAX_INDEX = 64

_lock = threading.Lock()
_bernoulli: list[Fraction] = [Fraction(1)]
_pq: list[tuple["RationalPolynomial", "RationalPolynomial"]] = []


@dataclass(frozen=True)
class RationalPolynomial:
    """Polynomial with exact rational coefficients; ``coeffs[i]`` multiplies x^i."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        c = [Fraction(v) for v in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        # zero polynomial gets degree -1
        return len(self.coeffs) - 1

    def __call__(self, x):
        # exact for int/Fraction arguments, Horner in floats otherwise
        coeffs = self.coeffs if isinstance(x, (int, Fraction)) else self.float_coeffs()
        acc = coeffs[0] * 0 if coeffs else 0
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc

    def antiderivative(self) -> "RationalPolynomial":
        """Antiderivative vanishing at 0."""
        return RationalPolynomial((Fraction(0),) + tuple(c / (i + 1) for i, c in enumerate(self.coeffs)))

    def __sub__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return RationalPolynomial(tuple(x - y for x, y in zip(a, b)))

    def float_coeffs(self) -> list[float]:
        return [float(c) for c in self.coeffs]


def _check_index(n: int, name: str, lo: int, hi: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"{name} must be an int, got {type(n).__name__}")
    if not lo <= n <= hi:
        raise ValueError(f"{name}={n} outside supported range [{lo}, {hi}]")


def bernoulli_exact(n: int) -> Fraction:
    """B_n (with B_1 = -1/2) from sum_{j=0}^{n} C(n+1, j) B_j = 0.

    >>> bernoulli_exact(12)
    Fraction(-691, 2730)
    """
    _check_index(n, "n", 0, MAX_INDEX)
    if n < len(_bernoulli):
        return _bernoulli[n]
    with _lock:
        while len(_bernoulli) <= n:
            m = len(_bernoulli)
            s = sum(comb(m + 1, j) * _bernoulli[j] for j in range(m))
            _bernoulli.append(-s / (m + 1))
    return _bernoulli[n]


def pq_polynomials(j_max: int) -> list[tuple[RationalPolynomial, RationalPolynomial]]:
    """Pairs (p_j, q_j) for j = 1..j_max."""
    _check_index(j_max, "j_max", 1, MAX_INDEX - 1)
    if len(_pq) < j_max:
        with _lock:
            if not _pq:
                p1 = RationalPolynomial((Fraction(0), Fraction(1, 2), Fraction(-1, 2)))
                _pq.append((p1, p1.antiderivative()))
            while len(_pq) < j_max:
                _, q = _pq[-1]
                x_q1 = RationalPolynomial((Fraction(0), q(Fraction(1))))
                p_next = q - x_q1
                _pq.append((p_next, p_next.antiderivative()))
    return list(_pq[:j_max])


def p_poly(j: int) -> RationalPolynomial:
    return pq_polynomials(j)[j - 1][0]


def q_poly(j: int) -> RationalPolynomial:
    return pq_polynomials(j)[j - 1][1]


def qj_at_one(j: int) -> Fraction:
    """q_j(1); equals (-1)^{j+1} B_{j+1} / (j+1)!."""
    return q_poly(j)(Fraction(1))


def binomial(n: int, k: int) -> int:
    return comb(n, k)


def bernoulli_sequence(n_max: int) -> Sequence[Fraction]:
    bernoulli_exact(n_max)
    return tuple(_bernoulli[: n_max + 1])


def falling_factorial(k: int, j: int) -> int:
    """k! / (k-j)!"""
    return factorial(k) // factorial(k - j)
