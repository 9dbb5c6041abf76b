"""Seeded Monte Carlo for the continuous and discrete coupon collector models.

Every uniform variate is a pure function of (seed, trial, gap): a splitmix64
style finalizer is applied to a counter, so any subset of trials can be
regenerated independently and results do not depend on how work is split.
Chunk results are reduced in trial-index order.

Gaps are indexed by the offset m = n - j, so gap m has rate m/n (continuous)
or success probability m/n (discrete).  All maxima are reported scaled by 1/n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import ResourceError
from .finite import discrete_argmax_probability, finite_argmax_continuous, finite_max_moment
from .moments import moment_bernoulli

Model = Literal["continuous", "discrete"]

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_CHUNK_ELEMENTS = 1 << 22


@dataclass(frozen=True)
class SimConfig:
    model: Model
    n: int
    trials: int
    seed: int
    k_max: int = 4
    m_max: int | None = None
    max_work: int = 10**9

    def __post_init__(self):
        if self.model not in ("continuous", "discrete"):
            raise ValueError(f"model must be 'continuous' or 'discrete', got {self.model!r}")
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError("n must be a positive int")
        if not isinstance(self.trials, int) or self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit int")
        if not 0 <= self.k_max <= 8:
            raise ValueError("k_max must lie in [0, 8]")
        if self.m_max is None:
            object.__setattr__(self, "m_max", self.n)
        if not 0 <= self.m_max <= self.n:
            raise ValueError("m_max must lie in [0, n]")


@dataclass(frozen=True)
class SimSummary:
    model: Model
    n: int
    trials: int
    seed: int
    moments: tuple[tuple[int, float, float], ...]
    argmax_freq: dict[int, float]
    weak_argmax_freq: dict[int, float]
    tie_rate: float
    strict_total: float  # strict-argmax frequency summed over all m; plus tie_rate gives 1


def _mix(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def uniforms(seed: int, trial_lo: int, trial_hi: int, n: int) -> np.ndarray:
    """U in (0, 1) for trials [trial_lo, trial_hi) and gaps m = 1..n (columns)."""
    t = np.arange(trial_lo, trial_hi, dtype=np.uint64) + np.uint64(1)
    keys = _mix(np.uint64(seed) + t * _GAMMA)
    g = np.arange(1, n + 1, dtype=np.uint64) * _GAMMA
    bits = _mix(keys[:, None] + g[None, :])
    return ((bits >> np.uint64(11)).astype(float) + 0.5) * 2.0**-53


def _draw(cfg: SimConfig, lo: int, hi: int) -> np.ndarray:
    n = cfg.n
    u = uniforms(cfg.seed, lo, hi, n)
    m = np.arange(1, n + 1, dtype=float)
    if cfg.model == "continuous":
        # scaled gap W/n with rate m
        return -np.log(u) / m
    out = np.empty_like(u)
    if n > 1:
        denom = np.log1p(-m[:-1] / n)
        out[:, :-1] = np.ceil(np.log(u[:, :-1]) / denom)
    out[:, -1] = 1.0  # m = n: success probability 1
    return out / n


def simulate(cfg: SimConfig) -> SimSummary:
    if cfg.trials * cfg.n > cfg.max_work:
        raise ResourceError(f"trials * n = {cfg.trials * cfg.n} exceeds budget {cfg.max_work}")
    n, k_max, m_max = cfg.n, cfg.k_max, cfg.m_max
    chunk = max(1, _CHUNK_ELEMENTS // n)
    sums = [[] for _ in range(k_max)]
    sq_sums = [[] for _ in range(k_max)]
    strict = np.zeros(n + 1, dtype=np.int64)
    weak = np.zeros(n + 1, dtype=np.int64)
    ties = 0
    for lo in range(0, cfg.trials, chunk):
        hi = min(lo + chunk, cfg.trials)
        x = _draw(cfg, lo, hi)
        mx = x.max(axis=1)
        at_max = x == mx[:, None]
        n_at = at_max.sum(axis=1)
        unique = n_at == 1
        ties += int(np.count_nonzero(~unique))
        arg = np.argmax(x, axis=1) + 1
        strict += np.bincount(arg[unique], minlength=n + 1)
        weak[1:] += at_max.sum(axis=0, dtype=np.int64)
        p = np.ones_like(mx)
        for k in range(k_max):
            p = p * mx
            sums[k].append(math.fsum(p))
            sq_sums[k].append(math.fsum(p * p))
    N = cfg.trials
    moments = []
    for k in range(k_max):
        s1 = math.fsum(sums[k])
        s2 = math.fsum(sq_sums[k])
        mean = s1 / N
        var = max(s2 - s1 * s1 / N, 0.0) / (N - 1) if N > 1 else 0.0
        moments.append((k + 1, mean, math.sqrt(var / N)))
    argmax_freq = {m: int(strict[m]) / N for m in range(1, m_max + 1)}
    weak_freq = {m: int(weak[m]) / N for m in range(1, m_max + 1)}
    return SimSummary(cfg.model, n, N, cfg.seed, tuple(moments), argmax_freq, weak_freq,
                      ties / N, int(strict.sum()) / N)


@dataclass(frozen=True)
class ComparisonEntry:
    quantity: str
    index: int
    empirical: float
    theory: float
    std_error: float
    z: float
    flagged: bool


Z_FLAG = 4.0


def _z(emp: float, theory: float, se: float) -> float:
    if se > 0:
        return (emp - theory) / se
    return 0.0 if emp == theory else math.inf


def compare_with_theory(summary: SimSummary, cfg: SimConfig) -> list[ComparisonEntry]:
    """z-scores of the empirical summary against the finite and limit theory.

    Moments are compared with the exact finite-n value (continuous only) and
    with E(M^k) (both models).  Strict argmax frequencies are compared with
    the continuous integral or the discrete series.
    """
    if (summary.model, summary.n, summary.trials, summary.seed) != (cfg.model, cfg.n, cfg.trials, cfg.seed):
        raise ValueError("summary was not produced by this config")
    out: list[ComparisonEntry] = []

    def add(name, idx, emp, th, se):
        z = _z(emp, th, se)
        out.append(ComparisonEntry(name, idx, emp, th, se, z, abs(z) > Z_FLAG))

    for k, mean, se in summary.moments:
        if cfg.model == "continuous":
            add("moment_finite", k, mean, finite_max_moment(cfg.n, k), se)
        add("moment_limit", k, mean, moment_bernoulli(k), se)
    for m, freq in summary.argmax_freq.items():
        if cfg.model == "continuous":
            p = finite_argmax_continuous(m, cfg.n)
        else:
            p = discrete_argmax_probability(m, cfg.n)
        se = math.sqrt(max(p * (1 - p), 0.0) / summary.trials)
        add("argmax", m, freq, p, se)
    return out
