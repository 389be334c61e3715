"""Finite-sample outcome statistics and reproducible sampling.

Projection noise for an outcome with probability p over n shots is
sqrt(p (1 - p) / n).  OutcomeStats bundles a probability vector with
those standard deviations; draw_samples produces multinomial counts
from it.

Reproducibility contract: trial t consumes a substream derived only
from (seed, t), so results are independent of evaluation order and of
how many trials are requested (the first T trials of a longer run are
bit-identical to a run of T trials).  The substream is a counter-based
hash (splitmix-style finalizer), not a stateful generator.  Counts are
produced by exact inversion of the binomial CDF; no normal
approximation anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import stats as _scipy_stats
from scipy.special import gammaln

from .errors import BudgetError
from .states import ProbePhaseState, fidelity

EXACT_ENUM_LIMIT = 64
_U64 = np.uint64
_GOLDEN = _U64(0x9E3779B97F4A7C15)
_SEED_MAX = 2**64 - 1


@dataclass(frozen=True)
class OutcomeStats:
    """Outcome probabilities with their projection-noise standard deviations.

    std_devs is always recomputed from (probabilities, sample_budget),
    never supplied by the caller, so the two can't drift apart.
    """

    probabilities: tuple
    sample_budget: int
    std_devs: tuple = field(init=False)

    def __post_init__(self):
        probs = tuple(float(p) for p in self.probabilities)
        if len(probs) < 2:
            raise ValueError("need at least two outcomes")
        if not isinstance(self.sample_budget, int) or self.sample_budget < 1:
            raise ValueError("sample_budget must be a positive integer")
        for p in probs:
            if not (0.0 <= p <= 1.0):
                raise ValueError(f"probability {p} outside [0, 1]")
        if abs(math.fsum(probs) - 1.0) > 1e-12:
            raise ValueError("probabilities must sum to 1 within 1e-12")
        n = self.sample_budget
        object.__setattr__(self, "probabilities", probs)
        object.__setattr__(
            self, "std_devs", tuple(math.sqrt(p * (1.0 - p) / n) for p in probs)
        )


@dataclass(frozen=True)
class SampleDraw:
    """One multinomial draw: counts per outcome for a total of n shots."""

    counts: tuple
    seed: int
    n: int

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        object.__setattr__(self, "counts", counts)
        if any(c < 0 for c in counts):
            raise ValueError("counts must be non-negative")
        if sum(counts) != self.n:
            raise ValueError("counts must sum to n")


def binary_stats(p: float, n: int) -> OutcomeStats:
    """Stats for a yes/no measurement with success probability p over n shots."""
    if not (isinstance(n, int) and n >= 1):
        raise ValueError("n must be a positive integer")
    if not (0.0 <= p <= 1.0):
        raise ValueError("p must lie in [0, 1]")
    return OutcomeStats((p, 1.0 - p), n)


def povm_stats(initial: ProbePhaseState, final: ProbePhaseState, n: int):
    """Outcome stats before and after a phase shift, for the projector
    onto the initial state plus its complement.

    Returns (initial_stats, final_stats).  The initial state projects
    onto itself with certainty, so its distribution is (1, 0); the
    final state hits the projector with probability F and everything
    else is lumped into the complement, giving (F, 1 - F).
    """
    if initial.kind is not final.kind or initial.particles != final.particles:
        raise ValueError("initial and final probes must share kind and size")
    f = fidelity(final, initial.phase)
    return binary_stats(1.0, n), binary_stats(f, n)


def enumerate_binomial(p: float, n: int):
    """Exact binomial pmf as a list of (k, probability) pairs.

    Coefficients come from integer arithmetic (math.comb), so each term
    is correct to double rounding.  Limited to n <= 64 where that is
    cheap; beyond the limit a BudgetError is raised.
    """
    if not (isinstance(n, int) and n >= 1):
        raise ValueError("n must be a positive integer")
    if n > EXACT_ENUM_LIMIT:
        raise BudgetError(f"exact enumeration supports n <= {EXACT_ENUM_LIMIT}")
    if not (0.0 <= p <= 1.0):
        raise ValueError("p must lie in [0, 1]")
    q = 1.0 - p
    return [(k, math.comb(n, k) * p**k * q ** (n - k)) for k in range(n + 1)]


def _mix64(z):
    """64-bit avalanche finalizer (Stafford mix 13), vectorized on uint64."""
    z = (z ^ (z >> _U64(30))) * _U64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> _U64(27))) * _U64(0x94D049BB133111EB)
    return z ^ (z >> _U64(31))


def _substream_uniforms(seed: int, trials: int, draw_index: int) -> np.ndarray:
    """One uniform in (0, 1) per trial, from the (seed, trial, draw) counter."""
    t = np.arange(trials, dtype=np.uint64)
    with np.errstate(over="ignore"):
        # uint64 wraparound is the point of the hash, not an accident
        h = _mix64(_U64(seed) + _GOLDEN * (t + _U64(1)))
        h = _mix64(h + _GOLDEN * _U64(draw_index + 1))
    return ((h >> _U64(11)).astype(np.float64) + 0.5) * 2.0**-53


def _binomial_cdf_table(p: float, n: int) -> np.ndarray:
    """Binomial CDF over k = 0..n, exact terms for small n, log-gamma beyond."""
    if n <= EXACT_ENUM_LIMIT:
        pmf = np.array([w for _, w in enumerate_binomial(p, n)])
    else:
        k = np.arange(n + 1, dtype=np.float64)
        logpmf = (
            gammaln(n + 1.0)
            - gammaln(k + 1.0)
            - gammaln(n - k + 1.0)
            + k * math.log(p)
            + (n - k) * math.log1p(-p)
        )
        pmf = np.exp(logpmf)
    return np.cumsum(pmf)


def _invert_binomial_fixed(u: np.ndarray, n: int, p: float) -> np.ndarray:
    """Exact CDF inversion for a shared shot count n (table + searchsorted)."""
    if p <= 0.0:
        return np.zeros(u.shape, dtype=np.int64)
    if p >= 1.0:
        return np.full(u.shape, n, dtype=np.int64)
    cdf = _binomial_cdf_table(p, n)
    k = np.searchsorted(cdf, u, side="left")
    return np.minimum(k, n).astype(np.int64)


def _invert_binomial_varying(u: np.ndarray, n: np.ndarray, p: float) -> np.ndarray:
    """Exact CDF inversion with a per-trial shot count (conditional splits)."""
    if p <= 0.0:
        return np.zeros(u.shape, dtype=np.int64)
    if p >= 1.0:
        return n.astype(np.int64)
    k = _scipy_stats.binom.ppf(u, n, p)
    return np.clip(k, 0, n).astype(np.int64)


def _check_seed(seed: int):
    if not isinstance(seed, int) or not (0 <= seed <= _SEED_MAX):
        raise ValueError("seed must be an unsigned 64-bit integer")


def draw_count_matrix(stats: OutcomeStats, seed: int, trials: int) -> np.ndarray:
    """Multinomial counts for `trials` independent trials, one row each.

    Categories are split off sequentially: category i is a binomial
    draw on the shots remaining after categories 0..i-1, with the
    conditional probability p_i / (p_i + ... + p_last).
    """
    _check_seed(seed)
    if not (isinstance(trials, int) and trials >= 1):
        raise ValueError("trials must be a positive integer")
    probs = stats.probabilities
    n = stats.sample_budget
    ncat = len(probs)
    counts = np.zeros((trials, ncat), dtype=np.int64)
    remaining = np.full(trials, n, dtype=np.int64)
    tail_mass = 1.0
    for i, p_i in enumerate(probs[:-1]):
        if tail_mass <= 0.0:
            break
        cond = min(p_i / tail_mass, 1.0)
        u = _substream_uniforms(seed, trials, i)
        if i == 0:
            k = _invert_binomial_fixed(u, n, cond)
        else:
            k = _invert_binomial_varying(u, remaining, cond)
        counts[:, i] = k
        remaining -= k
        tail_mass -= p_i
    counts[:, -1] = remaining
    return counts


def draw_samples(stats: OutcomeStats, seed: int, trials: int):
    """Like draw_count_matrix, wrapped as a list of SampleDraw records."""
    matrix = draw_count_matrix(stats, seed, trials)
    n = stats.sample_budget
    return [SampleDraw(tuple(row), seed, n) for row in matrix.tolist()]
