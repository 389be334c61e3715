"""Distinguishability thresholds and the precision/accuracy trade-off.

Two finite-sample probability estimates are distinguishable at
confidence level alpha when their separation exceeds alpha times the
summed projection noise.  Applying that criterion to a probe and its
phase-shifted copy gives a chain of closed forms:

    critical fidelity      F <= n / (n + alpha**2)
    minimum signal         dphi >= arccos((n - alpha**2) / (n + alpha**2))
    trade-off bound        dphi >= 2 alpha / (sqrt(n + alpha**2) sqrt(Fq))

The exact minimum signal exceeds the inverse-root Cramer-Rao value
1/sqrt(n Fq) by a factor approaching 2: resolving one noise width on
each side costs twice the naive one-sigma estimate.  correction_ratio
tracks that factor.  Conversely accuracy_of reads off the confidence
level a given precision actually buys.

inherent_precision has no alpha at all: with n shots the probability
scale is quantized in steps of 1/n, and the smallest phase step that
moves the outcome probability by one quantum is itself bounded below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import UnreachableSignalError
from .sampling import OutcomeStats


@dataclass(frozen=True)
class AccuracySpec:
    """Confidence level alpha (in noise-sigma units) and sample budget n.

    split optionally records a factorization n = M * N into probe size
    and repetitions for bookkeeping; it must multiply out to n.
    """

    alpha: float
    n: int
    split: tuple | None = None

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and self.alpha > 0.0):
            raise ValueError("alpha must be positive and finite")
        if not (isinstance(self.n, int) and self.n >= 1):
            raise ValueError("n must be a positive integer")
        if self.split is not None:
            m, reps = self.split
            if m * reps != self.n:
                raise ValueError("split must factor n exactly")


@dataclass(frozen=True)
class BoundReport:
    critical_fidelity: float
    min_signal_exact: float
    min_signal_asymptotic: float
    qcrb: float
    correction_ratio: float

    def __post_init__(self):
        if self.min_signal_exact < 0.0:
            raise ValueError("min_signal_exact must be non-negative")
        expected = self.min_signal_exact / self.qcrb
        if abs(self.correction_ratio - expected) > 1e-12 * max(1.0, abs(expected)):
            raise ValueError("correction_ratio inconsistent with exact/qcrb")


def distinguishable_binary(
    stats0: OutcomeStats, stats1: OutcomeStats, alpha: float
) -> bool:
    """Whether two binary outcome estimates are alpha-sigma separable.

    True when |p1 - p0| >= alpha * (dp1 + dp0).  Identical
    deterministic estimates (zero separation, zero noise) are declared
    indistinguishable rather than letting 0 >= 0 slip through.
    """
    if not (math.isfinite(alpha) and alpha > 0.0):
        raise ValueError("alpha must be positive and finite")
    if len(stats0.probabilities) != 2 or len(stats1.probabilities) != 2:
        raise ValueError("expected binary outcome stats")
    if stats0.sample_budget != stats1.sample_budget:
        raise ValueError("stats must share the same sample budget")
    separation = abs(stats1.probabilities[0] - stats0.probabilities[0])
    noise = stats0.std_devs[0] + stats1.std_devs[0]
    if separation == 0.0 and noise == 0.0:
        return False
    return separation >= alpha * noise


def critical_fidelity(spec: AccuracySpec) -> float:
    """Largest fidelity still distinguishable from the initial state."""
    return spec.n / (spec.n + spec.alpha**2)


def min_detectable_signal(spec: AccuracySpec) -> BoundReport:
    """Smallest phase shift resolvable at confidence alpha with n shots.

    Exact form arccos((n - a2)/(n + a2)); asymptotic form 2 alpha /
    sqrt(n); inverse-root benchmark 1/sqrt(n) for unit Fisher
    information.
    """
    a2 = spec.alpha**2
    n = spec.n
    exact = math.acos((n - a2) / (n + a2))
    asymptotic = 2.0 * spec.alpha / math.sqrt(n)
    qcrb = 1.0 / math.sqrt(n)
    return BoundReport(
        critical_fidelity=critical_fidelity(spec),
        min_signal_exact=exact,
        min_signal_asymptotic=asymptotic,
        qcrb=qcrb,
        correction_ratio=exact / qcrb,
    )


def tradeoff_bound(spec: AccuracySpec, fq: float) -> float:
    """Lower bound 2 alpha / (sqrt(n + alpha**2) sqrt(fq)) on the signal.

    fq is the quantum Fisher information of one shot; zero information
    admits no bound and is rejected.
    """
    if not (math.isfinite(fq) and fq > 0.0):
        raise ValueError("fq must be positive (no information, no bound)")
    return 2.0 * spec.alpha / (math.sqrt(spec.n + spec.alpha**2) * math.sqrt(fq))


def accuracy_of(delta_phi: float, n: int, fq: float) -> float:
    """Confidence level alpha = delta_phi * sqrt(n fq) / 2 a precision buys."""
    if not (math.isfinite(delta_phi) and delta_phi >= 0.0):
        raise ValueError("delta_phi must be non-negative")
    if not (isinstance(n, int) and n >= 1):
        raise ValueError("n must be a positive integer")
    if not (math.isfinite(fq) and fq >= 0.0):
        raise ValueError("fq must be non-negative")
    return delta_phi * math.sqrt(n * fq) / 2.0


def povm_statistic(stats_initial: OutcomeStats, stats_final: OutcomeStats) -> float:
    """Separation statistic sqrt(n) sqrt(sum (p'_i - p_i)**2 / p'_i).

    p are the initial and p' the final outcome probabilities over the
    same outcome set.  Cells where p' vanishes contribute nothing if p
    vanishes too, and make the statistic infinite otherwise (a formerly
    occupied outcome became impossible: certain separation).
    """
    p = stats_initial.probabilities
    pf = stats_final.probabilities
    if len(p) != len(pf):
        raise ValueError("outcome sets must have equal size")
    if stats_initial.sample_budget != stats_final.sample_budget:
        raise ValueError("stats must share the same sample budget")
    total = 0.0
    for pi, pfi in zip(p, pf):
        if pfi == 0.0:
            if pi == 0.0:
                continue
            return math.inf
        total += (pfi - pi) ** 2 / pfi
    return math.sqrt(stats_initial.sample_budget) * math.sqrt(total)


def inherent_precision(phi0: float, n: int, mirror: bool = False):
    """Smallest phase step from phi0 that shifts the outcome probability
    by one quantum 1/n, and the accuracy dphi * sqrt(n) / 2 it carries.

    Returns (delta_phi, accuracy).  The default form steps the phase
    downward from phi0 (the probability rises by 1/n); mirror=True
    steps upward instead.  When the quantum cannot be bridged from this
    working point (arccos argument outside [-1, 1]) the signal is
    unreachable and UnreachableSignalError is raised.
    """
    if not (0.0 < phi0 < math.pi):
        raise ValueError("phi0 must lie in (0, pi)")
    if not (isinstance(n, int) and n >= 1):
        raise ValueError("n must be a positive integer")
    step = 2.0 / n
    if mirror:
        arg = math.cos(phi0) - step
    else:
        arg = step + math.cos(phi0)
    if not -1.0 <= arg <= 1.0:
        raise UnreachableSignalError(
            f"probability step 1/{n} is not reachable from phi0={phi0:.6g}"
        )
    if mirror:
        delta = math.acos(arg) - phi0
    else:
        delta = phi0 - math.acos(arg)
    return delta, delta * math.sqrt(n) / 2.0
