"""Phase estimation from measured frequencies, and its bias structure.

The observed frequency k/n is an unbiased estimate of the outcome
probability, but pushing it through the arccos inversion to get a
phase is not: the curvature of the inversion turns symmetric
probability noise into a systematic phase offset.  Reports here expose
that split (bias_p vs bias_phi) together with the variance and mean
squared error of the phase estimate.

Two routes are provided.  exact_bias_report enumerates the binomial
distribution outright (n <= 64), monte_carlo_report samples it.  Both
must agree within sampling error; the tests hold them to that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .basis import MeasurementBasis
from .sampling import binary_stats, draw_count_matrix, enumerate_binomial


class ReportMode(Enum):
    EXACT_ENUMERATION = "ExactEnumeration"
    MONTE_CARLO = "MonteCarlo"


@dataclass(frozen=True)
class EstimatorReport:
    """Moments of the frequency and phase estimators at a true phase.

    mse_phi always decomposes as var_phi + bias_phi**2; the constructor
    recomputes the identity and refuses reports that violate it.
    """

    mean_p_hat: float
    bias_p: float
    mean_phi_hat: float
    bias_phi: float
    var_phi: float
    mse_phi: float
    mode: ReportMode
    trials: int | None = None

    def __post_init__(self):
        residual = abs(self.mse_phi - (self.var_phi + self.bias_phi**2))
        if residual > 1e-10:
            raise ValueError(
                f"mse/variance/bias decomposition violated by {residual:.3e}"
            )


def invert_phase(p_hat: float) -> float:
    """Map an observed frequency back to a phase via arccos(2 p - 1).

    Total on [0, 1]: the endpoints map to pi and 0.
    """
    if not (0.0 <= p_hat <= 1.0):
        raise ValueError("p_hat must lie in [0, 1]")
    return math.acos(2.0 * p_hat - 1.0)


def _report_from_moments(phi, mean_p, p, phi_hats, weights, mode, trials=None):
    mean_phi = math.fsum(w * f for w, f in zip(weights, phi_hats))
    bias_phi = mean_phi - phi
    var_phi = math.fsum(w * (f - mean_phi) ** 2 for w, f in zip(weights, phi_hats))
    mse_phi = math.fsum(w * (f - phi) ** 2 for w, f in zip(weights, phi_hats))
    return EstimatorReport(
        mean_p_hat=mean_p,
        bias_p=mean_p - p,
        mean_phi_hat=mean_phi,
        bias_phi=bias_phi,
        var_phi=var_phi,
        mse_phi=mse_phi,
        mode=mode,
        trials=trials,
    )


def exact_bias_report(phi: float, n: int) -> EstimatorReport:
    """Estimator moments by full enumeration of the binomial outcome law."""
    if not (0.0 < phi < math.pi):
        raise ValueError("phi must lie in (0, pi)")
    p = (1.0 + math.cos(phi)) / 2.0
    pmf = enumerate_binomial(p, n)
    weights = [w for _, w in pmf]
    mean_p = math.fsum(w * (k / n) for k, w in pmf)
    phi_hats = [invert_phase(k / n) for k, _ in pmf]
    return _report_from_moments(
        phi, mean_p, p, phi_hats, weights, ReportMode.EXACT_ENUMERATION
    )


def monte_carlo_report(phi: float, n: int, trials: int, seed: int) -> EstimatorReport:
    """Estimator moments from sampled counts (seeded, reproducible).

    Uses exact summation for the moment reductions, so the result does
    not depend on accumulation order.
    """
    if not (0.0 < phi < math.pi):
        raise ValueError("phi must lie in (0, pi)")
    if trials < 100:
        raise ValueError("need at least 100 trials for a meaningful report")
    p = (1.0 + math.cos(phi)) / 2.0
    counts = draw_count_matrix(binary_stats(p, n), seed, trials)[:, 0]
    p_hat = counts / n
    phi_hat = np.arccos(2.0 * p_hat - 1.0)
    mean_p = math.fsum(p_hat) / trials
    w = 1.0 / trials
    return _report_from_moments(
        phi, mean_p, p, phi_hat.tolist(), [w] * trials, ReportMode.MONTE_CARLO, trials
    )


def classical_fisher_information(basis: MeasurementBasis, phi: float) -> float:
    """Fisher information of the two-outcome measurement about the phase.

    For outcome probability p = (1 + sin(theta) cos(phi - phi_b)) / 2
    the information (dp/dphi)**2 * (1/p + 1/(1-p)) reduces to

        sin2(theta) sin2(phi - phi_b)
        -----------------------------------------
        sin2(theta) sin2(phi - phi_b) + cos2(theta)

    which is bounded by 1 and equals 1 on the theta = pi/2 circle.  The
    denominator is written in this cancellation-free form rather than
    1 - sin2 cos2.  When p lands exactly on {0, 1} (only possible on
    that circle, where the numerator vanishes at the same rate) the
    on-circle limit 1 is returned.
    """
    if not math.isfinite(phi):
        raise ValueError("phi must be finite")
    st = math.sin(basis.theta)
    ct = math.cos(basis.theta)
    delta = phi - basis.phi_b
    s = st * math.cos(delta)
    if abs(s) == 1.0:
        return 1.0
    num = (st * math.sin(delta)) ** 2
    return num / (num + ct * ct)
