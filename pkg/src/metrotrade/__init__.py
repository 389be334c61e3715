"""Precision/accuracy trade-off toolkit for phase estimation at finite
sample budgets.

The package answers one question from several angles: given n repetitions
of a binary-outcome probe measurement, how small a phase signal can be
*reliably* distinguished from the working point, and what does chasing
resolution past that floor cost in accuracy?

Modules
    states      probe families, overlap fidelity, Fisher information
    sampling    deterministic counter-based outcome sampling
    estimation  bias/variance reports for the standard phase estimator
    bounds      distinguishability thresholds and trade-off bounds
    resources   entangled vs separable scaling of the detection floor
    basis       measurement-direction optimization
    verify      self-contained invariant suite (also `metrotrade verify`)
"""

from .basis import (
    MeasurementBasis,
    basis_probabilities,
    basis_snr,
    find_optimal_basis,
    precision_from_snr,
)
from .bounds import (
    AccuracySpec,
    BoundReport,
    accuracy_of,
    critical_fidelity,
    distinguishable_binary,
    inherent_precision,
    min_detectable_signal,
    povm_statistic,
    tradeoff_bound,
)
from .errors import BranchError, BudgetError, UnreachableSignalError
from .estimation import (
    EstimatorReport,
    ReportMode,
    classical_fisher_information,
    exact_bias_report,
    invert_phase,
    monte_carlo_report,
)
from .resources import (
    ScalingReport,
    StrategyConfig,
    StrategyKind,
    fit_scaling,
    strategy_min_signal,
    strategy_signal_noise,
)
from .sampling import (
    EXACT_ENUM_LIMIT,
    OutcomeStats,
    SampleDraw,
    binary_stats,
    draw_samples,
    enumerate_binomial,
    povm_stats,
)
from .states import (
    GeneratorSpec,
    ProbeKind,
    ProbePhaseState,
    canonical_spread,
    fidelity,
    quantum_fisher_information,
    signal,
)
from .verify import CheckResult, format_report, run_all

__version__ = "0.1.0"

__all__ = [
    "AccuracySpec",
    "BoundReport",
    "BranchError",
    "BudgetError",
    "CheckResult",
    "EstimatorReport",
    "EXACT_ENUM_LIMIT",
    "GeneratorSpec",
    "MeasurementBasis",
    "OutcomeStats",
    "ProbeKind",
    "ProbePhaseState",
    "ReportMode",
    "SampleDraw",
    "ScalingReport",
    "StrategyConfig",
    "StrategyKind",
    "UnreachableSignalError",
    "accuracy_of",
    "basis_probabilities",
    "basis_snr",
    "binary_stats",
    "canonical_spread",
    "classical_fisher_information",
    "critical_fidelity",
    "distinguishable_binary",
    "draw_samples",
    "enumerate_binomial",
    "exact_bias_report",
    "fidelity",
    "find_optimal_basis",
    "fit_scaling",
    "format_report",
    "inherent_precision",
    "invert_phase",
    "min_detectable_signal",
    "monte_carlo_report",
    "povm_statistic",
    "povm_stats",
    "precision_from_snr",
    "quantum_fisher_information",
    "run_all",
    "signal",
    "strategy_min_signal",
    "strategy_signal_noise",
    "tradeoff_bound",
    "__version__",
]
