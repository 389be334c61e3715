"""Command line interface: `metrotrade <command> [flags]`.

Commands
    tradeoff     detection bounds across an (n, alpha) grid
    inherent     quantization-limited resolution and accuracy vs phi0
    basis-sweep  signal-to-noise landscape over measurement directions
    resources    detection floor and fitted scaling for each strategy
    bias-mc      estimator bias report, exact enumeration vs Monte Carlo
    verify       run the built-in invariant suite

Exit codes: 0 success, 1 usage error, 2 domain/precondition error,
3 verification failure.

CSV is the primary output (full 17-digit floats, LF line endings,
deterministic row order); SVG charts are rendered from the same rows.
--format both writes <out>.csv and <out>.svg next to each other.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field

from . import __version__
from .basis import MeasurementBasis, basis_snr
from .bounds import AccuracySpec, inherent_precision, min_detectable_signal
from .errors import UnreachableSignalError
from .estimation import exact_bias_report, monte_carlo_report
from .resources import StrategyKind, fit_scaling
from .sampling import EXACT_ENUM_LIMIT, _SEED_MAX
from .svgchart import Panel, Series, render_chart
from .verify import CHECK_NAMES, format_report, run_all

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_VERIFY = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse defaults to exit code 2 on bad flags; we reserve 2 for
    domain errors, so syntax problems are rerouted through UsageError."""

    def error(self, message):
        raise UsageError(message)


def _int_list(text: str):
    try:
        values = [int(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _float_list(text: str):
    try:
        values = [float(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers: {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _uint64(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an unsigned integer: {text!r}")
    if not 0 <= value <= _SEED_MAX:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def _fmt_cell(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    return f"{value:.17g}"


def _csv_text(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt_cell(cell) for cell in row))
    return "\n".join(lines) + "\n"


@dataclass
class RunConfig:
    """Validated flag set for one CLI invocation."""

    command: str
    n_list: list = field(default_factory=list)
    alpha_list: list = field(default_factory=list)
    phi0: float | None = None
    phi: float = math.pi / 4.0
    m_grid: list = field(default_factory=list)
    big_n: int = 100
    k: float = 2.0
    trials: int = 10**5
    seed: int = 0
    grid: int = 400
    out: str | None = None
    fmt: str = "csv"
    corrupt: str | None = None

    def validate(self):
        """Check every numeric flag against its command's preconditions."""
        cmd = self.command
        if cmd == "tradeoff":
            if any(n < 1 for n in self.n_list):
                raise ValueError("every n must be >= 1")
            if any(not (a > 0.0 and math.isfinite(a)) for a in self.alpha_list):
                raise ValueError("every alpha must be positive and finite")
        elif cmd == "inherent":
            n = self.n_list[0]
            if n < 3:
                raise ValueError("n must be >= 3 for a reachable interior point")
            if self.phi0 is not None and not 0.0 < self.phi0 < math.pi:
                raise ValueError("phi0 must lie in (0, pi)")
            if self.grid < 1:
                raise ValueError("grid must be >= 1")
        elif cmd == "basis-sweep":
            if self.n_list[0] < 1:
                raise ValueError("n must be >= 1")
            if self.grid < 200:
                raise ValueError("grid must be >= 200 points per axis")
            if not math.isfinite(self.phi):
                raise ValueError("phi must be finite")
        elif cmd == "resources":
            if any(m < 1 for m in self.m_grid):
                raise ValueError("every M must be >= 1")
            if len(set(self.m_grid)) < 2:
                raise ValueError("degenerate M grid: need two distinct values")
            if self.big_n < 1:
                raise ValueError("N must be >= 1")
            if not (self.alpha_list[0] > 0.0 and math.isfinite(self.alpha_list[0])):
                raise ValueError("alpha must be positive and finite")
            if self.k < 1.0:
                raise ValueError("k must be >= 1")
        elif cmd == "bias-mc":
            if not 0.0 < self.phi < math.pi:
                raise ValueError("phi must lie in (0, pi)")
            if self.n_list[0] < 1:
                raise ValueError("n must be >= 1")
            if self.trials < 100:
                raise ValueError("trials must be >= 100")
        if self.fmt == "both" and self.out is None:
            raise UsageError("--format both requires --out")


def cmd_tradeoff(cfg: RunConfig):
    header = ["n", "alpha", "exact_bound", "asymptotic_bound", "qcrb",
              "correction_ratio"]
    rows = []
    for n in cfg.n_list:
        for alpha in cfg.alpha_list:
            rep = min_detectable_signal(AccuracySpec(alpha, n))
            rows.append([
                n, alpha, rep.min_signal_exact, rep.min_signal_asymptotic,
                rep.qcrb, rep.correction_ratio,
            ])
    series = [
        Series("exact_bound", tuple(range(len(rows))), tuple(r[2] for r in rows)),
        Series("asymptotic_bound", tuple(range(len(rows))), tuple(r[3] for r in rows)),
        Series("qcrb", tuple(range(len(rows))), tuple(r[4] for r in rows)),
    ]
    svg = render_chart([
        Panel("detection bounds across the (n, alpha) grid", "row", "radians",
              tuple(series)),
    ])
    return header, rows, svg


def _inherent_grid(n_points: int):
    """Interior grid over (0, pi) with pi/2 always included."""
    step = math.pi / (n_points + 1)
    values = [i * step for i in range(1, n_points + 1)]
    half = math.pi / 2.0
    if half not in values:
        values.append(half)
        values.sort()
    return values


def cmd_inherent(cfg: RunConfig):
    n = cfg.n_list[0]
    header = ["phi0", "resolution", "accuracy"]
    if cfg.phi0 is not None:
        grid = [cfg.phi0]
    else:
        grid = _inherent_grid(cfg.grid)
    rows = []
    for phi0 in grid:
        try:
            dphi, acc = inherent_precision(phi0, n)
            rows.append([phi0, 1.0 / dphi, acc])
        except UnreachableSignalError:
            rows.append([phi0, math.nan, math.nan])
    xs = tuple(r[0] for r in rows)
    svg = render_chart([
        Panel(f"resolution vs phi0 (n={n})", "phi0", "1/dphi",
              (Series("resolution", xs, tuple(r[1] for r in rows)),)),
        Panel(f"accuracy vs phi0 (n={n})", "phi0", "alpha",
              (Series("accuracy", xs, tuple(r[2] for r in rows)),)),
    ])
    return header, rows, svg


def cmd_basis_sweep(cfg: RunConfig):
    phi, n, grid = cfg.phi, cfg.n_list[0], cfg.grid
    header = ["theta", "phi_b", "snr"]
    rows = []
    thetas = [i * math.pi / (grid - 1) for i in range(grid)]
    phibs = [j * 2.0 * math.pi / grid for j in range(grid)]
    grid_max = 0.0
    for theta in thetas:
        for phi_b in phibs:
            snr = basis_snr(MeasurementBasis(theta, phi_b), phi, n)
            grid_max = max(grid_max, snr)
            rows.append([theta, phi_b, snr])
    analytic = math.sqrt(n) * abs(math.tan(phi / 2.0))
    rows.append(["summary", grid_max, analytic])
    # Equatorial slice for the chart: theta closest to pi/2.
    eq_theta = min(thetas, key=lambda t: abs(t - math.pi / 2.0))
    eq = [(r[1], r[2]) for r in rows[:-1] if r[0] == eq_theta]
    svg = render_chart([
        Panel(
            f"snr vs phi_b on the equatorial slice (phi={phi:.6g}, n={n})",
            "phi_b", "snr",
            (Series("snr(theta~pi/2)", tuple(x for x, _ in eq),
                    tuple(y for _, y in eq)),),
        ),
    ])
    return header, rows, svg


def cmd_resources(cfg: RunConfig):
    header = ["strategy", "M", "N", "min_signal", "fitted_exponent"]
    rows = []
    panels = []
    alpha = cfg.alpha_list[0]
    for strat in StrategyKind:
        rep = fit_scaling(strat, cfg.m_grid, cfg.big_n, alpha,
                          nonlinear_exponent=cfg.k)
        for m, floor in zip(rep.m_values, rep.phis):
            rows.append([strat.value, m, cfg.big_n, floor, rep.fitted_exponent])
        panels.append(Series(strat.value, rep.m_values, rep.phis))
    svg = render_chart([
        Panel(f"detection floor vs M (N={cfg.big_n}, alpha={alpha:.6g})",
              "M", "min signal", tuple(panels)),
    ])
    return header, rows, svg


def cmd_bias_mc(cfg: RunConfig):
    phi, n = cfg.phi, cfg.n_list[0]
    header = ["mode", "mean_p", "bias_p", "mean_phi", "bias_phi", "var_phi",
              "mse_phi"]
    rows = []
    reports = []
    if n <= EXACT_ENUM_LIMIT:
        reports.append(exact_bias_report(phi, n))
    reports.append(monte_carlo_report(phi, n, cfg.trials, cfg.seed))
    for rep in reports:
        rows.append([
            rep.mode.value, rep.mean_p_hat, rep.bias_p, rep.mean_phi_hat,
            rep.bias_phi, rep.var_phi, rep.mse_phi,
        ])
    xs = tuple(range(len(rows)))
    svg = render_chart([
        Panel(f"estimator bias at phi={phi:.6g}, n={n}", "row", "bias_phi",
              (Series("bias_phi", xs, tuple(r[4] for r in rows)),)),
    ])
    return header, rows, svg


def _write_text(path: str, text: str):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _emit(cfg: RunConfig, header, rows, svg: str) -> int:
    csv_text = _csv_text(header, rows)
    if cfg.fmt == "csv":
        if cfg.out:
            _write_text(cfg.out, csv_text)
        else:
            sys.stdout.write(csv_text)
    elif cfg.fmt == "svg":
        if cfg.out:
            _write_text(cfg.out, svg)
        else:
            sys.stdout.write(svg)
    else:
        stem = cfg.out
        for suffix in (".csv", ".svg"):
            if stem.endswith(suffix):
                stem = stem[: -len(suffix)]
        _write_text(stem + ".csv", csv_text)
        _write_text(stem + ".svg", svg)
    return EXIT_OK


_COMMANDS = {
    "tradeoff": cmd_tradeoff,
    "inherent": cmd_inherent,
    "basis-sweep": cmd_basis_sweep,
    "resources": cmd_resources,
    "bias-mc": cmd_bias_mc,
}


def build_parser() -> _Parser:
    parser = _Parser(prog="metrotrade", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, **defaults):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--n", type=_int_list, default=defaults.get("n"),
                       help="sample budget, or comma list of budgets")
        p.add_argument("--alpha", type=_float_list,
                       default=defaults.get("alpha"),
                       help="confidence level(s) in noise-sigma units")
        p.add_argument("--phi0", type=float, default=None,
                       help="working-point phase in (0, pi)")
        p.add_argument("--phi", type=float, default=defaults.get("phi"),
                       help="phase shift under test")
        p.add_argument("--m-grid", type=_int_list,
                       default=defaults.get("m_grid"),
                       help="comma list of probe sizes M")
        p.add_argument("--big-n", type=int, default=100,
                       help="repetition count N")
        p.add_argument("--k", type=float, default=2.0,
                       help="nonlinear generator order")
        p.add_argument("--trials", type=int, default=defaults.get("trials"),
                       help="Monte Carlo trial count")
        p.add_argument("--seed", type=_uint64, default=0,
                       help="64-bit unsigned sampling seed")
        p.add_argument("--grid", type=int, default=defaults.get("grid"),
                       help="grid resolution")
        p.add_argument("--out", type=str, default=None, help="output path")
        p.add_argument("--format", dest="fmt", choices=("csv", "svg", "both"),
                       default="csv", help="output format")
        return p

    add("tradeoff", "detection bounds over an (n, alpha) grid",
        n=[10, 100, 1000, 10000], alpha=[0.25, 0.5, 1.0, 2.0, 4.0])
    add("inherent", "quantization-limited resolution/accuracy vs phi0",
        n=[100], grid=999)
    add("basis-sweep", "snr landscape over measurement directions",
        n=[1], phi=math.pi / 10.0, grid=400)
    add("resources", "detection floor scaling per strategy",
        alpha=[1.0], m_grid=[2, 4, 8, 16, 32])
    add("bias-mc", "estimator bias, exact vs Monte Carlo",
        n=[10], phi=math.pi / 4.0, trials=10**5)
    pv = sub.add_parser("verify", help="run the built-in invariant suite")
    pv.add_argument("--seed", type=_uint64, default=0)
    pv.add_argument("--corrupt", choices=CHECK_NAMES, default=None,
                    help="test hook: sabotage one check's tolerance")
    pv.add_argument("--out", type=str, default=None)
    return parser


def run_verify(seed: int, corrupt, out) -> int:
    results = run_all(seed=seed, corrupt=corrupt)
    report = format_report(results)
    if out:
        _write_text(out, report)
    else:
        sys.stdout.write(report)
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "verify":
            return run_verify(args.seed, args.corrupt, args.out)
        cfg = RunConfig(
            command=args.command,
            n_list=args.n,
            alpha_list=args.alpha if args.alpha else [1.0],
            phi0=args.phi0,
            phi=args.phi if args.phi is not None else math.pi / 4.0,
            m_grid=args.m_grid if args.m_grid else [2, 4, 8, 16, 32],
            big_n=args.big_n,
            k=args.k,
            trials=args.trials if args.trials is not None else 10**5,
            seed=args.seed,
            grid=args.grid if args.grid is not None else 400,
            out=args.out,
            fmt=args.fmt,
        )
        cfg.validate()
        header, rows, svg = _COMMANDS[args.command](cfg)
        return _emit(cfg, header, rows, svg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
