"""
commands.py

The three commands of the app. Each takes the app instance and the parsed
arguments, writes its report to app.stdout and returns an exit code.
Typed errors from the numerical core are left to the app, which maps them
to exit codes; flag problems found here raise UsageError.
"""

import csv
import io
import logging
import math
from enum import IntEnum

from inference import (
    AggregationSpec,
    DomainError,
    McReport,
    SharpeReport,
    SimConfig,
    Tolerances,
    sample_autocorrelation,
    sharpe_report,
    sr_scaling_ratio,
    validate_aggregation,
    validate_ci_coverage,
    validate_crb,
    validate_sr_distribution,
)
from .returns_file import read_returns_file
from .tables import (
    Table,
    bias_table,
    compounding_table,
    parse_grid,
    render_csv,
    render_text,
    sqrt_deviation_table,
    variance_diff_table,
    variance_table,
)

logger = logging.getLogger(__name__)

Row = tuple[str, str, str]


class ExitCode(IntEnum):
    OK = 0
    CHECK_FAILED = 1
    USAGE = 2
    PARSE = 3
    DOMAIN = 4
    NUMERIC = 5


class UsageError(ValueError):
    """A flag or setting has an unusable value."""


def _setting(flag, default):
    return default if flag is None else flag


def _check_alpha(alpha: float) -> float:
    if not 0.0 < alpha < 1.0:
        raise UsageError(f"--alpha must lie in (0, 1), got {alpha}")
    return alpha


def _fmt(value: float | None, digits: int = 6) -> str:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return "n/a"
    return f"{value:.{digits}f}"


def _render_rows(rows: list[Row], fmt: str, title: str) -> str:
    """Key/value rows as aligned text (labels) or as CSV (keys)"""
    if fmt == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["field", "value"])
        for key, _, value in rows:
            writer.writerow([key, value])
        return out.getvalue()
    width = max(len(label) for _, label, _ in rows)
    lines = [title] + [f"{label.ljust(width)}  {value}" for _, label, value in rows]
    return "\n".join(lines) + "\n"


def cmd_analyze(app, args) -> int:
    """
    Sharpe ratio report of a returns file

    Prints the estimate, the debiased estimate, the exact and asymptotic
    standard deviations, both intervals, the exact p-value of SR > 0, the
    lag-1 autocorrelation and, with --q, the q-period Sharpe ratio under
    the square-root rule and under an AR(1) fit.
    """
    settings = app.settings["analysis"]
    alpha = _check_alpha(_setting(args.alpha, settings["alpha"]))
    method = _setting(args.method, settings["method"])
    variant = int(method[-1]) if method.startswith("asym") else 3
    quantile = _setting(args.quantile, settings["quantile"])
    plugin = _setting(args.plugin, settings["plugin"])
    walck = _setting(args.walck, settings["walck_correction"])
    if args.q is not None and args.q < 1:
        raise UsageError(f"--q must be >= 1, got {args.q}")

    returns_file = read_returns_file(args.file)
    series = returns_file.to_series(args.rf)
    report = sharpe_report(series, alpha, variant, quantile, plugin, walck)
    rho1 = sample_autocorrelation(series.returns, 1)

    rows = _report_rows(report, method, quantile, rho1)
    if args.q is not None:
        rows += _q_period_rows(report.estimate.sr_hat, args.q, rho1)

    # Serially correlated returns make every iid formula above optimistic
    if abs(rho1) > 2.0 / math.sqrt(series.n):
        app.console.printline(
            f"Lag-1 autocorrelation {rho1:.3f} is significant; the iid "
            f"intervals may be too narrow", "warning",
        )
    app.stdout.write(_render_rows(
        rows, args.format, f"Sharpe ratio analysis of {returns_file.path}"
    ))
    app.console.printline("Analysis complete", "success")
    return ExitCode.OK


def _report_rows(
    report: SharpeReport, method: str, quantile: str, rho1: float
) -> list[Row]:
    est = report.estimate
    level = f"{100.0 * (1.0 - report.alpha):g}%"
    asym = report.ci_asymptotic
    headline = report.ci_exact if method == "exact" else asym
    return [
        ("n", "observations", str(est.n)),
        ("rf", "risk-free rate", _fmt(est.rf)),
        ("mean", "mean return", _fmt(est.mean_hat)),
        ("sigma", "standard deviation", _fmt(est.sigma_hat)),
        ("sr_hat", "Sharpe ratio", _fmt(est.sr_hat)),
        ("sr_debiased", "debiased Sharpe ratio", _fmt(report.sr_debiased)),
        ("plugin", "plug-in", report.plugin),
        ("sd_exact", "exact sd", _fmt(report.sd_exact)),
        ("sd_iid_1", "asymptotic sd 1", _fmt(report.sd_iid[0])),
        ("sd_iid_2", "asymptotic sd 2", _fmt(report.sd_iid[1])),
        ("sd_iid_3", "asymptotic sd 3", _fmt(report.sd_iid[2])),
        ("alpha", "alpha", f"{report.alpha:g}"),
        ("ci_exact_lower", f"{level} exact interval, lower",
         _fmt(report.ci_exact.lower)),
        ("ci_exact_upper", f"{level} exact interval, upper",
         _fmt(report.ci_exact.upper)),
        ("ci_asym_method", "asymptotic interval method",
         f"{asym.method}/{quantile}"),
        ("ci_asym_lower", f"{level} asymptotic interval, lower", _fmt(asym.lower)),
        ("ci_asym_upper", f"{level} asymptotic interval, upper", _fmt(asym.upper)),
        ("ci_method", "headline interval", method),
        ("ci_lower", "headline interval, lower", _fmt(headline.lower)),
        ("ci_upper", "headline interval, upper", _fmt(headline.upper)),
        ("pvalue", "p-value of SR > 0", _fmt(report.pvalue)),
        ("crb_sr", "Cramer-Rao bound, var(SR)", _fmt(report.crb.sr_variance)),
        ("crb_cov", "Cramer-Rao bound, cov(SR, variance)",
         f"{report.crb.covariance:.6g}"),
        ("crb_var", "Cramer-Rao bound, var(variance)",
         f"{report.crb.variance_variance:.6g}"),
        ("lag1_autocorrelation", "lag-1 autocorrelation", _fmt(rho1)),
    ]


def _q_period_rows(sr_hat: float, q: int, rho1: float) -> list[Row]:
    rows = [("q", "horizon q", str(q)),
            ("sr_q_sqrt_rule", "q-period SR, square-root rule",
             _fmt(math.sqrt(q) * sr_hat))]
    try:
        ratio = sr_scaling_ratio(AggregationSpec.ar1(q, rho1))
    except DomainError as e:
        logger.warning("no AR(1) q-period Sharpe ratio: %s", e)
        ratio = None
    rows.append(("sr_q_ar1", "q-period SR, AR(1) adjusted",
                 _fmt(None if ratio is None else ratio * sr_hat)))
    return rows


def _grid(flag: str | None, default: list, integer: bool, name: str) -> list:
    if flag is None:
        return [int(v) for v in default] if integer else [float(v) for v in default]
    try:
        return parse_grid(flag, integer)
    except ValueError as e:
        raise UsageError(f"{name}: {e}") from e


def _require(values: list, ok, name: str, what: str) -> None:
    bad = [v for v in values if not ok(v)]
    if bad:
        raise UsageError(f"{name} values must be {what}, got {bad}")


def _parse_variants(flag: str | None, default: list[int]) -> tuple[int, int]:
    if flag is None:
        variants = [int(v) for v in default]
    else:
        try:
            variants = [int(v) for v in flag.split(",")]
        except ValueError as e:
            raise UsageError(f"--variants: {e}") from e
    if len(variants) != 2 or any(v not in (1, 2, 3) for v in variants):
        raise UsageError(
            f"--variants needs two of 1, 2, 3 separated by a comma, got {variants}"
        )
    return variants[0], variants[1]


def build_table(settings: dict, args) -> Table:
    """The Table a `table` invocation asks for, with settings as defaults"""
    kind = args.kind
    if kind == "variance-diff":
        precision = _setting(args.precision, settings["diff_precision"])
    else:
        precision = _setting(args.precision, settings["precision"])
    if not 0 <= precision <= 12:
        raise UsageError(f"--precision must lie in 0..12, got {precision}")

    match kind:
        case "bias":
            n_grid = _grid(args.n_grid, settings["bias_n_grid"], True, "--n-grid")
            _require(n_grid, lambda n: n >= 3, "--n-grid", ">= 3")
            return bias_table(n_grid, precision)
        case "variance" | "variance-diff":
            n_grid = _grid(args.n_grid, settings["n_grid"], True, "--n-grid")
            sr_grid = _grid(args.sr_grid, settings["sr_grid"], False, "--sr-grid")
            _require(n_grid, lambda n: n >= 2, "--n-grid", ">= 2")
            if kind == "variance":
                return variance_table(args.variant, sr_grid, n_grid, precision,
                                      args.walck)
            variants = _parse_variants(args.variants, settings["diff_variants"])
            return variance_diff_table(variants, sr_grid, n_grid, precision)
        case "compounding" | "sqrt-deviation":
            rho_grid = _grid(args.rho_grid, settings["rho_grid"], False, "--rho-grid")
            q_grid = _grid(args.q_grid, settings["q_grid"], True, "--q-grid")
            _require(rho_grid, lambda r: abs(r) < 1.0, "--rho-grid", "in (-1, 1)")
            _require(q_grid, lambda q: q >= 1, "--q-grid", ">= 1")
            if kind == "compounding":
                return compounding_table(rho_grid, q_grid, precision)
            return sqrt_deviation_table(rho_grid, q_grid, precision)
        case _:
            raise UsageError(f"unknown table kind: {kind}")


def cmd_table(app, args) -> int:
    """Regenerate one of the numeric tables"""
    table = build_table(app.settings["tables"], args)
    render = render_csv if args.format == "csv" else render_text
    app.stdout.write(render(table))
    app.console.printline(
        f"Table {args.kind}: {len(table.row_keys)} x {len(table.col_keys)}",
        "success",
    )
    return ExitCode.OK


def build_sim_config(settings: dict, args) -> SimConfig:
    """SimConfig of an `mc` invocation, flags over per-check defaults"""
    defaults = settings["defaults"][args.check]
    rho = _setting(args.rho, defaults.get("rho"))
    if rho is not None and args.check != "aggregation":
        raise UsageError(f"mc {args.check} simulates iid returns; drop --rho")
    try:
        return SimConfig.from_sharpe(
            n=_setting(args.n, defaults["n"]),
            sr=_setting(args.sr, defaults["sr"]),
            rho=rho,
            sigma=args.sigma,
            rf=args.rf,
            reps=_setting(args.reps, defaults.get("reps", settings["reps"])),
            seed=_setting(args.seed, settings["seed"]),
            block_size=_setting(args.block_size, settings["block_size"]),
            workers=_setting(args.workers, settings["workers"]),
        )
    except DomainError as e:
        raise UsageError(f"invalid simulation config: {e}") from e


def cmd_mc(app, args) -> int:
    """
    Run one Monte Carlo check and print estimate, target and standard
    error of each comparison. Exits with ExitCode.CHECK_FAILED when any
    comparison fails.
    """
    settings = app.settings["monte_carlo"]
    config = build_sim_config(settings, args)
    tolerances = Tolerances(**{
        k: v for k, v in settings["tolerances"].items() if not k.startswith("_")
    })
    defaults = settings["defaults"][args.check]
    logger.info("mc %s: %s", args.check, config)

    match args.check:
        case "distribution":
            report = validate_sr_distribution(config, tolerances)
        case "crb":
            report = validate_crb(config, tolerances)
        case "aggregation":
            q = _setting(args.q, defaults["q"])
            if q < 1:
                raise UsageError(f"--q must be >= 1, got {q}")
            report = validate_aggregation(config, q, tolerances)
        case "coverage":
            alpha = _check_alpha(_setting(args.alpha, app.settings["analysis"]["alpha"]))
            report = validate_ci_coverage(config, alpha, tolerances)
        case _:
            raise UsageError(f"unknown check: {args.check}")

    app.stdout.write(render_mc_report(report, args.format))
    failed = [c.name for c in report.checks if not c.passed]
    if failed:
        app.console.printline(
            f"{len(failed)} check(s) failed: {', '.join(failed)}", "error", True
        )
        return ExitCode.CHECK_FAILED
    app.console.printline("All checks passed", "success", True)
    return ExitCode.OK


def render_mc_report(report: McReport, fmt: str) -> str:
    """One line per check: estimate, target, standard error, tolerance"""
    header = ["check", "estimate", "target", "std_error", "tolerance", "kind",
              "result"]
    rows = [
        [c.name, _fmt(c.estimate), _fmt(c.target), _fmt(c.std_error),
         f"{c.tolerance:g}", c.kind, "PASS" if c.passed else "FAIL"]
        for c in report.checks
    ]
    if fmt == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return out.getvalue()

    config = report.config
    rho = "iid" if config.rho is None else f"rho={config.rho:g}"
    lines = [
        f"Monte Carlo check: {report.name}",
        f"n={config.n} reps={config.reps} seed={config.seed} "
        f"block_size={config.block_size} sr={config.sr_inf:.6g} {rho}",
    ]
    widths = [max(len(r[i]) for r in [header, *rows]) for i in range(len(header))]
    for row in [header, *rows]:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"
