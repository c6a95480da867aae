"""
parser.py

This module builds the command-line surface of the app. Only one public
function is located here: create_parser()

Flags left unset default to None so that the commands can fall back on
settings.json.
"""

import argparse

from .commands import cmd_analyze, cmd_mc, cmd_table
from .tables import TABLE_KINDS

MC_CHECKS = ("distribution", "crb", "aggregation", "coverage")


def create_parser(app) -> argparse.ArgumentParser:
    """
    Creates the entire argument parser of the app

    The current command tree is
        analyze | table | mc

    Args:
        app (SharpenerApp): The app instance

    Returns:
        argparse.ArgumentParser: The parser. Every subcommand sets
        `handler`, the command function to call with (app, args).
    """
    parser = argparse.ArgumentParser(
        prog="sharpener",
        description=(
            "Exact finite-sample inference for the Sharpe ratio, table "
            "regeneration and Monte Carlo validation."
        ),
    )
    parser.add_argument("--version", action="version",
                        version=app.program_title)
    parser.add_argument("--settings", metavar="PATH",
                        help="settings file to use instead of settings.json")
    parser.add_argument("--log-level",
                        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
                        help="level of the log records printed to stderr")
    parser.add_argument("--format", choices=["text", "csv"], default="text",
                        help="output format of reports and tables")

    subparsers = parser.add_subparsers(dest="command", required=True,
                                       metavar="COMMAND")
    _add_analyze(subparsers)
    _add_table(subparsers)
    _add_mc(subparsers)
    return parser


def _add_analyze(subparsers) -> None:
    # 1 -- analyze a returns file
    analyze = subparsers.add_parser(
        "analyze", help="Sharpe ratio report of a returns file"
    )
    analyze.add_argument("file", help="CSV with a return or date,return layout")
    analyze.add_argument("--rf", type=float, default=0.0,
                         help="per-period risk-free rate (default 0)")
    analyze.add_argument("--alpha", type=float,
                         help="complement of the confidence level")
    analyze.add_argument("--method", choices=["exact", "asym1", "asym2", "asym3"],
                         help="headline interval; asymN also selects the "
                              "variant of the asymptotic interval")
    analyze.add_argument("--quantile", choices=["t", "normal"],
                         help="quantile of the asymptotic interval")
    analyze.add_argument("--plugin", choices=["raw", "debiased"],
                         help="Sharpe ratio the standard deviations are "
                              "evaluated at")
    analyze.add_argument("--walck", action="store_true", default=None,
                         help="small sample correction of sigma_IID,3")
    analyze.add_argument("--q", type=int,
                         help="also report the q-period Sharpe ratio")
    analyze.set_defaults(handler=cmd_analyze)


def _add_table(subparsers) -> None:
    # 2 -- regenerate a table
    table = subparsers.add_parser("table", help="regenerate a numeric table")
    table.add_argument("kind", choices=TABLE_KINDS)
    table.add_argument("--variant", type=int, choices=[1, 2, 3], default=3,
                       help="sigma_IID variant of the variance table")
    table.add_argument("--variants", metavar="A,B",
                       help="variants compared by variance-diff")
    table.add_argument("--walck", action="store_true",
                       help="small sample correction of sigma_IID,3")
    table.add_argument("--precision", type=int, help="printed decimals")
    for flag, what in (
        ("--n-grid", "sample sizes"),
        ("--sr-grid", "Sharpe ratios"),
        ("--rho-grid", "AR(1) coefficients"),
        ("--q-grid", "horizons"),
    ):
        table.add_argument(
            flag, metavar="GRID",
            help=f"{what}: comma-separated values or start:stop:step",
        )
    table.set_defaults(handler=cmd_table)


def _add_mc(subparsers) -> None:
    # 3 -- Monte Carlo checks
    mc = subparsers.add_parser("mc", help="Monte Carlo validation run")
    mc.add_argument("check", choices=MC_CHECKS)
    mc.add_argument("--n", type=int, help="path length")
    mc.add_argument("--sr", type=float, help="per-period Sharpe ratio")
    mc.add_argument("--rho", type=float, help="AR(1) coefficient")
    mc.add_argument("--q", type=int, help="aggregation horizon")
    mc.add_argument("--sigma", type=float, default=1.0,
                    help="innovation volatility (default 1)")
    mc.add_argument("--rf", type=float, default=0.0,
                    help="per-period risk-free rate (default 0)")
    mc.add_argument("--alpha", type=float, help="coverage check level")
    mc.add_argument("--reps", type=int, help="replications")
    mc.add_argument("--seed", type=int, help="master seed")
    mc.add_argument("--workers", type=int, help="worker threads")
    mc.add_argument("--block-size", type=int,
                    help="replications per random stream")
    mc.set_defaults(handler=cmd_mc)
