"""
tables.py

Tables the `table` command regenerates: the bias factor k_n, the three
asymptotic standard deviations, their differences, the AR(1) q-period
scaling ratio and its deviation from the square-root rule.

A Table holds its cells already rounded to its precision, so that the CSV
it renders parses back to an equal Table.
"""

import csv
import io
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass

from inference import (
    AggregationSpec,
    k_n,
    sqrt_rule_deviation,
    sr_asymptotic_sd,
    sr_scaling_ratio,
)

TABLE_KINDS = ("bias", "variance", "variance-diff", "compounding", "sqrt-deviation")


@dataclass(frozen=True)
class Table:
    """
    A titled grid of numbers

    Attributes
    ----------
    title : str
        One-line caption
    corner : str
        Label of the header cell, e.g. "SR \\ n"
    row_keys, col_keys : list of str
        Row and column labels as printed
    values : list of list of float
        values[i][j] is the cell of row i and column j, rounded to
        `precision` decimals
    precision : int
        Decimals printed for every cell
    unit : str
        "" or "%" (values in percentage points)
    """
    title: str
    corner: str
    row_keys: list[str]
    col_keys: list[str]
    values: list[list[float]]
    precision: int = 3
    unit: str = ""

    def cell(self, row: str, col: str) -> float:
        return self.values[self.row_keys.index(row)][self.col_keys.index(col)]


def _rounded(value: float, precision: int) -> float:
    # Round through the printed text so that CSV output parses back exactly
    return float(f"{value:.{precision}f}")


def _grid_table(
    title: str,
    corner: str,
    row_keys: list[str],
    row_params: Sequence,
    col_params: Sequence,
    cell: Callable[[object, object], float],
    precision: int,
    unit: str = "",
) -> Table:
    values = [
        [_rounded(cell(r, c), precision) for c in col_params]
        for r in row_params
    ]
    return Table(title, corner, row_keys, [_format_key(c) for c in col_params],
                 values, precision, unit)


def _format_key(value: float) -> str:
    if float(value).is_integer():
        return str(int(value))
    return f"{value:g}"


def _percent_key(value: float) -> str:
    return f"{round(value * 100):d}%"


def bias_table(n_grid: Sequence[int], precision: int = 3) -> Table:
    """k_n = E[SR_hat] / SR for every n of the grid"""
    return _grid_table("Sharpe ratio bias k_n", "n", ["k_n"], [None], n_grid,
                       lambda _, n: k_n(n), precision)


def variance_table(
    variant: int,
    sr_grid: Sequence[float],
    n_grid: Sequence[int],
    precision: int = 3,
    walck_correction: bool = False,
) -> Table:
    """sigma_IID,variant / sqrt(n) over an SR x n grid"""
    title = f"Asymptotic standard deviation of SR, sigma_IID,{variant}"
    if walck_correction:
        title += " (small sample corrected)"
    return _grid_table(
        title, "SR \\ n", [_format_key(sr) for sr in sr_grid], sr_grid, n_grid,
        lambda sr, n: sr_asymptotic_sd(sr, n, variant, walck_correction),
        precision,
    )


def variance_diff_table(
    variants: tuple[int, int],
    sr_grid: Sequence[float],
    n_grid: Sequence[int],
    precision: int = 2,
) -> Table:
    """100 (sigma_IID,a - sigma_IID,b) / sqrt(n), in percentage points"""
    a, b = variants
    return _grid_table(
        f"Difference of asymptotic standard deviations, sigma_IID,{a} - "
        f"sigma_IID,{b} (%)",
        "SR \\ n", [_format_key(sr) for sr in sr_grid], sr_grid, n_grid,
        lambda sr, n: 100.0 * (sr_asymptotic_sd(sr, n, a)
                               - sr_asymptotic_sd(sr, n, b)),
        precision, "%",
    )


def compounding_table(
    rho_grid: Sequence[float], q_grid: Sequence[int], precision: int = 3
) -> Table:
    """SR(q) / SR for AR(1) returns"""
    return _grid_table(
        "Compounding effect of AR(1) returns on the Sharpe ratio, SR(q) / SR",
        "rho \\ q", [_percent_key(rho) for rho in rho_grid], rho_grid, q_grid,
        lambda rho, q: sr_scaling_ratio(AggregationSpec.ar1(q, rho)),
        precision,
    )


def sqrt_deviation_table(
    rho_grid: Sequence[float], q_grid: Sequence[int], precision: int = 3
) -> Table:
    """sqrt(q) / (SR(q) / SR), how far the square-root rule is off"""
    return _grid_table(
        "Ratio of the square-root rule to the AR(1) compounding effect",
        "rho \\ q", [_percent_key(rho) for rho in rho_grid], rho_grid, q_grid,
        lambda rho, q: sqrt_rule_deviation(AggregationSpec.ar1(q, rho)),
        precision,
    )


def render_text(table: Table) -> str:
    """Aligned plain text, one line per row"""
    cells = [
        [f"{v:.{table.precision}f}" for v in row] for row in table.values
    ]
    first = max(len(table.corner), *(len(k) for k in table.row_keys))
    width = max(
        [len(k) for k in table.col_keys]
        + [len(c) for row in cells for c in row]
    )
    lines = [table.title]
    lines.append(
        table.corner.ljust(first) + "".join(
            f"  {k:>{width}}" for k in table.col_keys
        )
    )
    for key, row in zip(table.row_keys, cells):
        lines.append(key.ljust(first) + "".join(f"  {c:>{width}}" for c in row))
    return "\n".join(lines) + "\n"


def render_csv(table: Table) -> str:
    """
    CSV with the metadata in leading comment lines

    parse_csv(render_csv(t)) == t for every Table t.
    """
    out = io.StringIO()
    out.write(f"# title: {table.title}\n")
    out.write(f"# precision: {table.precision}\n")
    out.write(f"# unit: {table.unit}\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([table.corner, *table.col_keys])
    for key, row in zip(table.row_keys, table.values):
        writer.writerow([key, *(f"{v:.{table.precision}f}" for v in row)])
    return out.getvalue()


def parse_csv(text: str) -> Table:
    """
    Parse the output of render_csv back into a Table

    Raises
    ------
    ValueError
        The text is not a table written by render_csv
    """
    meta: dict[str, str] = {}
    data_lines: list[str] = []
    for line in text.splitlines():
        if line.startswith("# "):
            key, _, value = line[2:].partition(":")
            meta[key.strip()] = value[1:] if value.startswith(" ") else value
        elif line.strip():
            data_lines.append(line)
    if not data_lines:
        raise ValueError("table CSV has no header row")
    if "title" not in meta or "precision" not in meta:
        raise ValueError("table CSV lacks its title or precision line")

    rows = list(csv.reader(data_lines))
    header, body = rows[0], rows[1:]
    for row_no, row in enumerate(body, start=2):
        if len(row) != len(header):
            raise ValueError(
                f"Line {row_no}: expected {len(header)} fields, got {len(row)}"
            )
    return Table(
        title=meta["title"],
        corner=header[0],
        row_keys=[row[0] for row in body],
        col_keys=header[1:],
        values=[[float(v) for v in row[1:]] for row in body],
        precision=int(meta["precision"]),
        unit=meta.get("unit", ""),
    )


def grid_range(start: float, stop: float, step: float) -> list[float]:
    """
    Float-compatible range that includes its stop value

    Values are rounded to 10 decimals so that 0.1 steps print cleanly.

    Raises
    ------
    ValueError
        step is zero or points away from stop
    """
    if step == 0:
        raise ValueError("Grid step must be non-zero")
    if (stop - start) * step < 0:
        # i would move away from stop indefinitely
        raise ValueError(f"Grid step {step} never reaches {stop} from {start}")
    result = []
    i = 0
    while True:
        value = start + i * step
        if (step > 0 and value > stop) or (step < 0 and value < stop):
            if not math.isclose(value, stop, abs_tol=1e-12):
                break
        result.append(round(value, 10))
        if math.isclose(value, stop, abs_tol=1e-12):
            break
        i += 1
    return result


def parse_grid(text: str, integer: bool = False) -> list:
    """
    Parse a grid flag: comma-separated numbers and inclusive ranges
    start:stop:step, e.g. "0.5:3:0.25" or "12,24,36"

    Raises
    ------
    ValueError
        Empty grid, malformed item, or a non-integer value where integers
        are needed
    """
    values: list[float] = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            raise ValueError(f"empty item in grid {text!r}")
        parts = item.split(":")
        if len(parts) == 1:
            values.append(float(parts[0]))
        elif len(parts) == 3:
            values.extend(grid_range(*(float(p) for p in parts)))
        else:
            raise ValueError(f"grid item {item!r} is neither a number nor start:stop:step")
    if not values:
        raise ValueError("grid is empty")
    if any(not math.isfinite(v) for v in values):
        raise ValueError(f"grid {text!r} has non-finite values")
    if integer:
        if any(not float(v).is_integer() for v in values):
            raise ValueError(f"grid {text!r} must hold integers")
        return [int(v) for v in values]
    return values
