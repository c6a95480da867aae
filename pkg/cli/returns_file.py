"""
returns_file.py

Reader of return series files. A file is UTF-8 CSV with either a single
`return` column or two columns `date,return`:

    # monthly returns of fund X
    date,return
    2024-01-31,0.012
    2024-02-29,-0.004

Lines starting with `#` and blank lines are skipped. The header is
optional. Dates must be ISO-8601 and strictly increasing. Returns are
per-period decimals.
"""

import csv
import logging
import math
from dataclasses import dataclass
from datetime import date
from pathlib import Path

from inference import ReturnSeries

logger = logging.getLogger(__name__)

_HEADERS = (("return",), ("date", "return"))


class ReturnsFileError(ValueError):
    """A returns file could not be parsed. The message starts with the line."""


@dataclass(frozen=True)
class ReturnsFile:
    path: Path
    returns: list[float]
    dates: list[date] | None = None

    def to_series(self, rf: float = 0.0) -> ReturnSeries:
        return ReturnSeries.of(self.returns, rf)


def read_returns_file(path: str | Path) -> ReturnsFile:
    """
    Read and validate a returns file

    Raises
    ------
    ReturnsFileError
        With a "Line N: " prefix when a specific line is at fault
    OSError
        The file cannot be opened
    """
    path = Path(path)
    # utf-8-sig drops the byte-order mark spreadsheet exports start with
    with path.open("r", encoding="utf-8-sig", newline="") as f:
        text = f.read()
    return parse_returns(text, path)


def parse_returns(text: str, path: Path = Path("<string>")) -> ReturnsFile:
    """
    Parse the content of a returns file

    The layout (one or two columns) is fixed by the first data line or
    header; every later line must have the same number of fields.
    """
    returns: list[float] = []
    dates: list[date] = []
    width: int | None = None
    header_allowed = True

    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            fields = [f.strip() for f in next(csv.reader([stripped]))]
            lowered = tuple(f.lower() for f in fields)
            if header_allowed and lowered in _HEADERS:
                width = len(fields)
                header_allowed = False
                continue
            header_allowed = False

            if width is None:
                width = len(fields)
            if len(fields) not in (1, 2):
                raise ReturnsFileError(
                    f"expected 1 or 2 columns, got {len(fields)}"
                )
            if len(fields) != width:
                raise ReturnsFileError(
                    f"expected {width} column(s) like the lines above, got "
                    f"{len(fields)}"
                )

            if width == 2:
                current = _parse_date(fields[0])
                if dates and current <= dates[-1]:
                    raise ReturnsFileError(
                        f"date {current.isoformat()} does not come after "
                        f"{dates[-1].isoformat()}"
                    )
                dates.append(current)
            returns.append(_parse_return(fields[-1]))
        except (ReturnsFileError, csv.Error) as e:
            # Attach line number info to error message, then re-raise
            raise ReturnsFileError(f"Line {line_no}: {e}") from e

    if len(returns) < 2:
        raise ReturnsFileError(
            f"{path}: need at least 2 returns, found {len(returns)}"
        )
    logger.debug("read %d returns from %s", len(returns), path)
    return ReturnsFile(path, returns, dates if width == 2 else None)


def _parse_date(field: str) -> date:
    try:
        return date.fromisoformat(field)
    except ValueError:
        raise ReturnsFileError(f"not an ISO-8601 date: {field!r}") from None


def _parse_return(field: str) -> float:
    try:
        value = float(field)
    except ValueError:
        raise ReturnsFileError(f"not a number: {field!r}") from None
    if not math.isfinite(value):
        raise ReturnsFileError(f"return is not finite: {field!r}")
    return value
