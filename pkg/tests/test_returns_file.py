from datetime import date
from pathlib import Path

import pytest

from cli.returns_file import ReturnsFileError, parse_returns, read_returns_file


def test_single_column_with_header_and_comments():
    text = "# fund X\nreturn\n0.01\n\n-0.02  \n# trailing note\n0.03\n"
    parsed = parse_returns(text)
    assert parsed.returns == [0.01, -0.02, 0.03]
    assert parsed.dates is None


def test_header_is_optional():
    assert parse_returns("0.01\n0.02\n").returns == [0.01, 0.02]


def test_dated_returns():
    text = "Date,Return\n2024-01-31,0.012\n2024-02-29,-0.004\n2024-03-31,0.0\n"
    parsed = parse_returns(text)
    assert parsed.returns == [0.012, -0.004, 0.0]
    assert parsed.dates == [date(2024, 1, 31), date(2024, 2, 29), date(2024, 3, 31)]


def test_to_series_applies_risk_free_rate():
    series = parse_returns("0.01\n0.03\n").to_series(rf=0.001)
    assert series.n == 2
    assert series.rf == 0.001


@pytest.mark.parametrize("text,match", [
    ("return\n0.01\nabc\n", "Line 3: not a number: 'abc'"),
    ("0.01\n0.02,0.03\n", "Line 2: expected 1 column"),
    ("date,return\n2024-01-31,0.01\n0.02\n", "Line 3: expected 2 column"),
    ("0.01,0.02,0.03\n", "Line 1: expected 1 or 2 columns"),
    ("2024-01-31,0.01\n2024-01-31,0.02\n", "Line 2: date 2024-01-31 does not come after"),
    ("2024-02-01,0.01\n2024-01-31,0.02\n", "Line 2: date"),
    ("31/01/2024,0.01\n", "Line 1: not an ISO-8601 date"),
    ("0.01\ninf\n", "Line 2: return is not finite"),
    ("0.01\nnan\n", "Line 2: return is not finite"),
    ("return\nreturn\n", "Line 2: not a number"),
])
def test_malformed_lines(text, match):
    with pytest.raises(ReturnsFileError, match=match):
        parse_returns(text)


@pytest.mark.parametrize("text", ["", "# nothing\n\n", "return\n", "return\n0.01\n"])
def test_too_few_returns(text):
    with pytest.raises(ReturnsFileError, match="need at least 2 returns"):
        parse_returns(text)


def test_read_returns_file(write_returns):
    path = write_returns("return\n0.01\n0.02\n")
    parsed = read_returns_file(path)
    assert parsed.path == Path(path)
    assert parsed.returns == [0.01, 0.02]


def test_read_missing_file(tmp_path):
    with pytest.raises(OSError):
        read_returns_file(tmp_path / "missing.csv")


def test_read_file_with_byte_order_mark(tmp_path):
    path = tmp_path / "export.csv"
    path.write_text("\ufeffreturn\n0.02\n0.00\n0.04\n", encoding="utf-8")
    parsed = read_returns_file(path)
    assert parsed.returns == [0.02, 0.00, 0.04]
    assert parsed.to_series().n == 3
