"""
Rendering of suite results and tables as JSON or CSV.
Output is a pure function of its input, so the same run gives the same bytes.
"""

import csv
import io
import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional, Sequence

import cattrs
import click

from functions.exact_core import render_fraction
from services.verifier import SuiteResult, VerificationReport

logger = logging.getLogger(__name__)

FORMATS = ("json", "csv")

REPORT_COLUMNS = (
    "check_id",
    "index",
    "status",
    "passed",
    "residual",
    "tolerance",
    "terms_used",
    "inputs",
    "lhs",
    "rhs",
    "message",
)

converter = cattrs.Converter()


def render_json(result: SuiteResult) -> str:
    """{"reports": [...], "summary": {...}} with sorted keys"""
    return json.dumps(converter.unstructure(result), sort_keys=True, indent=2) + "\n"


def _render_inputs(report: VerificationReport) -> str:
    return ";".join(f"{name}={value}" for name, value in sorted(report.inputs.items()))


def render_csv(result: SuiteResult) -> str:
    """One row per report; header row first"""
    rows = []
    for report in result.reports:
        row = converter.unstructure(report)
        row["inputs"] = _render_inputs(report)
        row["residual"] = repr(report.residual)
        row["tolerance"] = repr(report.tolerance)
        rows.append([row[column] for column in REPORT_COLUMNS])
    return render_table(REPORT_COLUMNS, rows)


def render_table(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    """RFC 4180 CSV: CRLF line ends, quoting only where needed, fractions as num/den"""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\r\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(_cells(row))
    return buffer.getvalue()


def _cells(row: Sequence) -> list:
    return [render_fraction(cell) if isinstance(cell, Fraction) else cell for cell in row]


def render_rows(header: Sequence[str], rows: Iterable[Sequence], fmt: str) -> str:
    """A table as CSV, or as a JSON list of row objects"""
    if fmt == "csv":
        return render_table(header, rows)
    records = [dict(zip(header, _cells(row))) for row in rows]
    return json.dumps(records, sort_keys=True, indent=2) + "\n"


def render_result(result: SuiteResult, fmt: str) -> str:
    if fmt == "csv":
        return render_csv(result)
    return render_json(result)


def emit(text: str, output: Optional[str] = None) -> None:
    """Write to the output file, or to standard output when none is given"""
    if output:
        path = Path(output)
        path.parent.mkdir(parents=True, exist_ok=True)
        # newline="" keeps CSV line ends as written
        with path.open("w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        logger.info("Wrote %d bytes to %s", len(text.encode("utf-8")), path)
        return
    click.echo(text, nl=False)
