"""
Rendering of reports as JSON, CSV or fixed-width text.

All three are deterministic: keys are sorted, tables keep their row order and
the text console has a fixed width and no colors.
"""
import csv
import io
import json
from typing import Dict, List

from rich.console import Console
from rich.table import Table

from cli.job_spec import Report, VerificationReport
from config.settings import TEXT_WIDTH


def to_json(report: Report) -> str:
    data = report.model_dump(mode="json")
    data["passed"] = report.passed
    return json.dumps(data, sort_keys=True, indent=2, default=str) + "\n"


def _summary_rows(report: Report) -> List[List[str]]:
    rows = [["key", "value"]]
    for key in sorted(report.result):
        value = report.result[key]
        if isinstance(value, (str, int, float, bool)) or value is None:
            rows.append([key, str(value)])
    return rows


def _tables(report: Report) -> Dict[str, List[List[str]]]:
    tables = dict(report.tables)
    if isinstance(report, VerificationReport):
        tables["checks"] = [["check", "passed"]] + [[k, str(v)] for k, v in sorted(report.checks.items())]
        if report.witnesses:
            tables["witnesses"] = [["witness"]] + [[w] for w in report.witnesses]
    if not tables:
        tables["summary"] = _summary_rows(report)
    return tables


def to_csv(report: Report) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    for n, (name, rows) in enumerate(sorted(_tables(report).items())):
        if n:
            writer.writerow([])
        writer.writerow([f"# {name}"])
        writer.writerows(rows)
    return buffer.getvalue()


def to_text(report: Report) -> str:
    buffer = io.StringIO()
    console = Console(file=buffer, width=TEXT_WIDTH, color_system=None, force_terminal=False, highlight=False)
    job = report.job
    title = job.command + (f" {job.suite}" if job.suite else "")
    console.print(f"{title}: {job.type_label}{job.rank}")
    for name, rows in sorted(_tables(report).items()):
        table = Table(title=name)
        for header in rows[0]:
            table.add_column(header)
        for row in rows[1:]:
            table.add_row(*row)
        console.print(table)
    if isinstance(report, VerificationReport):
        console.print("PASS" if report.passed else "FAIL")
    return buffer.getvalue()


FORMATTERS = {"json": to_json, "csv": to_csv, "text": to_text}


def render(report: Report) -> str:
    return FORMATTERS[report.job.output_format](report)
