"""
Census Report Writer
Persists a CensusReport as JSON and CSV and formats the console summary.

Both files are byte-stable: rows arrive sorted, JSON keys are sorted, and
nothing time- or run-dependent is written.

Version: 1.0.0
"""

import csv
import io
from pathlib import Path
from typing import TYPE_CHECKING, List, Optional, Tuple

from dancekit.codec import dump_payload
from dancekit.logging_config import get_logger

if TYPE_CHECKING:
    from dancekit.census import CensusReport

logger = get_logger(__name__)

CSV_COLUMNS = (
    'name', 'crossing_number', 'braid_index', 'bridge_index', 'alternating', 'nontrivial',
    'diagram_min', 'closure_min', 'strand_bound', 'best_upper', 'da_lower', 'da_exact',
    'bridge_comparison', 'C1', 'C2', 'C3', 'C4', 'flags', 'errors',
)


def _cell(value: object) -> str:
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    return str(value)


def render_csv(report: 'CensusReport') -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(CSV_COLUMNS)
    for row in report.rows:
        checks = {c.name: c.passed for c in row.checks}
        writer.writerow([_cell(v) for v in (
            row.name, row.crossing_number, row.braid_index, row.bridge_index,
            row.alternating, row.nontrivial, row.diagram_min, row.closure_min,
            row.strand_bound, row.best_upper,
            row.bounds.lower if row.bounds else None,
            row.bounds.exact if row.bounds else None,
            row.bridge_comparison,
            checks.get('C1'), checks.get('C2'), checks.get('C3'), checks.get('C4'),
            ';'.join(row.flags), ' | '.join(row.errors),
        )])
    return buffer.getvalue()


def render_json(report: 'CensusReport') -> str:
    return dump_payload(report.to_dict())


def write_reports(report: 'CensusReport', out_dir: Path, basename: str) -> Tuple[Path, Path]:
    """
    Write <basename>.json and <basename>.csv into out_dir.

    Returns:
        (json_path, csv_path)

    Raises:
        OSError: If the directory or files cannot be written
    """
    out_dir.mkdir(parents=True, exist_ok=True)
    json_path = out_dir / f"{basename}.json"
    csv_path = out_dir / f"{basename}.csv"
    for path, text in ((json_path, render_json(report)), (csv_path, render_csv(report))):
        with open(path, 'w', encoding='utf-8', newline='') as f:
            f.write(text)
    logger.info("Census reports written", extra={"json": str(json_path), "csv": str(csv_path)})
    return json_path, csv_path


def render_summary(report: 'CensusReport', paths: Optional[Tuple[Path, Path]] = None) -> str:
    """Human-readable census summary."""
    summary = report.summary
    lines: List[str] = [
        "=" * 60,
        "DANCEABILITY CENSUS",
        "=" * 60,
        f"Knots analyzed:     {summary['records']}",
        f"Rows with failures: {summary['failed_rows']}",
        f"Rows with errors:   {summary['error_rows']}",
        f"Exact da recorded:  {summary['exact_da']}",
        "",
        "Checks (passed / failed / skipped):",
    ]
    for name, counts in summary['checks'].items():
        lines.append(f"  {name}: {counts['passed']} / {counts['failed']} / {counts['skipped']}")

    lines.append("")
    lines.append("Flags:")
    if summary['flags']:
        for flag, count in summary['flags'].items():
            lines.append(f"  {flag}: {count}")
    else:
        lines.append("  none")

    if summary['conjecture_candidates']:
        lines.append("")
        lines.append("!! Alternating knots danced by 2 with braid index >= 3: "
                     + ", ".join(summary['conjecture_candidates']))
    if summary['strict_inequality']:
        lines.append("Best upper bound below braid index: " + ", ".join(summary['strict_inequality']))
    if summary['closure_below_strands']:
        lines.append("Closure needs fewer dancers than strands: " + ", ".join(summary['closure_below_strands']))

    bridge = summary['bridge_comparison']
    lines.append(
        f"Best upper vs bridge index: below {bridge['below']}, equal {bridge['equal']}, above {bridge['above']}"
    )

    failed = [row for row in report.rows if row.failed_checks]
    if failed:
        lines.append("")
        lines.append("Failed checks:")
        for row in failed:
            lines.append(f"  {row.name}: {', '.join(row.failed_checks)}")

    if paths:
        lines.append("")
        lines.extend(f"Report: {p}" for p in paths)
    lines.append("=" * 60)
    return "\n".join(lines) + "\n"
