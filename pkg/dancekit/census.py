"""
DANCEKIT Census
Reads a knot table, computes danceability bounds per knot, and checks the
known bounds against every row.

Per knot:
- diagram_min: exact minimal dancers of each table diagram (pd, gauss)
- closure_min: exact minimal dancers of the braid closure
- strand_bound: strand count, backed by a verified one-dancer-per-strand schedule
- best_upper: smallest of the above

Checks (True pass, False fail, None not applicable):
- C1 crossing bound: each table diagram needs at most its crossing count
- C2 braid bound: the strand schedule verifies with one dancer per strand
- C3 braid index two: best_upper is 2 and no examined diagram is 1-danceable
- C4 unknot consistency: no examined diagram of a nontrivial knot is 1-danceable

Flags: ConjectureCandidate, StrictInequality, MetadataSuspect, NonMinimalDiagram.

Census file format (UTF-8 CSV, '#' lines are comments):
    name,pd,gauss,braid,crossing_number,braid_index,bridge_index,alternating,nontrivial
    gauss is optional; at least one of pd, gauss, braid per row; empty cell = absent

Version: 1.0.0
"""

import csv
import re
import time
import uuid
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from dancekit.braids import BraidClosure
from dancekit.choreography import braid_schedule, verify_schedule
from dancekit.codec import parse_braid, parse_gauss, parse_pd
from dancekit.dance_engine import is_descending_start, search_min_dancers
from dancekit.diagram_model import BraidWord, GaussSequence, PDCode, pd_to_gauss
from dancekit.errors import CensusFormatError, DanceError
from dancekit.logging_config import get_logger, run_context

logger = get_logger(__name__)

REQUIRED_COLUMNS = (
    'name', 'pd', 'braid', 'crossing_number', 'braid_index',
    'bridge_index', 'alternating', 'nontrivial',
)
OPTIONAL_COLUMNS = ('gauss',)
CHECK_NAMES = ('C1', 'C2', 'C3', 'C4')

FLAG_CONJECTURE = 'ConjectureCandidate'
FLAG_STRICT = 'StrictInequality'
FLAG_METADATA = 'MetadataSuspect'
FLAG_NON_MINIMAL = 'NonMinimalDiagram'

_TRUE = {'true', 'yes', 'y', '1', 't'}
_FALSE = {'false', 'no', 'n', '0', 'f'}


@dataclass(frozen=True)
class KnotRecord:
    """One census row."""
    name: str
    pd: Optional[PDCode] = None
    gauss: Optional[GaussSequence] = None
    braid: Optional[BraidWord] = None
    crossing_number: Optional[int] = None
    braid_index: Optional[int] = None
    bridge_index: Optional[int] = None
    alternating: Optional[bool] = None
    nontrivial: bool = True

    def __post_init__(self) -> None:
        if self.pd is None and self.gauss is None and self.braid is None:
            raise CensusFormatError(f"{self.name}: needs at least one of pd, gauss, braid")
        for label, value in (('braid_index', self.braid_index), ('bridge_index', self.bridge_index)):
            if value is not None and value < 1:
                raise CensusFormatError(f"{self.name}: {label} must be >= 1, got {value}")
        if self.crossing_number is not None and self.crossing_number < 0:
            raise CensusFormatError(f"{self.name}: crossing_number must be >= 0")


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: Optional[bool]
    detail: str = ''


@dataclass(frozen=True)
class DanceabilityBounds:
    """Knot-level danceability interval [lower, upper]."""
    lower: int
    upper: int

    @property
    def exact(self) -> Optional[int]:
        return self.lower if self.lower == self.upper else None

    def __str__(self) -> str:
        return f"[{self.lower},{self.upper}]"


@dataclass(frozen=True)
class DiagramResult:
    source: str
    crossings: int
    dancers: int
    witness: str
    descending: bool
    candidates: int


@dataclass
class KnotReport:
    """Analysis of one record; errors never escape analyze()."""
    name: str
    crossing_number: Optional[int] = None
    braid_index: Optional[int] = None
    bridge_index: Optional[int] = None
    alternating: Optional[bool] = None
    nontrivial: bool = True
    diagrams: List[DiagramResult] = field(default_factory=list)
    diagram_min: Optional[int] = None
    closure_min: Optional[int] = None
    closure_witness: Optional[str] = None
    strand_bound: Optional[int] = None
    best_upper: Optional[int] = None
    bounds: Optional[DanceabilityBounds] = None
    bridge_comparison: Optional[str] = None
    checks: List[CheckResult] = field(default_factory=list)
    flags: List[str] = field(default_factory=list)
    errors: List[str] = field(default_factory=list)

    def check(self, name: str) -> Optional[CheckResult]:
        return next((c for c in self.checks if c.name == name), None)

    @property
    def failed_checks(self) -> List[str]:
        return [c.name for c in self.checks if c.passed is False]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'crossing_number': self.crossing_number,
            'braid_index': self.braid_index,
            'bridge_index': self.bridge_index,
            'alternating': self.alternating,
            'nontrivial': self.nontrivial,
            'diagrams': [asdict(d) for d in self.diagrams],
            'diagram_min': self.diagram_min,
            'closure_min': self.closure_min,
            'closure_witness': self.closure_witness,
            'strand_bound': self.strand_bound,
            'best_upper': self.best_upper,
            'da_interval': [self.bounds.lower, self.bounds.upper] if self.bounds else None,
            'da_exact': self.bounds.exact if self.bounds else None,
            'bridge_comparison': self.bridge_comparison,
            'checks': {c.name: c.passed for c in self.checks},
            'check_details': {c.name: c.detail for c in self.checks if c.detail},
            'flags': list(self.flags),
            'errors': list(self.errors),
        }


@dataclass
class CensusReport:
    rows: List[KnotReport]
    summary: Dict[str, Any]
    paths: Optional[Tuple[Path, Path]] = None

    def to_dict(self) -> Dict[str, Any]:
        return {'summary': self.summary, 'knots': [row.to_dict() for row in self.rows]}

    @property
    def failures(self) -> int:
        return self.summary['failed_rows']


def knot_sort_key(name: str) -> Tuple[Tuple[int, Union[int, str]], ...]:
    """Natural order: 3_1 < 8_2 < 8_15 < 10_1."""
    return tuple((0, int(p)) if p.isdigit() else (1, p) for p in re.split(r'(\d+)', name) if p)


def _parse_bool(value: str, column: str) -> Optional[bool]:
    text = value.strip().lower()
    if not text:
        return None
    if text in _TRUE:
        return True
    if text in _FALSE:
        return False
    raise ValueError(f"{column}: expected true/false, got {value!r}")


def _parse_int(value: str, column: str) -> Optional[int]:
    text = value.strip()
    if not text:
        return None
    try:
        return int(text)
    except ValueError:
        raise ValueError(f"{column}: expected an integer, got {value!r}") from None


def parse_record(row: Dict[str, Optional[str]]) -> KnotRecord:
    """
    Build a KnotRecord from one CSV row.

    Raises:
        ValueError, DanceError: If a cell does not parse
    """
    def cell(column: str) -> str:
        return (row.get(column) or '').strip()

    name = cell('name')
    if not name:
        raise ValueError("missing name")

    nontrivial = _parse_bool(cell('nontrivial'), 'nontrivial')
    return KnotRecord(
        name=name,
        pd=parse_pd(cell('pd')) if cell('pd') else None,
        gauss=parse_gauss(cell('gauss')) if cell('gauss') else None,
        braid=parse_braid(cell('braid')) if cell('braid') else None,
        crossing_number=_parse_int(cell('crossing_number'), 'crossing_number'),
        braid_index=_parse_int(cell('braid_index'), 'braid_index'),
        bridge_index=_parse_int(cell('bridge_index'), 'bridge_index'),
        alternating=_parse_bool(cell('alternating'), 'alternating'),
        nontrivial=True if nontrivial is None else nontrivial,
    )


def load_census(path: Union[str, Path], strict: bool = False) -> List[KnotRecord]:
    """
    Load a census table.

    Args:
        path: CSV file
        strict: abort on the first malformed row instead of skipping it

    Returns:
        records in file order

    Raises:
        OSError: If the file cannot be read
        CensusFormatError: On a bad header, or on a bad row in strict mode
    """
    path = Path(path)
    with open(path, 'r', encoding='utf-8', newline='') as f:
        numbered = [
            (lineno, line)
            for lineno, line in enumerate(f, start=1)
            if line.strip() and not line.lstrip().startswith('#')
        ]

    if not numbered:
        logger.info("Census file is empty", extra={"census_file": str(path)})
        return []

    reader = csv.DictReader(line for _, line in numbered)
    columns = [c.strip() for c in reader.fieldnames or []]
    reader.fieldnames = columns
    missing = [c for c in REQUIRED_COLUMNS if c not in columns]
    if missing:
        raise CensusFormatError(f"census header missing columns: {', '.join(missing)}", line=numbered[0][0])

    records: List[KnotRecord] = []
    for index, row in enumerate(reader, start=1):
        lineno = numbered[index][0]
        try:
            records.append(parse_record(row))
        except (ValueError, DanceError) as exc:
            message = f"{type(exc).__name__}: {exc}"
            if strict:
                raise CensusFormatError(message, line=lineno) from exc
            logger.warning("Skipping malformed census row", extra={"line": lineno, "error": str(exc)})

    logger.info("Census loaded", extra={"census_file": str(path), "records": len(records)})
    return records


def _examine(source: str, seq: GaussSequence, slow_above: int, name: str) -> DiagramResult:
    if seq.crossing_count > slow_above:
        logger.warning(
            "Exact search on a large diagram may be slow",
            extra={"knot": name, "source": source, "crossings": seq.crossing_count},
        )
    result = search_min_dancers(seq)
    return DiagramResult(
        source=source,
        crossings=seq.crossing_count,
        dancers=result.dancers,
        witness=str(result.witness),
        descending=is_descending_start(seq) is not None,
        candidates=result.stats.candidates,
    )


def analyze(record: KnotRecord, slow_above: int = 12) -> KnotReport:
    """
    Compute danceability data and run every check for one record.

    Per-diagram errors are recorded on the row; nothing raised inside
    reaches the caller.

    Args:
        record: census record
        slow_above: crossing count above which a slow-search warning is logged

    Returns:
        KnotReport
    """
    report = KnotReport(
        name=record.name,
        crossing_number=record.crossing_number,
        braid_index=record.braid_index,
        bridge_index=record.bridge_index,
        alternating=record.alternating,
        nontrivial=record.nontrivial,
    )

    table: List[Tuple[str, GaussSequence]] = []
    if record.pd is not None:
        try:
            table.append(('pd', pd_to_gauss(record.pd)))
        except DanceError as exc:
            report.errors.append(f"pd: {type(exc).__name__}: {exc}")
    if record.gauss is not None:
        table.append(('gauss', record.gauss))

    for source, seq in table:
        try:
            report.diagrams.append(_examine(source, seq, slow_above, record.name))
        except DanceError as exc:
            report.errors.append(f"{source}: {type(exc).__name__}: {exc}")

    closure: Optional[BraidClosure] = None
    c2 = CheckResult('C2', None)
    if record.braid is not None:
        try:
            closure, schedule = braid_schedule(record.braid)
            verdict = verify_schedule(closure.sequence, schedule.cuts, schedule)
            dancers = len(schedule.dancers)
            if verdict and dancers == record.braid.strands:
                report.strand_bound = record.braid.strands
                c2 = CheckResult('C2', True)
            else:
                c2 = CheckResult('C2', False, "; ".join(verdict.violations) or f"{dancers} dancers")
            examined = _examine('braid', closure.sequence, slow_above, record.name)
            report.closure_min = examined.dancers
            report.closure_witness = examined.witness
            report.diagrams.append(examined)
        except DanceError as exc:
            report.errors.append(f"braid: {type(exc).__name__}: {exc}")
            c2 = CheckResult('C2', False, f"{type(exc).__name__}: {exc}")

    table_results = [d for d in report.diagrams if d.source != 'braid']
    if table_results:
        report.diagram_min = min(d.dancers for d in table_results)

    uppers = [d.dancers for d in report.diagrams]
    if report.strand_bound is not None:
        uppers.append(report.strand_bound)
    report.best_upper = min(uppers) if uppers else None

    lower = 2 if record.nontrivial else 1
    if report.best_upper is not None and report.best_upper >= lower:
        report.bounds = DanceabilityBounds(lower, report.best_upper)

    report.checks = [
        _crossing_bound(record, table_results, report),
        c2,
        _braid_index_two(record, report),
        _unknot_consistency(record, report),
    ]
    _flag(record, report)

    log = logger.warning if report.failed_checks or report.errors else logger.info
    log(
        "Knot analyzed",
        extra={"knot": record.name, "best_upper": report.best_upper,
               "failed_checks": report.failed_checks, "flags": report.flags},
    )
    return report


def _crossing_bound(record: KnotRecord, results: Sequence[DiagramResult], report: KnotReport) -> CheckResult:
    relevant = [d for d in results if d.crossings > 0]
    if not relevant:
        return CheckResult('C1', None)
    over = [f"{d.source}: {d.dancers} dancers > {d.crossings} crossings" for d in relevant if d.dancers > d.crossings]
    if record.crossing_number is not None:
        if any(d.crossings > record.crossing_number for d in relevant):
            report.flags.append(FLAG_NON_MINIMAL)
        if any(d.crossings < record.crossing_number for d in relevant):
            report.flags.append(FLAG_METADATA)
    return CheckResult('C1', not over, "; ".join(over))


def _braid_index_two(record: KnotRecord, report: KnotReport) -> CheckResult:
    if record.braid_index != 2 or not record.nontrivial:
        return CheckResult('C3', None)
    problems = []
    if report.best_upper != 2:
        problems.append(f"best_upper is {report.best_upper}")
    one = [d.source for d in report.diagrams if d.dancers == 1]
    if one:
        problems.append(f"1-danceable: {', '.join(one)}")
    return CheckResult('C3', not problems, "; ".join(problems))


def _unknot_consistency(record: KnotRecord, report: KnotReport) -> CheckResult:
    if not record.nontrivial or not report.diagrams:
        return CheckResult('C4', None)
    descending = [d.source for d in report.diagrams if d.descending]
    return CheckResult('C4', not descending, f"descending start in {', '.join(descending)}" if descending else '')


def _flag(record: KnotRecord, report: KnotReport) -> None:
    best = report.best_upper
    if best is None:
        return
    if record.alternating and record.braid_index is not None and record.braid_index >= 3 and best == 2:
        report.flags.append(FLAG_CONJECTURE)
    if record.braid_index is not None and best < record.braid_index:
        report.flags.append(FLAG_STRICT)
    if record.braid is not None and record.braid_index is not None and record.braid.strands < record.braid_index:
        report.flags.append(FLAG_METADATA)
    if record.nontrivial and record.crossing_number == 0:
        report.flags.append(FLAG_METADATA)
    if record.bridge_index is not None:
        report.bridge_comparison = (
            'below' if best < record.bridge_index else 'equal' if best == record.bridge_index else 'above'
        )
    report.flags = sorted(set(report.flags))


def summarize(rows: Sequence[KnotReport]) -> Dict[str, Any]:
    """Aggregate counts; independent of row order."""
    checks: Dict[str, Dict[str, int]] = {
        name: {'passed': 0, 'failed': 0, 'skipped': 0} for name in CHECK_NAMES
    }
    flags: Dict[str, int] = {}
    bridge: Dict[str, int] = {'below': 0, 'equal': 0, 'above': 0}
    for row in rows:
        for c in row.checks:
            bucket = 'skipped' if c.passed is None else 'passed' if c.passed else 'failed'
            checks[c.name][bucket] += 1
        for flag in row.flags:
            flags[flag] = flags.get(flag, 0) + 1
        if row.bridge_comparison:
            bridge[row.bridge_comparison] += 1

    def names(predicate: Any) -> List[str]:
        return sorted((r.name for r in rows if predicate(r)), key=knot_sort_key)

    return {
        'records': len(rows),
        'failed_rows': sum(1 for r in rows if r.failed_checks),
        'error_rows': sum(1 for r in rows if r.errors),
        'checks': checks,
        'flags': dict(sorted(flags.items())),
        'exact_da': sum(1 for r in rows if r.bounds and r.bounds.exact is not None),
        'conjecture_candidates': names(lambda r: FLAG_CONJECTURE in r.flags),
        'strict_inequality': names(lambda r: FLAG_STRICT in r.flags),
        'closure_below_strands': names(
            lambda r: r.closure_min is not None and r.strand_bound is not None and r.closure_min < r.strand_bound
        ),
        'bridge_comparison': bridge,
    }


def _analyze_job(args: Tuple[KnotRecord, int, str]) -> KnotReport:
    # worker processes do not inherit the parent's run id under spawn
    record, slow_above, run_id = args
    with run_context(run_id):
        return analyze(record, slow_above)


def run_census(records: Sequence[KnotRecord], jobs: int = 1, out_dir: Optional[Union[str, Path]] = None,
               basename: str = 'danceability_report', slow_above: int = 12) -> CensusReport:
    """
    Analyze every record and optionally write JSON and CSV reports.

    Rows are sorted by knot name, so the worker count never changes the output.

    Args:
        records: census records
        jobs: worker processes (1 = in-process)
        out_dir: directory for <basename>.json and <basename>.csv; None skips writing
        basename: report file stem
        slow_above: forwarded to analyze()

    Returns:
        CensusReport

    Raises:
        OSError: If a report cannot be written
    """
    run_id = uuid.uuid4().hex[:12]
    started = time.perf_counter()
    with run_context(run_id):
        logger.info("Census run started", extra={"records": len(records), "jobs": jobs})
        work = [(record, slow_above, run_id) for record in records]
        if jobs > 1 and len(work) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                rows = list(pool.map(_analyze_job, work))
        else:
            rows = [_analyze_job(item) for item in work]

        rows.sort(key=lambda r: knot_sort_key(r.name))
        report = CensusReport(rows, summarize(rows))

        if out_dir is not None:
            from dancekit.adapters.report_writer import write_reports
            report.paths = write_reports(report, Path(out_dir), basename)

        logger.info(
            "Census run finished",
            extra={"records": len(rows), "failed_rows": report.failures,
                   "elapsed_s": round(time.perf_counter() - started, 3)},
        )
    return report
