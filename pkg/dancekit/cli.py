#!/usr/bin/env python3
"""
DANCEKIT Command Line
Decide, minimize, schedule and census knot-diagram danceability.

Subcommands:
    check     is a cut set danceable? prints the witness order or blame cycle
    min       exact minimal dancer count of one diagram (--oracle: brute force)
    schedule  explicit schedule from --cuts, --theorem3 (braid input) or --underpass
    census    run every check over a knot table and write JSON/CSV reports
    convert   re-encode a diagram (--to gauss|pd|braid)

Diagram input (one of):
    --gauss "O1U2O3U1O2U3"
    --pd    "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"
    --braid "n=2; 1 1 1"

Exit codes:
    0  success / feasible
    1  negative answer (infeasible, braid closes to a link, census check failed)
    2  malformed input, missing file or bad usage

Usage:
    python -m dancekit min --gauss O1U2O3U1O2U3
    python -m dancekit schedule --braid "n=2; 1 1 1" --theorem3 --format svg
    python -m dancekit census --out reports/

Version: 1.0.0
"""

import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from dancekit.braids import BraidClosure, close_braid
from dancekit.census import load_census, run_census
from dancekit.choreography import (
    DanceSchedule,
    RenderFormat,
    braid_schedule,
    render_schedule,
    schedule_from_cuts,
    schedule_payload,
    underpass_schedule,
)
from dancekit.codec import (
    dump_payload,
    parse_braid,
    parse_cuts,
    parse_gauss,
    parse_pd,
    serialize_braid,
    serialize_gauss,
    serialize_pd,
)
from dancekit.config import load_config
from dancekit.dance_engine import is_feasible, search_min_dancers
from dancekit.diagram_model import BraidWord, GaussSequence, PDCode, pd_to_gauss
from dancekit.errors import BadParameter, DanceError, DomainError, InfeasibleCuts, InputError
from dancekit.logging_config import get_logger, set_log_level

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2


@dataclass
class DiagramInput:
    """A diagram read from the command line, with whatever it was built from."""
    source: str
    sequence: GaussSequence
    pd: Optional[PDCode] = None
    braid: Optional[BraidWord] = None
    closure: Optional[BraidClosure] = None


def read_diagram(args: argparse.Namespace) -> DiagramInput:
    """
    Parse the --gauss / --pd / --braid option.

    Raises:
        InputError: If the text is malformed
        DomainError: If the PD or braid does not describe a single knot
    """
    if args.gauss is not None:
        return DiagramInput('gauss', parse_gauss(args.gauss))
    if args.pd is not None:
        pd = parse_pd(args.pd)
        return DiagramInput('pd', pd_to_gauss(pd), pd=pd)
    braid = parse_braid(args.braid)
    closure = close_braid(braid)
    return DiagramInput('braid', closure.sequence, braid=braid, closure=closure)


def _emit(text: str) -> None:
    sys.stdout.write(text)


def _payload(command: str, diagram: Optional[DiagramInput], body: Dict[str, Any]) -> str:
    payload: Dict[str, Any] = {'command': command}
    if diagram is not None:
        payload['diagram'] = serialize_gauss(diagram.sequence)
        payload['crossings'] = diagram.sequence.crossing_count
    payload.update(body)
    return dump_payload(payload)


def cmd_check(args: argparse.Namespace) -> int:
    diagram = read_diagram(args)
    cuts = parse_cuts(args.cuts)
    seq = diagram.sequence
    result = is_feasible(seq, cuts)

    if args.format == 'json':
        _emit(_payload('check', diagram, {
            'cuts': str(cuts),
            'feasible': result.feasible,
            'segments': [[str(seq[e]) for e in path] for path in result.segments],
            'witness': [str(e) for e in result.witness_events(seq)] if result else None,
            'cycle': [str(e) for e in result.cycle_events(seq)] if not result else None,
        }))
    elif result:
        _emit(f"feasible  cuts {cuts}  dancers {cuts.size}\n")
        _emit("order " + " ".join(str(e) for e in result.witness_events(seq)) + "\n")
    else:
        _emit(f"infeasible  cuts {cuts}\n")
        _emit("cycle " + " -> ".join(str(e) for e in result.cycle_events(seq)) + "\n")
    return EXIT_OK if result else EXIT_NEGATIVE


def cmd_min(args: argparse.Namespace) -> int:
    diagram = read_diagram(args)
    seq = diagram.sequence
    stats: Optional[Dict[str, Any]] = None

    if args.oracle:
        from dancekit.oracle import naive_min_dancers
        dancers, witness = naive_min_dancers(seq)
    else:
        result = search_min_dancers(seq)
        dancers, witness = result.dancers, result.witness
        stats = {
            'candidates': result.stats.candidates,
            'filtered': result.stats.filtered,
            'graph_checks': result.stats.graph_checks,
        }
        logger.info("Search statistics", extra=stats)

    if args.format == 'json':
        _emit(_payload('min', diagram, {
            'min_dancers': dancers,
            'witness': str(witness),
            'search': 'oracle' if args.oracle else 'pruned',
            'stats': stats,
        }))
    else:
        _emit(f"min_dancers {dancers}  witness {witness}  crossings {seq.crossing_count}\n")
    return EXIT_OK


def _build_schedule(args: argparse.Namespace, diagram: DiagramInput) -> DanceSchedule:
    if args.theorem3:
        if diagram.braid is None:
            raise BadParameter("--theorem3 needs --braid input")
        closure, schedule = braid_schedule(diagram.braid)
        diagram.closure = closure
        return schedule
    if args.underpass:
        return underpass_schedule(diagram.sequence)
    return schedule_from_cuts(diagram.sequence, parse_cuts(args.cuts))


def cmd_schedule(args: argparse.Namespace) -> int:
    diagram = read_diagram(args)
    try:
        schedule = _build_schedule(args, diagram)
    except InfeasibleCuts as exc:
        if args.format == 'json':
            _emit(_payload('schedule', diagram, {
                'cuts': args.cuts,
                'feasible': False,
                'cycle': [f"{role}{crossing}" for crossing, role in exc.cycle],
            }))
        raise

    seq = diagram.sequence
    if args.format == 'json':
        body = schedule_payload(seq, schedule)
        body['feasible'] = True
        _emit(_payload('schedule', diagram, body))
    elif args.format == 'svg':
        _emit(render_schedule(seq, schedule, RenderFormat.SVG, closure=diagram.closure))
    else:
        _emit(render_schedule(seq, schedule, RenderFormat.TEXT))
    return EXIT_OK


def cmd_census(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    census_file = Path(args.file) if args.file else config.census_file
    strict = args.strict or config.strict
    jobs = args.jobs if args.jobs is not None else config.jobs
    if jobs < 1:
        raise BadParameter(f"--jobs must be >= 1, got {jobs}")

    logger.info("=" * 60)
    logger.info("DANCEKIT census", extra={"census_file": str(census_file), "strict": strict, "jobs": jobs})
    logger.info("=" * 60)

    records = load_census(census_file, strict=strict)
    report = run_census(
        records,
        jobs=jobs,
        out_dir=args.out,
        basename=config.report_basename,
        slow_above=config.max_crossings_exact,
    )

    if args.format == 'json':
        body = report.to_dict()
        if report.paths:
            body['reports'] = [str(p) for p in report.paths]
        _emit(_payload('census', None, body))
    else:
        from dancekit.adapters.report_writer import render_summary
        _emit(render_summary(report, report.paths))

    if report.summary['conjecture_candidates']:
        logger.warning(
            "Alternating knots with braid index >= 3 danced by two",
            extra={"knots": report.summary['conjecture_candidates']},
        )
    return EXIT_NEGATIVE if report.failures else EXIT_OK


def cmd_convert(args: argparse.Namespace) -> int:
    diagram = read_diagram(args)
    if args.to == 'gauss':
        text = serialize_gauss(diagram.sequence)
    elif args.to == 'pd':
        if diagram.pd is None:
            raise BadParameter(f"cannot convert {diagram.source} to pd: a Gauss sequence carries no planar layout")
        text = serialize_pd(diagram.pd)
    else:
        if diagram.braid is None:
            raise BadParameter(f"cannot convert {diagram.source} to braid: braid words are only read, never derived")
        text = serialize_braid(diagram.braid)

    if args.format == 'json':
        _emit(_payload('convert', diagram, {'to': args.to, 'text': text, 'from': diagram.source}))
    else:
        _emit(text + "\n")
    return EXIT_OK


def _add_diagram_options(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument('--gauss', help='Gauss sequence, e.g. "O1U2O3U1O2U3"')
    group.add_argument('--pd', help='PD code, e.g. "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"')
    group.add_argument('--braid', help='braid word, e.g. "n=2; 1 1 1"')


def _add_format(parser: argparse.ArgumentParser, choices: Sequence[str] = ('text', 'json')) -> None:
    parser.add_argument('--format', choices=list(choices), default='text', help='output format (default: text)')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='dancekit',
        description='Knot-diagram danceability: feasibility, minimal dancers, schedules and census',
    )
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='log progress to stderr (-v info, -vv debug)')
    parser.add_argument('--config', help='path to dancekit.json (default: DANCEKIT_CONFIG or data/dancekit.json)')
    sub = parser.add_subparsers(dest='command', required=True)

    check = sub.add_parser('check', help='decide whether a cut set can be danced')
    _add_diagram_options(check)
    check.add_argument('--cuts', required=True, help='cut set, e.g. "F:0,3"')
    _add_format(check)
    check.set_defaults(handler=cmd_check)

    minimum = sub.add_parser('min', help='exact minimal dancer count of a diagram')
    _add_diagram_options(minimum)
    minimum.add_argument('--oracle', action='store_true', help='use the unpruned brute-force search')
    _add_format(minimum)
    minimum.set_defaults(handler=cmd_min)

    schedule = sub.add_parser('schedule', help='build and render a dance schedule')
    _add_diagram_options(schedule)
    mode = schedule.add_mutually_exclusive_group(required=True)
    mode.add_argument('--cuts', help='schedule this cut set')
    mode.add_argument('--theorem3', action='store_true', help='one dancer per braid strand (needs --braid)')
    mode.add_argument('--underpass', action='store_true', help='one dancer per crossing')
    _add_format(schedule, ('text', 'svg', 'json'))
    schedule.set_defaults(handler=cmd_schedule)

    census = sub.add_parser('census', help='check every bound over a knot table')
    census.add_argument('--file', help='census CSV (default: DANCEKIT_CENSUS or the bundled table)')
    census.add_argument('--strict', action='store_true', help='abort on the first malformed row')
    census.add_argument('--out', help='directory for the JSON and CSV reports')
    census.add_argument('--jobs', type=int, help='worker processes')
    _add_format(census)
    census.set_defaults(handler=cmd_census)

    convert = sub.add_parser('convert', help='re-encode a diagram')
    _add_diagram_options(convert)
    convert.add_argument('--to', choices=['gauss', 'pd', 'braid'], required=True, help='target format')
    _add_format(convert)
    convert.set_defaults(handler=cmd_convert)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point; returns the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.verbose:
        set_log_level(logging.DEBUG if args.verbose > 1 else logging.INFO)

    try:
        return args.handler(args)
    except InputError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_INPUT
    except DomainError as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return EXIT_NEGATIVE
    except (OSError, ValueError) as exc:
        # missing census/config files and bad config values
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except DanceError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == '__main__':
    sys.exit(main())
