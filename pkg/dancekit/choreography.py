"""
DANCEKIT Choreography
Turns feasible cut sets into explicit dance schedules, checks schedules
independently of the engine, and renders them.

A schedule assigns every passage a global step 0..2c-1. Each dancer's steps
increase along its path, and at every crossing the Under passage gets the
earlier step. A wait marker (d, e) flags an Over passage e of dancer d whose
matching Under passage belongs to someone else: d may have to pause there.

Version: 1.0.0
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple

from dancekit.braids import BraidClosure, close_braid
from dancekit.dance_engine import CutSet, Orientation, is_feasible, segments, underpass_cuts
from dancekit.diagram_model import BraidWord, GaussSequence, Role
from dancekit.errors import InfeasibleCuts, InvalidCutSet, UnsupportedLayout
from dancekit.logging_config import get_logger

logger = get_logger(__name__)


class RenderFormat(Enum):
    TEXT = 'text'
    SVG = 'svg'


@dataclass(frozen=True)
class DanceSchedule:
    """
    dancers: each dancer's path as event indices
    steps:   steps[e] is the global step of event e
    waits:   (dancer index, event index) pairs marking possible pauses
    """
    cuts: CutSet
    dancers: Tuple[Tuple[int, ...], ...]
    steps: Tuple[int, ...]
    waits: FrozenSet[Tuple[int, int]] = frozenset()

    @property
    def step_count(self) -> int:
        return len(self.steps)

    def order(self) -> List[int]:
        """Event indices sorted by step."""
        return sorted(range(len(self.steps)), key=lambda e: self.steps[e])


@dataclass
class VerificationReport:
    violations: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class TimelineEntry:
    step: int
    event: int
    label: str
    wait: bool
    idle_before: int


@dataclass(frozen=True)
class DancerTimeline:
    dancer: int
    name: str
    entries: Tuple[TimelineEntry, ...]


def dancer_name(index: int) -> str:
    """A, B, ..., Z, then D27, D28, ..."""
    return chr(ord('A') + index) if index < 26 else f"D{index + 1}"


def wait_markers(seq: GaussSequence, dancers: Sequence[Sequence[int]]) -> FrozenSet[Tuple[int, int]]:
    """Mark every Over passage whose Under passage belongs to another dancer."""
    owner = {}
    for d, path in enumerate(dancers):
        for e in path:
            owner[e] = d
    partner = seq.partner
    return frozenset(
        (owner[e], e)
        for e in range(len(seq))
        if seq[e].role is Role.OVER and owner[partner[e]] != owner[e]
    )


def _finish(seq: GaussSequence, cuts: CutSet, dancers: Sequence[Sequence[int]], steps: Sequence[int]) -> DanceSchedule:
    frozen = tuple(tuple(path) for path in dancers)
    schedule = DanceSchedule(cuts, frozen, tuple(steps), wait_markers(seq, frozen))
    report = verify_schedule(seq, cuts, schedule)
    if not report:
        raise RuntimeError(f"constructed schedule failed verification: {report.violations}")
    return schedule


def schedule_from_cuts(seq: GaussSequence, cuts: CutSet) -> DanceSchedule:
    """
    Deterministic schedule for a feasible cut set.

    Steps follow the engine's witness order (smallest ready dancer first,
    then path position). The schedule is verified before it is returned.

    Raises:
        InfeasibleCuts: If the cut set cannot be danced; carries the blame cycle
    """
    result = is_feasible(seq, cuts)
    if not result:
        raise InfeasibleCuts([(seq[e].crossing, seq[e].role.value) for e in result.cycle or ()])

    steps = [0] * len(seq)
    for step, e in enumerate(result.witness or ()):
        steps[e] = step
    return _finish(seq, cuts, result.segments, steps)


def braid_schedule(braid: BraidWord) -> Tuple[BraidClosure, DanceSchedule]:
    """
    One dancer per strand, letters danced bottom to top.

    At every letter the dancer on the under-strand passes first and the
    dancer on the over-strand follows, so the closure is danced by as many
    dancers as the braid has strands.

    Returns:
        (closure, schedule); the closure carries the diagram the schedule refers to

    Raises:
        NotAKnot: If the closure has more than one component
    """
    closure = close_braid(braid)
    seq = closure.sequence
    cuts = CutSet(Orientation.FORWARD, closure.strand_gaps)
    dancers = segments(seq, cuts)

    steps = [0] * len(seq)
    for letter, (under, over) in closure.letter_events().items():
        steps[under] = 2 * letter
        steps[over] = 2 * letter + 1

    schedule = _finish(seq, cuts, dancers, steps)
    logger.debug("Braid schedule built", extra={"strands": braid.strands, "steps": schedule.step_count})
    return closure, schedule


def underpass_schedule(seq: GaussSequence) -> DanceSchedule:
    """
    One dancer per crossing: every Under passage first, then the Over
    passages dancer by dancer along each path.

    Raises:
        EmptyDiagram: If the diagram has no crossings
    """
    cuts = underpass_cuts(seq)
    dancers = segments(seq, cuts)
    steps = [0] * len(seq)
    step = 0
    for path in dancers:
        steps[path[0]] = step
        step += 1
    for path in dancers:
        for e in path[1:]:
            steps[e] = step
            step += 1
    return _finish(seq, cuts, dancers, steps)


def verify_schedule(seq: GaussSequence, cuts: CutSet, schedule: DanceSchedule) -> VerificationReport:
    """
    Check a schedule against the dance rules without the engine's graph code.

    Checks:
        - the dancer paths are exactly segments(seq, cuts)
        - steps are a permutation of 0..2c-1
        - each dancer's steps increase along its path
        - every crossing's Under passage precedes its Over passage

    Returns:
        VerificationReport, truthy iff there are no violations
        (a cut set or path that does not fit seq is a violation, not an error)
    """
    report = VerificationReport()
    m = len(seq)

    try:
        expected = [tuple(path) for path in segments(seq, cuts)]
    except InvalidCutSet as e:
        report.violations.append(f"cut set does not fit the diagram: {e}")
        return report
    if list(schedule.dancers) != expected:
        report.violations.append("dancer paths do not match the cut set")

    stray = sorted({e for path in schedule.dancers for e in path if not 0 <= e < m})
    if stray:
        report.violations.append(f"dancer paths name events {stray} outside 0..{m - 1}")
        return report

    if len(schedule.steps) != m or sorted(schedule.steps) != list(range(m)):
        report.violations.append("steps are not a permutation of 0..2c-1")
        return report

    for d, path in enumerate(schedule.dancers):
        for a, b in zip(path, path[1:]):
            if schedule.steps[a] >= schedule.steps[b]:
                report.violations.append(
                    f"dancer {dancer_name(d)} reaches {seq[b]} (step {schedule.steps[b]}) "
                    f"before {seq[a]} (step {schedule.steps[a]})"
                )

    under_step: Dict[int, int] = {}
    over_step: Dict[int, int] = {}
    for e, event in enumerate(seq):
        (under_step if event.role is Role.UNDER else over_step)[event.crossing] = schedule.steps[e]
    for crossing in sorted(under_step):
        if under_step[crossing] >= over_step[crossing]:
            report.violations.append(
                f"crossing {crossing}: over passage at step {over_step[crossing]} "
                f"does not follow under passage at step {under_step[crossing]}"
            )
    return report


def dancer_timelines(seq: GaussSequence, schedule: DanceSchedule) -> List[DancerTimeline]:
    """
    Per-dancer view of a schedule.

    Every dancer moves at unit speed between global steps; idle_before
    counts the steps a dancer spends standing before a passage, the
    continuous counterpart of a wait marker.
    """
    timelines = []
    for d, path in enumerate(schedule.dancers):
        entries = []
        previous = -1
        for e in path:
            step = schedule.steps[e]
            entries.append(TimelineEntry(
                step=step,
                event=e,
                label=str(seq[e]),
                wait=(d, e) in schedule.waits,
                idle_before=max(step - previous - 1, 0) if previous >= 0 else step,
            ))
            previous = step
        timelines.append(DancerTimeline(d, dancer_name(d), tuple(entries)))
    return timelines


def render_text(seq: GaussSequence, schedule: DanceSchedule) -> str:
    """
    Line-oriented timeline, one line per dancer.

    Each passage prints as <event>@<step>; a leading '|' is a wait marker.
    """
    lines = [f"cuts {schedule.cuts}  dancers {len(schedule.dancers)}  steps {schedule.step_count}"]
    for timeline in dancer_timelines(seq, schedule):
        parts = [f"{'|' if entry.wait else ''}{entry.label}@{entry.step}" for entry in timeline.entries]
        lines.append(f"{timeline.name}: {' '.join(parts)}".rstrip())
    return "\n".join(lines) + "\n"


def render_schedule(seq: GaussSequence, schedule: DanceSchedule, fmt: RenderFormat,
                    closure: Optional[BraidClosure] = None) -> str:
    """
    Render a verified schedule.

    Args:
        seq: diagram the schedule refers to
        schedule: verified schedule
        fmt: RenderFormat.TEXT or RenderFormat.SVG
        closure: braid provenance; required for SVG

    Raises:
        UnsupportedLayout: If SVG is requested for a diagram that is not a braid closure
    """
    if fmt is RenderFormat.TEXT:
        return render_text(seq, schedule)

    if closure is None or closure.sequence != seq:
        raise UnsupportedLayout("SVG layout needs a braid closure; raw Gauss or PD input has no layout")

    from dancekit.adapters.svg_renderer import render_braid_svg
    return render_braid_svg(closure, schedule)


def schedule_payload(seq: GaussSequence, schedule: DanceSchedule) -> Dict[str, Any]:
    """JSON-ready description of a schedule."""
    return {
        "diagram": str(seq),
        "cuts": str(schedule.cuts),
        "steps": schedule.step_count,
        "order": [str(seq[e]) for e in schedule.order()],
        "dancers": [
            {
                "name": t.name,
                "path": [entry.label for entry in t.entries],
                "steps": [entry.step for entry in t.entries],
                "waits": [entry.label for entry in t.entries if entry.wait],
                "idle_before": [entry.idle_before for entry in t.entries],
            }
            for t in dancer_timelines(seq, schedule)
        ],
    }
