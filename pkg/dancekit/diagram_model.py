"""
DANCEKIT Diagram Model
Core representations of knot diagrams and the transforms between them.

A knot diagram enters the engine as a GaussSequence: the cyclic list of
crossing passages met on one trip around the knot, each tagged Under or
Over. PD codes and braid words are ingestion formats that convert to it.
Planar realizability is not required; danceability depends only on the
passage order and the roles.

All values are immutable after construction.

Version: 1.0.0
"""

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

from dancekit.errors import MalformedPD, MultipleComponents, RoleMismatch, IndexOutOfRange, BadParameter
from dancekit.logging_config import get_logger

logger = get_logger(__name__)


class Role(Enum):
    """Which strand of a crossing a passage travels on."""
    UNDER = 'U'
    OVER = 'O'

    def toggled(self) -> 'Role':
        return Role.OVER if self is Role.UNDER else Role.UNDER


@dataclass(frozen=True)
class StrandEvent:
    """One passage through a crossing."""
    crossing: int
    role: Role

    def __post_init__(self) -> None:
        if self.crossing < 1:
            raise RoleMismatch(f"crossing labels start at 1, got {self.crossing}", crossing=self.crossing)

    def __str__(self) -> str:
        return f"{self.role.value}{self.crossing}"


def canonical_relabel(events: Iterable[StrandEvent]) -> Tuple[StrandEvent, ...]:
    """
    Relabel crossings 1..c in order of first appearance.

    Args:
        events: passages in traversal order, any positive labels

    Returns:
        tuple of StrandEvent with canonical labels
    """
    mapping: Dict[int, int] = {}
    relabeled = []
    for event in events:
        if event.crossing not in mapping:
            mapping[event.crossing] = len(mapping) + 1
        relabeled.append(StrandEvent(mapping[event.crossing], event.role))
    return tuple(relabeled)


@dataclass(frozen=True)
class GaussSequence:
    """
    Cyclic sequence of crossing passages.

    Invariants (checked on construction):
        - every crossing label appears exactly twice, once Under, once Over
        - labels are 1..c in order of first appearance
        - c = 0 iff there are no events

    Use GaussSequence.from_events() to build from arbitrary labels.
    """
    events: Tuple[StrandEvent, ...] = ()

    def __post_init__(self) -> None:
        seen: Dict[int, List[Role]] = {}
        next_label = 1
        for event in self.events:
            if event.crossing not in seen:
                if event.crossing != next_label:
                    raise RoleMismatch(
                        f"labels must be canonical: expected {next_label}, got {event.crossing}",
                        crossing=event.crossing,
                    )
                next_label += 1
                seen[event.crossing] = []
            seen[event.crossing].append(event.role)

        for crossing, roles in seen.items():
            if sorted(role.value for role in roles) != ['O', 'U']:
                rendered = ''.join(role.value for role in roles)
                raise RoleMismatch(
                    f"crossing {crossing} needs exactly one U and one O passage, got {rendered!r}",
                    crossing=crossing,
                )

    @classmethod
    def from_events(cls, events: Iterable[StrandEvent]) -> 'GaussSequence':
        """Build a sequence from passages with arbitrary positive labels."""
        return cls(canonical_relabel(events))

    @property
    def crossing_count(self) -> int:
        return len(self.events) // 2

    @cached_property
    def partner(self) -> Tuple[int, ...]:
        """partner[i] is the index of the other passage through event i's crossing."""
        first: Dict[int, int] = {}
        partner = [0] * len(self.events)
        for index, event in enumerate(self.events):
            if event.crossing in first:
                other = first[event.crossing]
                partner[index] = other
                partner[other] = index
            else:
                first[event.crossing] = index
        return tuple(partner)

    @cached_property
    def is_under(self) -> Tuple[bool, ...]:
        return tuple(event.role is Role.UNDER for event in self.events)

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self) -> Iterator[StrandEvent]:
        return iter(self.events)

    def __getitem__(self, index: int) -> StrandEvent:
        return self.events[index]

    def __str__(self) -> str:
        return ''.join(str(event) for event in self.events)


@dataclass(frozen=True)
class PDCode:
    """
    Planar diagram code: one (a, b, c, d) tuple of edge labels per crossing,
    starting at the incoming under-strand and running counterclockwise.
    """
    crossings: Tuple[Tuple[int, int, int, int], ...] = ()

    def __post_init__(self) -> None:
        counts: Dict[int, int] = {}
        for tup in self.crossings:
            if len(tup) != 4:
                raise MalformedPD(f"crossing tuple needs 4 edge labels, got {len(tup)}")
            for label in tup:
                if label < 1:
                    raise MalformedPD(f"edge labels must be positive, got {label}")
                counts[label] = counts.get(label, 0) + 1

        bad = sorted(label for label, count in counts.items() if count != 2)
        if bad:
            raise MalformedPD(f"edge labels must appear exactly twice; offending labels: {bad}")

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)


@dataclass(frozen=True)
class BraidWord:
    """A braid on `strands` strands as a bottom-to-top list of (index, sign) letters."""
    strands: int
    letters: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        if self.strands < 1:
            raise BadParameter(f"a braid needs at least one strand, got {self.strands}")
        for index, sign in self.letters:
            if not 1 <= index <= self.strands - 1:
                raise IndexOutOfRange(
                    f"letter index {index} outside 1..{self.strands - 1} for a {self.strands}-strand braid"
                )
            if sign not in (1, -1):
                raise BadParameter(f"letter sign must be +1 or -1, got {sign}")

    @property
    def length(self) -> int:
        return len(self.letters)


def pd_to_gauss(pd: PDCode) -> GaussSequence:
    """
    Traverse a PD code from edge 1 and record the passages.

    A passage is Under when the strand runs through positions a/c of the
    tuple and Over through b/d. The walk direction comes from the tuples:
    under-strands run a -> c, so a walk that enters under-strands at c is
    reversed before returning.

    Args:
        pd: PD code satisfying the edge-label invariants

    Returns:
        GaussSequence with crossings canonically relabeled by first visit

    Raises:
        MultipleComponents: If the walk closes before covering every edge
    """
    if not pd.crossings:
        return GaussSequence()

    occurrences: Dict[int, List[Tuple[int, int]]] = {}
    for x, tup in enumerate(pd.crossings):
        for pos, label in enumerate(tup):
            occurrences.setdefault(label, []).append((x, pos))

    start_label = 1 if 1 in occurrences else min(occurrences)
    first, second = occurrences[start_label]
    # Head of the start edge: prefer an incoming under position, avoid an outgoing one
    if second[1] == 0 or first[1] == 2:
        head = second
    else:
        head = first
    start = head

    passages: List[Tuple[int, int]] = []
    edges_walked = 0
    while True:
        x, pos = head
        passages.append((x, pos))
        edges_walked += 1
        exit_pos = (pos + 2) % 4
        label = pd.crossings[x][exit_pos]
        a, b = occurrences[label]
        head = b if a == (x, exit_pos) else a
        if head == start:
            break
        if edges_walked > 2 * len(pd.crossings):
            break

    total_edges = 2 * len(pd.crossings)
    if edges_walked != total_edges:
        components = _count_pd_components(pd, occurrences)
        raise MultipleComponents(
            f"PD code traversal from edge {start_label} covers {edges_walked} of {total_edges} edges",
            components=components,
        )

    entered_forward = any(pos == 0 for _, pos in passages)
    entered_backward = any(pos == 2 for _, pos in passages)
    if entered_backward and not entered_forward:
        passages.reverse()

    events = [
        StrandEvent(x + 1, Role.UNDER if pos in (0, 2) else Role.OVER)
        for x, pos in passages
    ]
    seq = GaussSequence.from_events(events)
    logger.debug("Converted PD code", extra={"crossings": seq.crossing_count})
    return seq


def _count_pd_components(pd: PDCode, occurrences: Dict[int, List[Tuple[int, int]]]) -> int:
    """Count closed strands of a PD code by walking every edge once."""
    unvisited = set(occurrences)
    components = 0
    while unvisited:
        label = min(unvisited)
        components += 1
        x, pos = occurrences[label][0]
        while label in unvisited:
            unvisited.discard(label)
            exit_pos = (pos + 2) % 4
            next_label = pd.crossings[x][exit_pos]
            a, b = occurrences[next_label]
            x, pos = b if a == (x, exit_pos) else a
            label = next_label
    return components


def mirror(seq: GaussSequence) -> GaussSequence:
    """Toggle every passage between Under and Over; order is unchanged."""
    return GaussSequence(tuple(StrandEvent(e.crossing, e.role.toggled()) for e in seq.events))


def rotate(seq: GaussSequence, k: int) -> GaussSequence:
    """Shift the cyclic start by k passages and relabel canonically."""
    if not seq.events:
        return seq
    k %= len(seq.events)
    return GaussSequence.from_events(seq.events[k:] + seq.events[:k])


def gauss_from_tokens(tokens: Sequence[Tuple[str, int]]) -> GaussSequence:
    """Build a sequence from (role letter, label) pairs such as ('O', 1)."""
    return GaussSequence.from_events(StrandEvent(label, Role(letter.upper())) for letter, label in tokens)
