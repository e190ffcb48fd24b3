"""
DANCEKIT Braids
Braid closures as diagram generators, and the strand-per-dancer cut set
that shows danceability is bounded above by braid index.

Conventions:
    - Letters are read bottom to top; strands flow upward.
    - At a positive letter s_i the strand entering at position i passes
      UNDER the strand entering at position i+1; a negative letter swaps
      the roles. The opposite convention mirrors every closure, which
      leaves dancer counts unchanged.
    - The closure is traversed from the bottom of strand 1; return arcs
      carry no crossings.

Version: 1.0.0
"""

from dataclasses import dataclass
from typing import Dict, List, Tuple

from dancekit.dance_engine import CutSet, Orientation
from dancekit.diagram_model import BraidWord, GaussSequence, Role, StrandEvent
from dancekit.errors import BadParameter, NotAKnot
from dancekit.logging_config import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class BraidClosure:
    """
    A closed braid together with where its passages came from.

    letter_of[e]     braid letter (0-based, bottom to top) of event e
    strand_gaps      gap at the bottom of each pass through the braid, in traversal order
    pass_positions   bottom position (1-based) where each pass starts
    """
    braid: BraidWord
    sequence: GaussSequence
    letter_of: Tuple[int, ...]
    strand_gaps: Tuple[int, ...]
    pass_positions: Tuple[int, ...]

    def letter_events(self) -> Dict[int, Tuple[int, int]]:
        """Map each letter to its (Under event index, Over event index)."""
        found: Dict[int, Dict[Role, int]] = {}
        for index, letter in enumerate(self.letter_of):
            found.setdefault(letter, {})[self.sequence[index].role] = index
        return {letter: (roles[Role.UNDER], roles[Role.OVER]) for letter, roles in found.items()}


def braid_permutation(braid: BraidWord) -> Tuple[int, ...]:
    """
    Where each strand ends up after the braid.

    Args:
        braid: braid word

    Returns:
        tuple perm with perm[i-1] = top position of the strand starting at bottom position i
    """
    # position -> strand currently there
    strand_at = list(range(1, braid.strands + 1))
    for index, _sign in braid.letters:
        strand_at[index - 1], strand_at[index] = strand_at[index], strand_at[index - 1]
    perm = [0] * braid.strands
    for position, strand in enumerate(strand_at, start=1):
        perm[strand - 1] = position
    return tuple(perm)


def permutation_cycles(perm: Tuple[int, ...]) -> List[Tuple[int, ...]]:
    """Cycle decomposition of a 1-based permutation, each cycle from its smallest element."""
    seen = set()
    cycles = []
    for start in range(1, len(perm) + 1):
        if start in seen:
            continue
        cycle = []
        i = start
        while i not in seen:
            seen.add(i)
            cycle.append(i)
            i = perm[i - 1]
        cycles.append(tuple(cycle))
    return cycles


def closure_components(braid: BraidWord) -> int:
    """Number of components of the braid's closure."""
    return len(permutation_cycles(braid_permutation(braid)))


def close_braid(braid: BraidWord) -> BraidClosure:
    """
    Close a braid and traverse the resulting knot.

    Args:
        braid: braid word whose permutation is a single n-cycle

    Returns:
        BraidClosure with the Gauss sequence and its provenance

    Raises:
        NotAKnot: If the closure has more than one component
    """
    components = closure_components(braid)
    if components != 1:
        raise NotAKnot(components)

    events: List[StrandEvent] = []
    letter_of: List[int] = []
    strand_gaps: List[int] = []
    pass_positions: List[int] = []

    position = 1
    for _ in range(braid.strands):
        strand_gaps.append(len(events))
        pass_positions.append(position)
        for k, (index, sign) in enumerate(braid.letters):
            if position == index:
                role = Role.UNDER if sign > 0 else Role.OVER
                position = index + 1
            elif position == index + 1:
                role = Role.OVER if sign > 0 else Role.UNDER
                position = index
            else:
                continue
            events.append(StrandEvent(k + 1, role))
            letter_of.append(k)
        # closure arc carries the strand from the top back to the same bottom position

    sequence = GaussSequence.from_events(events)
    logger.debug(
        "Closed braid",
        extra={"strands": braid.strands, "letters": braid.length, "crossings": sequence.crossing_count},
    )
    return BraidClosure(braid, sequence, tuple(letter_of), tuple(strand_gaps), tuple(pass_positions))


def braid_closure(braid: BraidWord) -> GaussSequence:
    """Gauss sequence of the braid's closure (see close_braid)."""
    return close_braid(braid).sequence


def strand_cuts(braid: BraidWord) -> CutSet:
    """
    One dancer per strand, starting at the bottom of the braid.

    Raises:
        NotAKnot: If the closure has more than one component
    """
    return CutSet(Orientation.FORWARD, close_braid(braid).strand_gaps)


def torus_braid(q: int) -> BraidWord:
    """
    Two-strand braid s_1^q whose closure is the torus knot T(2, q).

    Raises:
        BadParameter: If q is even or below 3
    """
    if q < 3 or q % 2 == 0:
        raise BadParameter(f"T(2,q) needs odd q >= 3, got {q}")
    return BraidWord(2, tuple((1, 1) for _ in range(q)))
