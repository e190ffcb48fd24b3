"""
DANCEKIT Dance Engine
Decides whether a cut set lets n dancers trace a diagram under the
under-first rule, and finds the fewest dancers a diagram needs.

Model:
    A cut set picks an orientation and n gaps (gap g sits between stored
    events g-1 and g). Each dancer starts at one gap and travels with the
    orientation until the next gap. Speeds are free and dancers may pause,
    so a simultaneous tracing exists iff the precedence graph is acyclic:
        - chain edges: consecutive passages of one dancer
        - crossing edges: Under(x) -> Over(x) for every crossing x

Witness order (feasible) and blame cycle (infeasible) are both exposed.
Ties between ready passages are broken by (dancer index, path position),
and among equal-size cut sets the witness is the smallest by
(Forward before Reverse, sorted gap tuple).

Usage:
    from dancekit.dance_engine import CutSet, Orientation, is_feasible, min_dancers

    n, witness = min_dancers(seq)

Version: 1.0.0
"""

import heapq
import time
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Dict, List, Optional, Tuple

import networkx as nx

from dancekit.diagram_model import GaussSequence, StrandEvent
from dancekit.errors import EmptyDiagram, InvalidCutSet
from dancekit.logging_config import get_logger

logger = get_logger(__name__)


class Orientation(Enum):
    """Direction the dancers travel relative to the stored event order."""
    FORWARD = 'F'
    REVERSE = 'R'

    @property
    def rank(self) -> int:
        return 0 if self is Orientation.FORWARD else 1


@dataclass(frozen=True)
class CutSet:
    """Orientation plus the gaps where dancers start, one dancer per gap."""
    orientation: Orientation
    gaps: Tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.gaps:
            raise InvalidCutSet("a cut set needs at least one gap")
        if len(set(self.gaps)) != len(self.gaps):
            raise InvalidCutSet(f"gaps must be distinct, got {list(self.gaps)}")
        if any(g < 0 for g in self.gaps):
            raise InvalidCutSet(f"gaps must be non-negative, got {list(self.gaps)}")
        object.__setattr__(self, 'gaps', tuple(sorted(self.gaps)))

    @property
    def size(self) -> int:
        return len(self.gaps)

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return (self.orientation.rank, self.gaps)

    def validate_for(self, seq: GaussSequence) -> None:
        """
        Check that every gap exists on the diagram.

        Raises:
            InvalidCutSet: If a gap is >= 2c (for c = 0 only {0} is allowed)
        """
        limit = max(len(seq), 1)
        bad = [g for g in self.gaps if g >= limit]
        if bad:
            raise InvalidCutSet(f"gaps {bad} out of range 0..{limit - 1} for this diagram")

    def __str__(self) -> str:
        return f"{self.orientation.value}:{','.join(str(g) for g in self.gaps)}"


@dataclass(frozen=True)
class PrecedenceGraph:
    """Chain edges per dancer plus one Under -> Over edge per crossing, on event indices."""
    node_count: int
    chain_edges: Tuple[Tuple[int, int], ...]
    crossing_edges: Tuple[Tuple[int, int], ...]

    def successors(self) -> List[List[int]]:
        succ: List[List[int]] = [[] for _ in range(self.node_count)]
        for u, v in self.chain_edges + self.crossing_edges:
            succ[u].append(v)
        return succ

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.node_count))
        graph.add_edges_from(self.chain_edges, kind='chain')
        graph.add_edges_from(self.crossing_edges, kind='crossing')
        return graph


@dataclass(frozen=True)
class FeasibilityResult:
    """
    Outcome of a feasibility check.

    witness: event indices in a valid global order (feasible only)
    cycle:   event indices forming a directed precedence cycle (infeasible only)
    """
    feasible: bool
    cuts: CutSet
    segments: Tuple[Tuple[int, ...], ...]
    witness: Optional[Tuple[int, ...]] = None
    cycle: Optional[Tuple[int, ...]] = None

    def __bool__(self) -> bool:
        return self.feasible

    def witness_events(self, seq: GaussSequence) -> List[StrandEvent]:
        return [seq[i] for i in self.witness or ()]

    def cycle_events(self, seq: GaussSequence) -> List[StrandEvent]:
        return [seq[i] for i in self.cycle or ()]


@dataclass
class SearchStats:
    """Bookkeeping for one min_dancers search."""
    candidates: int = 0
    filtered: int = 0
    graph_checks: int = 0
    elapsed: float = 0.0


@dataclass(frozen=True)
class MinDancersResult:
    dancers: int
    witness: CutSet
    stats: SearchStats = field(default_factory=SearchStats, compare=False)


def conventional_cuts() -> CutSet:
    """The only cut set of the crossingless diagram."""
    return CutSet(Orientation.FORWARD, (0,))


def segments(seq: GaussSequence, cuts: CutSet) -> List[List[int]]:
    """
    Split the diagram into one path per dancer.

    Forward: the dancer at gap g covers events g, g+1, ... up to the next gap.
    Reverse: the dancer at gap g covers events g-1, g-2, ... down to the
    previous gap. Dancers are listed by ascending gap.

    Args:
        seq: diagram
        cuts: cut set valid for seq

    Returns:
        list of event-index lists covering every event exactly once
    """
    cuts.validate_for(seq)
    m = len(seq)
    if m == 0:
        return [[] for _ in cuts.gaps]

    gaps = cuts.gaps
    k = len(gaps)
    paths: List[List[int]] = []
    for i, g in enumerate(gaps):
        if cuts.orientation is Orientation.FORWARD:
            length = (gaps[(i + 1) % k] - g) % m or m
            paths.append([(g + j) % m for j in range(length)])
        else:
            length = (g - gaps[i - 1]) % m or m
            paths.append([(g - 1 - j) % m for j in range(length)])
    return paths


def build_precedence_graph(seq: GaussSequence, paths: List[List[int]]) -> PrecedenceGraph:
    """Build the precedence graph for the given dancer paths."""
    chain = tuple(
        (path[j], path[j + 1])
        for path in paths
        for j in range(len(path) - 1)
    )
    under = seq.is_under
    partner = seq.partner
    crossing = tuple((i, partner[i]) for i in range(len(seq)) if under[i])
    return PrecedenceGraph(len(seq), chain, crossing)


def _locate(paths: List[List[int]], m: int) -> Tuple[List[int], List[int]]:
    dancer_of = [0] * m
    position_of = [0] * m
    for d, path in enumerate(paths):
        for p, e in enumerate(path):
            dancer_of[e] = d
            position_of[e] = p
    return dancer_of, position_of


def _find_cycle(remaining: set, paths: List[List[int]], seq: GaussSequence,
                dancer_of: List[int], position_of: List[int]) -> Tuple[int, ...]:
    """Walk predecessors inside the unemitted nodes until one repeats."""
    under = seq.is_under
    partner = seq.partner

    def predecessor(e: int) -> int:
        p = position_of[e]
        if p > 0:
            prev = paths[dancer_of[e]][p - 1]
            if prev in remaining:
                return prev
        return partner[e]

    node = min(remaining)
    visited: Dict[int, int] = {}
    trail: List[int] = []
    while node not in visited:
        visited[node] = len(trail)
        trail.append(node)
        node = predecessor(node)
        if node not in remaining:
            # every unemitted node keeps an unemitted predecessor; guard anyway
            raise RuntimeError("cycle walk left the unemitted set")
    loop = trail[visited[node]:]
    loop.reverse()
    # rotate so the cycle starts at its smallest Under passage, or smallest index
    starts = [i for i, e in enumerate(loop) if under[e]] or list(range(len(loop)))
    first = min(starts, key=lambda i: loop[i])
    return tuple(loop[first:] + loop[:first])


def is_feasible(seq: GaussSequence, cuts: CutSet) -> FeasibilityResult:
    """
    Decide whether the cut set can be danced.

    Builds the precedence graph and runs a topological sort that always
    emits the ready passage with the smallest (dancer, path position).

    Args:
        seq: diagram
        cuts: cut set valid for seq

    Returns:
        FeasibilityResult; truthy iff feasible, with witness order or blame cycle

    Raises:
        InvalidCutSet: If a gap is out of range for seq
    """
    paths = segments(seq, cuts)
    frozen_paths = tuple(tuple(p) for p in paths)
    m = len(seq)
    if m == 0:
        return FeasibilityResult(True, cuts, frozen_paths, witness=())

    graph = build_precedence_graph(seq, paths)
    succ = graph.successors()
    indegree = [0] * m
    for u, v in graph.chain_edges + graph.crossing_edges:
        indegree[v] += 1

    dancer_of, position_of = _locate(paths, m)
    ready = [(dancer_of[e], position_of[e], e) for e in range(m) if indegree[e] == 0]
    heapq.heapify(ready)

    order: List[int] = []
    while ready:
        _, _, e = heapq.heappop(ready)
        order.append(e)
        for v in succ[e]:
            indegree[v] -= 1
            if indegree[v] == 0:
                heapq.heappush(ready, (dancer_of[v], position_of[v], v))

    if len(order) == m:
        return FeasibilityResult(True, cuts, frozen_paths, witness=tuple(order))

    remaining = set(range(m)) - set(order)
    cycle = _find_cycle(remaining, paths, seq, dancer_of, position_of)
    return FeasibilityResult(False, cuts, frozen_paths, cycle=cycle)


def _acyclic(seq: GaussSequence, paths: List[List[int]]) -> bool:
    """Plain Kahn count over the precedence graph; no ordering bookkeeping."""
    m = len(seq)
    under = seq.is_under
    partner = seq.partner
    nxt = [-1] * m
    indegree = [0] * m
    for path in paths:
        for j in range(len(path) - 1):
            nxt[path[j]] = path[j + 1]
            indegree[path[j + 1]] += 1
    for e in range(m):
        if under[e]:
            indegree[partner[e]] += 1

    stack = [e for e in range(m) if indegree[e] == 0]
    emitted = 0
    while stack:
        e = stack.pop()
        emitted += 1
        v = nxt[e]
        if v >= 0:
            indegree[v] -= 1
            if indegree[v] == 0:
                stack.append(v)
        if under[e]:
            v = partner[e]
            indegree[v] -= 1
            if indegree[v] == 0:
                stack.append(v)
    return emitted == m


def required_cut_masks(seq: GaussSequence, orientation: Orientation) -> List[int]:
    """
    Gap bitmasks that every feasible cut set must hit.

    If a crossing's Over passage comes before its Under passage on one
    uncut stretch of path, the chain and crossing edges form a 2-cycle.
    Forward, that stretch runs from Over to Under, so some gap in
    (over, under] must be cut; reversed, the stretch runs the other way and
    the gap lies in (under, over].
    """
    m = len(seq)
    partner = seq.partner
    masks = []
    for u in range(m):
        if not seq.is_under[u]:
            continue
        o = partner[u]
        lo, hi = (o, u) if orientation is Orientation.FORWARD else (u, o)
        mask = 0
        g = (lo + 1) % m
        while True:
            mask |= 1 << g
            if g == hi:
                break
            g = (g + 1) % m
        masks.append(mask)
    return masks


def search_min_dancers(seq: GaussSequence) -> MinDancersResult:
    """
    Exact minimal dancer count for one diagram, with search statistics.

    Iterative deepening over n = 1, 2, ...; for each n, Forward then
    Reverse, gap tuples in lexicographic order, so the first feasible
    candidate is the tie-break winner. Candidates that miss a required cut
    (see required_cut_masks) are discarded before the graph check.

    Args:
        seq: diagram

    Returns:
        MinDancersResult with n, the witness cut set and statistics
    """
    stats = SearchStats()
    started = time.perf_counter()
    m = len(seq)
    if m == 0:
        stats.elapsed = time.perf_counter() - started
        return MinDancersResult(1, conventional_cuts(), stats)

    masks = {o: required_cut_masks(seq, o) for o in Orientation}

    for n in range(1, m + 1):
        for orientation in Orientation:
            needed = masks[orientation]
            for gaps in combinations(range(m), n):
                stats.candidates += 1
                chosen = 0
                for g in gaps:
                    chosen |= 1 << g
                if any(not (chosen & mask) for mask in needed):
                    stats.filtered += 1
                    continue
                cuts = CutSet(orientation, gaps)
                stats.graph_checks += 1
                if _acyclic(seq, segments(seq, cuts)):
                    stats.elapsed = time.perf_counter() - started
                    logger.debug(
                        "Minimal dancer count found",
                        extra={"crossings": seq.crossing_count, "dancers": n,
                               "candidates": stats.candidates, "elapsed_s": round(stats.elapsed, 4)},
                    )
                    return MinDancersResult(n, cuts, stats)

    # every gap cut always works: each dancer has one passage and the graph is just the crossing edges
    raise RuntimeError("search exhausted without a feasible cut set")


def min_dancers(seq: GaussSequence) -> Tuple[int, CutSet]:
    """
    Smallest n such that some n-gap cut set dances the diagram.

    Returns:
        (n, witness) with the lexicographically smallest witness
    """
    result = search_min_dancers(seq)
    return result.dancers, result.witness


def underpass_cuts(seq: GaussSequence) -> CutSet:
    """
    One dancer per crossing, each starting just before its Under passage.

    Raises:
        EmptyDiagram: If the diagram has no crossings
    """
    if seq.crossing_count == 0:
        raise EmptyDiagram("underpass cuts need at least one crossing")
    return CutSet(Orientation.FORWARD, tuple(i for i, u in enumerate(seq.is_under) if u))


def is_descending_start(seq: GaussSequence) -> Optional[CutSet]:
    """
    Find a single start point from which every Under precedes its Over.

    Returns:
        the smallest feasible one-gap CutSet, or None if the diagram is not 1-danceable
    """
    m = len(seq)
    if m == 0:
        return conventional_cuts()

    partner = seq.partner
    under = seq.is_under
    for orientation in Orientation:
        for g in range(m):
            if orientation is Orientation.FORWARD:
                step = [(i - g) % m for i in range(m)]
            else:
                step = [(g - 1 - i) % m for i in range(m)]
            if all(step[u] < step[partner[u]] for u in range(m) if under[u]):
                return CutSet(orientation, (g,))
    return None
