"""
Brute-force reference for the dance engine.

Shares no traversal or graph code with dance_engine: it walks the diagram
itself, builds a networkx DiGraph per candidate and asks networkx whether
the graph is acyclic. Slow on purpose; the `min --oracle` command and the
equivalence tests use it to cross-check the production search.
"""

from itertools import combinations
from typing import List, Optional, Tuple

import networkx as nx

from dancekit.dance_engine import CutSet, Orientation
from dancekit.diagram_model import GaussSequence, Role


def _walk(seq: GaussSequence, orientation: Orientation, gaps: Tuple[int, ...]) -> List[List[int]]:
    m = len(seq)
    cut = set(gaps)
    step = 1 if orientation is Orientation.FORWARD else -1
    paths = []
    for g in gaps:
        # gap g sits between g-1 and g; forward dancers take g first, reverse ones g-1
        e = g if step == 1 else (g - 1) % m
        path = [e]
        while True:
            boundary = (e + 1) % m if step == 1 else e
            if boundary in cut:
                break
            e = (e + step) % m
            path.append(e)
        paths.append(path)
    return paths


def naive_is_feasible(seq: GaussSequence, orientation: Orientation, gaps: Tuple[int, ...]) -> bool:
    """Acyclicity of the chain-plus-crossing graph, decided by networkx."""
    if len(seq) == 0:
        return True
    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(seq)))
    for path in _walk(seq, orientation, gaps):
        nx.add_path(graph, path)
    position = {}
    for index, event in enumerate(seq):
        position.setdefault(event.crossing, {})[event.role] = index
    for roles in position.values():
        graph.add_edge(roles[Role.UNDER], roles[Role.OVER])
    return nx.is_directed_acyclic_graph(graph)


def naive_min_dancers(seq: GaussSequence) -> Tuple[int, CutSet]:
    """Enumerate every orientation and gap combination, smallest first."""
    m = len(seq)
    if m == 0:
        return 1, CutSet(Orientation.FORWARD, (0,))
    for n in range(1, m + 1):
        for orientation in (Orientation.FORWARD, Orientation.REVERSE):
            for gaps in combinations(range(m), n):
                if naive_is_feasible(seq, orientation, gaps):
                    return n, CutSet(orientation, gaps)
    raise RuntimeError("no feasible cut set found")


def naive_descending_start(seq: GaussSequence) -> Optional[CutSet]:
    """First one-gap cut set the brute force accepts."""
    if len(seq) == 0:
        return CutSet(Orientation.FORWARD, (0,))
    for orientation in (Orientation.FORWARD, Orientation.REVERSE):
        for g in range(len(seq)):
            if naive_is_feasible(seq, orientation, (g,)):
                return CutSet(orientation, (g,))
    return None
