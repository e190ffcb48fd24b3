"""
Unit Tests: Dance Engine

Tests segmentation, the feasibility decision with its witness order and
blame cycle, and the exact minimal dancer search.
Coverage:
- Worked examples (trefoil, one-crossing kink, crossingless diagram)
- Structural properties: superset monotonicity, mirror/reverse duality,
  rotation equivariance, the underpass bound
- Agreement with the brute-force oracle on small random diagrams
"""

from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dancekit.codec import parse_cuts, parse_gauss
from dancekit.dance_engine import (
    CutSet,
    Orientation,
    build_precedence_graph,
    conventional_cuts,
    is_descending_start,
    is_feasible,
    min_dancers,
    required_cut_masks,
    search_min_dancers,
    segments,
    underpass_cuts,
)
from dancekit.diagram_model import GaussSequence, mirror, rotate
from dancekit.errors import EmptyDiagram, InvalidCutSet
from dancekit.oracle import naive_descending_start, naive_is_feasible, naive_min_dancers
from strategies import cut_sets, gauss_sequences

pytestmark = pytest.mark.unit


def _is_order_of(result, seq):
    """Witness visits every event once, respects chain order and U before O."""
    where = {e: i for i, e in enumerate(result.witness)}
    if sorted(where) != list(range(len(seq))):
        return False
    for path in result.segments:
        if any(where[a] > where[b] for a, b in zip(path, path[1:])):
            return False
    return all(where[i] < where[seq.partner[i]] for i in range(len(seq)) if seq.is_under[i])


class TestCutSet:
    def test_sorted_and_str(self):
        assert str(CutSet(Orientation.FORWARD, (3, 0))) == 'F:0,3'

    def test_empty_rejected(self):
        with pytest.raises(InvalidCutSet):
            CutSet(Orientation.FORWARD, ())

    def test_negative_rejected(self):
        with pytest.raises(InvalidCutSet):
            CutSet(Orientation.REVERSE, (-1,))

    def test_out_of_range_for_diagram(self, trefoil):
        with pytest.raises(InvalidCutSet):
            is_feasible(trefoil, parse_cuts('F:6'))

    def test_crossingless_allows_only_zero(self):
        with pytest.raises(InvalidCutSet):
            segments(GaussSequence(), parse_cuts('F:1'))

    def test_sort_key_prefers_forward(self):
        assert parse_cuts('F:5').sort_key() < parse_cuts('R:0').sort_key()


class TestSegments:
    def test_forward(self, trefoil):
        assert segments(trefoil, parse_cuts('F:0,3')) == [[0, 1, 2], [3, 4, 5]]

    def test_forward_wraps(self, trefoil):
        assert segments(trefoil, parse_cuts('F:1,3,5')) == [[1, 2], [3, 4], [5, 0]]

    def test_reverse(self, trefoil):
        assert segments(trefoil, parse_cuts('R:0,3')) == [[5, 4, 3], [2, 1, 0]]

    def test_single_gap_covers_everything(self, trefoil):
        assert segments(trefoil, parse_cuts('R:2')) == [[1, 0, 5, 4, 3, 2]]

    @given(st.data())
    def test_partition(self, data):
        seq = data.draw(gauss_sequences(min_crossings=1))
        cuts = data.draw(cut_sets(seq))
        paths = segments(seq, cuts)
        assert len(paths) == cuts.size
        assert sorted(e for path in paths for e in path) == list(range(len(seq)))


class TestPrecedenceGraph:
    def test_trefoil_edge_counts(self, trefoil):
        graph = build_precedence_graph(trefoil, segments(trefoil, parse_cuts('F:0,3')))
        assert len(graph.chain_edges) == 4
        assert graph.crossing_edges == ((1, 4), (3, 0), (5, 2))

    @given(st.data())
    def test_edge_counts(self, data):
        seq = data.draw(gauss_sequences(min_crossings=1))
        cuts = data.draw(cut_sets(seq))
        graph = build_precedence_graph(seq, segments(seq, cuts))
        assert len(graph.chain_edges) == len(seq) - cuts.size
        assert len(graph.crossing_edges) == seq.crossing_count
        assert graph.to_networkx().number_of_nodes() == len(seq)


class TestIsFeasible:
    def test_trefoil_two_dancers(self, trefoil):
        result = is_feasible(trefoil, parse_cuts('F:0,3'))
        assert result
        assert result.segments == ((0, 1, 2), (3, 4, 5))
        assert result.witness == (3, 0, 1, 4, 5, 2)
        assert [str(e) for e in result.witness_events(trefoil)] == ['U1', 'O1', 'U2', 'O2', 'U3', 'O3']
        assert result.cycle is None

    def test_trefoil_one_dancer_blames_a_cycle(self, trefoil):
        result = is_feasible(trefoil, parse_cuts('F:0'))
        assert not result
        assert result.witness is None
        assert result.cycle == (1, 2, 3, 0)
        assert [str(e) for e in result.cycle_events(trefoil)] == ['U2', 'O3', 'U1', 'O1']

    def test_kink(self, kink):
        assert not is_feasible(kink, parse_cuts('F:0'))
        assert is_feasible(kink, parse_cuts('F:1')).witness == (1, 0)

    def test_crossingless(self):
        result = is_feasible(GaussSequence(), conventional_cuts())
        assert result.feasible
        assert result.witness == ()

    @given(st.data())
    def test_witness_or_cycle(self, data):
        seq = data.draw(gauss_sequences(min_crossings=1))
        cuts = data.draw(cut_sets(seq))
        result = is_feasible(seq, cuts)
        if result.feasible:
            assert _is_order_of(result, seq)
        else:
            graph = build_precedence_graph(seq, [list(p) for p in result.segments]).to_networkx()
            cycle = result.cycle
            assert len(set(cycle)) == len(cycle)
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                assert graph.has_edge(a, b)

    @given(st.data())
    def test_agrees_with_oracle(self, data):
        seq = data.draw(gauss_sequences(max_crossings=6))
        cuts = data.draw(cut_sets(seq))
        assert is_feasible(seq, cuts).feasible == naive_is_feasible(seq, cuts.orientation, cuts.gaps)

    @given(st.data())
    def test_superset_stays_feasible(self, data):
        seq = data.draw(gauss_sequences(min_crossings=1))
        cuts = data.draw(cut_sets(seq))
        extra = data.draw(st.sets(st.integers(min_value=0, max_value=len(seq) - 1)))
        bigger = CutSet(cuts.orientation, tuple(set(cuts.gaps) | extra))
        if is_feasible(seq, cuts):
            assert is_feasible(seq, bigger)

    @given(st.data())
    def test_mirror_reverses_orientation(self, data):
        seq = data.draw(gauss_sequences(min_crossings=1))
        cuts = data.draw(cut_sets(seq, orientation=Orientation.FORWARD))
        flipped = CutSet(Orientation.REVERSE, cuts.gaps)
        assert is_feasible(seq, cuts).feasible == is_feasible(mirror(seq), flipped).feasible

    @given(st.data())
    def test_rotation_shifts_gaps(self, data):
        seq = data.draw(gauss_sequences(min_crossings=1))
        cuts = data.draw(cut_sets(seq))
        k = data.draw(st.integers(min_value=0, max_value=len(seq) - 1))
        shifted = CutSet(cuts.orientation, tuple((g - k) % len(seq) for g in cuts.gaps))
        assert is_feasible(seq, cuts).feasible == is_feasible(rotate(seq, k), shifted).feasible

    @given(gauss_sequences(min_crossings=1, max_crossings=8))
    def test_underpass_cuts_always_work(self, seq):
        assert is_feasible(seq, underpass_cuts(seq))

    @settings(max_examples=1000)
    @pytest.mark.slow
    @given(gauss_sequences(min_crossings=1, max_crossings=8))
    def test_underpass_cuts_always_work_thoroughly(self, seq):
        assert is_feasible(seq, underpass_cuts(seq))

    @settings(max_examples=1000)
    @pytest.mark.slow
    @given(st.data())
    def test_mirror_and_rotation_thoroughly(self, data):
        seq = data.draw(gauss_sequences(min_crossings=1))
        cuts = data.draw(cut_sets(seq))
        k = data.draw(st.integers(min_value=0, max_value=len(seq) - 1))
        feasible = is_feasible(seq, cuts).feasible
        other = Orientation.REVERSE if cuts.orientation is Orientation.FORWARD else Orientation.FORWARD
        flipped = CutSet(other, cuts.gaps)
        shifted = CutSet(cuts.orientation, tuple((g - k) % len(seq) for g in cuts.gaps))
        assert is_feasible(mirror(seq), flipped).feasible == feasible
        assert is_feasible(rotate(seq, k), shifted).feasible == feasible


class TestUnderpassCuts:
    def test_trefoil(self, trefoil):
        assert str(underpass_cuts(trefoil)) == 'F:1,3,5'

    def test_crossingless_rejected(self):
        with pytest.raises(EmptyDiagram):
            underpass_cuts(GaussSequence())


class TestMinDancers:
    def test_trefoil(self, trefoil):
        n, witness = min_dancers(trefoil)
        assert n == 2
        assert str(witness) == 'F:0,3'

    def test_kink(self, kink):
        n, witness = min_dancers(kink)
        assert (n, str(witness)) == (1, 'F:1')

    def test_crossingless(self):
        assert min_dancers(GaussSequence()) == (1, CutSet(Orientation.FORWARD, (0,)))

    def test_descending_diagram(self):
        assert min_dancers(parse_gauss('U1O1U2O2'))[0] == 1

    def test_stats(self, trefoil):
        result = search_min_dancers(trefoil)
        assert result.stats.candidates >= result.stats.graph_checks >= 1
        assert result.stats.filtered == result.stats.candidates - result.stats.graph_checks
        assert result.stats.elapsed >= 0

    def test_required_masks_trefoil(self, trefoil):
        # one mask per Under passage (events 1, 3, 5), covering (over, under]
        assert required_cut_masks(trefoil, Orientation.FORWARD) == [0b100011, 0b001110, 0b111000]

    @given(gauss_sequences(min_crossings=1, max_crossings=7))
    def test_bounded_by_crossings(self, seq):
        n, witness = min_dancers(seq)
        assert 1 <= n <= seq.crossing_count
        assert witness.size == n
        assert is_feasible(seq, witness)

    @given(gauss_sequences(max_crossings=5))
    def test_matches_oracle(self, seq):
        assert min_dancers(seq) == naive_min_dancers(seq)

    @settings(max_examples=1000)
    @pytest.mark.slow
    @given(gauss_sequences(max_crossings=6))
    def test_matches_oracle_thoroughly(self, seq):
        assert min_dancers(seq) == naive_min_dancers(seq)

    @given(gauss_sequences(min_crossings=1, max_crossings=5))
    def test_no_smaller_cut_set_works(self, seq):
        n, _ = min_dancers(seq)
        m = len(seq)
        for orientation in Orientation:
            for gaps in combinations(range(m), n - 1):
                assert not naive_is_feasible(seq, orientation, gaps)

    @given(gauss_sequences(min_crossings=1, max_crossings=6))
    def test_mirror_keeps_count(self, seq):
        assert min_dancers(seq)[0] == min_dancers(mirror(seq))[0]

    @given(gauss_sequences(min_crossings=1, max_crossings=6), st.integers(min_value=0, max_value=11))
    def test_rotation_keeps_count(self, seq, k):
        assert min_dancers(seq)[0] == min_dancers(rotate(seq, k))[0]


class TestDescendingStart:
    def test_kink(self, kink):
        assert str(is_descending_start(kink)) == 'F:1'

    def test_descending(self):
        assert str(is_descending_start(parse_gauss('U1O1U2O2'))) == 'F:0'

    def test_trefoil_has_none(self, trefoil):
        assert is_descending_start(trefoil) is None

    def test_crossingless(self):
        assert is_descending_start(GaussSequence()) == conventional_cuts()

    @given(gauss_sequences(max_crossings=6))
    def test_agrees_with_min_dancers(self, seq):
        start = is_descending_start(seq)
        assert (start is not None) == (min_dancers(seq)[0] == 1)
        assert start == naive_descending_start(seq)
