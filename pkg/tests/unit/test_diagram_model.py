"""
Unit Tests: Diagram Model

Tests the Gauss, PD and braid representations.
Coverage:
- Gauss sequence invariants and canonical relabeling
- PD code validation and traversal to a Gauss sequence
- Braid word validation
- mirror / rotate transforms
"""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dancekit.codec import parse_gauss, parse_pd
from dancekit.diagram_model import (
    BraidWord,
    GaussSequence,
    PDCode,
    Role,
    StrandEvent,
    mirror,
    pd_to_gauss,
    rotate,
)
from dancekit.errors import (
    BadParameter,
    IndexOutOfRange,
    MalformedPD,
    MultipleComponents,
    RoleMismatch,
)
from strategies import gauss_sequences, pd_from_gauss

pytestmark = pytest.mark.unit


class TestStrandEvent:
    def test_str(self):
        assert str(StrandEvent(3, Role.OVER)) == 'O3'
        assert str(StrandEvent(1, Role.UNDER)) == 'U1'

    def test_crossing_must_be_positive(self):
        with pytest.raises(RoleMismatch):
            StrandEvent(0, Role.UNDER)

    def test_role_toggle(self):
        assert Role.UNDER.toggled() is Role.OVER
        assert Role.OVER.toggled() is Role.UNDER


class TestGaussSequence:
    def test_trefoil(self, trefoil):
        assert trefoil.crossing_count == 3
        assert len(trefoil) == 6
        assert str(trefoil) == 'O1U2O3U1O2U3'

    def test_empty_is_crossingless(self):
        seq = GaussSequence()
        assert seq.crossing_count == 0
        assert str(seq) == ''

    def test_partner(self, trefoil):
        assert trefoil.partner == (3, 4, 5, 0, 1, 2)

    def test_is_under(self, trefoil):
        assert trefoil.is_under == (False, True, False, True, False, True)

    def test_rejects_non_canonical_labels(self):
        with pytest.raises(RoleMismatch):
            GaussSequence((StrandEvent(2, Role.OVER), StrandEvent(2, Role.UNDER)))

    def test_rejects_two_unders(self):
        with pytest.raises(RoleMismatch) as exc:
            GaussSequence((StrandEvent(1, Role.UNDER), StrandEvent(1, Role.UNDER)))
        assert exc.value.crossing == 1

    def test_rejects_unpaired_crossing(self):
        with pytest.raises(RoleMismatch):
            GaussSequence((StrandEvent(1, Role.OVER),))

    def test_from_events_relabels_by_first_appearance(self):
        seq = GaussSequence.from_events([
            StrandEvent(7, Role.OVER), StrandEvent(4, Role.UNDER),
            StrandEvent(7, Role.UNDER), StrandEvent(4, Role.OVER),
        ])
        assert str(seq) == 'O1U2U1O2'

    @given(gauss_sequences(max_crossings=8))
    def test_random_sequences_are_valid(self, seq):
        assert len(seq) == 2 * seq.crossing_count
        for i, event in enumerate(seq):
            assert seq[seq.partner[i]].crossing == event.crossing
            assert seq[seq.partner[i]].role is event.role.toggled()


class TestPDCode:
    def test_trefoil_pd(self, trefoil_pd):
        assert trefoil_pd.crossing_count == 3

    def test_label_seen_once(self):
        with pytest.raises(MalformedPD):
            PDCode(((1, 2, 3, 4), (1, 2, 3, 5)))

    def test_wrong_arity(self):
        with pytest.raises(MalformedPD):
            PDCode(((1, 2, 1),))

    def test_non_positive_label(self):
        with pytest.raises(MalformedPD):
            PDCode(((0, 1, 0, 1),))


class TestPdToGauss:
    def test_trefoil(self, trefoil_pd):
        seq = pd_to_gauss(trefoil_pd)
        assert str(seq) == 'U1O2U3O1U2O3'
        roles = [event.role for event in seq]
        assert all(a is not b for a, b in zip(roles, roles[1:]))

    def test_empty(self):
        assert pd_to_gauss(PDCode()) == GaussSequence()

    def test_figure_eight(self):
        seq = pd_to_gauss(parse_pd('X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)'))
        assert seq.crossing_count == 4

    def test_two_components(self):
        with pytest.raises(MultipleComponents) as exc:
            pd_to_gauss(parse_pd('X(1,1,2,2) X(3,3,4,4)'))
        assert exc.value.components == 2

    @given(gauss_sequences(max_crossings=8))
    def test_pd_built_from_a_traversal_reads_back(self, seq):
        assert pd_to_gauss(pd_from_gauss(seq)) == seq


class TestBraidWord:
    def test_valid(self):
        braid = BraidWord(4, ((1, 1), (2, -1), (1, 1), (2, -1)))
        assert braid.length == 4

    def test_index_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            BraidWord(2, ((2, 1),))

    def test_zero_strands(self):
        with pytest.raises(BadParameter):
            BraidWord(0)

    def test_bad_sign(self):
        with pytest.raises(BadParameter):
            BraidWord(2, ((1, 2),))

    def test_one_strand_empty_word(self):
        assert BraidWord(1).length == 0


class TestTransforms:
    def test_mirror_trefoil(self, trefoil):
        assert str(mirror(trefoil)) == 'U1O2U3O1U2O3'

    def test_mirror_kink(self, kink):
        assert str(mirror(kink)) == 'U1O1'

    def test_mirror_empty(self):
        assert mirror(GaussSequence()) == GaussSequence()

    def test_rotate_kink(self, kink):
        assert str(rotate(kink, 1)) == 'U1O1'

    def test_rotate_relabels(self, trefoil):
        assert str(rotate(trefoil, 1)) == 'U1O2U3O1U2O3'

    @given(gauss_sequences(max_crossings=8))
    def test_mirror_is_an_involution(self, seq):
        assert mirror(mirror(seq)) == seq

    @given(gauss_sequences(max_crossings=8), st.integers(min_value=-20, max_value=20))
    def test_rotate_keeps_invariants(self, seq, k):
        rotated = rotate(seq, k)
        assert len(rotated) == len(seq)
        assert GaussSequence(rotated.events) == rotated

    @given(gauss_sequences(max_crossings=8))
    def test_rotate_full_cycle_is_identity(self, seq):
        assert rotate(seq, 0) == seq
        assert rotate(seq, len(seq)) == seq
