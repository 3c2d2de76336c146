"""Alphabets, edge sets, scopes, partitions, and the assignment calculus."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from holant import (
    Alphabet,
    Assignment,
    EdgeSet,
    EnumerationCapError,
    Partition,
    Scope,
    ScopeError,
    ValidationError,
    enumerate_assignments,
)
from holant.assignments import SPACE_CAP_ENV, check_space


def make_assignment(labels, values, k=2):
    return Assignment(Alphabet.of_size(k), tuple(labels), tuple(values))


class TestConstruction:
    def test_alphabet_rejects_duplicates(self):
        with pytest.raises(ValidationError):
            Alphabet(("a", "a"))

    def test_alphabet_rejects_empty(self):
        with pytest.raises(ValidationError):
            Alphabet(())

    def test_edge_set_rejects_empty(self):
        with pytest.raises(ValidationError):
            EdgeSet(())

    def test_edge_set_rejects_non_strings(self):
        with pytest.raises(ValidationError):
            EdgeSet(("e1", 2))

    def test_scope_normalizes_to_parent_order(self):
        parent = EdgeSet(("e1", "e2", "e3"))
        scope = Scope(parent, ("e3", "e1"))
        assert scope.members == ("e1", "e3")
        assert scope.positions == (0, 2)

    def test_scope_rejects_foreign_labels(self):
        with pytest.raises(ScopeError):
            Scope(EdgeSet(("e1",)), ("e2",))

    def test_scope_rejects_empty(self):
        with pytest.raises(ValidationError):
            Scope(EdgeSet(("e1",)), ())

    def test_partition_rejects_overlap(self):
        parent = EdgeSet(("e1", "e2"))
        with pytest.raises(ScopeError):
            Partition((Scope(parent, ("e1",)), Scope(parent, ("e1", "e2"))))

    def test_partition_rejects_gaps(self):
        parent = EdgeSet(("e1", "e2", "e3"))
        with pytest.raises(ScopeError):
            Partition((Scope(parent, ("e1",)), Scope(parent, ("e2",))))

    def test_assignment_value_range(self):
        with pytest.raises(ValidationError):
            make_assignment(("e1",), (2,), k=2)

    def test_assignment_is_total(self):
        with pytest.raises(ValidationError):
            make_assignment(("e1", "e2"), (0,))


class TestRestrictUnion:
    def test_restrict_to_full_domain_is_identity(self):
        x = make_assignment(("e1", "e2"), (0, 1))
        full = Scope.full(EdgeSet(("e1", "e2")))
        assert x.restrict(full) == x

    def test_restrict_singleton(self):
        x = make_assignment(("e1", "e2"), (0, 1))
        u = Scope(EdgeSet(("e1", "e2")), ("e2",))
        assert x.restrict(u) == make_assignment(("e2",), (1,))

    def test_restrict_pair_from_triple(self):
        x = make_assignment(("e1", "e2", "e3"), (1, 0, 2), k=3)
        u = Scope(EdgeSet(("e1", "e2", "e3")), ("e1", "e3"))
        assert x.restrict(u) == make_assignment(("e1", "e3"), (1, 2), k=3)

    def test_restrict_outside_domain_fails(self):
        x = make_assignment(("e1",), (0,))
        u = Scope(EdgeSet(("e1", "e2")), ("e2",))
        with pytest.raises(ScopeError):
            x.restrict(u)

    def test_restrict_composes(self):
        parent = EdgeSet(("e1", "e2", "e3", "e4"))
        x = make_assignment(parent.edges, (0, 1, 1, 0))
        u = Scope(parent, ("e1", "e2", "e3"))
        v = Scope(parent, ("e1", "e3"))
        assert x.restrict(u).restrict(v) == x.restrict(v)

    def test_union_disjoint(self):
        x = make_assignment(("e1",), (0,))
        y = make_assignment(("e2",), (1,))
        assert x.union(y) == make_assignment(("e1", "e2"), (0, 1))

    def test_union_overlap_fails(self):
        x = make_assignment(("e1",), (0,))
        y = make_assignment(("e1",), (1,))
        with pytest.raises(ScopeError):
            x.union(y)

    def test_union_of_restrictions_reconstructs(self):
        parent = EdgeSet(("e1", "e2", "e3"))
        x = make_assignment(parent.edges, (1, 0, 1))
        u1 = Scope(parent, ("e2",))
        u2 = Scope(parent, ("e1", "e3"))
        assert x.restrict(u1).union(x.restrict(u2)) == x

    def test_decompose_round_trip(self):
        parent = EdgeSet(("e1", "e2", "e3"))
        x = make_assignment(parent.edges, (1, 1, 0))
        p = Partition((Scope(parent, ("e1",)), Scope(parent, ("e2", "e3"))))
        pieces = x.decompose(p)
        assert pieces == [
            make_assignment(("e1",), (1,)),
            make_assignment(("e2", "e3"), (1, 0)),
        ]
        rebuilt = pieces[0]
        for piece in pieces[1:]:
            rebuilt = rebuilt.union(piece)
        assert rebuilt == x

    def test_decompose_single_part_is_identity(self):
        parent = EdgeSet(("e1", "e2"))
        x = make_assignment(parent.edges, (0, 1))
        assert x.decompose(Partition((Scope.full(parent),))) == [x]

    def test_decompose_wrong_parent_fails(self):
        x = make_assignment(("e1",), (0,))
        p = Partition((Scope.full(EdgeSet(("e2",))),))
        with pytest.raises(ScopeError):
            x.decompose(p)

    def test_round_trip_exhaustive_small_spaces(self):
        # Every partition of every assignment reassembles, checked exhaustively.
        parent = EdgeSet(("e1", "e2", "e3"))
        alphabet = Alphabet.of_size(2)
        partitions = [
            Partition((Scope.full(parent),)),
            Partition((Scope(parent, ("e1",)), Scope(parent, ("e2", "e3")))),
            Partition((Scope(parent, ("e2",)), Scope(parent, ("e1", "e3")))),
            Partition(tuple(Scope(parent, (e,)) for e in parent.edges)),
        ]
        for x in enumerate_assignments(alphabet, parent):
            for p in partitions:
                pieces = x.decompose(p)
                rebuilt = pieces[0]
                for piece in pieces[1:]:
                    rebuilt = rebuilt.union(piece)
                assert rebuilt == x


class TestEnumeration:
    def test_canonical_order_binary_two_edges(self):
        alphabet = Alphabet.of_size(2)
        edges = EdgeSet(("e1", "e2"))
        got = [a.values for a in enumerate_assignments(alphabet, edges)]
        assert got == [(0, 0), (0, 1), (1, 0), (1, 1)]

    def test_counts_and_uniqueness(self):
        alphabet = Alphabet.of_size(3)
        edges = EdgeSet(("e1", "e2"))
        all_assignments = list(enumerate_assignments(alphabet, edges))
        assert len(all_assignments) == 9
        assert len(set(all_assignments)) == 9

    def test_index_round_trip(self):
        alphabet = Alphabet.of_size(3)
        edges = EdgeSet(("e1", "e2", "e3"))
        for k, x in enumerate(enumerate_assignments(alphabet, edges)):
            assert x.to_index() == k
            assert Assignment.from_index(alphabet, edges, k) == x

    def test_index_examples(self):
        assert make_assignment(("e1", "e2"), (1, 0)).to_index() == 2
        abc = Alphabet(("a", "b", "c"))
        assert Assignment(abc, ("e1",), (2,)).to_index() == 2
        assert Assignment.from_index(abc, EdgeSet(("e1", "e2")), 0).values == (0, 0)

    def test_from_index_out_of_range(self):
        with pytest.raises(ValidationError):
            Assignment.from_index(Alphabet.of_size(2), EdgeSet(("e1",)), 2)

    def test_cap_triggers(self):
        alphabet = Alphabet.of_size(2)
        edges = EdgeSet(tuple(f"e{i}" for i in range(25)))
        with pytest.raises(EnumerationCapError):
            next(enumerate_assignments(alphabet, edges))

    def test_cap_env_override(self, monkeypatch):
        monkeypatch.setenv(SPACE_CAP_ENV, "8")
        with pytest.raises(EnumerationCapError):
            check_space(9)
        assert check_space(8) == 8

    def test_cap_env_must_be_integer(self, monkeypatch):
        monkeypatch.setenv(SPACE_CAP_ENV, "lots")
        with pytest.raises(ValidationError):
            check_space(1)


@st.composite
def space_and_assignment(draw):
    k = draw(st.integers(min_value=1, max_value=4))
    n = draw(st.integers(min_value=1, max_value=5))
    labels = tuple(f"e{i}" for i in range(n))
    values = tuple(draw(st.integers(min_value=0, max_value=k - 1)) for _ in range(n))
    return Alphabet.of_size(k), EdgeSet(labels), Assignment(Alphabet.of_size(k), labels, values)


@st.composite
def space_and_partition(draw):
    alphabet, edges, x = draw(space_and_assignment())
    cuts = draw(
        st.lists(st.integers(min_value=0, max_value=len(x.labels) - 1), unique=True, max_size=3)
    )
    groups = {}
    for i, label in enumerate(edges.edges):
        key = sum(1 for c in sorted(cuts) if c <= i)
        groups.setdefault(key, []).append(label)
    parts = tuple(Scope(edges, tuple(g)) for g in groups.values())
    return x, Partition(parts)


@settings(max_examples=80, deadline=None)
@given(space_and_partition())
def test_lemma_style_round_trip(case):
    x, partition = case
    pieces = x.decompose(partition)
    rebuilt = pieces[0]
    for piece in pieces[1:]:
        rebuilt = rebuilt.union(piece)
    assert rebuilt == x


@settings(max_examples=80, deadline=None)
@given(space_and_assignment())
def test_index_bijection(case):
    alphabet, edges, x = case
    assert Assignment.from_index(alphabet, edges, x.to_index()) == x
