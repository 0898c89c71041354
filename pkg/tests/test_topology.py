"""关系诱导拓扑测试。"""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from core.errors import EnumerationCapError, UnknownLabelError
from core.oracle import axiom_check, pawlak_neighborhood_ops
from core.sets import SetFamily, iter_subsets, make_universe
from core.topology import (
    BinaryRelation,
    boundary,
    build_space,
    closure,
    generate_topology,
    interior,
    is_exact,
    minimal_neighbourhood,
    right_neighborhoods,
)


def family(universe, *members):
    return SetFamily.from_masks((universe.subset(m).bits for m in members), universe.size)


@st.composite
def relations(draw, max_n=5):
    n = draw(st.integers(min_value=1, max_value=max_n))
    cells = [(x, y) for x in range(n) for y in range(n)]
    pairs = draw(st.lists(st.sampled_from(cells), unique=True, max_size=len(cells)))
    return n, pairs


def space_of(n, pairs):
    universe = make_universe([f"u{i + 1}" for i in range(n)])
    return build_space(universe, BinaryRelation.from_pairs(pairs, n))


class TestFourPoints:
    def test_right_neighborhoods(self, four_points_doc):
        u = four_points_doc.universe
        rows = right_neighborhoods(u, four_points_doc.relation)
        assert [u.format(r) for r in rows] == ["{u1,u2,u3}", "{u3}", "{u4}", "∅"]

    def test_topology(self, four_points):
        u = four_points.universe
        expected = family(u, [], ["u1", "u2", "u3", "u4"], ["u3"], ["u4"], ["u3", "u4"], ["u1", "u2", "u3"])
        assert four_points.topology.opens == expected
        assert len(four_points.topology.opens) == 6

    def test_closed_sets_are_complements(self, four_points):
        top = four_points.topology
        assert top.closeds == top.opens.complements()

    def test_neighbourhoods(self, four_points):
        u = four_points.universe
        got = [u.format(minimal_neighbourhood(four_points.topology, x)) for x in range(4)]
        assert got == ["{u1,u2,u3}", "{u1,u2,u3}", "{u3}", "{u4}"]

    def test_interior_closure_boundary(self, four_points):
        u = four_points.universe
        top = four_points.topology
        s = u.subset(["u3", "u4"])
        assert interior(top, s) == s
        assert closure(top, s) == u.full
        assert boundary(top, s) == u.subset(["u1", "u2"])
        assert not is_exact(top, s)
        assert is_exact(top, u.subset(["u1", "u2", "u3"]))

    def test_pawlak_neighborhood_operators(self, four_points_doc):
        u = four_points_doc.universe
        lower, upper = pawlak_neighborhood_ops(u, four_points_doc.relation, u.subset(["u3"]))
        assert lower == u.subset(["u2", "u4"])
        assert upper == u.subset(["u1", "u2"])


class TestEdgeCases:
    def test_empty_relation_is_indiscrete(self):
        top = space_of(3, [])
        assert top.opens.masks == (0, 0b111)

    def test_identity_relation_is_discrete(self):
        top = space_of(3, [(0, 0), (1, 1), (2, 2)])
        assert len(top.opens) == 8

    def test_single_point(self):
        top = space_of(1, [])
        assert top.opens.masks == (0, 1)

    def test_empty_subbase_members_are_kept(self, four_points):
        assert 0 in four_points.topology.subbase

    def test_generate_from_explicit_subbase(self):
        u = make_universe(["a", "b", "c"])
        top = generate_topology(u, family(u, ["a", "b"], ["b", "c"]))
        assert top.opens == family(u, [], ["b"], ["a", "b"], ["b", "c"], ["a", "b", "c"])

    def test_cap(self):
        u = make_universe([f"e{i}" for i in range(25)])
        with pytest.raises(EnumerationCapError):
            build_space(u, BinaryRelation.empty(25))

    def test_unknown_label_in_relation(self):
        u = make_universe(["u1", "u2"])
        with pytest.raises(UnknownLabelError):
            BinaryRelation.from_labels(u, [("u1", "u9")])

    def test_duplicate_pairs_are_merged(self):
        u = make_universe(["u1", "u2"])
        rel = BinaryRelation.from_labels(u, [("u1", "u2"), ("u1", "u2")])
        assert len(rel) == 1


@given(relations())
def test_generated_family_is_a_topology(case):
    n, pairs = case
    top = space_of(n, pairs)
    assert axiom_check(top.opens)
    # 每个子基成员都是开集
    assert top.subbase.issubfamily(top.opens)


@given(relations(max_n=4))
def test_interior_closure_duality(case):
    n, pairs = case
    top = space_of(n, pairs)
    for s in iter_subsets(n):
        assert interior(top, s) <= s <= closure(top, s)
        assert interior(top, s) == ~closure(top, ~s)
        assert interior(top, s) in top.opens
        assert closure(top, s) in top.closeds


@given(relations(max_n=4))
def test_interior_closure_are_monotone_and_idempotent(case):
    n, pairs = case
    top = space_of(n, pairs)
    subsets = list(iter_subsets(n))
    for a in subsets:
        assert interior(top, interior(top, a)) == interior(top, a)
        assert closure(top, closure(top, a)) == closure(top, a)
        for b in subsets:
            if a <= b:
                assert interior(top, a) <= interior(top, b)
                assert closure(top, a) <= closure(top, b)


@given(relations(max_n=4))
def test_closure_of_union_and_interior_of_intersection(case):
    n, pairs = case
    top = space_of(n, pairs)
    subsets = list(iter_subsets(n))
    for a in subsets:
        for b in subsets:
            assert closure(top, a | b) == closure(top, a) | closure(top, b)
            assert interior(top, a & b) == interior(top, a) & interior(top, b)


@given(relations(max_n=6), st.randoms(use_true_random=False))
def test_generation_ignores_pair_order(case, rnd):
    n, pairs = case
    shuffled = list(pairs)
    rnd.shuffle(shuffled)
    first = space_of(n, pairs)
    again = space_of(n, shuffled)
    assert again.subbase == first.subbase
    assert again.base == first.base
    assert again.opens == first.opens
    assert again.neighbourhoods == first.neighbourhoods
