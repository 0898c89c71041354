"""三粒度近似测试：四点空间的精度表与各个算例。"""

from __future__ import annotations

from fractions import Fraction

import pytest

from core.approximation import (
    REGION_KEYS,
    REGION_LABELS,
    Definability,
    Membership,
    RoughInclusion,
)
from core.errors import EmptySubjectError, InvalidElementError, PreconditionFailedError
from core.families import Tier
from core.sets import iter_subsets

TAU, P, DP = Tier.TAU, Tier.P, Tier.DP

# (集合, α_τ, α_ℙ, α_δℙ)
ACCURACY_TABLE = [
    (["u1"], "0", "0", "1"),
    (["u2"], "0", "0", "1"),
    (["u3"], "1/3", "1/3", "1"),
    (["u4"], "1", "1", "1"),
    (["u1", "u2"], "0", "0", "1"),
    (["u1", "u3"], "1/3", "2/3", "1"),
    (["u1", "u4"], "1/3", "1/2", "1"),
    (["u2", "u3"], "1/3", "2/3", "1"),
    (["u2", "u4"], "1/3", "1/2", "1"),
    (["u3", "u4"], "1/2", "1/2", "1"),
    (["u1", "u2", "u3"], "1", "1", "1"),
    (["u1", "u2", "u4"], "1/3", "1/3", "1"),
    (["u1", "u3", "u4"], "1/2", "3/4", "1"),
    (["u2", "u3", "u4"], "1/2", "3/4", "1"),
]


@pytest.mark.parametrize("labels, tau, p, dp", ACCURACY_TABLE)
def test_accuracy_table(four_points, labels, tau, p, dp):
    s = four_points.universe.subset(labels)
    assert four_points.accuracy(s, TAU) == Fraction(tau)
    assert four_points.accuracy(s, P) == Fraction(p)
    assert four_points.accuracy(s, DP) == Fraction(dp)


@pytest.mark.parametrize("labels, tau, p, dp", ACCURACY_TABLE)
def test_scan_path_matches_closed_forms(four_points, four_points_scan, labels, tau, p, dp):
    s = four_points.universe.subset(labels)
    for tier in Tier:
        assert four_points_scan.lower(s, tier) == four_points.lower(s, tier)
        assert four_points_scan.upper(s, tier) == four_points.upper(s, tier)


class TestApproximations:
    def test_whole_universe(self, four_points):
        full = four_points.full
        for a in four_points.approximate_all(full):
            assert a.lower == a.upper == full
            assert a.accuracy == 1
            assert a.is_exact

    def test_empty_subject(self, four_points):
        empty = four_points.universe.empty
        a = four_points.approximate(empty, P)
        assert a.lower.is_empty and a.upper.is_empty
        assert a.accuracy is None
        with pytest.raises(EmptySubjectError):
            four_points.accuracy(empty, TAU)

    def test_p_tier_values(self, four_points):
        u = four_points.universe
        a = four_points.approximate(u.subset(["u2", "u4"]), P)
        assert a.lower == u.subset(["u4"])
        assert a.upper == u.subset(["u2", "u4"])
        assert a.boundary == u.subset(["u2"])

    def test_pos_neg_boundary(self, four_points):
        u = four_points.universe
        regions = four_points.pos_neg_boundary(u.subset(["u1", "u4"]), TAU)
        assert regions.positive == u.subset(["u4"])
        assert regions.boundary == u.subset(["u1", "u2"])
        assert regions.negative == u.subset(["u3"])

    def test_accuracy_never_drops_with_finer_tier(self, four_points):
        for s in iter_subsets(4):
            if s.is_empty:
                continue
            acc = [four_points.accuracy(s, t) for t in Tier]
            assert acc[0] <= acc[1] <= acc[2]


class TestMembership:
    def test_p_strong_but_not_tau_strong(self, four_points):
        u = four_points.universe
        n = u.subset(["u1", "u3"])
        x = u.index("u1")
        assert four_points.membership(x, n, P, Membership.STRONG)
        assert not four_points.membership(x, n, TAU, Membership.STRONG)

    def test_tau_weak_but_not_p_weak(self, four_points):
        u = four_points.universe
        n = u.subset(["u1", "u4"])
        x = u.index("u2")
        assert four_points.membership(x, n, TAU, Membership.WEAK)
        assert not four_points.membership(x, n, P, Membership.WEAK)

    def test_p_weak_but_not_dp_weak(self, four_points):
        u = four_points.universe
        n = u.subset(["u3"])
        x = u.index("u1")
        assert four_points.membership(x, n, P, "weak")
        assert not four_points.membership(x, n, DP, "weak")

    def test_dp_strong_but_not_p_strong(self, four_points):
        u = four_points.universe
        n = u.subset(["u2", "u4"])
        x = u.index("u2")
        assert four_points.membership(x, n, DP, Membership.STRONG)
        assert not four_points.membership(x, n, P, Membership.STRONG)

    def test_point_out_of_range(self, four_points):
        with pytest.raises(InvalidElementError):
            four_points.membership(7, four_points.full, TAU, Membership.STRONG)


class TestInclusionAndClasses:
    def test_dp_rough_inclusion(self, four_points):
        u = four_points.universe
        inc = four_points.rough_inclusion(u.subset(["u2", "u4"]), u.subset(["u1", "u2", "u4"]), DP)
        assert inc == RoughInclusion(bottom=True, top=True)
        assert inc.full

    def test_inclusion_can_fail_at_bottom_only(self, four_points):
        u = four_points.universe
        inc = four_points.rough_inclusion(u.subset(["u3"]), u.subset(["u1", "u3"]), TAU)
        assert inc.bottom and inc.top
        inc = four_points.rough_inclusion(u.subset(["u1", "u2", "u3"]), u.subset(["u1", "u3"]), TAU)
        assert not inc.bottom
        assert inc.top
        assert not inc.full

    @pytest.mark.parametrize("labels", [["u2", "u3", "u4"], ["u1", "u2"]])
    def test_dp_exact_but_p_rough(self, four_points, labels):
        s = four_points.universe.subset(labels)
        assert four_points.classify(s, DP).exact
        assert not four_points.classify(s, P).exact

    @pytest.mark.parametrize(
        "labels, p_class, dp_class",
        [
            (["u1", "u2"], Definability.IUD, Definability.RD),
            (["u2"], Definability.IUD, Definability.RD),
            (["u1", "u3", "u4"], Definability.EUD, Definability.RD),
        ],
    )
    def test_definability_classes(self, four_points, labels, p_class, dp_class):
        s = four_points.universe.subset(labels)
        assert four_points.classify(s, P).cls is p_class
        assert four_points.classify(s, DP).cls is dp_class

    def test_totally_undefinable(self):
        from core.approximation import ApproximationSpace
        from core.sets import make_universe
        from core.topology import BinaryRelation

        u = make_universe(["a", "b"])
        space = ApproximationSpace.from_relation(u, BinaryRelation.empty(2))
        assert space.classify(u.subset(["a"]), TAU).cls is Definability.TUD

    def test_class_inclusion_report(self, four_points):
        report = four_points.class_inclusion_report()
        assert report.ok
        assert report.subsets_checked == 16
        assert report.counts["dp"]["RD"] == 14
        assert sum(report.counts["tau"].values()) == 16


class TestRegions:
    def test_region_keys(self):
        assert len(REGION_KEYS) == 24
        assert len(set(REGION_KEYS)) == 24
        assert set(REGION_LABELS) == set(REGION_KEYS)

    def test_regions_of_u3_u4(self, four_points):
        u = four_points.universe
        report = four_points.regions(u.subset(["u3", "u4"]))
        assert len(report) == 24
        assert report["boundary"] == u.subset(["u1", "u2"])
        assert report["dp_boundary"].is_empty
        assert report["p_boundary"] == u.subset(["u1", "u2"])

    def test_regions_of_u2_u4(self, four_points):
        u = four_points.universe
        report = four_points.regions(u.subset(["u2", "u4"]))
        assert report["p_boundary"] == u.subset(["u2"])
        assert report["dp_lower_edge"].is_empty
        assert report["dp_upper_edge"].is_empty
        assert report["boundary"] == u.subset(["u1", "u2"])
        assert report["exterior"] == u.subset(["u3"])

    def test_whole_universe_has_only_empty_regions(self, four_points):
        report = four_points.regions(four_points.full)
        assert all(area.is_empty for _, area in report)
        assert list(report.as_dict()) == list(REGION_KEYS)

    def test_unknown_region_key(self, four_points):
        with pytest.raises(KeyError):
            four_points.regions(four_points.full)["nowhere"]


class TestPartition:
    def test_four_points_splits_into_points(self, four_points):
        blocks = four_points.point_closure_partition()
        assert len(blocks) == 4
        assert all(len(b) == 1 for b in blocks)

    def test_precondition(self, non_clopen):
        with pytest.raises(PreconditionFailedError):
            non_clopen.point_closure_partition()
