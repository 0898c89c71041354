"""
三粒度近似计算模块。

``ApproximationSpace`` 把拓扑空间与其开集族绑定在一起，提供：

- 下 / 上近似（τ、ℙ、δℙ 三个粒度）与精确有理数精度
- 24 个区域的分解
- 强 / 弱隶属、粗糙包含、可定义性分类
- 类包含报告与点闭包划分

τ 层始终按开集族扫描计算；ℙ 与 δℙ 层在 ``use_closed_forms`` 开启时
走闭式快速路径，否则扫描对应的集合族。两条路径的一致性由 oracle 校验。

Example
-------
>>> space = ApproximationSpace.from_relation(universe, relation)
>>> s = universe.subset(["u1", "u3", "u4"])
>>> str(space.accuracy(s, Tier.P))
'3/4'
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Tuple, Union

from .errors import EmptySubjectError, InvalidElementError, PreconditionFailedError
from .families import (
    OpenFamilies,
    Tier,
    build_families,
    p_closure_delta,
    p_interior_delta,
    pre_closure,
    pre_interior,
)
from .sets import ElementSet, SetFamily, Universe, iter_subsets
from .topology import BinaryRelation, TopologySpace, build_space, closure, interior

__all__ = [
    "ApproximationSpace",
    "TierApproximation",
    "PositiveNegativeBoundary",
    "RegionReport",
    "REGION_KEYS",
    "REGION_LABELS",
    "Membership",
    "Definability",
    "DefinabilityClass",
    "RoughInclusion",
    "ClassInclusionReport",
]

logger = logging.getLogger("RoughApprox")


# =============================================================================
# 结果类型
# =============================================================================

@dataclass(frozen=True)
class TierApproximation:
    """
    单个粒度上的近似结果。

    Attributes
    ----------
    tier : Tier
        粒度
    subject : ElementSet
        被近似的集合 S
    lower, upper : ElementSet
        下近似与上近似，lower ⊆ S ⊆ upper
    accuracy : Fraction or None
        |lower| / |upper|；S 为空时为 None
    """

    tier: Tier
    subject: ElementSet
    lower: ElementSet
    upper: ElementSet
    accuracy: Optional[Fraction]

    @property
    def boundary(self) -> ElementSet:
        return self.upper - self.lower

    @property
    def is_exact(self) -> bool:
        return self.lower == self.upper


@dataclass(frozen=True)
class PositiveNegativeBoundary:
    """正域 POS = lower，负域 NEG = X − upper，边界域 BN = upper − lower。"""

    positive: ElementSet
    negative: ElementSet
    boundary: ElementSet


class Membership(str, Enum):
    STRONG = "strong"
    WEAK = "weak"


class Definability(str, Enum):
    """四类可定义性：粗糙可定义、内不可定义、外不可定义、完全不可定义。"""

    RD = "RD"
    IUD = "IUD"
    EUD = "EUD"
    TUD = "TUD"


@dataclass(frozen=True)
class DefinabilityClass:
    tier: Tier
    cls: Definability
    exact: bool


@dataclass(frozen=True)
class RoughInclusion:
    """下包含（bottom）与上包含（top），二者同时成立即完全包含。"""

    bottom: bool
    top: bool

    @property
    def full(self) -> bool:
        return self.bottom and self.top


# 区域定义：(键, 显示名, 被减项, 减项)。"S" 为主体，"X" 为论域，
# 其余为 (lower|upper, 粒度)。
_Operand = Union[str, Tuple[str, Tier]]

_REGION_DEFINITIONS: Tuple[Tuple[str, str, _Operand, _Operand], ...] = (
    ("lower_edge", "Edg̲", "S", ("lower", Tier.TAU)),
    ("p_lower_edge", "ℙEdg̲", "S", ("lower", Tier.P)),
    ("dp_lower_edge", "δℙEdg̲", "S", ("lower", Tier.DP)),
    ("upper_edge", "Edḡ", ("upper", Tier.TAU), "S"),
    ("p_upper_edge", "ℙEdḡ", ("upper", Tier.P), "S"),
    ("dp_upper_edge", "δℙEdḡ", ("upper", Tier.DP), "S"),
    ("boundary", "b", ("upper", Tier.TAU), ("lower", Tier.TAU)),
    ("p_boundary", "ℙb", ("upper", Tier.P), ("lower", Tier.P)),
    ("dp_boundary", "δℙb", ("upper", Tier.DP), ("lower", Tier.DP)),
    ("exterior", "ext", "X", ("upper", Tier.TAU)),
    ("p_exterior", "ℙext", "X", ("upper", Tier.P)),
    ("dp_exterior", "δℙext", "X", ("upper", Tier.DP)),
    ("upper_tau_minus_lower_p", "R̄ − R̲ℙ", ("upper", Tier.TAU), ("lower", Tier.P)),
    ("upper_tau_minus_lower_dp", "R̄ − R̲δℙ", ("upper", Tier.TAU), ("lower", Tier.DP)),
    ("upper_tau_minus_upper_dp", "R̄ − R̄δℙ", ("upper", Tier.TAU), ("upper", Tier.DP)),
    ("upper_p_minus_lower_tau", "R̄ℙ − R̲", ("upper", Tier.P), ("lower", Tier.TAU)),
    ("upper_p_minus_lower_dp", "R̄ℙ − R̲δℙ", ("upper", Tier.P), ("lower", Tier.DP)),
    ("upper_p_minus_upper_dp", "R̄ℙ − R̄δℙ", ("upper", Tier.P), ("upper", Tier.DP)),
    ("lower_p_minus_lower_tau", "R̲ℙ − R̲", ("lower", Tier.P), ("lower", Tier.TAU)),
    ("upper_dp_minus_lower_p", "R̄δℙ − R̲ℙ", ("upper", Tier.DP), ("lower", Tier.P)),
    ("upper_dp_minus_lower_tau", "R̄δℙ − R̲", ("upper", Tier.DP), ("lower", Tier.TAU)),
    ("lower_dp_minus_lower_p", "R̲δℙ − R̲ℙ", ("lower", Tier.DP), ("lower", Tier.P)),
    ("lower_dp_minus_lower_tau", "R̲δℙ − R̲", ("lower", Tier.DP), ("lower", Tier.TAU)),
    ("upper_tau_minus_upper_p", "R̄ − R̄ℙ", ("upper", Tier.TAU), ("upper", Tier.P)),
)

REGION_KEYS: Tuple[str, ...] = tuple(d[0] for d in _REGION_DEFINITIONS)
REGION_LABELS: Dict[str, str] = {d[0]: d[1] for d in _REGION_DEFINITIONS}


@dataclass(frozen=True)
class RegionReport:
    """
    24 个区域，按定义顺序排列。

    Attributes
    ----------
    subject : ElementSet
        主体集合 S
    areas : tuple of (str, ElementSet)
        (键, 区域) 对，顺序即区域编号 1–24
    """

    subject: ElementSet
    areas: Tuple[Tuple[str, ElementSet], ...]

    def __getitem__(self, key: str) -> ElementSet:
        for k, v in self.areas:
            if k == key:
                return v
        raise KeyError(key)

    def __iter__(self) -> Iterator[Tuple[str, ElementSet]]:
        return iter(self.areas)

    def __len__(self) -> int:
        return len(self.areas)

    def as_dict(self) -> Dict[str, ElementSet]:
        return dict(self.areas)


@dataclass
class ClassInclusionReport:
    """
    类包含报告。

    Attributes
    ----------
    counts : dict
        粒度键 -> {类别 -> 子集数}
    violations : list of (str, ElementSet)
        (违反的链名, 子集)；期望为空
    subsets_checked : int
        检查过的子集数量
    """

    counts: Dict[str, Dict[str, int]] = field(default_factory=dict)
    violations: List[Tuple[str, ElementSet]] = field(default_factory=list)
    subsets_checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations


# =============================================================================
# 近似空间
# =============================================================================

@dataclass(frozen=True)
class ApproximationSpace:
    """
    近似空间：拓扑空间 + 三组开 / 闭集族。

    Attributes
    ----------
    topology : TopologySpace
        关系诱导的拓扑
    families : OpenFamilies
        τ / ℙ / δℙ 开闭集族
    use_closed_forms : bool
        ℙ 与 δℙ 层是否走闭式快速路径
    """

    topology: TopologySpace
    families: OpenFamilies
    use_closed_forms: bool = True

    @classmethod
    def from_relation(
        cls,
        universe: Universe,
        relation: BinaryRelation,
        cap: Optional[int] = None,
        workers: Optional[int] = None,
        use_closed_forms: Optional[bool] = None,
        cache_size: Optional[int] = None,
    ) -> "ApproximationSpace":
        """
        由论域与关系构建近似空间。

        Parameters
        ----------
        universe : Universe
            论域
        relation : BinaryRelation
            论域上的任意二元关系
        cap : int, optional
            枚举上限，默认取 CONFIG.max_enum
        workers : int, optional
            构建集合族的线程数，默认取 CONFIG.workers
        use_closed_forms : bool, optional
            默认取 CONFIG.use_closed_forms

        Raises
        ------
        EnumerationCapError
            论域超过枚举上限
        """
        if use_closed_forms is None:
            from config import CONFIG

            use_closed_forms = CONFIG.use_closed_forms

        topology = build_space(universe, relation, cap=cap, cache_size=cache_size)
        families = build_families(topology, cap=cap, workers=workers)
        logger.info(
            "近似空间构建完成: n=%d, 关系对=%d, %s",
            universe.size, len(relation), families.counts(),
        )
        return cls(topology, families, use_closed_forms)

    # -------------------------------------------------------------------------
    # 基本属性
    # -------------------------------------------------------------------------

    @property
    def universe(self) -> Universe:
        return self.topology.universe

    @property
    def full(self) -> ElementSet:
        return self.universe.full

    def _check_point(self, x: int) -> None:
        if not 0 <= x < self.universe.size:
            raise InvalidElementError(f"下标 {x} 超出论域范围 [0, {self.universe.size})")

    # -------------------------------------------------------------------------
    # 下 / 上近似
    # -------------------------------------------------------------------------

    def lower(self, s: ElementSet, tier: Tier) -> ElementSet:
        """包含于 S 的全部 tier-开集之并。"""
        self.topology.check(s)
        if tier is Tier.TAU:
            return interior(self.topology, s)
        if self.use_closed_forms:
            if tier is Tier.P:
                return pre_interior(self.topology, s)
            return p_interior_delta(self.topology, s)

        def scan() -> int:
            acc = 0
            for v in self.families.open_family(tier).masks:
                if v & ~s.bits == 0:
                    acc |= v
            return acc

        return self.topology.element_set(
            self.topology.cache.memo(("lower", int(tier), s.bits), scan)
        )

    def upper(self, s: ElementSet, tier: Tier) -> ElementSet:
        """包含 S 的全部 tier-闭集之交。"""
        self.topology.check(s)
        if tier is Tier.TAU:
            return closure(self.topology, s)
        if self.use_closed_forms:
            if tier is Tier.P:
                return pre_closure(self.topology, s)
            return p_closure_delta(self.topology, s)

        def scan() -> int:
            acc = self.topology.full_mask
            for w in self.families.closed_family(tier).masks:
                if s.bits & ~w == 0:
                    acc &= w
            return acc

        return self.topology.element_set(
            self.topology.cache.memo(("upper", int(tier), s.bits), scan)
        )

    def accuracy(self, s: ElementSet, tier: Tier) -> Fraction:
        """
        精度 |lower| / |upper|。

        Raises
        ------
        EmptySubjectError
            S 为空集
        """
        if s.is_empty:
            raise EmptySubjectError("空集的精度无定义")
        return Fraction(len(self.lower(s, tier)), len(self.upper(s, tier)))

    def approximate(self, s: ElementSet, tier: Tier) -> TierApproximation:
        lower = self.lower(s, tier)
        upper = self.upper(s, tier)
        acc = None if s.is_empty else Fraction(len(lower), len(upper))
        return TierApproximation(tier, s, lower, upper, acc)

    def approximate_all(self, s: ElementSet) -> List[TierApproximation]:
        return [self.approximate(s, tier) for tier in Tier]

    def pos_neg_boundary(self, s: ElementSet, tier: Tier) -> PositiveNegativeBoundary:
        lower = self.lower(s, tier)
        upper = self.upper(s, tier)
        return PositiveNegativeBoundary(lower, ~upper, upper - lower)

    # -------------------------------------------------------------------------
    # 区域
    # -------------------------------------------------------------------------

    def regions(self, s: ElementSet) -> RegionReport:
        """由三组上下近似与 S 计算 24 个区域。"""
        values: Dict[_Operand, ElementSet] = {"S": s, "X": self.full}
        for tier in Tier:
            values[("lower", tier)] = self.lower(s, tier)
            values[("upper", tier)] = self.upper(s, tier)
        areas = tuple(
            (key, values[minuend] - values[subtrahend])
            for key, _, minuend, subtrahend in _REGION_DEFINITIONS
        )
        return RegionReport(s, areas)

    # -------------------------------------------------------------------------
    # 隶属、包含、分类
    # -------------------------------------------------------------------------

    def membership(self, x: int, s: ElementSet, tier: Tier, mode: Membership) -> bool:
        """强隶属：x ∈ lower(S)；弱隶属：x ∈ upper(S)。"""
        self._check_point(x)
        if Membership(mode) is Membership.STRONG:
            return x in self.lower(s, tier)
        return x in self.upper(s, tier)

    def rough_inclusion(self, s: ElementSet, n: ElementSet, tier: Tier) -> RoughInclusion:
        return RoughInclusion(
            bottom=self.lower(s, tier) <= self.lower(n, tier),
            top=self.upper(s, tier) <= self.upper(n, tier),
        )

    def classify(self, s: ElementSet, tier: Tier) -> DefinabilityClass:
        lower = self.lower(s, tier)
        upper = self.upper(s, tier)
        if lower.is_empty:
            cls = Definability.TUD if upper.is_full else Definability.IUD
        else:
            cls = Definability.EUD if upper.is_full else Definability.RD
        return DefinabilityClass(tier, cls, lower == upper)

    # -------------------------------------------------------------------------
    # 全子集报告
    # -------------------------------------------------------------------------

    def class_inclusion_report(self, cap: Optional[int] = None) -> ClassInclusionReport:
        """
        在全部子集上核对类包含链：RD 随粒度变细而增大，
        IUD / EUD / TUD 随粒度变细而缩小。

        Raises
        ------
        EnumerationCapError
            论域超过枚举上限
        """
        report = ClassInclusionReport(
            counts={t.key: {d.value: 0 for d in Definability} for t in Tier}
        )
        for s in iter_subsets(self.universe.size, cap):
            classes = [self.classify(s, tier).cls for tier in Tier]
            for tier, cls in zip(Tier, classes):
                report.counts[tier.key][cls.value] += 1

            tau, p, dp = classes
            if tau is Definability.RD and p is not Definability.RD:
                report.violations.append(("RD: τ ⊆ ℙ", s))
            if p is Definability.RD and dp is not Definability.RD:
                report.violations.append(("RD: ℙ ⊆ δℙ", s))
            for shrinking in (Definability.IUD, Definability.EUD, Definability.TUD):
                if dp is shrinking and p is not shrinking:
                    report.violations.append((f"{shrinking.value}: δℙ ⊆ ℙ", s))
                if p is shrinking and tau is not shrinking:
                    report.violations.append((f"{shrinking.value}: ℙ ⊆ τ", s))
            report.subsets_checked += 1

        if report.violations:
            logger.warning("类包含链出现 %d 处违反", len(report.violations))
        return report

    def point_closure_partition(self) -> SetFamily:
        """
        以各点的 δℙ-上近似为块划分论域。

        Raises
        ------
        PreconditionFailedError
            存在不是 δℙ-闭集的 δℙ-开集
        """
        fam = self.families
        if fam.deltap_open != fam.deltap_closed:
            for v in fam.deltap_open:
                if v not in fam.deltap_closed:
                    raise PreconditionFailedError(
                        f"δℙ-开集 {self.universe.format(v)} 不是 δℙ-闭集，无法划分"
                    )
        n = self.universe.size
        blocks = [self.upper(ElementSet(1 << x, n), Tier.DP) for x in range(n)]
        return SetFamily.from_masks((b.bits for b in blocks), n)
