"""
关系诱导拓扑模块。

由任意二元关系生成有限拓扑空间：

1. 每个元素的右邻域 xR = {y : (x, y) ∈ R} 构成子基（空邻域保留）
2. 子基的全部有限交（空交约定为 X）构成基
3. 基的全部并（空并为 ∅）构成开集族 τ

并提供 interior / closure / boundary / is_exact。interior 与 closure 通过
扫描开集族（闭集族）计算，结果按空间记忆化。

Example
-------
>>> u = make_universe(["u1", "u2", "u3", "u4"])
>>> r = BinaryRelation.from_labels(u, [("u1", "u1"), ("u1", "u2"), ("u1", "u3"),
...                                    ("u2", "u3"), ("u3", "u4")])
>>> space = build_space(u, r)
>>> len(space.opens)
6
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, List, Optional, Set, Tuple

from .cache import LRUCache
from .errors import InvalidElementError, InvariantViolationError, WidthMismatchError
from .sets import (
    ElementSet,
    SetFamily,
    Universe,
    canonicalize,
    check_enumeration_cap,
)

__all__ = [
    "BinaryRelation",
    "TopologySpace",
    "right_neighborhoods",
    "generate_topology",
    "build_space",
    "interior",
    "closure",
    "boundary",
    "is_exact",
    "minimal_neighbourhood",
]

logger = logging.getLogger("RoughApprox")

# 超过该规模的开集族不做逐对公理自检（O(|τ|²)）
_AXIOM_CHECK_LIMIT = 1024


# =============================================================================
# 二元关系
# =============================================================================

@dataclass(frozen=True)
class BinaryRelation:
    """
    论域上的二元关系，不假设自反、对称或传递。

    Attributes
    ----------
    width : int
        论域大小
    pairs : frozenset of (int, int)
        有序下标对 (x, y)，表示 x R y
    """

    width: int
    pairs: FrozenSet[Tuple[int, int]]

    def __post_init__(self) -> None:
        for x, y in self.pairs:
            if not (0 <= x < self.width and 0 <= y < self.width):
                raise InvalidElementError(
                    f"关系对 ({x}, {y}) 超出论域范围 [0, {self.width})"
                )

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[int, int]], width: int) -> "BinaryRelation":
        """由下标对构造关系。"""
        return cls(width, frozenset((int(x), int(y)) for x, y in pairs))

    @classmethod
    def from_labels(
        cls,
        universe: Universe,
        pairs: Iterable[Tuple[str, str]],
    ) -> "BinaryRelation":
        """
        由标签对构造关系。

        重复的标签对会被去重并记录警告。

        Raises
        ------
        UnknownLabelError
            标签不在论域中
        """
        seen: Set[Tuple[int, int]] = set()
        for a, b in pairs:
            pair = (universe.index(a), universe.index(b))
            if pair in seen:
                logger.warning("重复的关系对 (%s, %s)，已去重", a, b)
                continue
            seen.add(pair)
        return cls(universe.size, frozenset(seen))

    @classmethod
    def empty(cls, width: int) -> "BinaryRelation":
        return cls(width, frozenset())

    @classmethod
    def identity(cls, width: int) -> "BinaryRelation":
        return cls(width, frozenset((i, i) for i in range(width)))

    def sorted_pairs(self) -> List[Tuple[int, int]]:
        """按 (x, y) 字典序排列的关系对。"""
        return sorted(self.pairs)

    def successors(self, x: int) -> int:
        """x 的右邻域掩码。"""
        bits = 0
        for a, b in self.pairs:
            if a == x:
                bits |= 1 << b
        return bits

    def __len__(self) -> int:
        return len(self.pairs)


# =============================================================================
# 拓扑空间
# =============================================================================

@dataclass(frozen=True)
class TopologySpace:
    """
    由关系生成的有限拓扑空间。

    Attributes
    ----------
    universe : Universe
        论域
    relation : BinaryRelation
        生成关系
    subbase : SetFamily
        右邻域构成的子基
    base : SetFamily
        子基有限交构成的基（含 X）
    opens : SetFamily
        开集族 τ
    closeds : SetFamily
        闭集族 τᶜ
    neighbourhoods : tuple of int
        每个点的最小开邻域掩码
    cache : LRUCache
        interior / closure 等结果的记忆化缓存
    """

    universe: Universe
    relation: BinaryRelation
    subbase: SetFamily
    base: SetFamily
    opens: SetFamily
    closeds: SetFamily
    neighbourhoods: Tuple[int, ...]
    cache: LRUCache = field(compare=False, repr=False, default_factory=LRUCache)

    @property
    def width(self) -> int:
        return self.universe.size

    @property
    def full_mask(self) -> int:
        return (1 << self.universe.size) - 1

    def element_set(self, bits: int) -> ElementSet:
        return ElementSet(bits, self.universe.size)

    def check(self, s: ElementSet) -> None:
        """确认子集属于本空间的论域。"""
        if s.width != self.universe.size:
            raise WidthMismatchError(
                f"子集宽度 {s.width} 与论域大小 {self.universe.size} 不一致"
            )


def right_neighborhoods(universe: Universe, relation: BinaryRelation) -> List[ElementSet]:
    """
    计算每个元素的右邻域 xR。

    Parameters
    ----------
    universe : Universe
        论域
    relation : BinaryRelation
        论域上的关系

    Returns
    -------
    list of ElementSet
        第 x 项为 {y : (x, y) ∈ R}，允许为空集
    """
    if relation.width != universe.size:
        raise WidthMismatchError(
            f"关系宽度 {relation.width} 与论域大小 {universe.size} 不一致"
        )
    rows = [0] * universe.size
    for x, y in relation.pairs:
        rows[x] |= 1 << y
    return [ElementSet(bits, universe.size) for bits in rows]


def _closed_under_pairs(masks: Tuple[int, ...]) -> bool:
    lookup = frozenset(masks)
    for i, a in enumerate(masks):
        for b in masks[i:]:
            if (a | b) not in lookup or (a & b) not in lookup:
                return False
    return True


def generate_topology(
    universe: Universe,
    subbase: SetFamily,
    relation: Optional[BinaryRelation] = None,
    cap: Optional[int] = None,
    cache_size: Optional[int] = None,
) -> TopologySpace:
    """
    由子基生成拓扑。

    Parameters
    ----------
    universe : Universe
        论域
    subbase : SetFamily
        子基
    relation : BinaryRelation, optional
        生成该子基的关系，仅作记录；缺省为空关系
    cap : int, optional
        枚举上限，默认取 CONFIG.max_enum
    cache_size : int, optional
        记忆化缓存容量，默认取 CONFIG.cache_size

    Returns
    -------
    TopologySpace
        满足 A1–A3 的拓扑空间

    Raises
    ------
    EnumerationCapError
        论域超过枚举上限
    """
    if cache_size is None:
        from config import CONFIG

        cache_size = CONFIG.cache_size

    n = universe.size
    check_enumeration_cap(n, cap)
    if subbase.width != n:
        raise WidthMismatchError(f"子基宽度 {subbase.width} 与论域大小 {n} 不一致")
    full = (1 << n) - 1

    # 有限交：空交为 X
    inter: Set[int] = {full}
    for s in subbase.masks:
        inter |= {i & s for i in inter}
    base = SetFamily.from_masks(inter, n)

    # 任意并：空并为 ∅
    unions: Set[int] = {0}
    for b in base.masks:
        unions |= {o | b for o in unions}
    opens = SetFamily.from_masks(unions, n)
    closeds = opens.complements()

    if __debug__ and len(opens) <= _AXIOM_CHECK_LIMIT:
        if 0 not in opens or full not in opens or not _closed_under_pairs(opens.masks):
            raise InvariantViolationError("生成的开集族不满足拓扑公理 A1–A3")

    # 最小开邻域 U_x：包含 x 的全部子基成员之交
    neighbourhoods = []
    for x in range(n):
        bits = full
        for s in subbase.masks:
            if (s >> x) & 1:
                bits &= s
        neighbourhoods.append(bits)

    logger.debug(
        "拓扑生成完成: n=%d, |子基|=%d, |基|=%d, |τ|=%d",
        n, len(subbase), len(base), len(opens),
    )

    return TopologySpace(
        universe=universe,
        relation=relation if relation is not None else BinaryRelation.empty(n),
        subbase=subbase,
        base=base,
        opens=opens,
        closeds=closeds,
        neighbourhoods=tuple(neighbourhoods),
        cache=LRUCache(maxsize=cache_size),
    )


def build_space(
    universe: Universe,
    relation: BinaryRelation,
    cap: Optional[int] = None,
    cache_size: Optional[int] = None,
) -> TopologySpace:
    """右邻域作子基，生成关系诱导的拓扑空间。"""
    subbase = canonicalize(right_neighborhoods(universe, relation), universe.size)
    return generate_topology(universe, subbase, relation, cap=cap, cache_size=cache_size)


# =============================================================================
# 内部 / 闭包 / 边界
# =============================================================================

def interior(space: TopologySpace, s: ElementSet) -> ElementSet:
    """包含于 S 的全部开集之并。"""
    space.check(s)

    def scan() -> int:
        acc = 0
        for o in space.opens.masks:
            if o & ~s.bits == 0:
                acc |= o
        return acc

    return space.element_set(space.cache.memo(("int", s.bits), scan))


def closure(space: TopologySpace, s: ElementSet) -> ElementSet:
    """包含 S 的全部闭集之交。"""
    space.check(s)

    def scan() -> int:
        acc = space.full_mask
        for c in space.closeds.masks:
            if s.bits & ~c == 0:
                acc &= c
        return acc

    return space.element_set(space.cache.memo(("cl", s.bits), scan))


def boundary(space: TopologySpace, s: ElementSet) -> ElementSet:
    """b(S) = cl(S) − int(S)。"""
    return closure(space, s) - interior(space, s)


def is_exact(space: TopologySpace, s: ElementSet) -> bool:
    """边界为空即 τ-精确。"""
    return boundary(space, s).is_empty


def minimal_neighbourhood(space: TopologySpace, x: int) -> ElementSet:
    """点 x 的最小开邻域。"""
    if not 0 <= x < space.width:
        raise InvalidElementError(f"下标 {x} 超出论域范围 [0, {space.width})")
    return space.element_set(space.neighbourhoods[x])
