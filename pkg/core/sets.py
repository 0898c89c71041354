"""
有限集合代数模块。

用整数位掩码表示论域的子集：第 i 位为 1 表示下标为 i 的元素属于该集合。

- Universe: 有序、互不相同的元素标签
- ElementSet: 不可变子集（位掩码 + 论域宽度）
- SetFamily: 去重并按掩码数值升序排列的集合族

所有值在构造后不可变，可以在线程间自由共享。

Example
-------
>>> u = make_universe(["u1", "u2", "u3", "u4"])
>>> a = u.subset(["u1", "u2"])
>>> b = u.subset(["u2", "u3"])
>>> u.format(a | b)
'{u1,u2,u3}'
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import (
    DuplicateLabelError,
    EmptyUniverseError,
    EnumerationCapError,
    InvalidElementError,
    UniverseTooLargeError,
    UnknownLabelError,
    WidthMismatchError,
)

__all__ = [
    "ABSOLUTE_MAX_WIDTH",
    "Universe",
    "ElementSet",
    "SetFamily",
    "make_universe",
    "canonicalize",
    "check_enumeration_cap",
    "iter_subsets",
    "subsets_by_size",
]

logger = logging.getLogger("RoughApprox")

# 单个机器字
ABSOLUTE_MAX_WIDTH: int = 64


# =============================================================================
# 子集
# =============================================================================

@dataclass(frozen=True)
class ElementSet:
    """
    论域上的不可变子集。

    Attributes
    ----------
    bits : int
        成员掩码，第 i 位对应下标 i
    width : int
        论域大小；不会有下标 >= width 的位被置 1

    Raises
    ------
    InvalidElementError
        掩码为负或超出论域宽度时抛出
    """

    bits: int
    width: int

    def __post_init__(self) -> None:
        if self.width < 1 or self.width > ABSOLUTE_MAX_WIDTH:
            raise InvalidElementError(f"width 必须在 1-{ABSOLUTE_MAX_WIDTH} 之间，当前值: {self.width}")
        if self.bits < 0 or self.bits >> self.width:
            raise InvalidElementError(
                f"掩码 {self.bits:#x} 超出宽度为 {self.width} 的论域"
            )

    # -------------------------------------------------------------------------
    # 构造
    # -------------------------------------------------------------------------

    @classmethod
    def empty(cls, width: int) -> "ElementSet":
        """空集。"""
        return cls(0, width)

    @classmethod
    def full(cls, width: int) -> "ElementSet":
        """整个论域。"""
        return cls((1 << width) - 1, width)

    @classmethod
    def from_indices(cls, indices: Iterable[int], width: int) -> "ElementSet":
        """由下标集合构造子集。"""
        bits = 0
        for i in indices:
            if not 0 <= i < width:
                raise InvalidElementError(f"下标 {i} 超出论域范围 [0, {width})")
            bits |= 1 << i
        return cls(bits, width)

    # -------------------------------------------------------------------------
    # 集合运算
    # -------------------------------------------------------------------------

    def _check(self, other: "ElementSet") -> None:
        if not isinstance(other, ElementSet):
            raise TypeError(f"不支持与 {type(other).__name__} 运算")
        if other.width != self.width:
            raise WidthMismatchError(
                f"论域宽度不一致: {self.width} != {other.width}"
            )

    def union(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.bits | other.bits, self.width)

    def intersection(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.bits & other.bits, self.width)

    def difference(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.bits & ~other.bits, self.width)

    def complement(self) -> "ElementSet":
        return ElementSet(((1 << self.width) - 1) ^ self.bits, self.width)

    def issubset(self, other: "ElementSet") -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def issuperset(self, other: "ElementSet") -> bool:
        self._check(other)
        return other.bits & ~self.bits == 0

    def isdisjoint(self, other: "ElementSet") -> bool:
        self._check(other)
        return self.bits & other.bits == 0

    __or__ = union
    __and__ = intersection
    __sub__ = difference
    __invert__ = complement
    __le__ = issubset
    __ge__ = issuperset

    def __lt__(self, other: "ElementSet") -> bool:
        return self.issubset(other) and self.bits != other.bits

    def __gt__(self, other: "ElementSet") -> bool:
        return self.issuperset(other) and self.bits != other.bits

    # -------------------------------------------------------------------------
    # 查询
    # -------------------------------------------------------------------------

    @property
    def cardinality(self) -> int:
        return bin(self.bits).count("1")

    def __len__(self) -> int:
        return self.cardinality

    def __bool__(self) -> bool:
        return self.bits != 0

    def __contains__(self, index: object) -> bool:
        if not isinstance(index, int) or not 0 <= index < self.width:
            return False
        return (self.bits >> index) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        """按下标升序迭代成员。"""
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    @property
    def is_empty(self) -> bool:
        return self.bits == 0

    @property
    def is_full(self) -> bool:
        return self.bits == (1 << self.width) - 1

    def __repr__(self) -> str:
        return f"ElementSet({sorted(self)}, width={self.width})"


# =============================================================================
# 集合族
# =============================================================================

@dataclass(frozen=True)
class SetFamily:
    """
    规范化的集合族。

    成员以掩码元组存储，去重并按掩码数值升序排列，因此结构相等即族相等。
    请通过 ``canonicalize`` 或 ``SetFamily.from_masks`` 构造。

    Attributes
    ----------
    masks : tuple of int
        升序、无重复的成员掩码
    width : int
        论域大小
    """

    masks: Tuple[int, ...]
    width: int
    _lookup: FrozenSet[int] = field(
        default=frozenset(), init=False, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        unique = frozenset(self.masks)
        object.__setattr__(self, "masks", tuple(sorted(unique)))
        object.__setattr__(self, "_lookup", unique)

    @classmethod
    def from_masks(cls, masks: Iterable[int], width: int) -> "SetFamily":
        """由任意掩码序列构造规范族。"""
        limit = 1 << width
        collected: List[int] = []
        for m in masks:
            if m < 0 or m >= limit:
                raise InvalidElementError(f"掩码 {m:#x} 超出宽度为 {width} 的论域")
            collected.append(m)
        return cls(tuple(collected), width)

    @property
    def members(self) -> Tuple[ElementSet, ...]:
        return tuple(ElementSet(m, self.width) for m in self.masks)

    def __iter__(self) -> Iterator[ElementSet]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.masks)

    def __contains__(self, item: object) -> bool:
        if isinstance(item, ElementSet):
            return item.width == self.width and item.bits in self._lookup
        if isinstance(item, int):
            return item in self._lookup
        return False

    def complements(self) -> "SetFamily":
        """逐成员取补集。"""
        full = (1 << self.width) - 1
        return SetFamily.from_masks((full ^ m for m in self.masks), self.width)

    def issubfamily(self, other: "SetFamily") -> bool:
        if other.width != self.width:
            raise WidthMismatchError(
                f"论域宽度不一致: {self.width} != {other.width}"
            )
        return self._lookup <= other._lookup


# =============================================================================
# 论域
# =============================================================================

@dataclass(frozen=True)
class Universe:
    """
    有限论域。

    Attributes
    ----------
    labels : tuple of str
        按下标顺序排列的元素标签
    """

    labels: Tuple[str, ...]

    @property
    def size(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownLabelError(label) from None

    def subset(self, labels: Iterable[str]) -> ElementSet:
        """由标签构造子集。"""
        return ElementSet.from_indices((self.index(lb) for lb in labels), self.size)

    def element(self, label: str) -> ElementSet:
        """单点集。"""
        return ElementSet(1 << self.index(label), self.size)

    @property
    def empty(self) -> ElementSet:
        return ElementSet.empty(self.size)

    @property
    def full(self) -> ElementSet:
        return ElementSet.full(self.size)

    def names(self, s: ElementSet) -> List[str]:
        """子集成员的标签列表（按下标顺序）。"""
        if s.width != self.size:
            raise WidthMismatchError(f"论域宽度不一致: {self.size} != {s.width}")
        return [self.labels[i] for i in s]

    def format(self, s: ElementSet) -> str:
        """以花括号记法格式化子集，空集写作 ∅。"""
        if s.is_empty:
            return "∅"
        return "{" + ",".join(self.names(s)) + "}"


def make_universe(labels: Sequence[str], max_width: Optional[int] = None) -> Universe:
    """
    创建论域，按列出顺序分配下标。

    Parameters
    ----------
    labels : sequence of str
        元素标签，非空且互不相同
    max_width : int, optional
        绝对宽度上限，默认且最大为 64

    Returns
    -------
    Universe
        论域实例

    Raises
    ------
    EmptyUniverseError
        标签列表为空
    DuplicateLabelError
        存在重复标签
    UniverseTooLargeError
        超过宽度上限
    """
    cap = min(max_width or ABSOLUTE_MAX_WIDTH, ABSOLUTE_MAX_WIDTH)
    labels = tuple(str(lb) for lb in labels)
    if not labels:
        raise EmptyUniverseError("论域不能为空")
    seen = set()
    for lb in labels:
        if lb in seen:
            raise DuplicateLabelError(f"重复的标签: {lb!r}")
        seen.add(lb)
    if len(labels) > cap:
        raise UniverseTooLargeError(f"论域大小 {len(labels)} 超过上限 {cap}")
    return Universe(labels)


def canonicalize(members: Iterable[ElementSet], width: Optional[int] = None) -> SetFamily:
    """
    规范化集合族：去重并按掩码升序排列。

    Parameters
    ----------
    members : iterable of ElementSet
        原始成员，宽度必须一致
    width : int, optional
        成员为空时使用的论域宽度；给出时也参与一致性检查

    Returns
    -------
    SetFamily
        规范族

    Raises
    ------
    WidthMismatchError
        成员宽度不一致
    """
    masks: List[int] = []
    w = width
    for m in members:
        if w is None:
            w = m.width
        elif m.width != w:
            raise WidthMismatchError(f"族成员宽度不一致: {w} != {m.width}")
        masks.append(m.bits)
    if w is None:
        # 空输入且未给出宽度：记为宽度 1 的空族
        w = 1
    return SetFamily.from_masks(masks, w)


# =============================================================================
# 幂集枚举
# =============================================================================

def check_enumeration_cap(size: int, cap: Optional[int] = None) -> None:
    """
    检查幂集枚举上限。

    Raises
    ------
    EnumerationCapError
        size 超过 cap（默认取 CONFIG.max_enum）
    """
    if cap is None:
        from config import CONFIG

        cap = CONFIG.max_enum
    if size > cap:
        raise EnumerationCapError(size, cap)


def iter_subsets(width: int, cap: Optional[int] = None) -> Iterator[ElementSet]:
    """按掩码升序枚举全部 2^width 个子集。"""
    check_enumeration_cap(width, cap)
    for bits in range(1 << width):
        yield ElementSet(bits, width)


def subsets_by_size(
    width: int,
    min_size: int = 0,
    max_size: Optional[int] = None,
    cap: Optional[int] = None,
) -> Iterator[ElementSet]:
    """先按基数、再按下标字典序枚举子集（与表格行的排列一致）。"""
    check_enumeration_cap(width, cap)
    top = width if max_size is None else min(max_size, width)
    for k in range(min_size, top + 1):
        for combo in combinations(range(width), k):
            yield ElementSet.from_indices(combo, width)
