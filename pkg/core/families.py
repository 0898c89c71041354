"""
广义开集族模块。

在拓扑空间之上计算三个粒度（tier）所用的开集族：

- τ: 拓扑本身
- ℙO: 预开集，S ⊆ int(cl(S))
- δℙO: δ-预开集，S ⊆ int(cl_δ(S))

以及 δ-闭包 / δ-内部，δℙ 闭包 / 内部的闭式
(ℙcl_δ(S) = S ∪ cl(int_δ(S)), ℙint_δ(S) = S ∩ int(cl_δ(S)))，
和 ℙ 层对应的闭式 (S ∩ int(cl(S)), S ∪ cl(int(S)))。

δ-闭包采用标准定义：x ∈ cl_δ(S) 当且仅当每个包含 x 的开集 A 都满足
S ∩ int(cl(A)) ≠ ∅。量词只需遍历基成员：int(cl(·)) 单调，且任何包含 x
的开集都包含某个包含 x 的基成员。
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import IntEnum
from typing import List, Optional, Tuple

from .errors import RoughSetError
from .sets import ElementSet, SetFamily, check_enumeration_cap
from .topology import TopologySpace, closure, interior

__all__ = [
    "Tier",
    "OpenFamilies",
    "is_preopen",
    "delta_closure",
    "delta_interior",
    "is_deltap_open",
    "is_delta_open",
    "build_families",
    "p_closure_delta",
    "p_interior_delta",
    "pre_interior",
    "pre_closure",
    "regular_open",
]

logger = logging.getLogger("RoughApprox")


# =============================================================================
# 粒度
# =============================================================================

class Tier(IntEnum):
    """近似粒度，按族包含关系排序：TAU < P < DP。"""

    TAU = 0
    P = 1
    DP = 2

    @property
    def key(self) -> str:
        return ("tau", "p", "dp")[self]

    @property
    def label(self) -> str:
        return ("τ", "ℙ", "δℙ")[self]

    @classmethod
    def from_key(cls, key: str) -> "Tier":
        for tier in cls:
            if tier.key == key.lower():
                return tier
        raise RoughSetError(f"未知的粒度: {key!r}（可选 tau / p / dp）")


# =============================================================================
# 集合族
# =============================================================================

@dataclass(frozen=True)
class OpenFamilies:
    """
    一个空间上的全部开 / 闭集族。

    Attributes
    ----------
    tau_open, tau_closed : SetFamily
        τ 与 τᶜ
    preopen, preclosed : SetFamily
        ℙO(X) 与 ℙC(X)
    deltap_open, deltap_closed : SetFamily
        δℙO(X) 与 δℙC(X)
    delta_open : SetFamily
        δ-开集（半正则拓扑），仅作参考输出
    """

    tau_open: SetFamily
    tau_closed: SetFamily
    preopen: SetFamily
    preclosed: SetFamily
    deltap_open: SetFamily
    deltap_closed: SetFamily
    delta_open: SetFamily

    def open_family(self, tier: Tier) -> SetFamily:
        return (self.tau_open, self.preopen, self.deltap_open)[tier]

    def closed_family(self, tier: Tier) -> SetFamily:
        return (self.tau_closed, self.preclosed, self.deltap_closed)[tier]

    def counts(self) -> dict:
        return {
            "tau": len(self.tau_open),
            "pre": len(self.preopen),
            "deltap": len(self.deltap_open),
            "delta": len(self.delta_open),
        }


# =============================================================================
# δ-闭包与判定
# =============================================================================

def regular_open(space: TopologySpace, a: ElementSet) -> ElementSet:
    """int(cl(A))。"""
    return interior(space, closure(space, a))


def _regular_open_of_base(space: TopologySpace) -> Tuple[Tuple[int, int], ...]:
    def load() -> Tuple[Tuple[int, int], ...]:
        return tuple(
            (b, regular_open(space, space.element_set(b)).bits)
            for b in space.base.masks
        )

    return space.cache.memo(("ro-base",), load)


def is_preopen(space: TopologySpace, s: ElementSet) -> bool:
    """S ⊆ int(cl(S))。"""
    return s <= interior(space, closure(space, s))


def delta_closure(space: TopologySpace, s: ElementSet) -> ElementSet:
    """
    δ-闭包。

    对每个基成员 A，若 S ∩ int(cl(A)) = ∅，则 A 的点都不在 cl_δ(S) 中。
    """
    space.check(s)

    def scan() -> int:
        excluded = 0
        for b, ro in _regular_open_of_base(space):
            if s.bits & ro == 0:
                excluded |= b
        return space.full_mask & ~excluded

    return space.element_set(space.cache.memo(("cl_d", s.bits), scan))


def delta_interior(space: TopologySpace, s: ElementSet) -> ElementSet:
    """int_δ(S) = X − cl_δ(X − S)。"""
    return ~delta_closure(space, ~s)


def is_deltap_open(space: TopologySpace, s: ElementSet) -> bool:
    """S ⊆ int(cl_δ(S))。"""
    return s <= interior(space, delta_closure(space, s))


def is_delta_open(space: TopologySpace, s: ElementSet) -> bool:
    """S = int_δ(S)。"""
    return delta_interior(space, s) == s


# =============================================================================
# 闭式
# =============================================================================

def p_closure_delta(space: TopologySpace, s: ElementSet) -> ElementSet:
    """ℙcl_δ(S) = S ∪ cl(int_δ(S))。"""
    return s | closure(space, delta_interior(space, s))


def p_interior_delta(space: TopologySpace, s: ElementSet) -> ElementSet:
    """ℙint_δ(S) = S ∩ int(cl_δ(S))。"""
    return s & interior(space, delta_closure(space, s))


def pre_interior(space: TopologySpace, s: ElementSet) -> ElementSet:
    """ℙ-内部 S ∩ int(cl(S))。"""
    return s & interior(space, closure(space, s))


def pre_closure(space: TopologySpace, s: ElementSet) -> ElementSet:
    """ℙ-闭包 S ∪ cl(int(S))。"""
    return s | closure(space, interior(space, s))


# =============================================================================
# 族构建
# =============================================================================

def _classify_range(space: TopologySpace, start: int, stop: int) -> Tuple[List[int], List[int], List[int]]:
    pre: List[int] = []
    deltap: List[int] = []
    delta: List[int] = []
    for bits in range(start, stop):
        s = space.element_set(bits)
        if is_preopen(space, s):
            pre.append(bits)
        if is_deltap_open(space, s):
            deltap.append(bits)
        if is_delta_open(space, s):
            delta.append(bits)
    return pre, deltap, delta


def build_families(
    space: TopologySpace,
    cap: Optional[int] = None,
    workers: Optional[int] = None,
) -> OpenFamilies:
    """
    枚举全部 2^n 个子集，构建 ℙO、δℙO 与 δ-开集族。

    Parameters
    ----------
    space : TopologySpace
        拓扑空间
    cap : int, optional
        枚举上限，默认取 CONFIG.max_enum
    workers : int, optional
        线程数，默认取 CONFIG.workers；子集区间按线程数切分，结果规范合并

    Returns
    -------
    OpenFamilies
        全部开 / 闭集族

    Raises
    ------
    EnumerationCapError
        论域超过枚举上限
    """
    if workers is None:
        from config import CONFIG

        workers = CONFIG.workers

    n = space.width
    check_enumeration_cap(n, cap)
    total = 1 << n

    if workers <= 1 or total < 64:
        chunks = [_classify_range(space, 0, total)]
    else:
        step = -(-total // workers)
        bounds = [(lo, min(lo + step, total)) for lo in range(0, total, step)]
        with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="Families") as executor:
            futures = [executor.submit(_classify_range, space, lo, hi) for lo, hi in bounds]
            chunks = [f.result() for f in futures]

    pre = [m for chunk in chunks for m in chunk[0]]
    deltap = [m for chunk in chunks for m in chunk[1]]
    delta = [m for chunk in chunks for m in chunk[2]]

    preopen = SetFamily.from_masks(pre, n)
    deltap_open = SetFamily.from_masks(deltap, n)

    logger.debug(
        "集合族构建完成: n=%d, |τ|=%d, |ℙO|=%d, |δℙO|=%d",
        n, len(space.opens), len(preopen), len(deltap_open),
    )

    return OpenFamilies(
        tau_open=space.opens,
        tau_closed=space.closeds,
        preopen=preopen,
        preclosed=preopen.complements(),
        deltap_open=deltap_open,
        deltap_closed=deltap_open.complements(),
        delta_open=SetFamily.from_masks(delta, n),
    )
