"""
核心模块。

提供粗糙近似引擎的核心组件，包括：
- 集合代数 (Universe, ElementSet, SetFamily)
- 关系诱导拓扑 (BinaryRelation, TopologySpace)
- 广义开集族 (Tier, OpenFamilies)
- 三粒度近似 (ApproximationSpace)
- 定义级校验与定律审计 (oracle, audit)

所有值在构造后不可变；记忆化缓存内部加锁，可在多线程环境中共享。

Example
-------
>>> from core import ApproximationSpace, BinaryRelation, Tier, make_universe
>>> u = make_universe(["a", "b"])
>>> space = ApproximationSpace.from_relation(u, BinaryRelation.identity(2))
>>> space.lower(u.subset(["a"]), Tier.TAU)
ElementSet([0], width=2)
"""

from __future__ import annotations

__version__ = "1.0.0"
__author__ = "RoughApprox Team"

from typing import Dict

# =============================================================================
# 核心组件导入
# =============================================================================

try:
    from .errors import (
        EmptySubjectError,
        EnumerationCapError,
        InvariantViolationError,
        PreconditionFailedError,
        RoughSetError,
    )
except ImportError as e:
    raise ImportError(f"无法导入 errors 模块: {e}") from e

try:
    from .cache import LRUCache
    from .sets import ElementSet, SetFamily, Universe, canonicalize, make_universe
except ImportError as e:
    raise ImportError(f"无法导入 sets 模块: {e}") from e

try:
    from .topology import BinaryRelation, TopologySpace, build_space, generate_topology
    from .families import OpenFamilies, Tier, build_families
except ImportError as e:
    raise ImportError(f"无法导入 topology / families 模块: {e}") from e

try:
    from .approximation import (
        ApproximationSpace,
        Definability,
        DefinabilityClass,
        Membership,
        RegionReport,
        RoughInclusion,
        TierApproximation,
    )
except ImportError as e:
    raise ImportError(f"无法导入 approximation 模块: {e}") from e


__all__ = [
    # 版本信息
    "__version__",
    "__author__",
    # 异常
    "RoughSetError",
    "EnumerationCapError",
    "EmptySubjectError",
    "PreconditionFailedError",
    "InvariantViolationError",
    # 集合代数
    "Universe",
    "ElementSet",
    "SetFamily",
    "make_universe",
    "canonicalize",
    "LRUCache",
    # 拓扑
    "BinaryRelation",
    "TopologySpace",
    "generate_topology",
    "build_space",
    # 集合族
    "Tier",
    "OpenFamilies",
    "build_families",
    # 近似
    "ApproximationSpace",
    "TierApproximation",
    "RegionReport",
    "Membership",
    "Definability",
    "DefinabilityClass",
    "RoughInclusion",
]


def get_status() -> Dict[str, str]:
    """
    获取核心模块状态概览。

    Returns
    -------
    dict
        版本与默认枚举上限
    """
    from config import CONFIG

    return {
        "version": __version__,
        "max_enum": str(CONFIG.max_enum),
        "closed_forms": str(CONFIG.use_closed_forms),
    }
