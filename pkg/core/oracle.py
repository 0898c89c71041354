"""
定义级暴力校验模块。

这里的算子逐字按定义计算，不使用闭式、不使用基限制、不做记忆化，
作为快速路径的对照：

- axiom_check: 逐对检查并 / 交封闭
- enum_lower / enum_upper: 扫描整个集合族
- pawlak_neighborhood_ops: 直接用右邻域公式
- pointwise_interior / pointwise_closure / delta_closure_all_opens:
  用最小开邻域与全部开集量化

``LAWS`` 登记了全部定律。保证性定律的违反是硬错误；审计性定律只记录反例。
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from .approximation import ApproximationSpace, Definability
from .cache import LRUCache
from .families import (
    OpenFamilies,
    Tier,
    delta_closure,
    p_closure_delta,
    p_interior_delta,
    pre_closure,
    pre_interior,
)
from .sets import ElementSet, SetFamily, Universe, iter_subsets
from .topology import BinaryRelation, closure, interior

__all__ = [
    "axiom_check",
    "enum_lower",
    "enum_upper",
    "pawlak_neighborhood_ops",
    "pointwise_interior",
    "pointwise_closure",
    "delta_closure_all_opens",
    "enum_preopen",
    "enum_deltap_open",
    "Violation",
    "Law",
    "LAWS",
    "get_law",
    "guaranteed_laws",
    "audited_laws",
]


# =============================================================================
# 定义级算子
# =============================================================================

def axiom_check(family: SetFamily) -> bool:
    """∅ 与 X 属于族，且族对两两并、两两交封闭。"""
    full = (1 << family.width) - 1
    if 0 not in family or full not in family:
        return False
    for a in family.masks:
        for b in family.masks:
            if (a | b) not in family or (a & b) not in family:
                return False
    return True


def enum_lower(families: OpenFamilies, s: ElementSet, tier: Tier) -> ElementSet:
    """⋃ {V ∈ 开集族 : V ⊆ S}。"""
    acc = 0
    for v in families.open_family(tier).masks:
        if v & ~s.bits == 0:
            acc |= v
    return ElementSet(acc, s.width)


def enum_upper(families: OpenFamilies, s: ElementSet, tier: Tier) -> ElementSet:
    """⋂ {W ∈ 闭集族 : W ⊇ S}。"""
    acc = (1 << s.width) - 1
    for w in families.closed_family(tier).masks:
        if s.bits & ~w == 0:
            acc &= w
    return ElementSet(acc, s.width)


def pawlak_neighborhood_ops(
    universe: Universe,
    relation: BinaryRelation,
    s: ElementSet,
) -> Tuple[ElementSet, ElementSet]:
    """
    右邻域公式：lower = {x : xR ⊆ S}，upper = {x : xR ∩ S ≠ ∅}。

    Returns
    -------
    tuple
        (lower, upper)
    """
    n = universe.size
    lower = upper = 0
    for x in range(n):
        row = relation.successors(x)
        if row & ~s.bits == 0:
            lower |= 1 << x
        if row & s.bits:
            upper |= 1 << x
    return ElementSet(lower, n), ElementSet(upper, n)


# 按开集族缓存的逐点表（最小开邻域、正则开值）
_TABLES = LRUCache(maxsize=256)


def _minimal_opens(opens: SetFamily) -> Tuple[int, ...]:
    def load() -> Tuple[int, ...]:
        full = (1 << opens.width) - 1
        result = []
        for x in range(opens.width):
            acc = full
            for o in opens.masks:
                if (o >> x) & 1:
                    acc &= o
            result.append(acc)
        return tuple(result)

    return _TABLES.memo(("min", opens), load)


def _regular_opens(opens: SetFamily) -> Dict[int, int]:
    def load() -> Dict[int, int]:
        return {
            o: pointwise_interior(opens, pointwise_closure(opens, ElementSet(o, opens.width))).bits
            for o in opens.masks
        }

    return _TABLES.memo(("ro", opens), load)


def pointwise_interior(opens: SetFamily, s: ElementSet) -> ElementSet:
    """{x : U_x ⊆ S}，U_x 为包含 x 的全部开集之交。"""
    bits = 0
    for x, ux in enumerate(_minimal_opens(opens)):
        if ux & ~s.bits == 0:
            bits |= 1 << x
    return ElementSet(bits, s.width)


def pointwise_closure(opens: SetFamily, s: ElementSet) -> ElementSet:
    """{x : 每个包含 x 的开集都与 S 相交}。"""
    bits = 0
    for x in range(opens.width):
        if all(o & s.bits for o in opens.masks if (o >> x) & 1):
            bits |= 1 << x
    return ElementSet(bits, s.width)


def delta_closure_all_opens(opens: SetFamily, s: ElementSet) -> ElementSet:
    """{x : 对每个包含 x 的开集 A，S ∩ int(cl(A)) ≠ ∅}，量化全部开集。"""
    regular = _regular_opens(opens)
    bits = 0
    for x in range(opens.width):
        if all(s.bits & regular[o] for o in opens.masks if (o >> x) & 1):
            bits |= 1 << x
    return ElementSet(bits, s.width)


def enum_preopen(opens: SetFamily) -> SetFamily:
    """逐子集按 S ⊆ int(cl(S)) 判定的预开集族。"""
    members = []
    for s in iter_subsets(opens.width):
        if s <= pointwise_interior(opens, pointwise_closure(opens, s)):
            members.append(s.bits)
    return SetFamily.from_masks(members, opens.width)


def enum_deltap_open(opens: SetFamily) -> SetFamily:
    """逐子集按 S ⊆ int(cl_δ(S)) 判定的 δℙ-开集族。"""
    members = []
    for s in iter_subsets(opens.width):
        if s <= pointwise_interior(opens, delta_closure_all_opens(opens, s)):
            members.append(s.bits)
    return SetFamily.from_masks(members, opens.width)


# =============================================================================
# 定律登记
# =============================================================================

@dataclass(frozen=True)
class Violation:
    """
    定律的一次违反。

    Attributes
    ----------
    lhs, rhs : ElementSet
        本应满足包含 / 相等关系却不满足的两侧
    detail : str
        粒度或子条目说明
    witnesses : tuple of ElementSet
        空间级定律自带的见证集合；子集级定律由审计填入 (S[, N])
    """

    lhs: ElementSet
    rhs: ElementSet
    detail: str = ""
    witnesses: Tuple[ElementSet, ...] = ()


@dataclass(frozen=True)
class Law:
    """
    Attributes
    ----------
    law_id : str
        定律标识
    description : str
        一句话描述
    scope : str
        ``space``（每个空间一次）、``unary``（每个 S）或 ``binary``（每对 S, N）
    guaranteed : bool
        True 为保证性定律，False 为审计性定律
    check : callable
        返回 None 表示成立，否则返回 Violation
    """

    law_id: str
    description: str
    scope: str
    guaranteed: bool
    check: Callable[..., Optional[Violation]]


def _subset_or_violation(a: ElementSet, b: ElementSet, detail: str) -> Optional[Violation]:
    return None if a <= b else Violation(a, b, detail)


def _equal_or_violation(a: ElementSet, b: ElementSet, detail: str) -> Optional[Violation]:
    return None if a == b else Violation(a, b, detail)


def _first(*results: Optional[Violation]) -> Optional[Violation]:
    for r in results:
        if r is not None:
            return r
    return None


# -----------------------------------------------------------------------------
# 空间级
# -----------------------------------------------------------------------------

def _law_axioms(space: ApproximationSpace) -> Optional[Violation]:
    opens = space.topology.opens
    if axiom_check(opens):
        return None
    full = space.full
    return Violation(full, full, "开集族不满足 A1–A3")


def _law_family_chain(space: ApproximationSpace) -> Optional[Violation]:
    fam = space.families
    n = space.universe.size
    for name, small, big in (
        ("τ ⊆ ℙO", fam.tau_open, fam.preopen),
        ("ℙO ⊆ δℙO", fam.preopen, fam.deltap_open),
    ):
        for m in small.masks:
            if m not in big:
                return Violation(ElementSet(m, n), ElementSet(m, n), name)
    return None


def _law_families_definitional(space: ApproximationSpace) -> Optional[Violation]:
    opens = space.topology.opens
    full = space.full
    if enum_preopen(opens) != space.families.preopen:
        return Violation(full, full, "ℙO")
    if enum_deltap_open(opens) != space.families.deltap_open:
        return Violation(full, full, "δℙO")
    return None


def _singletons(space: ApproximationSpace) -> List[ElementSet]:
    n = space.universe.size
    return [ElementSet(1 << x, n) for x in range(n)]


def _law_point_closure(space: ApproximationSpace) -> Optional[Violation]:
    points = _singletons(space)
    uppers = [space.upper(p, Tier.DP) for p in points]
    for c, uc in enumerate(uppers):
        for d, ud in enumerate(uppers):
            if c in ud and d in uc and uc != ud:
                return Violation(uc, ud, "", (points[c], points[d]))
    return None


def _clopen(space: ApproximationSpace) -> bool:
    return space.families.deltap_open == space.families.deltap_closed


def _law_clopen_symmetry(space: ApproximationSpace) -> Optional[Violation]:
    if not _clopen(space):
        return None
    points = _singletons(space)
    uppers = [space.upper(p, Tier.DP) for p in points]
    for c, uc in enumerate(uppers):
        for d in uc:
            if c not in uppers[d]:
                return Violation(uc, uppers[d], "", (points[c], points[d]))
    return None


def _law_partition(space: ApproximationSpace) -> Optional[Violation]:
    if not _clopen(space):
        return None
    blocks = space.point_closure_partition().members
    covered = space.universe.empty
    for i, a in enumerate(blocks):
        if a.is_empty:
            return Violation(a, a, "空块")
        for b in blocks[i + 1:]:
            if not a.isdisjoint(b):
                return Violation(a, b, "块相交")
        covered = covered | a
    return _equal_or_violation(covered, space.full, "未覆盖论域")


# -----------------------------------------------------------------------------
# 单集合
# -----------------------------------------------------------------------------

def _law_topology_duality(space: ApproximationSpace, s: ElementSet) -> Optional[Violation]:
    topo = space.topology
    return _equal_or_violation(interior(topo, s), ~closure(topo, ~s), "int = X − cl(X − S)")


def _law_pointwise_operators(space: ApproximationSpace, s: ElementSet) -> Optional[Violation]:
    topo = space.topology
    opens = topo.opens
    return _first(
        _equal_or_violation(interior(topo, s), pointwise_interior(opens, s), "int"),
        _equal_or_violation(closure(topo, s), pointwise_closure(opens, s), "cl"),
        _equal_or_violation(delta_closure(topo, s), delta_closure_all_opens(opens, s), "cl_δ"),
    )


def _law_delta_closure_bounds(space: ApproximationSpace, s: ElementSet) -> Optional[Violation]:
    topo = space.topology
    cl_d = delta_closure(topo, s)
    return _first(
        _subset_or_violation(s, cl_d, "S ⊆ cl_δ(S)"),
        _subset_or_violation(closure(topo, s), cl_d, "cl(S) ⊆ cl_δ(S)"),
    )


def _law_tier_chain(space: ApproximationSpace, s: ElementSet) -> Optional[Violation]:
    chain = [
        ("R̲", space.lower(s, Tier.TAU)),
        ("R̲ℙ", space.lower(s, Tier.P)),
        ("R̲δℙ", space.lower(s, Tier.DP)),
        ("S", s),
        ("R̄δℙ", space.upper(s, Tier.DP)),
        ("R̄ℙ", space.upper(s, Tier.P)),
        ("R̄", space.upper(s, Tier.TAU)),
    ]
    for (na, a), (nb, b) in zip(chain, chain[1:]):
        if not a <= b:
            return Violation(a, b, f"{na} ⊆ {nb}")
    return None


def _law_oracle_agreement(space: ApproximationSpace, s: ElementSet) -> Optional[Violation]:
    fam = space.families
    for tier in Tier:
        found = _first(
            _equal_or_violation(space.lower(s, tier), enum_lower(fam, s, tier), f"lower/{tier.key}"),
            _equal_or_violation(space.upper(s, tier), enum_upper(fam, s, tier), f"upper/{tier.key}"),
        )
        if found is not None:
            return found
    return None


def _law_closed_forms(space: ApproximationSpace, s: ElementSet) -> Optional[Violation]:
    topo = space.topology
    fam = space.families
    pint_d = enum_lower(fam, s, Tier.DP)
    pcl_d = enum_upper(fam, s, Tier.DP)
    cl_int_d = closure(topo, ~delta_closure(topo, ~s))
    int_cl_d = interior(topo, delta_closure(topo, s))
    return _first(
        _equal_or_violation(pre_interior(topo, s), enum_lower(fam, s, Tier.P), "ℙ-int"),
        _equal_or_violation(pre_closure(topo, s), enum_upper(fam, s, Tier.P), "ℙ-cl"),
        _equal_or_violation(p_closure_delta(topo, s), pcl_d, "ℙcl_δ"),
        _equal_or_violation(p_interior_delta(topo, s), pint_d, "ℙint_δ"),
        _equal_or_violation(enum_upper(fam, pint_d, Tier.DP), pint_d | cl_int_d, "ℙcl_δ∘ℙint_δ"),
        _equal_or_violation(enum_lower(fam, pcl_d, Tier.DP), pcl_d & int_cl_d, "ℙint_δ∘ℙcl_δ"),
    )


def _law_duality(space: ApproximationSpace, s: ElementSet) -> Optional[Violation]:
    for tier in Tier:
        found = _first(
            _equal_or_violation(space.lower(~s, tier), ~space.upper(s, tier), f"lower/{tier.key}"),
            _equal_or_violation(space.upper(~s, tier), ~space.lower(s, tier), f"upper/{tier.key}"),
        )
        if found is not None:
            return found
    return None


def _law_fixed_points(space: ApproximationSpace, s: ElementSet) -> Optional[Violation]:
    empty, full = space.universe.empty, space.full
    for tier in Tier:
        found = _first(
            _equal_or_violation(space.lower(empty, tier), empty, f"lower(∅)/{tier.key}"),
            _equal_or_violation(space.upper(empty, tier), empty, f"upper(∅)/{tier.key}"),
            _equal_or_violation(space.lower(full, tier), full, f"lower(X)/{tier.key}"),
            _equal_or_violation(space.upper(full, tier), full, f"upper(X)/{tier.key}"),
        )
        if found is not None:
            return found
    return None


def _law_idempotence(space: ApproximationSpace, s: ElementSet) -> Optional[Violation]:
    for tier in Tier:
        lo = space.lower(s, tier)
        up = space.upper(s, tier)
        found = _first(
            _equal_or_violation(space.lower(lo, tier), lo, f"lower∘lower/{tier.key}"),
            _equal_or_violation(space.upper(up, tier), up, f"upper∘upper/{tier.key}"),
            _subset_or_violation(space.lower(lo, tier), space.upper(lo, tier), f"lower∘lower ⊆ upper∘lower/{tier.key}"),
            _subset_or_violation(space.lower(up, tier), space.upper(up, tier), f"lower∘upper ⊆ upper∘upper/{tier.key}"),
        )
        if found is not None:
            return found
    return None


def _law_edge_decomposition(space: ApproximationSpace, s: ElementSet) -> Optional[Violation]:
    for tier in Tier:
        lo = space.lower(s, tier)
        up = space.upper(s, tier)
        found = _equal_or_violation(up - lo, (s - lo) | (up - s), tier.key)
        if found is not None:
            return found
    return None


def _law_membership_implications(space: ApproximationSpace, s: ElementSet) -> Optional[Violation]:
    lowers = [space.lower(s, tier) for tier in Tier]
    uppers = [space.upper(s, tier) for tier in Tier]
    for x in range(space.universe.size):
        for i in range(2):
            if x in lowers[i] and x not in lowers[i + 1]:
                return Violation(lowers[i], lowers[i + 1], f"strong {Tier(i).key} ⇒ {Tier(i + 1).key}")
            if x in uppers[i + 1] and x not in uppers[i]:
                return Violation(uppers[i + 1], uppers[i], f"weak {Tier(i + 1).key} ⇒ {Tier(i).key}")
    return None


def _law_exactness(space: ApproximationSpace, s: ElementSet) -> Optional[Violation]:
    p_exact = space.classify(s, Tier.P).exact
    dp_exact = space.classify(s, Tier.DP).exact
    if p_exact and not dp_exact:
        return Violation(space.lower(s, Tier.DP), space.upper(s, Tier.DP), "ℙ-精确但 δℙ-粗糙")
    return None


def _law_accuracy_monotone(space: ApproximationSpace, s: ElementSet) -> Optional[Violation]:
    if s.is_empty:
        return None
    acc = [space.accuracy(s, tier) for tier in Tier]
    for i in range(2):
        if acc[i] > acc[i + 1]:
            return Violation(
                space.lower(s, Tier(i)),
                space.lower(s, Tier(i + 1)),
                f"α_{Tier(i).key}={acc[i]} > α_{Tier(i + 1).key}={acc[i + 1]}",
            )
    return None


def _law_class_chains(space: ApproximationSpace, s: ElementSet) -> Optional[Violation]:
    tau, p, dp = (space.classify(s, tier).cls for tier in Tier)
    pairs = [(tau, p, "RD τ ⊆ ℙ"), (p, dp, "RD ℙ ⊆ δℙ")]
    for lo_cls, hi_cls, name in pairs:
        if lo_cls is Definability.RD and hi_cls is not Definability.RD:
            return Violation(s, s, name)
    for cls in (Definability.IUD, Definability.EUD, Definability.TUD):
        if dp is cls and p is not cls:
            return Violation(s, s, f"{cls.value} δℙ ⊆ ℙ")
        if p is cls and tau is not cls:
            return Violation(s, s, f"{cls.value} ℙ ⊆ τ")
    return None


# -----------------------------------------------------------------------------
# 集合对
# -----------------------------------------------------------------------------

def _law_monotonicity(space: ApproximationSpace, s: ElementSet, n: ElementSet) -> Optional[Violation]:
    small, big = s & n, s | n
    for tier in Tier:
        found = _first(
            _subset_or_violation(space.lower(small, tier), space.lower(big, tier), f"lower/{tier.key}"),
            _subset_or_violation(space.upper(small, tier), space.upper(big, tier), f"upper/{tier.key}"),
        )
        if found is not None:
            return found
    return None


def _law_union_intersection(space: ApproximationSpace, s: ElementSet, n: ElementSet) -> Optional[Violation]:
    for tier in Tier:
        lo_s, lo_n = space.lower(s, tier), space.lower(n, tier)
        up_s, up_n = space.upper(s, tier), space.upper(n, tier)
        found = _first(
            _subset_or_violation(lo_s | lo_n, space.lower(s | n, tier), f"lower(S∪N)/{tier.key}"),
            _subset_or_violation(space.lower(s & n, tier), lo_s & lo_n, f"lower(S∩N)/{tier.key}"),
            _subset_or_violation(space.upper(s & n, tier), up_s & up_n, f"upper(S∩N)/{tier.key}"),
            _subset_or_violation(up_s | up_n, space.upper(s | n, tier), f"upper(S∪N)/{tier.key}"),
        )
        if found is not None:
            return found
    return None


def _law_exact_union(space: ApproximationSpace, s: ElementSet, n: ElementSet) -> Optional[Violation]:
    if not space.classify(s, Tier.DP).exact:
        return None
    return _equal_or_violation(
        space.lower(s | n, Tier.DP),
        space.lower(s, Tier.DP) | space.lower(n, Tier.DP),
        "lower(S∪N)",
    )


def _law_exact_intersection(space: ApproximationSpace, s: ElementSet, n: ElementSet) -> Optional[Violation]:
    if not space.classify(s, Tier.DP).exact:
        return None
    return _equal_or_violation(
        space.upper(s & n, Tier.DP),
        space.upper(s, Tier.DP) & space.upper(n, Tier.DP),
        "upper(S∩N)",
    )


def _law_closure_union(space: ApproximationSpace, s: ElementSet, n: ElementSet) -> Optional[Violation]:
    cl = closure(space.topology, s)
    return _equal_or_violation(
        space.upper(cl | n, Tier.DP),
        cl | space.upper(n, Tier.DP),
        "upper(cl(S)∪N)",
    )


def _law_interior_intersection(space: ApproximationSpace, s: ElementSet, n: ElementSet) -> Optional[Violation]:
    it = interior(space.topology, s)
    return _equal_or_violation(
        space.lower(it & n, Tier.DP),
        it & space.lower(n, Tier.DP),
        "lower(int(S)∩N)",
    )


LAWS: Tuple[Law, ...] = (
    # 空间级
    Law("topology_axioms", "生成的开集族满足 A1–A3", "space", True, _law_axioms),
    Law("family_chain", "τ ⊆ ℙO ⊆ δℙO", "space", True, _law_family_chain),
    Law("families_definitional", "集合族与逐点定义的判定一致", "space", True, _law_families_definitional),
    Law("point_closure_equality", "c ∈ R̄δℙ({d}) 且 d ∈ R̄δℙ({c}) 时两者相等", "space", True, _law_point_closure),
    Law("clopen_symmetry", "δℙ-开集皆为 δℙ-闭集时，d ∈ R̄δℙ({c}) ⇒ c ∈ R̄δℙ({d})", "space", True, _law_clopen_symmetry),
    Law("point_closure_partition", "δℙ-开集皆为 δℙ-闭集时，点闭包构成划分", "space", True, _law_partition),
    # 单集合
    Law("topology_duality", "int(S) = X − cl(X − S)", "unary", True, _law_topology_duality),
    Law("pointwise_operators", "族扫描与逐点定义的 int / cl / cl_δ 一致", "unary", True, _law_pointwise_operators),
    Law("delta_closure_bounds", "S ⊆ cl(S) ⊆ cl_δ(S)", "unary", True, _law_delta_closure_bounds),
    Law("tier_chain", "R̲ ⊆ R̲ℙ ⊆ R̲δℙ ⊆ S ⊆ R̄δℙ ⊆ R̄ℙ ⊆ R̄", "unary", True, _law_tier_chain),
    Law("oracle_agreement", "快速路径与族扫描一致", "unary", True, _law_oracle_agreement),
    Law("closed_forms", "ℙ 与 δℙ 闭式（含复合式）与族扫描一致", "unary", True, _law_closed_forms),
    Law("fixed_points", "∅ 与 X 是各粒度上下近似的不动点", "unary", True, _law_fixed_points),
    Law("duality", "lower(X − S) = X − upper(S)，upper(X − S) = X − lower(S)", "unary", True, _law_duality),
    Law("idempotence", "上下近似幂等及复合包含", "unary", True, _law_idempotence),
    Law("edge_decomposition", "边界 = 内边 ∪ 外边", "unary", True, _law_edge_decomposition),
    Law("membership_implications", "强隶属随粒度变细保持，弱隶属随粒度变粗保持", "unary", True, _law_membership_implications),
    Law("exactness", "ℙ-精确 ⇒ δℙ-精确", "unary", True, _law_exactness),
    Law("accuracy_monotone", "α_τ ≤ α_ℙ ≤ α_δℙ", "unary", True, _law_accuracy_monotone),
    Law("class_chains", "RD 随粒度变细增大，IUD / EUD / TUD 缩小", "unary", True, _law_class_chains),
    # 集合对
    Law("monotonicity", "S ⊆ N ⇒ 上下近似单调", "binary", True, _law_monotonicity),
    Law("union_intersection", "并 / 交的单向包含", "binary", True, _law_union_intersection),
    Law("exact_union", "S δℙ-精确时 lower(S∪N) = lower(S) ∪ lower(N)", "binary", False, _law_exact_union),
    Law("exact_intersection", "S δℙ-精确时 upper(S∩N) = upper(S) ∩ upper(N)", "binary", False, _law_exact_intersection),
    Law("closure_union", "upper(cl(S) ∪ N) = cl(S) ∪ upper(N)", "binary", False, _law_closure_union),
    Law("interior_intersection", "lower(int(S) ∩ N) = int(S) ∩ lower(N)", "binary", False, _law_interior_intersection),
)

_BY_ID: Dict[str, Law] = {law.law_id: law for law in LAWS}


def get_law(law_id: str) -> Law:
    try:
        return _BY_ID[law_id]
    except KeyError:
        raise KeyError(f"未知定律: {law_id}") from None


def guaranteed_laws() -> Tuple[Law, ...]:
    return tuple(law for law in LAWS if law.guaranteed)


def audited_laws() -> Tuple[Law, ...]:
    return tuple(law for law in LAWS if not law.guaranteed)
