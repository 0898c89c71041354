"""
定律审计模块。

在关系语料上逐一评估 ``oracle.LAWS`` 中的定律：

- 穷举语料：n ≤ 3 时遍历全部 2^(n²) 个关系（n = 4 需显式开启）
- 抽样语料：固定种子的 random.Random，每个有序对以随机选取的边概率独立出现

保证性定律的违反记为 failures（命令行退出码 1），审计性定律的反例记为
findings，写入 JSON Lines 文件。同一种子、同一版本的输出逐字节一致。

Example
-------
>>> report = audit(exhaustive_spaces(2))
>>> report.ok
True
"""

from __future__ import annotations

import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .approximation import ApproximationSpace
from .errors import EnumerationCapError, InvariantViolationError, PreconditionFailedError
from .oracle import LAWS, Law, Violation, get_law
from .sets import ElementSet, check_enumeration_cap, iter_subsets, make_universe
from .topology import BinaryRelation

__all__ = [
    "SpaceSeed",
    "AuditFinding",
    "AuditReport",
    "exhaustive_spaces",
    "sampled_spaces",
    "audit",
    "write_findings",
]

logger = logging.getLogger("RoughApprox.Audit")


# =============================================================================
# 语料
# =============================================================================

@dataclass(frozen=True)
class SpaceSeed:
    """
    可复现的空间描述。

    Attributes
    ----------
    n : int
        论域大小，标签为 u1..un
    pairs : tuple of (int, int)
        关系的下标对（有序）
    index : int
        在语料中的序号
    seed : int, optional
        抽样语料的种子；穷举语料为 None
    """

    n: int
    pairs: Tuple[Tuple[int, int], ...]
    index: int
    seed: Optional[int] = None

    def labels(self) -> List[str]:
        return [f"u{i + 1}" for i in range(self.n)]

    def build(
        self,
        cap: Optional[int] = None,
        use_closed_forms: Optional[bool] = None,
    ) -> ApproximationSpace:
        universe = make_universe(self.labels())
        relation = BinaryRelation.from_pairs(self.pairs, self.n)
        return ApproximationSpace.from_relation(
            universe, relation, cap=cap, workers=1, use_closed_forms=use_closed_forms
        )


def exhaustive_spaces(
    n: int,
    allow_n4: Optional[bool] = None,
    max_n: Optional[int] = None,
) -> Iterator[SpaceSeed]:
    """
    枚举 n 元论域上的全部关系。

    n = 4 只有显式开启 allow_n4 才允许，exhaustive_max_n 配成 4 也不行。

    Parameters
    ----------
    n : int
        论域大小
    allow_n4 : bool, optional
        是否允许 n = 4，默认取 CONFIG.audit.allow_exhaustive_n4
    max_n : int, optional
        穷举的最大论域大小，默认取 CONFIG.audit.exhaustive_max_n

    Raises
    ------
    EnumerationCapError
        n 超过上限
    """
    from config import CONFIG

    if allow_n4 is None:
        allow_n4 = CONFIG.audit.allow_exhaustive_n4
    if max_n is None:
        max_n = CONFIG.audit.exhaustive_max_n
    limit = 4 if allow_n4 else min(max_n, 3)
    if n < 1:
        raise ValueError(f"n 必须 >= 1，当前值: {n}")
    if n > limit:
        raise EnumerationCapError(n, limit)

    cells = [(x, y) for x in range(n) for y in range(n)]
    for code in range(1 << len(cells)):
        pairs = tuple(cell for i, cell in enumerate(cells) if (code >> i) & 1)
        yield SpaceSeed(n, pairs, code)


def sampled_spaces(
    seed: int,
    count: int,
    n: int,
    min_n: Optional[int] = None,
    probabilities: Optional[Sequence[float]] = None,
) -> Iterator[SpaceSeed]:
    """
    固定种子的随机关系语料。

    Parameters
    ----------
    seed : int
        随机种子
    count : int
        空间数量
    n : int
        论域大小；给出 min_n 时为上界，每个空间在 [min_n, n] 中均匀抽取
    probabilities : sequence of float, optional
        边概率候选，默认取 CONFIG.audit.edge_probabilities
    """
    if probabilities is None:
        from config import CONFIG

        probabilities = CONFIG.audit.edge_probabilities

    rng = random.Random(seed)
    for index in range(count):
        size = n if min_n is None else rng.randint(min_n, n)
        p = rng.choice(tuple(probabilities))
        pairs = tuple(
            (x, y) for x in range(size) for y in range(size) if rng.random() < p
        )
        yield SpaceSeed(size, pairs, index, seed)


# =============================================================================
# 结果
# =============================================================================

@dataclass(frozen=True)
class AuditFinding:
    """
    一次定律违反的可复现记录。

    重放 space 与 witnesses 即可逐位复现 lhs 与 rhs 的差异。
    """

    property_id: str
    space: SpaceSeed
    witnesses: Tuple[ElementSet, ...]
    lhs: ElementSet
    rhs: ElementSet
    detail: str = ""

    def to_record(self) -> Dict[str, Any]:
        labels = self.space.labels()

        def names(s: ElementSet) -> List[str]:
            return [labels[i] for i in s]

        return {
            "property_id": self.property_id,
            "seed": self.space.seed,
            "instance": self.space.index,
            "n": self.space.n,
            "relation": [list(p) for p in self.space.pairs],
            "witnesses": [names(w) for w in self.witnesses],
            "lhs": names(self.lhs),
            "rhs": names(self.rhs),
            "detail": self.detail,
        }


@dataclass
class AuditReport:
    """
    审计汇总。

    Attributes
    ----------
    spaces_checked : int
        评估过的空间数
    instances_checked : int
        评估过的 (定律, 实例) 数
    failures : list of AuditFinding
        保证性定律的违反
    findings : list of AuditFinding
        审计性定律的反例
    clopen_spaces : int
        满足点闭包划分前提的空间数
    """

    spaces_checked: int = 0
    instances_checked: int = 0
    failures: List[AuditFinding] = field(default_factory=list)
    findings: List[AuditFinding] = field(default_factory=list)
    clopen_spaces: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def merge(self, other: "AuditReport") -> None:
        self.spaces_checked += other.spaces_checked
        self.instances_checked += other.instances_checked
        self.failures.extend(other.failures)
        self.findings.extend(other.findings)
        self.clopen_spaces += other.clopen_spaces

    def raise_for_failures(self) -> None:
        """存在保证性定律违反时抛出 InvariantViolationError。"""
        if self.failures:
            first = self.failures[0]
            raise InvariantViolationError(
                f"{len(self.failures)} 处保证性定律违反，首个: "
                f"{first.property_id}（空间 #{first.space.index}）"
            )

    def summary(self) -> Dict[str, Any]:
        per_law: Dict[str, int] = {}
        for f in self.findings:
            per_law[f.property_id] = per_law.get(f.property_id, 0) + 1
        return {
            "spaces_checked": self.spaces_checked,
            "instances_checked": self.instances_checked,
            "failures": len(self.failures),
            "findings": len(self.findings),
            "findings_by_law": dict(sorted(per_law.items())),
            "clopen_spaces": self.clopen_spaces,
            "ok": self.ok,
        }


# =============================================================================
# 审计
# =============================================================================

def _subset_pairs(
    seed: SpaceSeed,
    subsets: List[ElementSet],
    pairs_per_space: int,
) -> List[Tuple[ElementSet, ElementSet]]:
    total = len(subsets) ** 2
    if total <= pairs_per_space:
        return [(s, n) for s in subsets for n in subsets]
    # 每个空间独立的子随机源，结果与并行切分无关
    rng = random.Random(f"{seed.seed}:{seed.index}:{seed.n}")
    return [(rng.choice(subsets), rng.choice(subsets)) for _ in range(pairs_per_space)]


def _record(
    report: AuditReport,
    law: Law,
    seed: SpaceSeed,
    witnesses: Tuple[ElementSet, ...],
    violation: Violation,
) -> None:
    finding = AuditFinding(
        property_id=law.law_id,
        space=seed,
        witnesses=violation.witnesses or witnesses,
        lhs=violation.lhs,
        rhs=violation.rhs,
        detail=violation.detail,
    )
    if law.guaranteed:
        logger.error("保证性定律 %s 被违反: 空间 #%d %s", law.law_id, seed.index, violation.detail)
        report.failures.append(finding)
    else:
        report.findings.append(finding)


def _audit_one(
    seed: SpaceSeed,
    laws: Sequence[Law],
    pairs_per_space: int,
    cap: Optional[int],
) -> AuditReport:
    report = AuditReport(spaces_checked=1)
    space = seed.build(cap=cap)

    if space.families.deltap_open == space.families.deltap_closed:
        report.clopen_spaces = 1
    else:
        try:
            space.point_closure_partition()
        except PreconditionFailedError:
            pass
        else:
            report.failures.append(
                AuditFinding("partition_precondition", seed, (), space.full, space.full, "前提不成立却未报错")
            )

    subsets = list(iter_subsets(space.universe.size, cap))
    pairs = _subset_pairs(seed, subsets, pairs_per_space)

    for law in laws:
        if law.scope == "space":
            instances: Iterable[Tuple[ElementSet, ...]] = [()]
        elif law.scope == "unary":
            instances = [(s,) for s in subsets]
        else:
            instances = pairs
        for witnesses in instances:
            report.instances_checked += 1
            violation = law.check(space, *witnesses)
            if violation is not None:
                _record(report, law, seed, tuple(witnesses), violation)

    return report


def audit(
    spaces: Iterable[SpaceSeed],
    laws: Optional[Sequence[str]] = None,
    pairs_per_space: Optional[int] = None,
    workers: Optional[int] = None,
    cap: Optional[int] = None,
) -> AuditReport:
    """
    在语料上评估定律。

    Parameters
    ----------
    spaces : iterable of SpaceSeed
        空间语料
    laws : sequence of str, optional
        定律标识的子集，默认为全部
    pairs_per_space : int, optional
        每个空间的 (S, N) 对数；子集对总数不超过该值时取全部，
        默认取 CONFIG.audit.pairs_per_space
    workers : int, optional
        线程数，默认取 CONFIG.workers；结果按语料顺序合并

    Returns
    -------
    AuditReport
        审计汇总
    """
    from config import CONFIG

    if pairs_per_space is None:
        pairs_per_space = CONFIG.audit.pairs_per_space
    if workers is None:
        workers = CONFIG.workers
    selected = LAWS if laws is None else tuple(get_law(law_id) for law_id in laws)

    seeds = list(spaces)
    for s in seeds:
        check_enumeration_cap(s.n, cap)

    report = AuditReport()
    if workers <= 1:
        parts = [_audit_one(s, selected, pairs_per_space, cap) for s in seeds]
    else:
        with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="Audit") as executor:
            parts = list(
                executor.map(lambda s: _audit_one(s, selected, pairs_per_space, cap), seeds)
            )
    for part in parts:
        report.merge(part)

    logger.info(
        "审计完成: %d 个空间, %d 个实例, %d 处违反, %d 条审计发现",
        report.spaces_checked, report.instances_checked,
        len(report.failures), len(report.findings),
    )
    return report


def write_findings(path: str, findings: Iterable[AuditFinding]) -> int:
    """
    以 JSON Lines 写出审计发现（键排序、无时间戳、原子写入）。

    Returns
    -------
    int
        写出的记录数
    """
    from utils.helpers import write_json_lines

    return write_json_lines(path, (f.to_record() for f in findings))
