"""
空间描述文档解析模块。

文档是一个 JSON 对象::

    {
        "name": "four-points",
        "universe": ["u1", "u2", "u3", "u4"],
        "relation": [["u1", "u1"], ["u1", "u2"]]
    }

``relation`` 中的标签必须出现在 ``universe`` 中；重复的关系对记录警告后去重。

命令行上的集合表达式写作 ``{u1,u3}``，另有关键字 ``all``（全集）
与 ``empty`` / ``∅`` / ``{}``（空集）。
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Sequence

from core.approximation import ApproximationSpace
from core.errors import DocumentFormatError, DocumentSyntaxError
from core.sets import ElementSet, SetFamily, Universe, make_universe
from core.topology import BinaryRelation

__all__ = [
    "SpaceDocument",
    "parse_space",
    "parse_set_expression",
    "family_from_labels",
]

logger = logging.getLogger("RoughApprox.Document")

_KNOWN_KEYS = frozenset({"name", "universe", "relation"})
_EMPTY_WORDS = frozenset({"empty", "∅", "{}"})


@dataclass(frozen=True)
class SpaceDocument:
    """
    解析后的空间描述。

    Attributes
    ----------
    universe : Universe
        论域
    relation : BinaryRelation
        论域上的关系（已去重）
    name : str, optional
        文档名称
    """

    universe: Universe
    relation: BinaryRelation
    name: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        labels = self.universe.labels
        data: Dict[str, Any] = {
            "universe": list(labels),
            "relation": [[labels[x], labels[y]] for x, y in self.relation.sorted_pairs()],
        }
        if self.name is not None:
            data["name"] = self.name
        return data

    def build(
        self,
        cap: Optional[int] = None,
        workers: Optional[int] = None,
        use_closed_forms: Optional[bool] = None,
        cache_size: Optional[int] = None,
    ) -> ApproximationSpace:
        """构建近似空间，参数含义同 ``ApproximationSpace.from_relation``。"""
        return ApproximationSpace.from_relation(
            self.universe,
            self.relation,
            cap=cap,
            workers=workers,
            use_closed_forms=use_closed_forms,
            cache_size=cache_size,
        )


def _require_labels(value: Any, what: str) -> List[str]:
    if not isinstance(value, list):
        raise DocumentFormatError(f"{what} 必须是列表，实际为 {type(value).__name__}")
    for item in value:
        if not isinstance(item, str):
            raise DocumentFormatError(f"{what} 中的元素必须是字符串: {item!r}")
    return value


def parse_space(text: str, max_width: Optional[int] = None) -> SpaceDocument:
    """
    解析空间描述文档。

    Parameters
    ----------
    text : str
        JSON 文本
    max_width : int, optional
        论域宽度上限，默认取 CONFIG.max_width

    Returns
    -------
    SpaceDocument
        校验过的文档

    Raises
    ------
    DocumentSyntaxError
        JSON 语法错误（带行列号）
    DocumentFormatError
        缺少字段或字段类型不符
    UnknownLabelError
        关系中引用了论域外的标签
    """
    if max_width is None:
        from config import CONFIG

        max_width = CONFIG.max_width

    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentSyntaxError(e.msg, e.lineno, e.colno) from None

    if not isinstance(data, dict):
        raise DocumentFormatError("文档根元素必须是对象")
    for key in sorted(set(data) - _KNOWN_KEYS):
        logger.warning("忽略未知字段: %s", key)
    for key in ("universe", "relation"):
        if key not in data:
            raise DocumentFormatError(f"缺少字段: {key}")

    universe = make_universe(_require_labels(data["universe"], "universe"), max_width)

    raw_pairs = data["relation"]
    if not isinstance(raw_pairs, list):
        raise DocumentFormatError("relation 必须是 [from, to] 对的列表")
    pairs = []
    for i, pair in enumerate(raw_pairs):
        if not isinstance(pair, list) or len(pair) != 2:
            raise DocumentFormatError(f"relation[{i}] 必须是长度为 2 的列表: {pair!r}")
        a, b = _require_labels(pair, f"relation[{i}]")
        pairs.append((a, b))
    relation = BinaryRelation.from_labels(universe, pairs)

    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise DocumentFormatError("name 必须是字符串")

    logger.debug("解析空间文档: n=%d, 关系对=%d", universe.size, len(relation))
    return SpaceDocument(universe, relation, name)


def parse_set_expression(universe: Universe, expr: str) -> ElementSet:
    """
    解析集合表达式。

    ``{u1,u3}``、``u1,u3``、``all``、``empty``、``∅`` 与 ``{}`` 均可；
    标签两侧空白忽略，重复标签合并。

    Raises
    ------
    DocumentFormatError
        括号不配对或含空标签
    UnknownLabelError
        标签不在论域中
    """
    text = expr.strip()
    if text.lower() == "all":
        return universe.full
    if text.lower() in _EMPTY_WORDS:
        return universe.empty

    if text.startswith("{") or text.endswith("}"):
        if not (text.startswith("{") and text.endswith("}")):
            raise DocumentFormatError(f"集合表达式括号不配对: {expr!r}")
        text = text[1:-1].strip()
        if not text:
            return universe.empty

    labels = [part.strip() for part in text.split(",")]
    if any(not lb for lb in labels):
        raise DocumentFormatError(f"集合表达式含空标签: {expr!r}")
    return universe.subset(labels)


def family_from_labels(universe: Universe, members: Iterable[Sequence[str]]) -> SetFamily:
    """由标签列表重建规范集合族（渲染输出的逆操作）。"""
    return SetFamily.from_masks((universe.subset(m).bits for m in members), universe.size)
