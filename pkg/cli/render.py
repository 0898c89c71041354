"""
输出渲染模块。

表格格式按列宽对齐，列之间以 `` | `` 分隔，表头下方一行短横线；
JSON 格式键排序、缩进 2、保留非 ASCII 字符。两种格式都不含时间戳，
同一输入的输出逐字节一致。
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, List, Mapping, Optional, Sequence

from core.sets import SetFamily, Universe
from utils.helpers import canonical_json

__all__ = [
    "format_fraction",
    "format_flag",
    "family_to_json",
    "render_table",
    "render_family",
    "dump_json",
    "sections",
]

UNDEFINED = "-"


def format_fraction(value: Optional[Fraction]) -> str:
    """最简分数 ``p/q``；0 与 1 不带分母，None 渲染为 ``-``。"""
    if value is None:
        return UNDEFINED
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_flag(value: bool) -> str:
    return "yes" if value else "no"


def family_to_json(universe: Universe, family: SetFamily) -> List[List[str]]:
    """按规范顺序（掩码升序）列出成员的标签列表。"""
    return [universe.names(m) for m in family]


def render_table(
    rows: Sequence[Mapping[str, str]],
    fields: Sequence[str],
    headers: Optional[Mapping[str, str]] = None,
) -> str:
    """
    渲染对齐表格。

    Parameters
    ----------
    rows : sequence of mapping
        每行的 字段 -> 文本
    fields : sequence of str
        列顺序
    headers : mapping, optional
        字段 -> 表头文本，缺省用字段名

    Returns
    -------
    str
        表格文本，行尾无空白，不含结尾换行
    """
    headers = headers or {}
    titles = [headers.get(f, f) for f in fields]
    widths = [len(t) for t in titles]
    for row in rows:
        for i, f in enumerate(fields):
            widths[i] = max(widths[i], len(row.get(f, "")))

    def line(cells: Sequence[str]) -> str:
        return " | ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()

    header = line(titles)
    out = [header, "-" * len(header)]
    out.extend(line([row.get(f, "") for f in fields]) for row in rows)
    return "\n".join(out)


def render_family(universe: Universe, title: str, family: SetFamily) -> str:
    """``title (count)`` 标题行，其后每行一个成员。"""
    out = [f"{title} ({len(family)})"]
    out.extend(f"  {universe.format(m)}" for m in family)
    return "\n".join(out)


def dump_json(data: Any) -> str:
    return canonical_json(data, indent=2)


def sections(parts: Sequence[str]) -> str:
    """以空行连接多个文本段。"""
    return "\n\n".join(parts)
