"""命令行模块。

提供空间描述文档解析、表格 / JSON 渲染与 click 命令组。

模块结构:
    - document: 空间描述文档与集合表达式解析
    - render: 分数、集合、对齐表格与规范 JSON 输出
    - commands: click 命令组

Example:
    >>> from click.testing import CliRunner
    >>> from cli import cli
    >>> result = CliRunner().invoke(cli, ["--space", "fixtures/four_points.json", "topology"])
    >>> result.exit_code
    0
"""

from __future__ import annotations

from .commands import CliState, cli
from .document import SpaceDocument, family_from_labels, parse_set_expression, parse_space

__all__ = [
    "cli",
    "CliState",
    "SpaceDocument",
    "parse_space",
    "parse_set_expression",
    "family_from_labels",
]
