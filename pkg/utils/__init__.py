"""工具模块。

提供原子文件写入、确定性 JSON 序列化与输入读取等通用工具函数。

模块结构:
    - helpers: 文件操作、JSON / JSON Lines 处理

Example:
    >>> from utils import write_json_lines
    >>> write_json_lines("data/findings.jsonl", [])
    0
"""

from __future__ import annotations

from .helpers import (
    atomic_write,
    canonical_json,
    read_text,
    write_json_lines,
)

__all__ = [
    "atomic_write",
    "canonical_json",
    "read_text",
    "write_json_lines",
]

__version__ = "1.0.0"
__author__ = "RoughApprox Team"
