"""辅助工具函数模块。

提供原子文件写入、确定性 JSON / JSON Lines 序列化和输入读取。
同一数据在 Windows / macOS / Linux 上写出的字节相同（UTF-8、LF 换行）。

主要功能:
    - atomic_write: 同目录临时文件 + os.replace
    - canonical_json: 键排序、缩进固定的 JSON 文本
    - write_json_lines: 原子写出 JSON Lines 记录
    - read_text: 从文件或标准输入读取文本

Example:
    >>> from utils.helpers import write_json_lines
    >>> write_json_lines("data/findings.jsonl", [{"property_id": "closure_union"}])
    1
"""

from __future__ import annotations

import json
import logging
import os
import sys
import tempfile
import time
from pathlib import Path
from typing import Any, Iterable, Optional, TextIO

logger = logging.getLogger("RoughApprox")


def atomic_write(path: str | Path, data: str, retries: int = 3) -> None:
    """原子写入 UTF-8 文本。

    内容先写入目标目录下的临时文件，再整体替换目标；中途失败时目标文件
    保持原样。目标被其他进程占用（Windows）时替换按 0.1s、0.2s 退避重试。

    Args:
        path: 目标文件路径，父目录不存在时创建。
        data: 文本内容，原样写出，不做换行转换。
        retries: 替换的最多尝试次数。

    Raises:
        OSError: 写入或替换失败。
    """
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)

    fd, tmp_name = tempfile.mkstemp(prefix=f".{target.name}.", suffix=".tmp", dir=target.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(data)
            f.flush()
            if sys.platform != "win32":
                os.fsync(f.fileno())

        for attempt in range(1, retries + 1):
            try:
                os.replace(tmp_name, target)
                return
            except PermissionError:
                if attempt == retries:
                    raise
                time.sleep(0.1 * attempt)
    except BaseException as e:
        logger.error("原子写入失败 [%s]: %s", target, e)
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise


def canonical_json(data: Any, indent: Optional[int] = 2) -> str:
    """键排序、保留非 ASCII 字符的 JSON 文本。

    Args:
        data: 可序列化的数据。
        indent: 缩进空格数；None 时输出单行紧凑格式。

    Returns:
        JSON 字符串，不含结尾换行。
    """
    separators = (",", ": ") if indent is not None else (",", ":")
    return json.dumps(
        data,
        ensure_ascii=False,
        sort_keys=True,
        indent=indent,
        separators=separators,
    )


def write_json_lines(path: str | Path, records: Iterable[Any]) -> int:
    """以 JSON Lines 格式原子写出记录。

    每行一个紧凑、键排序的 JSON 对象，记录为空时写出空文件。

    Returns:
        写出的记录数。
    """
    lines = [canonical_json(r, indent=None) for r in records]
    atomic_write(path, "".join(line + "\n" for line in lines))
    logger.info("已写出 %d 条记录到 %s", len(lines), path)
    return len(lines)


def read_text(path: Optional[str | Path], stdin: Optional[TextIO] = None) -> str:
    """读取文本文件；path 为 None 或 "-" 时读取标准输入。

    Args:
        path: 文件路径。
        stdin: 替代的标准输入流（测试用）。

    Raises:
        OSError: 文件无法读取。
    """
    if path is None or str(path) == "-":
        return (stdin or sys.stdin).read()
    with open(path, "r", encoding="utf-8") as f:
        return f.read()
