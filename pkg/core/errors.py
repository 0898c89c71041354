"""
异常定义模块。

所有业务异常都继承自 ``RoughSetError``，并携带命令行退出码：

- 0: 成功
- 1: 验证阶段发现保证性定律被违反
- 2: 用法 / 输入解析错误
- 3: 超出枚举上限

Example
-------
>>> try:
...     make_universe(["x", "x"])
... except DuplicateLabelError as e:
...     print(e.exit_code)
2
"""

from __future__ import annotations

from typing import Optional

__all__ = [
    "RoughSetError",
    "DuplicateLabelError",
    "EmptyUniverseError",
    "UniverseTooLargeError",
    "WidthMismatchError",
    "InvalidElementError",
    "EnumerationCapError",
    "EmptySubjectError",
    "PreconditionFailedError",
    "UnknownLabelError",
    "DocumentSyntaxError",
    "DocumentFormatError",
    "InvariantViolationError",
]


class RoughSetError(Exception):
    """粗糙集引擎的基础异常。"""

    exit_code: int = 2


class DuplicateLabelError(RoughSetError):
    """论域中出现重复的元素标签。"""

    pass


class EmptyUniverseError(RoughSetError):
    """论域为空。"""

    pass


class UniverseTooLargeError(RoughSetError):
    """论域超过绝对宽度上限。"""

    pass


class WidthMismatchError(RoughSetError):
    """参与运算的集合属于不同宽度的论域。"""

    pass


class InvalidElementError(RoughSetError):
    """元素下标或掩码超出论域范围。"""

    pass


class EnumerationCapError(RoughSetError):
    """需要枚举幂集的操作超过了枚举上限。"""

    exit_code = 3

    def __init__(self, size: int, cap: int) -> None:
        self.size = size
        self.cap = cap
        super().__init__(
            f"论域大小 {size} 超过枚举上限 {cap}，"
            f"可使用 --max-enum 提高上限（代价是 2^{size} 次枚举）"
        )


class EmptySubjectError(RoughSetError):
    """对空集求精度。"""

    pass


class PreconditionFailedError(RoughSetError):
    """操作的前置条件不成立。"""

    pass


class UnknownLabelError(RoughSetError):
    """引用了论域中不存在的标签。"""

    def __init__(self, label: str) -> None:
        self.label = label
        super().__init__(f"未知标签: {label!r}")


class DocumentSyntaxError(RoughSetError):
    """空间描述文档的语法错误。"""

    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        column: Optional[int] = None,
    ) -> None:
        self.line = line
        self.column = column
        where = f"第 {line} 行第 {column} 列: " if line is not None else ""
        super().__init__(f"{where}{message}")


class DocumentFormatError(RoughSetError):
    """文档结构合法但字段不符合约定。"""

    pass


class InvariantViolationError(RoughSetError):
    """保证性定律被违反。"""

    exit_code = 1
