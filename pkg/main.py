#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""rough-approx 命令行入口。

在关系诱导的有限拓扑上计算 τ / ℙ / δℙ 三粒度的粗糙近似、精度、
24 个区域与可定义性类别，并在关系语料上审计相关定律。

系统要求:
    - Python 3.9+
    - click 8+

使用方法:
    python main.py --space fixtures/four_points.json accuracy-table --paper-rows
    python main.py verify --exhaustive 3

License:
    MIT License

Author:
    RoughApprox Team
"""

from __future__ import annotations

import importlib.util
import logging
import os
import platform
import sys
import traceback
from types import TracebackType
from typing import List, Optional, Sequence, Type

# 项目根目录加入搜索路径，使 `python main.py` 在任意工作目录下可用
_ROOT = os.path.dirname(os.path.abspath(__file__))
if _ROOT not in sys.path:
    sys.path.insert(0, _ROOT)

# 运行时必需的第三方包（导入名）
REQUIRED_PACKAGES = ("click",)

logger = logging.getLogger("RoughApprox")


def check_dependencies() -> List[str]:
    """返回 REQUIRED_PACKAGES 中无法导入的包名。"""
    return [name for name in REQUIRED_PACKAGES if importlib.util.find_spec(name) is None]


# 未预期异常的退出码，与解释器对未捕获异常的退出码一致
CRASH_EXIT_CODE = 1


class ExceptionHandler:
    """全局异常处理器。

    with 块内逃逸的异常在离开块时即被截获：完整堆栈以 CRITICAL 记录到日志，
    stderr 上只给出一行说明，stdout 只承载数据输出。块内同时安装
    sys.excepthook，直接交给钩子的异常走同一路径。键盘中断与 SystemExit
    不截获。

    Attributes:
        crashed: with 块内是否截获过异常。
    """

    def __init__(self) -> None:
        self._original_hook = sys.excepthook
        self.crashed = False

    def install(self) -> None:
        """安装异常处理钩子。"""
        self._original_hook = sys.excepthook
        sys.excepthook = self.report

    def uninstall(self) -> None:
        """卸载异常处理钩子，恢复原始处理器。"""
        sys.excepthook = self._original_hook

    def __enter__(self) -> "ExceptionHandler":
        self.install()
        return self

    def __exit__(
        self,
        exc_type: Optional[Type[BaseException]],
        exc_value: Optional[BaseException],
        exc_tb: Optional[TracebackType],
    ) -> bool:
        self.uninstall()
        if exc_type is None or not issubclass(exc_type, Exception):
            return False
        self.report(exc_type, exc_value, exc_tb)
        self.crashed = True
        return True

    def report(
        self,
        exc_type: Type[BaseException],
        exc_value: Optional[BaseException],
        exc_tb: Optional[TracebackType],
    ) -> None:
        if issubclass(exc_type, KeyboardInterrupt):
            self._original_hook(exc_type, exc_value, exc_tb)
            return
        logger.critical(
            "未捕获的异常:\n%s", "".join(traceback.format_exception(exc_type, exc_value, exc_tb))
        )
        print(f"程序错误: {exc_type.__name__}: {exc_value}", file=sys.stderr)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """命令行入口函数。

    Args:
        argv: 命令行参数，默认取 sys.argv[1:]。

    Returns:
        程序退出码：0 成功，1 保证性定律被违反，2 用法或输入错误，3 超出枚举上限。
    """
    missing = check_dependencies()
    if missing:
        print(f"错误: 缺少依赖包: {', '.join(missing)}", file=sys.stderr)
        print(f"请使用以下命令安装: pip install {' '.join(missing)}", file=sys.stderr)
        return 2

    from config import CONFIG, get_config_summary, setup_logging
    from core import get_status

    setup_logging(CONFIG.log_level, CONFIG.log_to_file)
    logger.debug("Python %s / %s, 工作目录 %s", sys.version.split()[0], platform.platform(), os.getcwd())
    logger.debug("配置: %s", get_config_summary())
    logger.debug("核心模块: %s", get_status())

    import click

    from cli import cli

    handler = ExceptionHandler()
    result = None
    with handler:
        try:
            # standalone_mode=False: ctx.exit(code) 以返回值形式交回退出码
            result = cli.main(
                args=list(argv) if argv is not None else None,
                prog_name="rough-approx",
                standalone_mode=False,
            )
        except click.ClickException as e:
            e.show()
            return e.exit_code
        except click.exceptions.Abort:
            print("已中止", file=sys.stderr)
            return 1
    if handler.crashed:
        return CRASH_EXIT_CODE
    return result if isinstance(result, int) else 0


if __name__ == "__main__":
    sys.exit(main())
