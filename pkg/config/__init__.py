"""
配置模块。

提供引擎运行配置的管理功能，包括：
- 应用配置（枚举上限、缓存、并行度、输出格式）
- 审计配置（语料种子、规模、边概率）

Example
-------
>>> from config import CONFIG
>>> print(CONFIG.max_enum)
"""

from __future__ import annotations

__version__ = "1.0.0"
__author__ = "RoughApprox Team"

from typing import Dict

# =============================================================================
# 核心模块导入
# =============================================================================

try:
    from .app_config import (
        AppConfig,
        AuditConfig,
        CONFIG,
        get_data_dir,
        get_project_root,
        setup_logging,
    )
except ImportError as e:
    raise ImportError(f"无法导入 app_config 模块: {e}") from e


__all__ = [
    # 版本信息
    "__version__",
    "__author__",
    # 应用配置
    "AppConfig",
    "AuditConfig",
    "CONFIG",
    "get_data_dir",
    "get_project_root",
    "setup_logging",
]


def get_config_summary() -> Dict[str, str]:
    """
    获取配置摘要信息。

    主要用于调试和日志记录。

    Returns
    -------
    dict
        包含版本、配置文件路径、枚举上限和线程数的字典
    """
    return {
        "version": __version__,
        "config_file": str(CONFIG.config_file),
        "max_enum": str(CONFIG.max_enum),
        "workers": str(CONFIG.workers),
    }
