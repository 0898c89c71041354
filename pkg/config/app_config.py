"""
应用配置模块。

提供粗糙近似引擎的运行配置管理：枚举上限、缓存容量、并行度、
审计语料参数与输出格式。支持从 JSON 文件加载/保存配置，并提供类型安全和验证。

设计原则
--------
- AppConfig: 计算与输出配置（上限、缓存、格式、日志）
- AuditConfig: 定律审计的语料参数（种子、规模、边概率）

Example
-------
>>> config = AppConfig.load()
>>> print(config.max_enum)
20
>>> config.save()
"""

from __future__ import annotations

import json
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple


# =============================================================================
# 项目根目录与数据目录
# =============================================================================

# 项目根目录：config/ 的父目录（即 main.py 所在目录）
_PROJECT_ROOT = Path(__file__).resolve().parent.parent

# 数据目录：配置文件、日志与审计结果的统一存放位置
_DATA_DIR = _PROJECT_ROOT / "data"

# 绝对宽度上限（单个机器字）
_ABSOLUTE_MAX_WIDTH = 64

logger = logging.getLogger("RoughApprox")


def get_data_dir() -> Path:
    """获取数据目录的绝对路径，并确保其存在。

    Returns
    -------
    Path
        数据目录路径
    """
    _DATA_DIR.mkdir(parents=True, exist_ok=True)
    return _DATA_DIR


def get_project_root() -> Path:
    """获取项目根目录的绝对路径。

    Returns
    -------
    Path
        项目根目录路径
    """
    return _PROJECT_ROOT


# =============================================================================
# 审计配置
# =============================================================================

@dataclass
class AuditConfig:
    """
    定律审计相关配置类。

    Attributes
    ----------
    exhaustive_max_n : int
        穷举全部关系时允许的最大论域大小，默认为 3（512 个关系）
    allow_exhaustive_n4 : bool
        是否允许 n = 4 的穷举（65 536 个关系），默认为 False
    edge_probabilities : tuple of float
        随机关系中每个有序对独立出现的概率集合
    seed : int
        随机语料的默认种子
    count : int
        随机语料的默认空间数量
    n : int
        随机语料的默认论域大小，范围 1-8
    pairs_per_space : int
        每个空间抽样的 (S, N) 子集对数量

    Raises
    ------
    ValueError
        当配置值超出有效范围时抛出
    """

    exhaustive_max_n: int = 3
    allow_exhaustive_n4: bool = False
    edge_probabilities: Tuple[float, ...] = (0.2, 0.5, 0.8)
    seed: int = 7
    count: int = 100
    n: int = 6
    pairs_per_space: int = 100

    def __post_init__(self) -> None:
        """验证配置值的有效性。"""
        if not 1 <= self.exhaustive_max_n <= 4:
            raise ValueError(
                f"exhaustive_max_n 必须在 1-4 之间，当前值: {self.exhaustive_max_n}"
            )
        self.edge_probabilities = tuple(float(p) for p in self.edge_probabilities)
        if not self.edge_probabilities:
            raise ValueError("edge_probabilities 不能为空")
        for p in self.edge_probabilities:
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"edge_probabilities 必须在 [0, 1] 之间，当前值: {p}")
        if self.count < 0:
            raise ValueError(f"count 必须 >= 0，当前值: {self.count}")
        if not 1 <= self.n <= 8:
            raise ValueError(f"n 必须在 1-8 之间，当前值: {self.n}")
        if self.pairs_per_space < 0:
            raise ValueError(
                f"pairs_per_space 必须 >= 0，当前值: {self.pairs_per_space}"
            )

    def to_dict(self) -> Dict[str, Any]:
        """
        转换为字典格式。

        Returns
        -------
        dict
            可用于 JSON 序列化的字典
        """
        return {
            "exhaustive_max_n": self.exhaustive_max_n,
            "allow_exhaustive_n4": self.allow_exhaustive_n4,
            "edge_probabilities": list(self.edge_probabilities),
            "seed": self.seed,
            "count": self.count,
            "n": self.n,
            "pairs_per_space": self.pairs_per_space,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "AuditConfig":
        """
        从字典创建配置实例。

        逐键验证：未知键与取值无效的键被跳过并记录警告，其余键照常生效。

        Parameters
        ----------
        data : dict
            配置字典

        Returns
        -------
        AuditConfig
            配置实例
        """
        kwargs: Dict[str, Any] = {}
        for key, value in data.items():
            convert = _AUDIT_CONVERTERS.get(key)
            if convert is None:
                logger.warning("跳过未知的审计配置键 '%s'", key)
                continue
            try:
                converted = convert(value)
                cls(**{key: converted})
            except (TypeError, ValueError) as e:
                logger.warning("跳过无效的审计配置键 '%s': %s", key, e)
                continue
            kwargs[key] = converted
        return cls(**kwargs)


_AUDIT_CONVERTERS: Dict[str, Callable[[Any], Any]] = {
    "exhaustive_max_n": int,
    "allow_exhaustive_n4": bool,
    "edge_probabilities": tuple,
    "seed": int,
    "count": int,
    "n": int,
    "pairs_per_space": int,
}


# =============================================================================
# 应用配置
# =============================================================================

@dataclass
class AppConfig:
    """
    应用配置类。

    Attributes
    ----------
    max_enum : int
        需要枚举幂集的操作所允许的最大论域大小
    max_width : int
        论域的绝对宽度上限，不超过 64
    cache_size : int
        每个空间的记忆化缓存容量
    workers : int
        构建集合族与审计时使用的线程数
    use_closed_forms : bool
        ℙ / δℙ 近似是否走闭式快速路径；为 False 时一律扫描集合族
    output_format : str
        默认输出格式，``table`` 或 ``json``

    Example
    -------
    >>> config = AppConfig.load()
    >>> config.audit.seed
    7
    """

    # 计算配置
    max_enum: int = 20
    max_width: int = _ABSOLUTE_MAX_WIDTH
    cache_size: int = 4096
    workers: int = 1
    use_closed_forms: bool = True

    # 审计配置
    audit: AuditConfig = field(default_factory=AuditConfig)
    findings_file: str = "data/findings.jsonl"

    # 输出与日志
    output_format: str = "table"
    log_level: str = "WARNING"
    log_to_file: bool = False
    config_file: str = "data/config.json"

    def __post_init__(self) -> None:
        """验证配置值的有效性。"""
        if self.max_enum < 1:
            raise ValueError(f"max_enum 必须 >= 1，当前值: {self.max_enum}")
        if not 1 <= self.max_width <= _ABSOLUTE_MAX_WIDTH:
            raise ValueError(
                f"max_width 必须在 1-{_ABSOLUTE_MAX_WIDTH} 之间，当前值: {self.max_width}"
            )
        if self.cache_size < 1:
            raise ValueError(f"cache_size 必须 >= 1，当前值: {self.cache_size}")
        if self.workers < 1:
            raise ValueError(f"workers 必须 >= 1，当前值: {self.workers}")
        if self.output_format not in ("table", "json"):
            raise ValueError(
                f"output_format 必须是 table 或 json，当前值: {self.output_format}"
            )

    # =========================================================================
    # 序列化
    # =========================================================================

    def to_dict(self) -> Dict[str, Any]:
        """
        转换为可序列化的字典。

        Returns
        -------
        dict
            可用于 JSON 序列化的配置字典
        """
        result: Dict[str, Any] = {}

        for key, value in self.__dict__.items():
            if key.startswith("_"):
                continue

            if isinstance(value, AuditConfig):
                result[key] = value.to_dict()
            elif isinstance(value, (str, int, float, bool, type(None))):
                result[key] = value

        return result

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "AppConfig":
        """
        从字典创建配置实例。

        逐键验证：未知键与取值无效的键会被跳过并记录警告，其余键照常生效。

        Parameters
        ----------
        data : dict
            配置字典

        Returns
        -------
        AppConfig
            配置实例
        """
        known = set(cls.__dataclass_fields__)
        processed: Dict[str, Any] = {}

        for key, value in data.items():
            if key.startswith("_") or key not in known:
                logger.warning("跳过未知的配置键 '%s'", key)
                continue

            if key == "audit":
                if not isinstance(value, dict):
                    logger.warning("audit 配置必须是对象，已跳过")
                    continue
                processed[key] = AuditConfig.from_dict(value)
                continue

            try:
                # 其余字段取默认值，__post_init__ 只检查这一个键
                cls(**{key: value})
            except (TypeError, ValueError) as e:
                logger.warning("跳过无效的配置键 '%s': %s", key, e)
                continue
            processed[key] = value

        return cls(**processed)

    # =========================================================================
    # 文件操作
    # =========================================================================

    @classmethod
    def load(cls, path: Optional[str] = None) -> "AppConfig":
        """
        从 JSON 文件加载配置。

        文件缺失、为空、无法解析或根元素不是对象时返回默认配置，
        原因记录在日志中；配置错误不会让命令失败。

        Parameters
        ----------
        path : str, optional
            配置文件路径，默认为数据目录下的 config.json
        """
        source = Path(path) if path else _DATA_DIR / "config.json"
        if not source.is_file():
            logger.debug("配置文件 %s 不存在，使用默认配置", source)
            return cls()

        try:
            text = source.read_text(encoding="utf-8")
        except OSError as e:
            logger.warning("读取配置文件 %s 失败: %s", source, e)
            return cls()

        if not text.strip():
            logger.warning("配置文件 %s 为空，使用默认配置", source)
            return cls()
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            logger.warning("配置文件 %s 第 %d 行 JSON 无效: %s", source, e.lineno, e.msg)
            return cls()
        if not isinstance(data, dict):
            logger.warning("配置文件 %s 的根元素必须是对象，使用默认配置", source)
            return cls()

        config = cls.from_dict(data)
        config.config_file = str(source)
        logger.info("已加载配置 %s", source)
        return config

    def save(self, path: Optional[str] = None) -> bool:
        """
        以原子写入保存配置（键排序、缩进 2）。

        Returns
        -------
        bool
            是否保存成功
        """
        from utils.helpers import atomic_write, canonical_json

        target = path or self.config_file
        try:
            atomic_write(target, canonical_json(self.to_dict()) + "\n")
        except OSError as e:
            logger.error("保存配置到 %s 失败: %s", target, e)
            return False
        logger.info("配置已保存到 %s", target)
        return True

    # =========================================================================
    # 验证
    # =========================================================================

    def validate(self) -> List[str]:
        """
        验证配置合理性。

        构造阶段已拒绝非法取值，这里只报告可用但代价过高的组合。

        Returns
        -------
        list of str
            警告消息列表，空列表表示验证通过
        """
        warnings: List[str] = []

        if self.max_enum > 24:
            warnings.append(
                f"max_enum = {self.max_enum} 时幂集枚举规模达到 2^{self.max_enum}，"
                "运行时间可能不可接受"
            )

        if self.max_enum > self.max_width:
            warnings.append(
                f"max_enum ({self.max_enum}) 大于 max_width ({self.max_width})，"
                "实际上限以 max_width 为准"
            )

        if self.audit.allow_exhaustive_n4 and self.audit.exhaustive_max_n < 4:
            warnings.append("allow_exhaustive_n4 已开启，但 exhaustive_max_n < 4")

        if self.workers > (os.cpu_count() or 1) * 4:
            warnings.append(
                f"workers = {self.workers} 远超 CPU 核数，线程切换开销会抵消收益"
            )

        if self.log_level.upper() not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            warnings.append(f"未知的日志级别: {self.log_level}")

        return warnings


# =============================================================================
# 日志
# =============================================================================

def setup_logging(level: str = "WARNING", log_to_file: bool = False) -> logging.Logger:
    """
    配置应用日志器。

    控制台处理器写入 stderr（stdout 只输出数据）；log_to_file 开启时
    另在数据目录下记录 DEBUG 及以上级别的文件日志。重复调用只调整级别。

    Parameters
    ----------
    level : str
        控制台日志级别
    log_to_file : bool
        是否同时写入 data/rough_approx.log

    Returns
    -------
    logging.Logger
        名为 RoughApprox 的日志器
    """
    root = logging.getLogger("RoughApprox")
    console_level = getattr(logging, level.upper(), logging.WARNING)

    console = next(
        (h for h in root.handlers if getattr(h, "_rough_console", False)), None
    )
    if console is None:
        console = logging.StreamHandler(sys.stderr)
        console._rough_console = True  # type: ignore[attr-defined]
        console.setFormatter(
            logging.Formatter(
                "%(asctime)s [%(levelname)s] %(name)s: %(message)s",
                datefmt="%H:%M:%S",
            )
        )
        root.addHandler(console)
    else:
        # stderr 可能已被替换（如测试中的捕获流），旧流可能已关闭，不做 flush
        console.stream = sys.stderr
    console.setLevel(console_level)

    if log_to_file and not any(isinstance(h, logging.FileHandler) for h in root.handlers):
        try:
            file_handler = logging.FileHandler(
                str(get_data_dir() / "rough_approx.log"),
                encoding="utf-8",
                delay=True,
            )
            file_handler.setLevel(logging.DEBUG)
            file_handler.setFormatter(
                logging.Formatter(
                    "%(asctime)s [%(levelname)s] [%(threadName)s] %(name)s: %(message)s",
                    datefmt="%Y-%m-%d %H:%M:%S",
                )
            )
            root.addHandler(file_handler)
        except OSError as e:
            root.warning("无法创建日志文件: %s", e)

    root.setLevel(logging.DEBUG if log_to_file else console_level)
    root.propagate = False
    return root


# =============================================================================
# 全局实例
# =============================================================================

def _create_config() -> AppConfig:
    """创建并验证全局配置实例。"""
    config = AppConfig.load()

    for warning in config.validate():
        logger.warning("配置验证警告: %s", warning)

    return config


CONFIG = _create_config()
