"""
LRU 记忆化缓存模块。

每个拓扑空间持有一个有界缓存，记忆化 interior / closure / δ-closure
以及各粒度近似的扫描结果。键为 ``(操作名, 掩码...)`` 元组，值为掩码。

线程安全性
----------
表操作在 RLock 内完成；加载函数在锁外执行，两个线程同时未命中同一键时
各自计算一次，先写入者的结果保留（相同输入的结果相同）。

Example
-------
>>> cache = LRUCache(maxsize=100)
>>> cache.memo(("int", 0b0110), lambda: 0b0100)
4
>>> cache.stats()["by_op"]
{'int': {'hits': 0, 'misses': 1}}
"""

from __future__ import annotations

import threading
from collections import OrderedDict
from typing import Any, Callable, Dict, Hashable

__all__ = ["LRUCache"]


def _op_name(key: Hashable) -> str:
    if isinstance(key, tuple) and key:
        return str(key[0])
    return "-"


class LRUCache:
    """
    线程安全的有界记忆化表。

    OrderedDict 末尾为最近使用项，超出容量时从头部淘汰。

    Attributes
    ----------
    maxsize : int
        最大缓存容量
    """

    def __init__(self, maxsize: int = 4096) -> None:
        if maxsize < 1:
            raise ValueError(f"maxsize 必须 >= 1，当前值: {maxsize}")

        self.maxsize = maxsize
        self._table: "OrderedDict[Hashable, Any]" = OrderedDict()
        self._lock = threading.RLock()
        # 操作名 -> [命中, 未命中]
        self._counters: Dict[str, list] = {}

    def _count(self, key: Hashable, hit: bool) -> None:
        counter = self._counters.setdefault(_op_name(key), [0, 0])
        counter[0 if hit else 1] += 1

    def memo(self, key: Hashable, loader: Callable[[], Any]) -> Any:
        """
        返回 key 的缓存值，未命中时调用 loader 计算并记录。

        Parameters
        ----------
        key : hashable
            ``(操作名, 掩码...)`` 形式的键
        loader : callable
            无参加载函数

        Returns
        -------
        Any
            缓存值或新计算的值
        """
        with self._lock:
            if key in self._table:
                self._table.move_to_end(key)
                self._count(key, True)
                return self._table[key]

        value = loader()

        with self._lock:
            if key in self._table:
                self._count(key, True)
                return self._table[key]
            self._count(key, False)
            self._table[key] = value
            while len(self._table) > self.maxsize:
                self._table.popitem(last=False)
            return value

    def __contains__(self, key: Hashable) -> bool:
        with self._lock:
            return key in self._table

    def __len__(self) -> int:
        with self._lock:
            return len(self._table)

    def clear(self) -> None:
        with self._lock:
            self._table.clear()
            self._counters.clear()

    def stats(self) -> Dict[str, Any]:
        """
        缓存统计。

        Returns
        -------
        dict
            size、maxsize、总命中 / 未命中次数，以及按操作名分组的计数
        """
        with self._lock:
            by_op = {
                op: {"hits": c[0], "misses": c[1]}
                for op, c in sorted(self._counters.items())
            }
            return {
                "size": len(self._table),
                "maxsize": self.maxsize,
                "hits": sum(c[0] for c in self._counters.values()),
                "misses": sum(c[1] for c in self._counters.values()),
                "by_op": by_op,
            }
