"""
Utility functions.
"""

from __future__ import annotations
from contextlib import suppress
from threading import RLock
from typing import Any, Callable, Generic, Iterable, TypeVar

from cachetools import LRUCache as _LRUCache, cached
from vermils.collections.fridge import FrozenDict

K = TypeVar("K")
V = TypeVar("V")
T = TypeVar("T")

__all__ = ("LRUCache", "FrozenDict", "memoized", "group_counts")


class LRUCache(_LRUCache, Generic[K, V]):
    """
    A `cachetools` LRU map whose capacity may be left unbounded.

    Full sets, bases and tower levels are cached in these; `lru` lists the
    cached keys.
    """

    def __init__(self, capacity=None,
                 getsizeof: Callable[[Any], int] = None) -> None:
        capacity = float("inf") if capacity is None else capacity
        super().__init__(maxsize=capacity, getsizeof=getsizeof)

    @property
    def lru(self) -> list[K]:
        return list(self.keys())

    @property
    def length(self) -> int:
        return len(self)

    def __setitem__(self, key: K, value: V) -> None:
        # Oversized values are simply not cached
        with suppress(ValueError):
            super().__setitem__(key, value)


def memoized(capacity: int | None = None):
    """
    Memoize a pure function of hashable arguments in an `LRUCache`.

    The cache is exposed as the ``cache`` attribute of the wrapped function,
    so callers can inspect or clear it.  Lookups and insertions hold a lock,
    so the wrapped function may be shared between threads.
    """
    def decorator(func: Callable[..., T]) -> Callable[..., T]:
        cache: LRUCache = LRUCache(capacity)
        wrapped = cached(cache, lock=RLock())(func)
        wrapped.cache = cache  # type: ignore[attr-defined]
        return wrapped
    return decorator


def group_counts(items: Iterable[T]) -> FrozenDict:
    """Count equal items, keeping first-seen order."""
    counts: dict[T, int] = {}
    for item in items:
        counts[item] = counts.get(item, 0) + 1
    return FrozenDict(counts)
