"""Deterministic work dispatch.

Workers may run concurrently, but results are always merged in submission
order, so every pipeline output is byte-identical for any thread count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")
U = TypeVar("U")


def pmap(fn: Callable[[T], U], items: Iterable[T], threads: int = 1) -> list[U]:
    """Map preserving input order; threads <= 1 runs sequentially."""
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))
