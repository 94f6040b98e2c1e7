"""Bounded process pool with results in input order."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
R = TypeVar("R")

WORKERS_ENV = "KLRW_WORKERS"


def worker_count(requested: int | None = None) -> int:
    """Explicit request, else $KLRW_WORKERS, else 1."""
    if requested is None:
        raw = os.environ.get(WORKERS_ENV, "").strip()
        if raw:
            try:
                requested = int(raw)
            except ValueError:
                raise ValueError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None
        else:
            requested = 1
    if requested < 1:
        raise ValueError("worker count must be at least 1")
    return min(requested, os.cpu_count() or 1, 32)


def ordered_map(fn: Callable[[T], R], items: Iterable[T], workers: int | None = None, chunksize: int = 16) -> list[R]:
    items = list(items)
    n = worker_count(workers)
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items, chunksize=chunksize))
