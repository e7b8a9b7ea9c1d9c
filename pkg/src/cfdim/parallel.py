"""Order-preserving process-pool map shared by the sweeps."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable


def ordered_map(fn: Callable, items: Iterable, workers: int = 1, chunksize: int = 1) -> list:
    """``[fn(x) for x in items]``, optionally across processes.

    Results come back in input order, so any reduction done afterwards is
    independent of the worker count.
    """
    items = list(items)
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(fn, items, chunksize=chunksize))
