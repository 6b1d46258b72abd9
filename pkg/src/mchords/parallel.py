"""Optional thread parallelism for the O(n^2) scans and direction sweeps.

MCHORDS_THREADS caps the worker count (1 disables threading).  Results are
always collected in submission order, so reductions stay deterministic.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def thread_count() -> int:
    env = os.environ.get("MCHORDS_THREADS")
    if env is not None:
        try:
            n = int(env)
        except ValueError:
            n = 1
        return max(1, n)
    return max(1, min(4, os.cpu_count() or 1))


def pmap(fn, items):
    """map(fn, items) in order, threaded when it is worth it."""
    items = list(items)
    n = thread_count()
    if n <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=min(n, len(items))) as ex:
        return list(ex.map(fn, items))
