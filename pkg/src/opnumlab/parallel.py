"""Deterministic thread-pool mapping used for column chunks and blocks."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, TypeVar

from .config import DEFAULT_CONFIG

T = TypeVar("T")
R = TypeVar("R")

logger = logging.getLogger(__name__)


def parallel_map(fn: Callable[[T], R], items: Iterable[T], threads: int | None = None) -> List[R]:
    """Apply ``fn`` to every item and return the results in input order.

    Parameters
    ----------
    fn:
        Pure function of one item.
    items:
        Work items; consumed eagerly.
    threads:
        Worker count (defaults to ``DEFAULT_CONFIG.threads``). With one thread
        the work runs inline.
    """
    work = list(items)
    workers = threads if threads is not None else DEFAULT_CONFIG.threads
    if workers <= 1 or len(work) <= 1:
        return [fn(item) for item in work]
    workers = min(workers, len(work))
    logger.debug("Dispatching %d items to %d threads", len(work), workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, work))
