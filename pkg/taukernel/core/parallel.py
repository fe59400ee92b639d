"""Order-preserving thread pool sweeps."""

import logging
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def sweep(fn: Callable[[T], R], items: Iterable[T], max_workers: int = 1) -> list[R]:
    """Apply ``fn`` to every item and return results in input order.

    Parameters
    ----------
    fn : callable
        Pure function of one item.
    items : iterable
        Work items.
    max_workers : int
        Thread count; ``1`` evaluates serially in the calling thread.
    """
    work = list(items)
    if max_workers <= 1 or len(work) <= 1:
        return [fn(item) for item in work]
    logger.debug("sweeping %d items on %d threads", len(work), max_workers)
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(fn, work))


__all__ = ["sweep"]
