import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from duality_lab.common.logger import Logger

logger = Logger("concurrency")

THREADS_ENV = 'DUALITY_LAB_THREADS'

T = TypeVar('T')
R = TypeVar('R')


def worker_count(requested: Optional[int] = None) -> int:
    """Worker count capped by DUALITY_LAB_THREADS when set"""
    count = requested if requested is not None else (os.cpu_count() or 1)
    cap = os.getenv(THREADS_ENV)
    if cap:
        try:
            count = min(count, max(1, int(cap)))
        except ValueError:
            logger.warn(f"Ignoring invalid {THREADS_ENV} value [value: {cap}]")
    return max(1, count)


def parallel_map(func: Callable[[T], R], items: Iterable[T], workers: Optional[int] = None) -> List[R]:
    """Ordered map over items, threaded when more than one worker is allowed"""
    items = list(items)
    workers = min(worker_count(workers), max(1, len(items)))
    if workers == 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


def max_reduce(values: Iterable[float], initial: float = 0.0) -> float:
    result = initial
    for value in values:
        if value > result:
            result = value
    return result
