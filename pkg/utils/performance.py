import time
import logging
import threading
from functools import wraps
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from utils.env_loader import thread_count

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

# Executors still alive, shut down by shutdown_executors()
_active_executors = set()
_lock = threading.RLock()


def timing_decorator(func):
    """Decorator to measure execution time of functions."""

    @wraps(func)
    def wrapper(*args, **kwargs):
        start_time = time.time()
        result = func(*args, **kwargs)
        end_time = time.time()
        logger.debug(
            f"Function {func.__name__} took {end_time - start_time:.2f} seconds to execute"
        )
        return result

    return wrapper


def create_managed_executor(max_workers=None, thread_name_prefix="weyl"):
    """Create a thread pool executor that is registered for cleanup."""
    executor = ThreadPoolExecutor(
        max_workers=max_workers, thread_name_prefix=thread_name_prefix
    )
    with _lock:
        _active_executors.add(executor)
    return executor


def shutdown_executors():
    """Shut down every executor created through create_managed_executor."""
    with _lock:
        for executor in list(_active_executors):
            try:
                logger.debug(f"Shutting down executor: {executor}")
                executor.shutdown(wait=True)
            except Exception as e:
                logger.error(f"Error shutting down executor: {e}")
            finally:
                _active_executors.discard(executor)


def parallel_map(
    func: Callable[[T], R], items: Iterable[T], max_workers: Optional[int] = None
) -> List[R]:
    """Apply func to every item, possibly on several threads.

    Results always come back in input order, so callers that assemble bases
    from them get the same output for every thread count.

    Args:
        func: Pure function applied to each item
        items: Items to process
        max_workers: Thread cap; defaults to WEYL_THREADS

    Returns:
        list: func(item) for each item, in order
    """
    items = list(items)
    if max_workers is None:
        max_workers = thread_count()
    if max_workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]

    executor = create_managed_executor(max_workers=min(max_workers, len(items)))
    try:
        return list(executor.map(func, items))
    finally:
        executor.shutdown(wait=True)
        with _lock:
            _active_executors.discard(executor)
