import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


class WorkerPool:
    """Process fan-out for independent seeded jobs.

    Results always come back in input order, so merges are deterministic
    whatever the worker count.
    """

    def __init__(self, workers: int = 1) -> None:
        self.workers = workers

    def init_cli(self, config) -> None:
        self.workers = max(1, int(getattr(config, "THREADS", 1)))
        logger.debug("worker pool capped at %d processes", self.workers)

    def map(self, fn: Callable[[T], R], items: Iterable[T], chunksize: int = 64) -> list[R]:
        items = list(items)
        if self.workers == 1 or len(items) < 2:
            return [fn(item) for item in items]
        with ProcessPoolExecutor(max_workers=min(self.workers, len(items))) as executor:
            return list(executor.map(fn, items, chunksize=chunksize))


pool = WorkerPool()
