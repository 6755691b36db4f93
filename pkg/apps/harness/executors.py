"""
Pluggable trial executors.

Any executor must return results indexed like its input trials; the caller
reduces them sequentially in trial order, so output never depends on the
worker count.
"""
import logging
from abc import ABC, abstractmethod
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, List, Sequence

logger = logging.getLogger(__name__)


class BaseTrialExecutor(ABC):
    """Abstract base class for trial executors."""

    @abstractmethod
    def map(self, fn: Callable[[int], Any], trials: Sequence[int]) -> List[Any]:
        """
        Run fn on every trial index.

        Args:
            fn: Picklable callable of one trial index
            trials: Trial indices

        Returns:
            Results in the order of ``trials``
        """
        pass


class SerialExecutor(BaseTrialExecutor):
    """Single-threaded reference executor."""

    def map(self, fn, trials):
        return [fn(trial) for trial in trials]


class ProcessPoolTrialExecutor(BaseTrialExecutor):
    """Runs trials on a process pool; ``Executor.map`` preserves input order."""

    def __init__(self, workers: int):
        self.workers = workers

    def map(self, fn, trials):
        chunksize = max(1, len(trials) // (4 * self.workers))
        with ProcessPoolExecutor(max_workers=self.workers) as pool:
            return list(pool.map(fn, trials, chunksize=chunksize))


def get_executor(workers: int) -> BaseTrialExecutor:
    if workers <= 1:
        return SerialExecutor()
    logger.debug(f"Using a process pool with {workers} workers")
    return ProcessPoolTrialExecutor(workers)
