"""
Replicate scheduling. Results come back in job order whatever the completion order.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Sequence, TypeVar

logger = logging.getLogger(__name__)

Job = TypeVar("Job")
Result = TypeVar("Result")


def run_jobs(fn: Callable[[Job], Result], jobs: Sequence[Job], workers: int = 1, label: str = "jobs") -> List[Result]:
    """fn must be a module-level function when workers > 1."""
    total = len(jobs)
    step = max(1, total // 10)
    results: List[Result] = []
    if workers <= 1 or total <= 1:
        for i, job in enumerate(jobs, start=1):
            results.append(fn(job))
            if i % step == 0 or i == total:
                logger.info("%s: %s/%s done", label, i, total)
        return results

    with ProcessPoolExecutor(max_workers=workers) as pool:
        for i, result in enumerate(pool.map(fn, jobs, chunksize=max(1, total // (workers * 8))), start=1):
            results.append(result)
            if i % step == 0 or i == total:
                logger.info("%s: %s/%s done", label, i, total)
    return results
