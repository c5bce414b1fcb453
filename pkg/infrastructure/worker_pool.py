import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from config.settings import BENCH_WORKERS

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

_executor: Optional[ProcessPoolExecutor] = None
_executor_workers = 0


def get_pool(workers: int) -> Optional[ProcessPoolExecutor]:
    """workers > 1 일 때만 프로세스 풀을 만든다. 같은 크기면 재사용."""
    global _executor, _executor_workers
    if workers <= 1:
        return None
    if _executor is not None and _executor_workers == workers:
        return _executor
    shutdown_pool()
    try:
        _executor = ProcessPoolExecutor(max_workers=workers)
        _executor_workers = workers
    except (OSError, NotImplementedError) as e:
        logger.error(f"Process pool unavailable, running sequentially: {e}")
        _executor = None
    return _executor


def shutdown_pool() -> None:
    global _executor, _executor_workers
    if _executor is not None:
        _executor.shutdown(wait=True)
    _executor = None
    _executor_workers = 0


def run_tasks(fn: Callable[[T], R], tasks: Iterable[T], workers: int = BENCH_WORKERS) -> List[R]:
    """입력 순서대로 결과를 돌려준다 (완료 순서와 무관)"""
    tasks = list(tasks)
    pool = get_pool(workers)
    if pool is None:
        return [fn(task) for task in tasks]
    logger.debug(f"dispatching {len(tasks)} tasks to {workers} workers")
    return list(pool.map(fn, tasks))
