"""
并行映射
按输入顺序返回结果的线程池映射，线程数上限来自 STARLIKE_THREADS
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from .config import get_config

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(fn: Callable[[T], R], items: Iterable[T], workers: Optional[int] = None) -> List[R]:
    """
    对 items 逐项调用 fn，结果顺序与输入一致

    Args:
        fn: 纯函数
        items: 输入
        workers: 线程数；默认取运行配置，1 表示串行
    """
    items = list(items)
    workers = get_config().runtime.workers if workers is None else max(1, workers)
    workers = min(workers, len(items)) if items else 1
    if workers <= 1:
        return [fn(item) for item in items]

    logger.debug(f"Mapping {len(items)} tasks over {workers} threads")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
