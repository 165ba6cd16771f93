import os
import logging
import concurrent.futures as cf

logger = logging.getLogger(__name__)

THREADS_ENV = "FNLS_NUM_THREADS"


def num_threads() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        logger.warning("Ignoring non-integer %s=%r", THREADS_ENV, raw)
        return 1


def ordered_map(fn, items, workers: int = None):
    """
    Map fn over items and return results in input order.
    Runs inline for one worker; numpy releases the GIL inside FFTs and reductions,
    so a thread pool is enough for the heavy loops.
    """
    items = list(items)
    workers = num_threads() if workers is None else workers
    if workers <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with cf.ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))
