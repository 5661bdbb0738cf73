import sys
import logging
import threading
import multiprocessing
from contextlib import contextmanager
from logging.handlers import QueueHandler
from multiprocessing import Queue
from typing import Callable, Iterable, List

from tqdm import tqdm

__all__ = [
    'parallel_map',
]


def parallel_map(func: Callable,
                 items: Iterable,
                 parallel_computation: bool = False,
                 max_cores: int = 4,
                 log_level: int = logging.INFO,
                 desc: str = None) -> List:
    """
    Ordered map of `func` over `items`.

    With `parallel_computation` the calls run in a process pool whose workers
    send their log records through a queue to a listener thread of this
    process. Results keep the input order either way, so downstream reports
    do not depend on scheduling. `func` and the items must be picklable.
    """
    items = list(items)

    if not parallel_computation or len(items) < 2:
        return [func(item) for item in tqdm(items, desc=desc, disable=desc is None, file=sys.stderr)]

    processes = max(1, min(max_cores, multiprocessing.cpu_count(), len(items)))
    logger = logging.getLogger(__name__)
    logger.debug(f'Mapping {len(items)} items over {processes} processes.')

    with _set_logger_queue() as logger_queue:
        with multiprocessing.Pool(processes, initializer=_set_workers_log, initargs=(logger_queue, log_level)) as pool:
            results = list(tqdm(
                pool.imap(func, items),
                total=len(items), desc=desc, disable=desc is None, file=sys.stderr,
            ))
    return results


@contextmanager
def _set_logger_queue():
    logger_queue = Queue()
    listener = threading.Thread(target=_logger_thread, args=(logger_queue,))
    listener.start()
    try:
        yield logger_queue
    finally:
        logger_queue.put(None)
        if listener.is_alive():
            listener.join()


def _logger_thread(q):
    while True:
        record = q.get()
        if record is None:
            break
        logger = logging.getLogger(record.name)
        logger.handle(record)


def _set_workers_log(logger_queue, level: int = logging.INFO):
    qh = QueueHandler(logger_queue)
    root = logging.getLogger()
    root.handlers.clear()
    root.setLevel(level)
    root.addHandler(qh)
