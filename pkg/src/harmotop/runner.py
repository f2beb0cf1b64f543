"""Ordered parallel evaluation over grids and the self-test runner."""

import logging
import time
from collections.abc import Callable, Iterable
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import TypeVar

import numpy as np
import pandas as pd
from elbow.utils import cpu_count, setup_logging

from harmotop import suites

S = TypeVar("S")
R = TypeVar("R")


def _init_worker(level: str) -> None:
    # reset logger for each worker
    setup_logging(level, max_repeats=None)


def resolve_threads(threads: int) -> int:
    """Worker count; -1 uses all available cores."""
    if threads == -1:
        return cpu_count()
    if threads <= 0:
        raise ValueError(f"Invalid threads {threads}; expected -1 or > 0")
    return threads


def parallel_map(
    fn: Callable[[S], R], items: Iterable[S], threads: int = 1
) -> list[R]:
    """Evaluate fn over items with worker processes, results in input order.

    Reductions over the results happen in the caller, in input order, so the
    output does not depend on the worker count.
    """
    items = list(items)
    workers = min(resolve_threads(threads), len(items))
    if workers <= 1:
        return [fn(item) for item in items]

    level = logging.getLevelName(logging.getLogger().getEffectiveLevel())
    with ProcessPoolExecutor(
        workers, initializer=_init_worker, initargs=(level,)
    ) as pool:
        futures = [pool.submit(fn, item) for item in items]
        results = []
        for ii, future in enumerate(futures):
            try:
                results.append(future.result())
            except Exception as exc:
                logging.warning("Generated exception for item %d", ii, exc_info=exc)
                raise
    return results


def parallel_chunks(
    fn: Callable[[np.ndarray], list[R]], grid: np.ndarray, threads: int = 1
) -> list[R]:
    """Evaluate fn over contiguous chunks of a grid, one chunk per worker.

    fn maps a chunk to one result per grid point; results are concatenated in
    grid order.
    """
    chunks = np.array_split(np.asarray(grid), min(resolve_threads(threads), len(grid)))
    return [value for chunk in parallel_map(fn, chunks, threads) for value in chunk]


def run_selftests(path: Path | None = None, threads: int = 1) -> pd.DataFrame:
    """Run the configured invariant suites; one row per suite."""
    entries = suites.create_suites(suites.load_suites(path))
    logging.info("Running %d self-test suites", len(entries))
    tic = time.monotonic()
    results = parallel_map(suites.run_suite, entries, threads)
    table = pd.DataFrame(results, columns=suites.SuiteResult._fields)
    logging.info(
        "Done self-tests: %d/%d passed; elapsed: %.2fs",
        int(table["passed"].sum()),
        len(table),
        time.monotonic() - tic,
    )
    return table
