from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, TypeVar

import numpy as np
from scipy.optimize import brentq

from ._errors import NoSignChange

__all__ = ("ordered_map", "scan_root",)

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(fn: Callable[[T], R], items: Iterable[T], threads: int = 1) -> List[R]:
    """
    Apply `fn` to every item, optionally on a thread pool, keeping the input order.

    :param fn: The function to apply.
    :param items: The inputs.
    :param threads: Number of worker threads; 1 evaluates sequentially.
    :return: Results in input order.
    """
    items = list(items)
    if threads <= 1 or len(items) < 2:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(fn, item) for item in items]
        return [future.result() for future in futures]


def scan_root(fn: Callable[[float], float], lo: float, hi: float, points: int, *,
              xtol: float, what: str) -> float:
    """
    Bracket the first sign change of `fn` on a uniform scan of [lo, hi] and polish it.

    Points where `fn` returns NaN are skipped and never bracket a root.

    :param fn: Scalar function.
    :param lo: Lower end of the scan.
    :param hi: Upper end of the scan.
    :param points: Number of scan points.
    :param xtol: Absolute tolerance passed to Brent's method.
    :param what: Description of the searched quantity used in error messages.
    :return: The root.
    :raises NoSignChange: If no sign change is found.
    """
    grid = np.linspace(lo, hi, points)
    values = np.array([fn(x) for x in grid])
    finite = np.flatnonzero(np.isfinite(values))
    for a, b in zip(finite[:-1], finite[1:]):
        if values[a] == 0.0:
            return float(grid[a])
        if b == a + 1 and np.sign(values[a]) != np.sign(values[b]):
            return float(brentq(fn, grid[a], grid[b], xtol=xtol))
    if finite.size and values[finite[-1]] == 0.0:
        return float(grid[finite[-1]])
    raise NoSignChange(f"No sign change of the {what} in [{lo:.6g}, {hi:.6g}] "
                       f"({finite.size} of {points} scan points evaluated); widen the bracket")
