"""Defined types used in harmospec."""

import os
from collections.abc import Callable

import numpy as np
from numpy.typing import ArrayLike

StrPath = str | os.PathLike

Point = tuple[float, ...] | np.ndarray

# Maps an (n, d) array of points to n values
Field = Callable[[np.ndarray], np.ndarray]

__all__ = ["ArrayLike", "Field", "Point", "StrPath"]
