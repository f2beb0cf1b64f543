"""Reading symbols from files and dumping finite sections."""

import json
import logging
import re
from pathlib import Path
from typing import NamedTuple

import numpy as np
import pandas as pd

from harmospec.harmonic_basis import cumulative_multiplicity
from harmospec.symbols import BoundaryMeta, GeneralSymbol, Sampled
from harmospec.typing import StrPath

_MATRIX_HEADER = re.compile(r"#\s*harmotop matrix d=(\d+) K=(\d+) n=(\d+)")


def load_sampled_profile(path: StrPath) -> Sampled:
    """Load a radial profile from a two-column (r, v) CSV file.

    Lines starting with '#' are comments; a non-numeric first row is taken as
    a header.
    """
    df = pd.read_csv(path, comment="#", header=None, skipinitialspace=True)
    if df.shape[1] != 2:
        raise ValueError(
            f"Expected two columns (r, v) in {path}; got {df.shape[1]}"
        )
    df = df.apply(pd.to_numeric, errors="coerce")
    if df.iloc[0].isna().any():
        df = df.iloc[1:]
    if df.isna().to_numpy().any():
        raise ValueError(f"Expected numeric samples in {path}")
    logging.debug("Loaded %d profile samples from %s", len(df), path)
    return Sampled.from_arrays(df.iloc[:, 0].to_numpy(), df.iloc[:, 1].to_numpy())


def load_general_symbol(path: StrPath) -> GeneralSymbol:
    """Load a sampled non-radial symbol from JSON.

    The document holds `points` (list of d-vectors in the ball), `values`, and
    optionally `gamma` with `a0` (constant boundary trace) and a `name`.
    """
    with open(path) as f:
        doc = json.load(f)
    missing = {"points", "values"} - set(doc)
    if missing:
        raise ValueError(f"Expected keys {sorted(missing)} in {path}")

    meta = None
    if "gamma" in doc:
        if "a0" not in doc:
            raise ValueError(f"Expected 'a0' alongside 'gamma' in {path}")
        meta = BoundaryMeta(gamma=float(doc["gamma"]), a0=float(doc["a0"]))
    elif "a0" in doc:
        raise ValueError(f"Expected 'gamma' alongside 'a0' in {path}")

    return GeneralSymbol.from_samples(
        doc["points"],
        doc["values"],
        meta=meta,
        name=doc.get("name", Path(path).stem),
    )


class MatrixDump(NamedTuple):
    """Matrix read back by `load_matrix` with its declared dimension and degree."""

    matrix: np.ndarray
    d: int
    K: int


def save_matrix(path: StrPath, matrix: np.ndarray, d: int, K: int) -> None:
    """Write a section matrix as CSV with a `# harmotop matrix` header line."""
    n = cumulative_multiplicity(d, K)
    if matrix.shape != (n, n):
        raise ValueError(f"Expected matrix of size {n} for d={d}, K={K}")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        f.write(f"# harmotop matrix d={d} K={K} n={n}\n")
        pd.DataFrame(matrix).to_csv(f, header=False, index=False, float_format="%.17g")


def load_matrix(path: StrPath) -> MatrixDump:
    """Read a matrix written by `save_matrix`, checking its declared size."""
    with open(path) as f:
        header = f.readline()
    match = _MATRIX_HEADER.match(header)
    if match is None:
        raise ValueError(
            f"Expected '# harmotop matrix' header in {path}; got {header!r}"
        )
    d, K, n = (int(group) for group in match.groups())
    matrix = pd.read_csv(path, comment="#", header=None).to_numpy(dtype=float)
    if matrix.shape != (n, n) or n != cumulative_multiplicity(d, K):
        raise ValueError(
            f"Expected {n} x {n} matrix for d={d}, K={K}; got {matrix.shape}"
        )
    return MatrixDump(matrix=matrix, d=d, K=K)
