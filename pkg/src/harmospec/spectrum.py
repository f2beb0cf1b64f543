"""Eigenvalue lists with multiplicities shared by the radial and Galerkin paths."""

from dataclasses import dataclass
from typing import Literal

import numpy as np
import pandas as pd

from harmospec.checks import check_sign

Provenance = Literal["exact-radial", "galerkin"]


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues with multiplicities, sorted by decreasing absolute value.

    Attributes:
        values: eigenvalues
        multiplicities: positive multiplicity of each eigenvalue
        K: truncation degree
        d: dimension
        provenance: 'exact-radial' or 'galerkin'
    """

    values: np.ndarray
    multiplicities: np.ndarray
    K: int
    d: int
    provenance: Provenance

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        mults = np.asarray(self.multiplicities)
        if values.shape != mults.shape or values.ndim != 1:
            raise ValueError(
                f"Expected matching 1d values and multiplicities; "
                f"got shapes {values.shape} and {mults.shape}"
            )
        if np.any(mults < 1):
            raise ValueError("Expected positive multiplicities")
        order = np.argsort(-np.abs(values), kind="stable")
        object.__setattr__(self, "values", values[order])
        object.__setattr__(self, "multiplicities", mults[order])

    @classmethod
    def from_eigenvalues(
        cls,
        eigenvalues: np.ndarray,
        K: int,
        d: int,
        provenance: Provenance = "galerkin",
    ) -> "Spectrum":
        """Spectrum of a finite section, every eigenvalue listed separately."""
        eigenvalues = np.asarray(eigenvalues, dtype=float)
        return cls(
            values=eigenvalues,
            multiplicities=np.ones(len(eigenvalues), dtype=int),
            K=K,
            d=d,
            provenance=provenance,
        )

    @property
    def total(self) -> int:
        """Number of eigenvalues counted with multiplicity."""
        return int(np.sum(self.multiplicities))

    def expanded(self) -> np.ndarray:
        """Eigenvalues repeated by multiplicity, decreasing in absolute value."""
        return np.repeat(self.values, self.multiplicities.astype(int))

    def count(self, lam: float, sign: int = 1) -> int:
        """Number of eigenvalues e with sign * e > lam."""
        check_sign(sign)
        return int(np.sum(self.multiplicities[sign * self.values > lam]))

    def trace(self) -> float:
        """Sum of eigenvalues with multiplicity."""
        return float(np.sum(self.multiplicities * self.values))

    def schatten(self, p: float) -> float:
        """Schatten p-norm (sum s_j^p)^(1/p), p >= 1."""
        if p < 1:
            raise ValueError(f"Expected p >= 1; got {p}")
        singular = np.abs(self.values)
        if not np.any(singular):
            return 0.0
        # Scale out the largest value so high powers do not underflow
        top = float(singular.max())
        return top * float(np.sum(self.multiplicities * (singular / top) ** p)) ** (
            1.0 / p
        )

    def weak_schatten(self, p: float) -> float:
        """Weak Schatten quasinorm sup_j j^(1/p) s_j, p > 1."""
        if p <= 1:
            raise ValueError(f"Expected p > 1 for weak norm; got {p}")
        singular = np.abs(self.values)
        # Within a block of equal s_j the supremum is at the block's last index
        last_index = np.cumsum(self.multiplicities).astype(float)
        return float(np.max(last_index ** (1.0 / p) * singular, initial=0.0))

    def to_frame(self) -> pd.DataFrame:
        """One row per distinct eigenvalue."""
        return pd.DataFrame(
            {"eigenvalue": self.values, "multiplicity": self.multiplicities}
        )
