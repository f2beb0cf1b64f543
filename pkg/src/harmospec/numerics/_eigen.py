import numpy as np
from scipy import linalg

from harmospec.checks import check_symmetric


def symmetric_eigen(a: np.ndarray) -> np.ndarray:
    """All eigenvalues of a real symmetric matrix, ascending."""
    a = np.asarray(a, dtype=float)
    check_symmetric(a)
    return linalg.eigh(a, eigvals_only=True, check_finite=True)


def symmetric_eigh(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvectors (columns)."""
    a = np.asarray(a, dtype=float)
    check_symmetric(a)
    return linalg.eigh(a, check_finite=True)
