"""Quadrature rules, special functions and the dense symmetric eigensolver."""

from ._eigen import symmetric_eigen, symmetric_eigh
from ._quadrature import (
    QuadratureRule,
    composite_gauss_legendre,
    gauss_jacobi,
    gauss_legendre,
)
from ._special import (
    bessel_j_zero,
    bessel_j_zeros,
    beta,
    gegenbauer,
    log_beta,
    log_gamma,
)
