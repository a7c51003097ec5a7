"""Dense complex linear algebra for operators of dimension 2**q.

Operators are plain ``numpy.ndarray`` objects of shape ``(dim, dim)`` and dtype
``complex128``, indexed ``[row, col]``.  Every exponential in this package is of
a Hermitian matrix, so exponentials go through an exact eigendecomposition.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "HERMITIAN_TOL",
    "NonHermitianError",
    "Spectrum",
    "as_operator",
    "matmul",
    "commutator",
    "hermiticity_defect",
    "eigh",
    "expm_i_hermitian",
    "frobenius_sq",
    "unitarity_defect",
]

HERMITIAN_TOL = 1e-10


class NonHermitianError(ValueError):
    """Raised when a matrix that must be Hermitian is not."""


def as_operator(a) -> np.ndarray:
    """Return ``a`` as a square complex array with a power-of-two dimension."""
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    dim = a.shape[0]
    if dim < 2 or dim & (dim - 1):
        raise ValueError(f"dimension must be 2**q with q >= 1, got {dim}")
    return a


def _check_same_dim(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")


def matmul(a, b) -> np.ndarray:
    a, b = as_operator(a), as_operator(b)
    _check_same_dim(a, b)
    return a @ b


def commutator(a, b) -> np.ndarray:
    """``[a, b] = ab - ba``."""
    a, b = as_operator(a), as_operator(b)
    _check_same_dim(a, b)
    return a @ b - b @ a


def hermiticity_defect(h) -> float:
    """Max-abs entry of ``h - h^dagger``."""
    h = np.asarray(h)
    return float(np.max(np.abs(h - h.conj().T)))


def _require_hermitian(h: np.ndarray) -> None:
    dev = hermiticity_defect(h)
    if not dev <= HERMITIAN_TOL:
        raise NonHermitianError(
            f"matrix is not Hermitian: max |h - h^dagger| = {dev:.3e} "
            f"(tolerance {HERMITIAN_TOL:.0e})"
        )


@dataclass(frozen=True)
class Spectrum:
    """Eigendecomposition ``h = V diag(w) V^dagger`` of a Hermitian matrix.

    ``eigenvalues`` are ascending; the columns of ``eigenvectors`` are the
    corresponding orthonormal eigenvectors.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T

    def expi(self, s: float) -> np.ndarray:
        """``exp(i s h)`` from the stored decomposition."""
        if s == 0:
            return np.eye(self.dim, dtype=np.complex128)
        v = self.eigenvectors
        return (v * np.exp(1j * s * self.eigenvalues)) @ v.conj().T


def eigh(h) -> Spectrum:
    """Eigendecomposition of a Hermitian matrix.

    Raises:
        NonHermitianError: if ``max|h - h^dagger|`` exceeds ``HERMITIAN_TOL``.
    """
    h = as_operator(h)
    _require_hermitian(h)
    # symmetrize so LAPACK sees an exactly Hermitian input
    w, v = np.linalg.eigh(0.5 * (h + h.conj().T))
    return Spectrum(w, v)


def expm_i_hermitian(h, s: float) -> np.ndarray:
    """``exp(i s h)`` for Hermitian ``h``, computed as ``V diag(exp(i s w)) V^dagger``."""
    return eigh(h).expi(s)


def frobenius_sq(a) -> float:
    """Sum of squared moduli of the entries of ``a``."""
    a = np.asarray(a)
    return float(np.sum(a.real**2 + a.imag**2))


def unitarity_defect(u) -> float:
    """Max-abs entry of ``u^dagger u - I``."""
    u = np.asarray(u)
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))
