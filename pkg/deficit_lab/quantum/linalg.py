"""
Dense complex linear algebra for small operators.

Matrices are plain complex128 numpy arrays. The Hermitian eigensolver is a
cyclic Jacobi iteration, which is exact enough and predictable for the
dimensions used here (at most 16).
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import numpy.typing as npt
from scipy.linalg import expm

from ..errors import ConvergenceError, DimensionMismatchError, NotHermitianError

logger = logging.getLogger(__name__)

ComplexMatrix = npt.NDArray[np.complex128]

DEFAULT_ATOL = 1e-10
HERMITIAN_ATOL = 1e-9
JACOBI_MAX_SWEEPS = 100
JACOBI_THRESHOLD = 1e-13

PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULIS = (PAULI_X, PAULI_Y, PAULI_Z)


@dataclass(frozen=True)
class HermitianEigen:
    """Spectral decomposition of a Hermitian matrix."""

    eigenvalues: np.ndarray  # real, descending
    eigenvectors: ComplexMatrix  # columns match eigenvalues

    def reconstruct(self) -> ComplexMatrix:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_matrix(data) -> ComplexMatrix:
    """Coerce nested sequences or arrays to a 2-D complex matrix."""
    m = np.asarray(data, dtype=np.complex128)
    if m.ndim != 2:
        raise DimensionMismatchError(f"Expected a 2-D matrix, got shape {m.shape}")
    return m


def identity(d: int) -> ComplexMatrix:
    return np.eye(d, dtype=np.complex128)


def dagger(a: ComplexMatrix) -> ComplexMatrix:
    return a.conj().T


def projector(vector: np.ndarray) -> ComplexMatrix:
    """|v><v| for a column vector v."""
    v = np.asarray(vector, dtype=np.complex128).reshape(-1)
    return np.outer(v, v.conj())


def matmul(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """Matrix product with a shape check."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatchError(f"Cannot multiply {a.shape} by {b.shape}")
    return a @ b


def tensor(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """Kronecker product a ⊗ b, with a as the left (Alice) factor."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[0] != a.shape[1] or b.shape[0] != b.shape[1]:
        raise DimensionMismatchError(f"tensor() needs square operands, got {a.shape} and {b.shape}")
    return np.kron(a, b)


def allclose(a: ComplexMatrix, b: ComplexMatrix, atol: float = DEFAULT_ATOL) -> bool:
    """Entrywise absolute comparison; different shapes never compare equal."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        return False
    return bool(np.max(np.abs(a - b), initial=0.0) <= atol)


def hermiticity_error(h: ComplexMatrix) -> float:
    return float(np.max(np.abs(h - h.conj().T), initial=0.0))


def is_hermitian(h: ComplexMatrix, atol: float = HERMITIAN_ATOL) -> bool:
    h = np.asarray(h)
    return h.ndim == 2 and h.shape[0] == h.shape[1] and hermiticity_error(h) <= atol


def _check_hermitian(h) -> ComplexMatrix:
    h = as_matrix(h)
    if h.shape[0] != h.shape[1]:
        raise DimensionMismatchError(f"Expected a square matrix, got shape {h.shape}")
    err = hermiticity_error(h)
    if err > HERMITIAN_ATOL:
        raise NotHermitianError(f"Matrix is not Hermitian (max |h - h†| = {err:.3e})")
    return (h + h.conj().T) / 2


def hermitian_eig(h: ComplexMatrix) -> HermitianEigen:
    """Full eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Each rotation first removes the phase of the pivot element, then applies
    the real symmetric Jacobi rotation that zeroes it.

    Args:
        h: Hermitian matrix (within HERMITIAN_ATOL)

    Returns:
        HermitianEigen with eigenvalues sorted descending; exact ties keep
        their original order

    Raises:
        NotHermitianError: h - h† exceeds tolerance
        ConvergenceError: off-diagonal mass did not vanish within the sweep cap
    """
    a = _check_hermitian(h).copy()
    n = a.shape[0]
    v = identity(n)
    threshold = JACOBI_THRESHOLD * max(1.0, float(np.linalg.norm(a)))

    for _ in range(JACOBI_MAX_SWEEPS):
        off = np.sqrt(max(0.0, float(np.sum(np.abs(a) ** 2) - np.sum(np.abs(np.diag(a)) ** 2))))
        if off < threshold:
            break

        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                magnitude = abs(apq)
                if magnitude < 1e-300:
                    continue

                # Rotate the pivot onto the real axis, then solve the 2x2 symmetric problem
                phase = apq / magnitude
                app = a[p, p].real
                aqq = a[q, q].real
                zeta = (aqq - app) / (2.0 * magnitude)
                t = (1.0 if zeta >= 0 else -1.0) / (abs(zeta) + np.sqrt(1.0 + zeta * zeta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c

                rot = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]], dtype=np.complex128)
                idx = [p, q]
                a[:, idx] = a[:, idx] @ rot
                a[idx, :] = rot.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, idx] = v[:, idx] @ rot
    else:
        logger.warning("Jacobi eigensolver did not converge in %d sweeps (n=%d)", JACOBI_MAX_SWEEPS, n)
        raise ConvergenceError(f"Jacobi eigensolver did not converge in {JACOBI_MAX_SWEEPS} sweeps")

    eigenvalues = np.real(np.diag(a))
    order = np.argsort(-eigenvalues, kind="stable")
    return HermitianEigen(eigenvalues=eigenvalues[order], eigenvectors=v[:, order])


def eigenvalues(h: ComplexMatrix) -> np.ndarray:
    """Eigenvalues only, descending.

    Used on the entropy hot path where eigenvectors are not needed; accepts
    stacks of matrices with shape (..., n, n).
    """
    h = np.asarray(h, dtype=np.complex128)
    h = (h + np.swapaxes(h.conj(), -1, -2)) / 2
    return np.linalg.eigvalsh(h)[..., ::-1]


# =========================================================================
# Random operators and basis parameterization
# =========================================================================


def random_unitary(d: int, rng: np.random.Generator) -> ComplexMatrix:
    """Haar-random unitary via QR of a Ginibre matrix with the phase fix."""
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    diag = np.diag(r)
    phases = diag / np.abs(diag)
    return q * phases


def random_hermitian(d: int, rng: np.random.Generator, scale: float = 1.0) -> ComplexMatrix:
    z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return scale * (z + z.conj().T) / 2


def hermitian_from_params(params: Sequence[float], d: int) -> ComplexMatrix:
    """Hermitian generator from d² reals.

    Layout: d diagonal entries, then the real parts of the strict upper
    triangle (row-major), then the imaginary parts in the same order.
    """
    params = np.asarray(params, dtype=float)
    if params.shape != (d * d,):
        raise DimensionMismatchError(f"Expected {d * d} parameters for dimension {d}, got {params.size}")

    rows, cols = np.triu_indices(d, k=1)
    n_off = rows.size
    h = np.zeros((d, d), dtype=np.complex128)
    h[np.arange(d), np.arange(d)] = params[:d]
    upper = params[d : d + n_off] + 1j * params[d + n_off :]
    h[rows, cols] = upper
    h[cols, rows] = upper.conj()
    return h


def unitary_from_params(params: Sequence[float], d: int, reference: Optional[ComplexMatrix] = None) -> ComplexMatrix:
    """reference · exp(iH(params)); reference defaults to the identity."""
    u = expm(1j * hermitian_from_params(params, d))
    return u if reference is None else reference @ u


def is_unitary(u: ComplexMatrix, atol: float = HERMITIAN_ATOL) -> bool:
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return allclose(u.conj().T @ u, identity(u.shape[0]), atol=atol)
