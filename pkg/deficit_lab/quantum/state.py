"""
Bipartite quantum states.

DensityMatrix, PureState and Ensemble values, partial traces, von Neumann
entropies (base 2) and the mutual information.
"""

import logging
from dataclasses import InitVar, dataclass, field
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from ..errors import DimensionMismatchError, InvalidEnsembleError, InvalidStateError, UnknownSubsystemError
from .linalg import ComplexMatrix, as_matrix, eigenvalues, hermiticity_error

logger = logging.getLogger(__name__)

STATE_ATOL = 1e-9
NORM_ATOL = 1e-10
WEIGHT_ATOL = 1e-9


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=np.complex128, copy=True)
    array.flags.writeable = False
    return array


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Density matrix on C^d_A ⊗ C^d_B.

    Single-system states use dims (d, 1). The matrix is validated on
    construction (Hermitian, unit trace, eigenvalues >= -1e-9) and stored
    as a read-only copy.
    """

    matrix: ComplexMatrix
    dims: Optional[Tuple[int, int]] = None
    validate: InitVar[bool] = True

    def __post_init__(self, validate: bool):
        m = as_matrix(self.matrix)
        if m.shape[0] != m.shape[1]:
            raise DimensionMismatchError(f"Density matrix must be square, got {m.shape}")

        dims = self.dims if self.dims is not None else (m.shape[0], 1)
        dims = (int(dims[0]), int(dims[1]))
        if dims[0] < 1 or dims[1] < 1 or dims[0] * dims[1] != m.shape[0]:
            raise DimensionMismatchError(f"dims {dims} do not match matrix dimension {m.shape[0]}")

        if validate:
            err = hermiticity_error(m)
            if err > STATE_ATOL:
                raise InvalidStateError(f"Density matrix is not Hermitian (max |ρ - ρ†| = {err:.3e})")
            trace = np.trace(m).real
            if abs(trace - 1.0) > STATE_ATOL:
                raise InvalidStateError(f"Density matrix trace is {trace:.12g}, expected 1")
            lowest = eigenvalues(m)[-1]
            if lowest < -STATE_ATOL:
                raise InvalidStateError(f"Density matrix has negative eigenvalue {lowest:.3e}")
            m = (m + m.conj().T) / 2

        object.__setattr__(self, "matrix", _frozen(m))
        object.__setattr__(self, "dims", dims)

    @property
    def dim_a(self) -> int:
        return self.dims[0]

    @property
    def dim_b(self) -> int:
        return self.dims[1]

    @property
    def dimension(self) -> int:
        return self.dims[0] * self.dims[1]

    def with_dims(self, dims: Tuple[int, int]) -> "DensityMatrix":
        return DensityMatrix(self.matrix, dims, validate=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DensityMatrix):
            return NotImplemented
        return self.dims == other.dims and np.array_equal(self.matrix, other.matrix)


@dataclass(frozen=True, eq=False)
class PureState:
    """Unit vector on C^d_A ⊗ C^d_B."""

    amplitudes: np.ndarray
    dims: Optional[Tuple[int, int]] = None

    def __post_init__(self):
        v = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        dims = self.dims if self.dims is not None else (v.size, 1)
        dims = (int(dims[0]), int(dims[1]))
        if dims[0] * dims[1] != v.size:
            raise DimensionMismatchError(f"dims {dims} do not match {v.size} amplitudes")
        norm = float(np.linalg.norm(v))
        if abs(norm - 1.0) > NORM_ATOL:
            raise InvalidStateError(f"State vector has norm {norm:.12g}, expected 1")
        object.__setattr__(self, "amplitudes", _frozen(v))
        object.__setattr__(self, "dims", dims)

    def density(self) -> DensityMatrix:
        v = self.amplitudes
        return DensityMatrix(np.outer(v, v.conj()), self.dims)


@dataclass(frozen=True, eq=False)
class Ensemble:
    """Weighted collection of states {p_i, ρ_i} sharing one dimension."""

    weights: np.ndarray
    members: Tuple[DensityMatrix, ...] = field(default_factory=tuple)

    def __post_init__(self):
        weights = np.asarray(self.weights, dtype=float).reshape(-1)
        members = tuple(self.members)
        if weights.size != len(members):
            raise InvalidEnsembleError(f"{weights.size} weights for {len(members)} members")
        if weights.size == 0:
            raise InvalidEnsembleError("Ensemble is empty")
        if np.any(weights < 0):
            raise InvalidEnsembleError("Ensemble weights must be nonnegative")
        if abs(weights.sum() - 1.0) > WEIGHT_ATOL:
            raise InvalidEnsembleError(f"Ensemble weights sum to {weights.sum():.12g}, expected 1")
        if len({m.dimension for m in members}) != 1:
            raise InvalidEnsembleError("Ensemble members have different dimensions")

        weights = weights.copy()
        weights.flags.writeable = False
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "members", members)

    def __len__(self) -> int:
        return len(self.members)

    def average(self) -> DensityMatrix:
        total = sum(w * m.matrix for w, m in zip(self.weights, self.members))
        return DensityMatrix(total, self.members[0].dims)


StateLike = Union[DensityMatrix, np.ndarray]


def _matrix_of(rho: StateLike) -> np.ndarray:
    return rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=np.complex128)


# =========================================================================
# Reductions and entropies
# =========================================================================


def partial_trace(rho: DensityMatrix, keep: str) -> DensityMatrix:
    """Reduce a bipartite state to subsystem 'A' or 'B'."""
    if keep not in ("A", "B"):
        raise UnknownSubsystemError(f"Unknown subsystem label: {keep!r} (expected 'A' or 'B')")
    d_a, d_b = rho.dims
    blocks = rho.matrix.reshape(d_a, d_b, d_a, d_b)
    if keep == "A":
        return DensityMatrix(np.einsum("ijkj->ik", blocks), (d_a, 1))
    return DensityMatrix(np.einsum("ijil->jl", blocks), (d_b, 1))


def entropy_from_eigenvalues(values: np.ndarray) -> np.ndarray:
    """-Σ λ log2 λ over the last axis, with 0 log 0 = 0.

    Values in [-1e-9, 0) are treated as rounding noise and clipped.
    """
    values = np.asarray(values, dtype=float)
    lowest = float(np.min(values, initial=0.0))
    if lowest < -STATE_ATOL:
        raise InvalidStateError(f"Negative eigenvalue {lowest:.3e} in entropy evaluation")
    values = np.clip(values, 0.0, None)
    positive = values > 0
    logs = np.log2(np.where(positive, values, 1.0))
    return -np.sum(values * logs, axis=-1)


def entropy(rho: StateLike) -> float:
    """Von Neumann entropy in bits."""
    m = _matrix_of(rho)
    return max(0.0, float(entropy_from_eigenvalues(eigenvalues(m))))


def shannon_entropy(probabilities: Sequence[float]) -> float:
    """Shannon entropy in bits of a probability vector."""
    return max(0.0, float(entropy_from_eigenvalues(np.asarray(probabilities, dtype=float))))


def information_content(rho: DensityMatrix) -> float:
    """log2(d) - S(ρ): the information, in bits, carried by the state."""
    return float(np.log2(rho.dimension)) - entropy(rho)


def mutual_information(rho: DensityMatrix) -> float:
    """S(ρ_A) + S(ρ_B) - S(ρ_AB)."""
    return entropy(partial_trace(rho, "A")) + entropy(partial_trace(rho, "B")) - entropy(rho)


def holevo_chi(ensemble: Ensemble) -> float:
    """S(Σ p_i ρ_i) - Σ p_i S(ρ_i)."""
    average = entropy(ensemble.average())
    members = sum(w * entropy(m) for w, m in zip(ensemble.weights, ensemble.members))
    return average - members


# =========================================================================
# Constructors
# =========================================================================


def product_state(rho_a: DensityMatrix, rho_b: DensityMatrix) -> DensityMatrix:
    return DensityMatrix(np.kron(rho_a.matrix, rho_b.matrix), (rho_a.dimension, rho_b.dimension))


def state_from_ensemble(weights: Sequence[float], states: Sequence[np.ndarray]) -> PureState:
    """Purify an ensemble of pure states as Σ_i √p_i |i>|ψ_i>.

    Measuring Alice in the computational basis of C^n (n = number of
    states) hands Bob exactly {p_i, ψ_i}.
    """
    weights = np.asarray(weights, dtype=float).reshape(-1)
    vectors = [np.asarray(s, dtype=np.complex128).reshape(-1) for s in states]
    if weights.size != len(vectors):
        raise InvalidEnsembleError(f"{weights.size} weights for {len(vectors)} states")
    if weights.size == 0:
        raise InvalidEnsembleError("Ensemble is empty")
    if np.any(weights < 0) or abs(weights.sum() - 1.0) > WEIGHT_ATOL:
        raise InvalidEnsembleError("Weights must be a probability distribution")
    if len({v.size for v in vectors}) != 1:
        raise InvalidEnsembleError("States have different dimensions")
    for i, v in enumerate(vectors):
        if abs(np.linalg.norm(v) - 1.0) > NORM_ATOL:
            raise InvalidStateError(f"State {i} is not normalized (norm {np.linalg.norm(v):.12g})")

    n = len(vectors)
    d = vectors[0].size
    amplitudes = np.zeros(n * d, dtype=np.complex128)
    for i, (p, v) in enumerate(zip(weights, vectors)):
        amplitudes[i * d : (i + 1) * d] = np.sqrt(p) * v
    return PureState(amplitudes, (n, d))


def restrict_alice(rho: DensityMatrix, basis: np.ndarray) -> DensityMatrix:
    """Compress Alice onto the span of the given orthonormal columns.

    Returns (V†⊗I) ρ (V⊗I) with dims (r, d_B); only trace-preserving when
    the span contains the support of ρ_A.
    """
    basis = np.asarray(basis, dtype=np.complex128)
    d_a, d_b = rho.dims
    if basis.shape[0] != d_a:
        raise DimensionMismatchError(f"Basis has {basis.shape[0]} rows, Alice dimension is {d_a}")
    iso = np.kron(basis, np.eye(d_b))
    return DensityMatrix(iso.conj().T @ rho.matrix @ iso, (basis.shape[1], d_b))


def random_density_matrix(
    dims: Tuple[int, int],
    rng: np.random.Generator,
    rank: Optional[int] = None,
) -> DensityMatrix:
    """Random state from a Ginibre matrix G: ρ = G G† / Tr(G G†)."""
    d = dims[0] * dims[1]
    rank = d if rank is None else rank
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m).real, dims)


def random_pure_state(dims: Tuple[int, int], rng: np.random.Generator) -> PureState:
    d = dims[0] * dims[1]
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return PureState(v / np.linalg.norm(v), dims)
