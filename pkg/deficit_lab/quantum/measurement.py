"""
Alice-side measurements.

ProjectiveMeasurement and Povm values, dephasing, Bob's outcome ensemble,
eigenbasis construction and refinement of coarse measurements.
"""

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

import numpy as np

from ..errors import DimensionMismatchError, InvalidMeasurementError
from .linalg import ComplexMatrix, as_matrix, hermitian_eig, identity, projector, random_unitary
from .state import DensityMatrix, Ensemble

logger = logging.getLogger(__name__)

MEASUREMENT_ATOL = 1e-9
ZERO_PROBABILITY = 1e-12
DEGENERACY_GAP = 1e-8
SUPPORT_ATOL = 1e-9


def _frozen_stack(matrices: Sequence[np.ndarray]) -> Tuple[np.ndarray, ...]:
    out = []
    for m in matrices:
        m = np.array(as_matrix(m), copy=True)
        m.flags.writeable = False
        out.append(m)
    return tuple(out)


def _check_elements(elements: Tuple[np.ndarray, ...], what: str) -> int:
    if not elements:
        raise InvalidMeasurementError(f"A {what} needs at least one element")
    d = elements[0].shape[0]
    for i, e in enumerate(elements):
        if e.shape != (d, d):
            raise InvalidMeasurementError(f"{what} element {i} has shape {e.shape}, expected {(d, d)}")
        if np.max(np.abs(e - e.conj().T)) > MEASUREMENT_ATOL:
            raise InvalidMeasurementError(f"{what} element {i} is not Hermitian")
    err = float(np.max(np.abs(sum(elements) - identity(d))))
    if err > MEASUREMENT_ATOL:
        raise InvalidMeasurementError(f"{what} elements do not sum to the identity (error {err:.3e})")
    return d


@dataclass(frozen=True, eq=False)
class ProjectiveMeasurement:
    """Complete set of mutually orthogonal projectors on Alice's space."""

    projectors: Tuple[ComplexMatrix, ...]

    def __post_init__(self):
        projectors = _frozen_stack(self.projectors)
        _check_elements(projectors, "projective measurement")
        for i, p in enumerate(projectors):
            if np.max(np.abs(p @ p - p)) > MEASUREMENT_ATOL:
                raise InvalidMeasurementError(f"Projector {i} is not idempotent")
            for j in range(i + 1, len(projectors)):
                if np.max(np.abs(p @ projectors[j])) > MEASUREMENT_ATOL:
                    raise InvalidMeasurementError(f"Projectors {i} and {j} are not orthogonal")
        object.__setattr__(self, "projectors", projectors)

    @property
    def dim(self) -> int:
        return self.projectors[0].shape[0]

    @property
    def elements(self) -> Tuple[ComplexMatrix, ...]:
        return self.projectors

    @property
    def ranks(self) -> Tuple[int, ...]:
        return tuple(int(round(np.trace(p).real)) for p in self.projectors)

    @property
    def is_rank_one(self) -> bool:
        return all(r == 1 for r in self.ranks)

    def basis(self) -> ComplexMatrix:
        """Columns |v_i> with P_i = |v_i><v_i| (rank-one measurements only)."""
        if not self.is_rank_one:
            raise InvalidMeasurementError("Measurement has projectors of rank > 1")
        columns = [hermitian_eig(p).eigenvectors[:, 0] for p in self.projectors]
        return np.stack(columns, axis=1)

    def __len__(self) -> int:
        return len(self.projectors)


@dataclass(frozen=True, eq=False)
class Povm:
    """Positive operators summing to the identity."""

    elements: Tuple[ComplexMatrix, ...]

    def __post_init__(self):
        elements = _frozen_stack(self.elements)
        _check_elements(elements, "POVM")
        for i, e in enumerate(elements):
            lowest = float(np.linalg.eigvalsh((e + e.conj().T) / 2)[0])
            if lowest < -MEASUREMENT_ATOL:
                raise InvalidMeasurementError(f"POVM element {i} has negative eigenvalue {lowest:.3e}")
        object.__setattr__(self, "elements", elements)

    @property
    def dim(self) -> int:
        return self.elements[0].shape[0]

    def __len__(self) -> int:
        return len(self.elements)


Measurement = Union[ProjectiveMeasurement, Povm]


# =========================================================================
# Construction
# =========================================================================


def basis_measurement(vectors: Union[Sequence[np.ndarray], np.ndarray]) -> ProjectiveMeasurement:
    """Rank-one measurement {|v_i><v_i|} from an orthonormal basis.

    Args:
        vectors: Sequence of basis vectors (a 2-D array is read row by row)
    """
    vs = [np.asarray(v, dtype=np.complex128).reshape(-1) for v in vectors]
    if not vs:
        raise InvalidMeasurementError("Basis is empty")
    d = vs[0].size
    if len(vs) != d or any(v.size != d for v in vs):
        raise InvalidMeasurementError(f"Expected {d} vectors of dimension {d}")
    gram = np.array([[np.vdot(u, v) for v in vs] for u in vs])
    err = float(np.max(np.abs(gram - identity(d))))
    if err > MEASUREMENT_ATOL:
        raise InvalidMeasurementError(f"Basis vectors are not orthonormal (error {err:.3e})")
    return ProjectiveMeasurement(tuple(projector(v) for v in vs))


def unitary_measurement(u: ComplexMatrix) -> ProjectiveMeasurement:
    """Rank-one measurement in the basis given by the columns of u."""
    u = as_matrix(u)
    return basis_measurement([u[:, k] for k in range(u.shape[1])])


def computational_measurement(d: int) -> ProjectiveMeasurement:
    return unitary_measurement(identity(d))


def _single_system(rho_a: DensityMatrix) -> np.ndarray:
    if rho_a.dim_b != 1:
        raise DimensionMismatchError(f"Expected a single-system state, got dims {rho_a.dims}")
    return rho_a.matrix


def eigenbasis_measurement(rho_a: DensityMatrix) -> ProjectiveMeasurement:
    """Rank-one measurement in the Jacobi eigenbasis of ρ_A.

    Degenerate eigenspaces make this basis non-unique; the choice is
    deterministic (see eigenbasis_degeneracy).
    """
    return unitary_measurement(hermitian_eig(_single_system(rho_a)).eigenvectors)


def eigenbasis_degeneracy(rho_a: DensityMatrix, gap: float = DEGENERACY_GAP) -> List[Tuple[int, ...]]:
    """Clusters of eigenvalue indices (descending order) closer than gap.

    Only clusters with more than one member are returned; an empty list
    means the eigenbasis is unique up to phases.
    """
    values = hermitian_eig(_single_system(rho_a)).eigenvalues
    clusters: List[List[int]] = [[0]]
    for k in range(1, values.size):
        if values[k - 1] - values[k] < gap:
            clusters[-1].append(k)
        else:
            clusters.append([k])
    return [tuple(c) for c in clusters if len(c) > 1]


def random_basis_measurement(d: int, rng: np.random.Generator) -> ProjectiveMeasurement:
    return unitary_measurement(random_unitary(d, rng))


# =========================================================================
# Action on states
# =========================================================================


def _check_alice(rho_ab: DensityMatrix, m: Measurement):
    if m.dim != rho_ab.dim_a:
        raise DimensionMismatchError(f"Measurement acts on dimension {m.dim}, Alice has {rho_ab.dim_a}")


def dephase(rho_ab: DensityMatrix, m: ProjectiveMeasurement) -> DensityMatrix:
    """Non-selective measurement Σ_i (P_i⊗I) ρ (P_i⊗I)."""
    _check_alice(rho_ab, m)
    d_a, d_b = rho_ab.dims
    r = rho_ab.matrix.reshape(d_a, d_b, d_a, d_b)
    p = np.stack(m.projectors)
    out = np.einsum("kac,cbde,kdf->abfe", p, r, p).reshape(d_a * d_b, d_a * d_b)
    return DensityMatrix((out + out.conj().T) / 2, rho_ab.dims)


def conditional_blocks(rho_matrix: np.ndarray, dims: Tuple[int, int], elements: np.ndarray) -> np.ndarray:
    """Unnormalized Bob states Tr_A((E_k⊗I) ρ) for a stack of Alice operators.

    elements may carry leading batch axes: shape (..., K, d_A, d_A) gives
    (..., K, d_B, d_B).
    """
    d_a, d_b = dims
    r = rho_matrix.reshape(d_a, d_b, d_a, d_b)
    return np.einsum("...ac,cbad->...bd", elements, r)


def outcome_ensemble(rho_ab: DensityMatrix, m: Measurement) -> Ensemble:
    """Bob's ensemble {p_i, ρ_i^B} after Alice measures m.

    Outcomes with p_i below 1e-12 are dropped.
    """
    _check_alice(rho_ab, m)
    blocks = conditional_blocks(rho_ab.matrix, rho_ab.dims, np.stack(m.elements))
    weights = np.real(np.einsum("kbb->k", blocks))

    kept_weights = []
    members = []
    for p, block in zip(weights, blocks):
        if p < ZERO_PROBABILITY:
            continue
        kept_weights.append(p)
        members.append(DensityMatrix((block + block.conj().T) / (2 * p), (rho_ab.dim_b, 1)))
    return Ensemble(np.array(kept_weights), tuple(members))


def commutes_with(m: Measurement, rho_a: DensityMatrix, tol: float = 1e-6) -> bool:
    """True when every element commutes with ρ_A up to max-norm tol."""
    a = _single_system(rho_a)
    if m.dim != a.shape[0]:
        raise DimensionMismatchError(f"Measurement acts on dimension {m.dim}, state has {a.shape[0]}")
    return all(np.max(np.abs(e @ a - a @ e)) <= tol for e in m.elements)


def refine(m: ProjectiveMeasurement, rho_a: DensityMatrix) -> ProjectiveMeasurement:
    """Split every projector into rank-one pieces along the eigenbasis of P_i ρ_A P_i.

    Each new projector lies inside the P_i it came from. Rank-one inputs are
    returned unchanged.
    """
    a = _single_system(rho_a)
    if m.dim != a.shape[0]:
        raise DimensionMismatchError(f"Measurement acts on dimension {m.dim}, state has {a.shape[0]}")
    if m.is_rank_one:
        return m

    vectors = []
    for p, rank in zip(m.projectors, m.ranks):
        # Orthonormal basis of range(P)
        span = hermitian_eig(p).eigenvectors[:, :rank]
        block = span.conj().T @ a @ span
        rotation = hermitian_eig(block).eigenvectors
        refined = span @ rotation
        vectors.extend(refined[:, k] for k in range(rank))
    return basis_measurement(vectors)


def support_basis(rho_a: DensityMatrix, tol: float = SUPPORT_ATOL) -> Tuple[np.ndarray, np.ndarray]:
    """Eigenvectors spanning the support and the kernel of ρ_A, as columns."""
    eig = hermitian_eig(_single_system(rho_a))
    rank = int(np.sum(eig.eigenvalues > tol))
    return eig.eigenvectors[:, :rank], eig.eigenvectors[:, rank:]


def compress_to_support(m: Measurement, rho_a: DensityMatrix, tol: float = SUPPORT_ATOL) -> Povm:
    """Express a measurement as a POVM on the support of ρ_A.

    Elements are S† E_i S where the columns of S are the support
    eigenvectors; outcomes whose compressed element vanishes are dropped.
    """
    support, _ = support_basis(rho_a, tol)
    if m.dim != support.shape[0]:
        raise DimensionMismatchError(f"Measurement acts on dimension {m.dim}, state has {support.shape[0]}")
    compressed = [support.conj().T @ e @ support for e in m.elements]
    kept = [c for c in compressed if np.max(np.abs(c)) > MEASUREMENT_ATOL]
    return Povm(tuple(kept))
