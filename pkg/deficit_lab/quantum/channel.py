"""
Quantum channels.

Two representations are supported: Kraus operators on any dimension, and
affine maps of the qubit Bloch vector (w ↦ s∘w + t). Both act linearly on
arbitrary operators, so a channel can be applied block-wise to Bob's half
of a bipartite state.

Bloch convention: σ1, σ2, σ3 are Pauli x, y, z and |0> is the +1
eigenvector of σ3.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from ..errors import DimensionMismatchError, InvalidChannelError
from .linalg import PAULIS, ComplexMatrix, as_matrix, identity
from .state import DensityMatrix

logger = logging.getLogger(__name__)

KRAUS_ATOL = 1e-9
BLOCH_SAMPLES = 10_000
BLOCH_ATOL = 1e-9


class Channel(ABC):
    """Completely positive trace-preserving map on a d-dimensional system."""

    @property
    @abstractmethod
    def dim(self) -> int:
        """Input/output dimension."""

    @abstractmethod
    def map_operators(self, blocks: np.ndarray) -> np.ndarray:
        """Apply the channel's linear extension to a stack of (..., d, d) operators."""

    def __call__(self, rho: DensityMatrix) -> DensityMatrix:
        return apply(self, rho)


@dataclass(frozen=True, eq=False)
class KrausChannel(Channel):
    """Λ(ρ) = Σ_k A_k ρ A_k†, with Σ_k A_k† A_k = I."""

    operators: Tuple[ComplexMatrix, ...]

    def __post_init__(self):
        ops = tuple(as_matrix(a) for a in self.operators)
        if not ops:
            raise InvalidChannelError("A Kraus channel needs at least one operator")
        d = ops[0].shape[0]
        for a in ops:
            if a.shape != (d, d):
                raise InvalidChannelError(f"Kraus operators must all be {d}x{d}, got {a.shape}")

        completeness = sum(a.conj().T @ a for a in ops)
        err = float(np.max(np.abs(completeness - identity(d))))
        if err > KRAUS_ATOL:
            logger.warning("Rejecting Kraus set: completeness error %.3e", err)
            raise InvalidChannelError(f"Kraus operators are not trace preserving (error {err:.3e})")

        object.__setattr__(self, "operators", ops)

    @property
    def dim(self) -> int:
        return self.operators[0].shape[0]

    def map_operators(self, blocks: np.ndarray) -> np.ndarray:
        out = np.zeros_like(blocks, dtype=np.complex128)
        for a in self.operators:
            out += np.einsum("ij,...jk,lk->...il", a, blocks, a.conj())
        return out


@dataclass(frozen=True, eq=False)
class BlochAffineChannel(Channel):
    """Qubit channel acting on Bloch vectors as w ↦ scale∘w + offset.

    Positivity is checked by sampling unit vectors, not certified.
    """

    scale: Tuple[float, float, float]
    offset: Tuple[float, float, float]

    def __post_init__(self):
        scale = tuple(float(x) for x in self.scale)
        offset = tuple(float(x) for x in self.offset)
        if len(scale) != 3 or len(offset) != 3:
            raise InvalidChannelError("Bloch maps need three scale and three offset components")

        # Sampled image of the unit sphere must stay inside the ball
        rng = np.random.default_rng(0)
        w = rng.standard_normal((BLOCH_SAMPLES, 3))
        w /= np.linalg.norm(w, axis=1, keepdims=True)
        image = w * np.array(scale) + np.array(offset)
        radius = float(np.max(np.linalg.norm(image, axis=1)))
        if radius > 1.0 + BLOCH_ATOL:
            logger.warning("Rejecting Bloch map: sampled image radius %.6f", radius)
            raise InvalidChannelError(f"Bloch map leaves the unit ball (sampled radius {radius:.6f})")

        object.__setattr__(self, "scale", scale)
        object.__setattr__(self, "offset", offset)

    @property
    def dim(self) -> int:
        return 2

    def map_operators(self, blocks: np.ndarray) -> np.ndarray:
        # Linear extension: X ↦ ½[Tr X (I + t·σ) + Σ_i s_i Tr(X σ_i) σ_i]
        traces = blocks[..., 0, 0] + blocks[..., 1, 1]
        out = np.einsum("...,ij->...ij", traces, identity(2))
        for s, t, sigma in zip(self.scale, self.offset, PAULIS):
            component = np.einsum("...ab,ba->...", blocks, sigma)
            out = out + np.einsum("...,ij->...ij", s * component + t * traces, sigma)
        return out / 2


# =========================================================================
# Application
# =========================================================================


def _hermitize(m: np.ndarray) -> np.ndarray:
    return (m + np.swapaxes(m.conj(), -1, -2)) / 2


def apply(channel: Channel, rho: DensityMatrix) -> DensityMatrix:
    """Λ(ρ) for a single-system state."""
    if rho.dimension != channel.dim:
        raise DimensionMismatchError(f"Channel acts on dimension {channel.dim}, state has {rho.dimension}")
    return DensityMatrix(_hermitize(channel.map_operators(rho.matrix)), (channel.dim, 1))


def apply_to_bob(channel: Channel, rho_ab: DensityMatrix) -> DensityMatrix:
    """(I ⊗ Λ)(ρ_AB)."""
    d_a, d_b = rho_ab.dims
    if d_b != channel.dim:
        raise DimensionMismatchError(f"Channel acts on dimension {channel.dim}, Bob has {d_b}")

    # (a, b, a', b') -> Bob blocks indexed by (a, a')
    blocks = rho_ab.matrix.reshape(d_a, d_b, d_a, d_b).transpose(0, 2, 1, 3)
    mapped = channel.map_operators(blocks)
    out = mapped.transpose(0, 2, 1, 3).reshape(d_a * d_b, d_a * d_b)
    return DensityMatrix(_hermitize(out), rho_ab.dims)


def bloch_vector(rho: DensityMatrix) -> np.ndarray:
    """(Tr ρσx, Tr ρσy, Tr ρσz) for a qubit state."""
    if rho.dimension != 2:
        raise DimensionMismatchError(f"Bloch vectors are defined for qubits, got dimension {rho.dimension}")
    return np.array([np.trace(rho.matrix @ s).real for s in PAULIS])


def from_bloch(w: Sequence[float]) -> DensityMatrix:
    """½(I + w·σ)."""
    w = np.asarray(w, dtype=float)
    m = identity(2) + sum(c * s for c, s in zip(w, PAULIS))
    return DensityMatrix(m / 2, (2, 1))


# =========================================================================
# Fixed channels
# =========================================================================


def identity_channel(d: int) -> KrausChannel:
    return KrausChannel((identity(d),))


def make_sw99_channel() -> KrausChannel:
    """Amplitude damping with γ = ½.

    A1 = |0><0| + √½|1><1|, A2 = √½|0><1|.
    """
    r = np.sqrt(0.5)
    a1 = np.array([[1.0, 0.0], [0.0, r]], dtype=np.complex128)
    a2 = np.array([[0.0, r], [0.0, 0.0]], dtype=np.complex128)
    return KrausChannel((a1, a2))


def make_knr01_channel() -> BlochAffineChannel:
    """Qubit map (w1, w2, w3) ↦ (0.6 w1, 0.6 w2, 0.5 + 0.5 w3)."""
    return BlochAffineChannel(scale=(0.6, 0.6, 0.5), offset=(0.0, 0.0, 0.5))
