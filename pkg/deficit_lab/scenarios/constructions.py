"""
Channel-ensemble constructions.

A state ρ_AB = (I ⊗ Λ)|ψ><ψ| with |ψ> = Σ_i √p_i |i>|ψ_i> makes Alice's
computational-basis measurement hand Bob the channel outputs {p_i, Λ(ψ_i)}.
Two such constructions are provided:

- sw99: amplitude damping with two non-orthogonal inputs
- knr01: a Bloch-affine qubit map with three inputs (Alice has rank two)
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np

from ..quantum.channel import Channel, apply, apply_to_bob, make_knr01_channel, make_sw99_channel
from ..quantum.state import DensityMatrix, Ensemble, PureState, state_from_ensemble

logger = logging.getLogger(__name__)

SW99_WEIGHTS = (0.5, 0.5)
SW99_AMPLITUDES = (0.8, 0.6)

KNR01_WEIGHTS = (0.4023, 0.29885, 0.29885)
KNR01_A_PRINTED = 0.0701579
KNR01_B = 0.821535


@dataclass(frozen=True, eq=False)
class EnsembleConstruction:
    """An input ensemble, the channel it is sent through, and bookkeeping of constants used."""

    name: str
    weights: np.ndarray
    states: Tuple[np.ndarray, ...]
    channel: Channel
    constants: Dict[str, float] = field(default_factory=dict)

    def pure_state(self) -> PureState:
        return state_from_ensemble(self.weights, self.states)

    def state(self) -> DensityMatrix:
        return apply_to_bob(self.channel, self.pure_state().density())

    def output_ensemble(self) -> Ensemble:
        """Bob's ensemble {p_i, Λ(ψ_i)} of channel outputs."""
        outputs = tuple(apply(self.channel, PureState(s).density()) for s in self.states)
        return Ensemble(self.weights, outputs)


def sw99_ensemble(relative_sign: int = -1) -> EnsembleConstruction:
    """Inputs ψ0 = |+>, ψ1 = 0.8|0> ± 0.6|1> with equal weights, through amplitude damping.

    Args:
        relative_sign: Sign of the |1> amplitude of ψ1. The default -1 gives
            the pair for which the computational basis beats the eigenbasis;
            +1 is the literal printed form.
    """
    if relative_sign not in (1, -1):
        raise ValueError(f"relative_sign must be +1 or -1, got {relative_sign}")
    psi0 = np.array([1.0, 1.0], dtype=np.complex128) / np.sqrt(2.0)
    psi1 = np.array([SW99_AMPLITUDES[0], relative_sign * SW99_AMPLITUDES[1]], dtype=np.complex128)
    return EnsembleConstruction(
        name="sw99",
        weights=np.array(SW99_WEIGHTS),
        states=(psi0, psi1),
        channel=make_sw99_channel(),
        constants={"relative_sign": float(relative_sign)},
    )


def knr01_ensemble(a: Optional[float] = None) -> EnsembleConstruction:
    """Inputs |0>, a|0> + b|1>, a|0> - b|1> through the Bloch map (0.6, 0.6, 0.5) + (0, 0, 0.5).

    Args:
        a: |0> amplitude of the second and third inputs. Defaults to
            √(1 - b²) = 0.5701581..., the unit-norm value; any other value
            (e.g. the printed 0.0701579) is used after normalizing the vectors.
    """
    b = KNR01_B
    a_used = float(np.sqrt(1.0 - b * b)) if a is None else float(a)
    norm = float(np.hypot(a_used, b))
    if abs(norm - 1.0) > 1e-12:
        logger.info("knr01: normalizing a=%.7f, b=%.6f by %.6f", a_used, b, norm)

    weights = np.array(KNR01_WEIGHTS)
    weights = weights / weights.sum()
    states = (
        np.array([1.0, 0.0], dtype=np.complex128),
        np.array([a_used, b], dtype=np.complex128) / norm,
        np.array([a_used, -b], dtype=np.complex128) / norm,
    )
    return EnsembleConstruction(
        name="knr01",
        weights=weights,
        states=states,
        channel=make_knr01_channel(),
        constants={
            "a_printed": KNR01_A_PRINTED,
            "a_raw": a_used,
            "b_raw": b,
            "raw_norm": norm,
            "a_used": a_used / norm,
            "b_used": b / norm,
            "weight_sum_printed": float(sum(KNR01_WEIGHTS)),
        },
    )


def build_sw99_state(relative_sign: int = -1) -> DensityMatrix:
    """2⊗2 state (I ⊗ Λ_damp)|ψ><ψ| for the sw99 ensemble."""
    return sw99_ensemble(relative_sign).state()


def build_knr01_state(a: Optional[float] = None) -> DensityMatrix:
    """3⊗2 state (I ⊗ Λ_bloch)|ψ><ψ| for the knr01 ensemble."""
    return knr01_ensemble(a).state()
