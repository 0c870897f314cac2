"""
Correlation quantities for a given Alice measurement.

    c_hv       S(ρ_B) - Σ p_i S(ρ_i^B)
    delta_cl   c_hv - [S(ρ'_A) - S(ρ_A)]
    deficit_q  Σ p_i S(ρ_i^B) + S(ρ'_A) - S(ρ_AB)

ρ'_A is Alice's reduction after dephasing. For every projective measurement
deficit_q + delta_cl equals the mutual information. All values are in bits.
"""

import logging
from dataclasses import asdict, dataclass
from typing import Any, Dict, Tuple

import numpy as np

from ..errors import DimensionMismatchError, InvalidMeasurementError
from .linalg import eigenvalues
from .measurement import ZERO_PROBABILITY, Measurement, ProjectiveMeasurement, conditional_blocks
from .state import DensityMatrix, entropy, entropy_from_eigenvalues, partial_trace, shannon_entropy

logger = logging.getLogger(__name__)

OBJECTIVES = ("chv", "dcl", "deficit")


@dataclass(frozen=True)
class MeasureReport:
    """All per-measurement quantities for one (state, measurement) pair."""

    c_hv: float
    delta_cl: float
    deficit_q: float
    alice_entropy_cost: float
    outcome_weights: Tuple[float, ...]
    per_outcome_entropies: Tuple[float, ...]
    mutual_information: float
    concentrable_information: float

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["outcome_weights"] = list(self.outcome_weights)
        data["per_outcome_entropies"] = list(self.per_outcome_entropies)
        return data


# =========================================================================
# Outcome statistics
# =========================================================================


def weighted_outcome_entropies(blocks: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Weights and conditional entropies from unnormalized Bob blocks.

    blocks has shape (..., K, d_B, d_B). Outcomes with weight below 1e-12
    get entropy 0.
    """
    weights = np.clip(np.real(np.einsum("...kbb->...k", blocks)), 0.0, None)
    kept = weights >= ZERO_PROBABILITY
    safe = np.where(kept, weights, 1.0)
    # Conditionals come from a valid state; negative eigenvalues here are rounding
    values = np.clip(eigenvalues(blocks / safe[..., None, None]), 0.0, None)
    entropies = np.where(kept, entropy_from_eigenvalues(values), 0.0)
    return weights, entropies


def outcome_statistics(rho_ab: DensityMatrix, m: Measurement) -> Tuple[np.ndarray, np.ndarray]:
    """(p_i, S(ρ_i^B)) for every outcome of m, dropped outcomes included with S = 0."""
    if m.dim != rho_ab.dim_a:
        raise DimensionMismatchError(f"Measurement acts on dimension {m.dim}, Alice has {rho_ab.dim_a}")
    blocks = conditional_blocks(rho_ab.matrix, rho_ab.dims, np.stack(m.elements))
    return weighted_outcome_entropies(blocks)


def dephased_alice_entropy(rho_ab: DensityMatrix, m: ProjectiveMeasurement, weights: np.ndarray) -> float:
    """S(ρ'_A); for rank-one measurements this is the Shannon entropy of the outcome weights."""
    if m.is_rank_one:
        return shannon_entropy(weights)
    rho_a = partial_trace(rho_ab, "A").matrix
    return entropy(sum(p @ rho_a @ p for p in m.projectors))


def _require_projective(m: Measurement, quantity: str) -> ProjectiveMeasurement:
    if not isinstance(m, ProjectiveMeasurement):
        raise InvalidMeasurementError(f"{quantity} is only defined for projective measurements")
    return m


# =========================================================================
# Per-measurement quantities
# =========================================================================


def c_hv(rho_ab: DensityMatrix, m: Measurement) -> float:
    """Classical correlation S(ρ_B) - Σ p_i S(ρ_i^B) for a projective measurement or POVM."""
    weights, entropies = outcome_statistics(rho_ab, m)
    return entropy(partial_trace(rho_ab, "B")) - float(weights @ entropies)


def alice_entropy_cost(rho_ab: DensityMatrix, m: ProjectiveMeasurement) -> float:
    """S(ρ'_A) - S(ρ_A), never negative up to rounding."""
    m = _require_projective(m, "The Alice entropy cost")
    weights, _ = outcome_statistics(rho_ab, m)
    return dephased_alice_entropy(rho_ab, m, weights) - entropy(partial_trace(rho_ab, "A"))


def delta_cl(rho_ab: DensityMatrix, m: ProjectiveMeasurement) -> float:
    """One-way classical deficit for one measurement: c_hv minus Alice's entropy cost."""
    m = _require_projective(m, "delta_cl")
    weights, entropies = outcome_statistics(rho_ab, m)
    s_a = entropy(partial_trace(rho_ab, "A"))
    s_b = entropy(partial_trace(rho_ab, "B"))
    return s_b - float(weights @ entropies) - (dephased_alice_entropy(rho_ab, m, weights) - s_a)


def deficit_q(rho_ab: DensityMatrix, m: ProjectiveMeasurement) -> float:
    """Σ p_i S(ρ_i^B) + S(ρ'_A) - S(ρ_AB): the one-way quantum deficit before optimization."""
    m = _require_projective(m, "deficit_q")
    weights, entropies = outcome_statistics(rho_ab, m)
    return float(weights @ entropies) + dephased_alice_entropy(rho_ab, m, weights) - entropy(rho_ab)


def concentrable_information(rho_ab: DensityMatrix, m: ProjectiveMeasurement) -> float:
    """log2(d_A d_B) - S(ρ'_A) - Σ p_i S(ρ_i^B).

    Information concentrated into local pure states when Alice measures m and
    sends the outcome to Bob.
    """
    m = _require_projective(m, "Concentrable information")
    weights, entropies = outcome_statistics(rho_ab, m)
    total = float(np.log2(rho_ab.dimension))
    return total - dephased_alice_entropy(rho_ab, m, weights) - float(weights @ entropies)


def i_go(rho_ab: DensityMatrix) -> float:
    """Globally extractable information log2(d_A d_B) - S(ρ_AB)."""
    return float(np.log2(rho_ab.dimension)) - entropy(rho_ab)


def i_lo(rho_ab: DensityMatrix) -> float:
    """Locally extractable information log2 d_A - S(ρ_A) + log2 d_B - S(ρ_B)."""
    d_a, d_b = rho_ab.dims
    s_a = entropy(partial_trace(rho_ab, "A"))
    s_b = entropy(partial_trace(rho_ab, "B"))
    return float(np.log2(d_a)) - s_a + float(np.log2(d_b)) - s_b


def measure_report(rho_ab: DensityMatrix, m: ProjectiveMeasurement) -> MeasureReport:
    """Evaluate every per-measurement quantity from one set of entropies."""
    m = _require_projective(m, "measure_report")
    weights, entropies = outcome_statistics(rho_ab, m)
    s_a = entropy(partial_trace(rho_ab, "A"))
    s_b = entropy(partial_trace(rho_ab, "B"))
    s_ab = entropy(rho_ab)
    s_a_after = dephased_alice_entropy(rho_ab, m, weights)
    average = float(weights @ entropies)

    chv = s_b - average
    cost = s_a_after - s_a
    return MeasureReport(
        c_hv=chv,
        delta_cl=chv - cost,
        deficit_q=average + s_a_after - s_ab,
        alice_entropy_cost=cost,
        outcome_weights=tuple(float(p) for p in weights),
        per_outcome_entropies=tuple(float(s) for s in entropies),
        mutual_information=s_a + s_b - s_ab,
        concentrable_information=float(np.log2(rho_ab.dimension)) - s_a_after - average,
    )


# =========================================================================
# Batched evaluation over bases (optimizer hot path)
# =========================================================================


def basis_projector_stack(unitaries: np.ndarray) -> np.ndarray:
    """Rank-one projectors |u_k><u_k| for the columns of each unitary: (N, d, d) -> (N, d, d, d)."""
    return np.einsum("nak,nck->nkac", unitaries, unitaries.conj())


def _check_objective(objective: str) -> None:
    if objective not in OBJECTIVES:
        raise ValueError(f"Unknown objective: {objective!r} (expected one of {', '.join(OBJECTIVES)})")


@dataclass(frozen=True, eq=False)
class BasisObjective:
    """One objective on one state, evaluated for stacks of Alice bases.

    The entropies that do not depend on the measurement are computed once.
    """

    rho_ab: DensityMatrix
    objective: str
    s_a: float
    s_b: float
    s_ab: float

    @classmethod
    def for_state(cls, rho_ab: DensityMatrix, objective: str) -> "BasisObjective":
        _check_objective(objective)
        return cls(
            rho_ab=rho_ab,
            objective=objective,
            s_a=entropy(partial_trace(rho_ab, "A")),
            s_b=entropy(partial_trace(rho_ab, "B")),
            s_ab=entropy(rho_ab),
        )

    def __call__(self, unitaries: np.ndarray) -> np.ndarray:
        """Objective values for bases given as unitaries (N, d_A, d_A), basis vectors as columns."""
        d_a = self.rho_ab.dim_a
        unitaries = np.asarray(unitaries, dtype=np.complex128)
        if unitaries.ndim != 3 or unitaries.shape[1:] != (d_a, d_a):
            raise DimensionMismatchError(f"Expected bases of shape (N, {d_a}, {d_a})")

        blocks = conditional_blocks(self.rho_ab.matrix, self.rho_ab.dims, basis_projector_stack(unitaries))
        weights, entropies = weighted_outcome_entropies(blocks)
        average = np.sum(weights * entropies, axis=-1)

        if self.objective == "chv":
            return self.s_b - average
        shannon = entropy_from_eigenvalues(weights)
        if self.objective == "dcl":
            return self.s_b - average - (shannon - self.s_a)
        return average + shannon - self.s_ab


def evaluate_bases(rho_ab: DensityMatrix, unitaries: np.ndarray, objective: str) -> np.ndarray:
    """Objective values for a stack of Alice bases given as unitaries (N, d_A, d_A).

    Args:
        rho_ab: Bipartite state
        unitaries: Basis vectors as columns
        objective: "chv", "dcl" or "deficit"

    Returns:
        Array of N values
    """
    return BasisObjective.for_state(rho_ab, objective)(unitaries)


def evaluate(rho_ab: DensityMatrix, m: ProjectiveMeasurement, objective: str) -> float:
    """Single-measurement objective through the public quantity functions."""
    if objective == "chv":
        return c_hv(rho_ab, m)
    if objective == "dcl":
        return delta_cl(rho_ab, m)
    if objective == "deficit":
        return deficit_q(rho_ab, m)
    raise ValueError(f"Unknown objective: {objective!r} (expected one of {', '.join(OBJECTIVES)})")
