"""
Measurement optimizer.

Searches complete rank-one Alice measurements for the supremum of c_HV or
δ_cl, or the infimum of the one-way quantum deficit. A basis is the set of
columns of R·exp(iH), H Hermitian from d² real parameters and R a
reference unitary. Every start is refined with scipy's Nelder-Mead.

Starts, in order:
- the computational basis
- the eigenbasis of ρ_A
- the best point of a (θ, φ) grid when the search space is a qubit
- caller-supplied bases
- `restarts` random generators drawn from default_rng([seed, k])

Random start k never depends on how many restarts were requested, so
adding restarts can only improve the result.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize

from ..errors import ConfigurationError, DimensionMismatchError
from ..quantum.linalg import ComplexMatrix, hermitian_eig, identity, unitary_from_params
from ..quantum.measurement import ProjectiveMeasurement, support_basis, unitary_measurement
from ..quantum.measures import OBJECTIVES, BasisObjective, evaluate, evaluate_bases
from ..quantum.state import DensityMatrix, partial_trace

logger = logging.getLogger(__name__)

# Objectives that are maximized; the deficit is minimized
_MAXIMIZED = {"chv": True, "dcl": True, "deficit": False}

SEEDED_STEP = 0.1
RANDOM_STEP = 0.5


@dataclass(frozen=True)
class OptimizerConfig:
    """Search settings shared by all optimizers."""

    grid_points_per_angle: int = 64
    restarts: int = 32
    seed: int = 0
    refine_tolerance: float = 1e-9
    max_refine_iterations: int = 2000
    support_restricted: bool = False
    # 0 or 1: evaluate starts serially
    threads: int = 0

    def __post_init__(self):
        for name in ("grid_points_per_angle", "restarts", "max_refine_iterations"):
            if getattr(self, name) < 1:
                raise ConfigurationError(f"{name} must be >= 1, got {getattr(self, name)}")
        if self.seed < 0:
            raise ConfigurationError(f"seed must be nonnegative, got {self.seed}")
        if self.refine_tolerance <= 0:
            raise ConfigurationError("refine_tolerance must be positive")
        if self.threads < 0:
            raise ConfigurationError("threads must be >= 0")

    @classmethod
    def from_settings(cls, settings, **overrides) -> "OptimizerConfig":
        """Build from a config.Settings tree; keyword overrides win."""
        values = {
            "grid_points_per_angle": settings.optimizer.grid_points_per_angle,
            "restarts": settings.optimizer.restarts,
            "seed": settings.optimizer.seed,
            "refine_tolerance": settings.optimizer.refine_tolerance,
            "max_refine_iterations": settings.optimizer.max_refine_iterations,
            "support_restricted": settings.optimizer.support_restricted,
            "threads": settings.threads,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    @classmethod
    def for_scenarios(cls, settings, **overrides) -> "OptimizerConfig":
        """Like from_settings, with the lighter budget of the scenarios section."""
        budget = settings.scenarios
        values = {
            "restarts": budget.restarts,
            "refine_tolerance": budget.refine_tolerance,
            "max_refine_iterations": budget.max_refine_iterations,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls.from_settings(settings, **values)


@dataclass(frozen=True)
class BasisParameterization:
    """Orthonormal basis as the columns of reference · exp(iH(params))."""

    dim: int
    params: np.ndarray
    reference: Optional[ComplexMatrix] = None

    def unitary(self) -> ComplexMatrix:
        return unitary_from_params(self.params, self.dim, self.reference)

    def measurement(self) -> ProjectiveMeasurement:
        return unitary_measurement(self.unitary())


@dataclass
class OptimizationResult:
    """Outcome of one optimizer run.

    For maximized objectives value is a lower bound on the supremum.
    """

    objective: str
    value: float
    best_measurement: ProjectiveMeasurement
    basis: ComplexMatrix
    starts: int
    evaluations: int
    converged: bool
    history: List[Tuple[int, float]] = field(default_factory=list)
    best_start: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "objective": self.objective,
            "value": self.value,
            "starts": self.starts,
            "evaluations": self.evaluations,
            "converged": self.converged,
            "best_start": self.best_start,
            "history": [[i, v] for i, v in self.history],
        }


@dataclass
class _Start:
    index: int
    label: str
    reference: ComplexMatrix
    x0: np.ndarray
    step: float


@dataclass
class _StartOutcome:
    index: int
    value: float
    params: np.ndarray
    evaluations: int
    success: bool


def qubit_grid(grid_points: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Qubit bases on a (θ, φ) grid.

    θ takes grid_points values in [0, π], φ takes 2·grid_points values in
    [0, 2π). The first column of each unitary is cos(θ/2)|0> + e^{iφ} sin(θ/2)|1>.

    Returns:
        (unitaries of shape (N, 2, 2), θ values, φ values), flattened θ-major
    """
    theta = np.linspace(0.0, np.pi, grid_points)
    phi = np.linspace(0.0, 2.0 * np.pi, 2 * grid_points, endpoint=False)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    tt = tt.reshape(-1)
    pp = pp.reshape(-1)
    c = np.cos(tt / 2)
    s = np.sin(tt / 2)
    e = np.exp(1j * pp)
    unitaries = np.empty((tt.size, 2, 2), dtype=np.complex128)
    unitaries[:, 0, 0] = c
    unitaries[:, 1, 0] = e * s
    unitaries[:, 0, 1] = -np.conj(e) * s
    unitaries[:, 1, 1] = c
    return unitaries, tt, pp


def _check_objective(objective: str):
    if objective not in OBJECTIVES:
        raise ValueError(f"Unknown objective: {objective!r} (expected one of {', '.join(OBJECTIVES)})")


def _best_index(values: np.ndarray, maximize: bool) -> int:
    # argmax/argmin return the first occurrence on ties
    return int(np.argmax(values) if maximize else np.argmin(values))


def grid_scan_qubit(objective: str, rho_ab: DensityMatrix, grid_points: int = 64) -> Tuple[float, ComplexMatrix]:
    """Brute-force scan of qubit Alice bases.

    Args:
        objective: "chv", "dcl" or "deficit"
        rho_ab: State with d_A = 2
        grid_points: θ resolution; φ uses twice as many points

    Returns:
        (best value, unitary whose columns are the best basis)
    """
    _check_objective(objective)
    if rho_ab.dim_a != 2:
        raise DimensionMismatchError(f"grid_scan_qubit needs a qubit on Alice's side, got d_A = {rho_ab.dim_a}")
    unitaries, _, _ = qubit_grid(grid_points)
    values = evaluate_bases(rho_ab, unitaries, objective)
    best = _best_index(values, _MAXIMIZED[objective])
    return float(values[best]), unitaries[best]


class MeasurementOptimizer:
    """Multistart Nelder-Mead search over Alice bases for one objective."""

    def __init__(
        self,
        rho_ab: DensityMatrix,
        objective: str,
        config: Optional[OptimizerConfig] = None,
        initial_bases: Sequence[ComplexMatrix] = (),
    ):
        _check_objective(objective)
        self.rho = rho_ab
        self.objective = objective
        self.config = config or OptimizerConfig()
        self.initial_bases = [np.asarray(b, dtype=np.complex128) for b in initial_bases]
        self.maximize = _MAXIMIZED[objective]
        self._objective = BasisObjective.for_state(rho_ab, objective)

        d = rho_ab.dim_a
        if self.config.support_restricted:
            self.support, self.kernel = support_basis(partial_trace(rho_ab, "A"))
        else:
            self.support, self.kernel = identity(d), np.zeros((d, 0), dtype=np.complex128)
        self.search_dim = self.support.shape[1]

    # =========================================================================
    # Objective plumbing
    # =========================================================================

    def _embed(self, inner: np.ndarray) -> np.ndarray:
        """Full Alice bases from search-space unitaries of shape (N, r, r)."""
        n = inner.shape[0]
        full = np.einsum("ar,nrs->nas", self.support, inner)
        if self.kernel.shape[1]:
            kernel = np.broadcast_to(self.kernel, (n,) + self.kernel.shape)
            full = np.concatenate([full, kernel], axis=2)
        return full

    def _values(self, inner: np.ndarray) -> np.ndarray:
        return self._objective(self._embed(inner))

    def _loss(self, params: np.ndarray, reference: ComplexMatrix) -> float:
        u = BasisParameterization(self.search_dim, params, reference).unitary()
        value = float(self._values(u[None])[0])
        return -value if self.maximize else value

    # =========================================================================
    # Starts
    # =========================================================================

    def _seeded_references(self) -> Tuple[List[Tuple[str, ComplexMatrix]], int]:
        r = self.search_dim
        references = [("computational", identity(r))]
        evaluations = 0

        if not self.config.support_restricted:
            eig = hermitian_eig(partial_trace(self.rho, "A").matrix)
            references.append(("eigenbasis", eig.eigenvectors))

        if r == 2:
            unitaries, _, _ = qubit_grid(self.config.grid_points_per_angle)
            values = self._values(unitaries)
            evaluations += unitaries.shape[0]
            references.append(("grid", unitaries[_best_index(values, self.maximize)]))

        for k, basis in enumerate(self.initial_bases):
            if self.config.support_restricted:
                logger.debug("Ignoring supplied basis %d in support-restricted search", k)
                continue
            if basis.shape != (r, r):
                raise DimensionMismatchError(f"Supplied basis {k} has shape {basis.shape}, expected {(r, r)}")
            references.append((f"supplied-{k}", basis))

        return references, evaluations

    def _starts(self) -> Tuple[List[_Start], int]:
        r = self.search_dim
        references, evaluations = self._seeded_references()
        starts = [
            _Start(index=i, label=label, reference=ref, x0=np.zeros(r * r), step=SEEDED_STEP)
            for i, (label, ref) in enumerate(references)
        ]
        for k in range(self.config.restarts):
            rng = np.random.default_rng([self.config.seed, k])
            starts.append(
                _Start(
                    index=len(starts),
                    label=f"random-{k}",
                    reference=identity(r),
                    x0=rng.uniform(-np.pi, np.pi, r * r),
                    step=RANDOM_STEP,
                )
            )
        return starts, evaluations

    def _refine(self, start: _Start) -> _StartOutcome:
        n = start.x0.size
        simplex = np.vstack([start.x0, start.x0 + start.step * np.eye(n)])
        res = minimize(
            self._loss,
            start.x0,
            args=(start.reference,),
            method="Nelder-Mead",
            options={
                "initial_simplex": simplex,
                "xatol": self.config.refine_tolerance,
                "fatol": self.config.refine_tolerance,
                "maxiter": self.config.max_refine_iterations,
            },
        )
        value = -float(res.fun) if self.maximize else float(res.fun)
        logger.debug("start %d (%s): value=%.10f nfev=%d", start.index, start.label, value, res.nfev)
        return _StartOutcome(
            index=start.index,
            value=value,
            params=np.asarray(res.x),
            evaluations=int(res.nfev),
            success=bool(res.success),
        )

    # =========================================================================
    # Run
    # =========================================================================

    def run(self) -> OptimizationResult:
        starts, evaluations = self._starts()

        threads = self.config.threads
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                outcomes = list(pool.map(self._refine, starts))
        else:
            outcomes = [self._refine(s) for s in starts]

        # Best value wins, lowest start index breaks ties
        sign = -1.0 if self.maximize else 1.0
        best = min(outcomes, key=lambda o: (sign * o.value, o.index))
        start = starts[best.index]

        inner = BasisParameterization(self.search_dim, best.params, start.reference).unitary()
        basis = self._embed(inner[None])[0]
        measurement = unitary_measurement(basis)
        value = evaluate(self.rho, measurement, self.objective)
        evaluations += sum(o.evaluations for o in outcomes)

        logger.info(
            "%s: best %.10f from start %d (%s); %d starts, %d evaluations",
            self.objective,
            value,
            best.index,
            start.label,
            len(starts),
            evaluations,
        )
        return OptimizationResult(
            objective=self.objective,
            value=value,
            best_measurement=measurement,
            basis=basis,
            starts=len(starts),
            evaluations=evaluations,
            converged=best.success,
            history=[(o.index, o.value) for o in outcomes],
            best_start=best.index,
        )


def maximize_c_hv(
    rho_ab: DensityMatrix,
    config: Optional[OptimizerConfig] = None,
    initial_bases: Sequence[ComplexMatrix] = (),
) -> OptimizationResult:
    """Lower bound on C_HV: the supremum of c_hv over rank-one Alice measurements."""
    return MeasurementOptimizer(rho_ab, "chv", config, initial_bases).run()


def maximize_delta_cl(
    rho_ab: DensityMatrix,
    config: Optional[OptimizerConfig] = None,
    initial_bases: Sequence[ComplexMatrix] = (),
) -> OptimizationResult:
    """Lower bound on the one-way classical deficit Δ_cl."""
    return MeasurementOptimizer(rho_ab, "dcl", config, initial_bases).run()


def minimize_deficit(
    rho_ab: DensityMatrix,
    config: Optional[OptimizerConfig] = None,
    initial_bases: Sequence[ComplexMatrix] = (),
) -> OptimizationResult:
    """Upper bound on the one-way quantum deficit Δ."""
    return MeasurementOptimizer(rho_ab, "deficit", config, initial_bases).run()
