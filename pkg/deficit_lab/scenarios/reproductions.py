"""
Self-checking reproductions.

Each scenario computes a set of quantities, a list of checks that decide
its pass/fail status, and a list of comparisons against published target
values. Comparisons are informational: a published value that cannot be
reproduced shows up as DEVIATES without failing the run.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..config import Settings
from ..engine.optimizer import OptimizationResult, OptimizerConfig, maximize_c_hv, maximize_delta_cl, qubit_grid
from ..errors import DimensionMismatchError
from ..quantum.channel import Channel, apply, apply_to_bob, identity_channel
from ..quantum.linalg import eigenvalues
from ..quantum.measurement import (
    ProjectiveMeasurement,
    commutes_with,
    compress_to_support,
    computational_measurement,
    dephase,
    eigenbasis_degeneracy,
    eigenbasis_measurement,
    outcome_ensemble,
    support_basis,
)
from ..quantum.measures import c_hv, delta_cl
from ..quantum.state import (
    DensityMatrix,
    Ensemble,
    PureState,
    entropy,
    entropy_from_eigenvalues,
    holevo_chi,
    partial_trace,
    product_state,
    restrict_alice,
    state_from_ensemble,
)
from .constructions import knr01_ensemble, sw99_ensemble

logger = logging.getLogger(__name__)

# Optimizer values are lower bounds; equalities between them are checked loosely
LEMMA_TOLERANCE = 2e-3
# The increase is bounded by Alice's entropy cost, about 0.0145 for sw99
INCREASE_MARGIN = 1e-3
EQUALITY_GAP = 1e-4
COMMUTATION_TOLERANCE = 1e-6
# Random starts for the Bell, product and classical reference states
LIGHT_RESTARTS = 2
PUBLISHED_TOLERANCE = 5e-4

# Published target values
SW99_CHV_COMPUTATIONAL = 0.45667
SW99_CHV_EIGENBASIS = 0.3356
KNR01_CHV_COMPUTATIONAL = 0.32499
KNR01_VON_NEUMANN = 0.321915


@dataclass
class ScenarioCheck:
    """One pass/fail assertion inside a report."""

    description: str
    relation: str
    expected: float
    actual: float
    tolerance: float
    passed: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "description": self.description,
            "relation": self.relation,
            "expected": self.expected,
            "actual": self.actual,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


@dataclass
class PublishedComparison:
    """A computed value next to a published target; never affects pass/fail."""

    label: str
    target: float
    achieved: float
    tolerance: float = PUBLISHED_TOLERANCE

    @property
    def deviation(self) -> float:
        return self.achieved - self.target

    @property
    def matches(self) -> bool:
        return abs(self.deviation) <= self.tolerance

    def to_dict(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "target": self.target,
            "achieved": self.achieved,
            "deviation": self.deviation,
            "tolerance": self.tolerance,
            "status": "MATCH" if self.matches else "DEVIATES",
        }


@dataclass
class ScenarioReport:
    """Quantities, checks and published comparisons for one scenario."""

    name: str
    quantities: Dict[str, float] = field(default_factory=dict)
    checks: List[ScenarioCheck] = field(default_factory=list)
    comparisons: List[PublishedComparison] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    def quantity(self, label: str, value: float) -> float:
        self.quantities[label] = float(value)
        return float(value)

    def _record(self, check: ScenarioCheck) -> bool:
        self.checks.append(check)
        logger.info("[%s] %s: %s", self.name, "PASS" if check.passed else "FAIL", check.description)
        return check.passed

    def check_close(self, description: str, expected: float, actual: float, tolerance: float) -> bool:
        passed = abs(actual - expected) <= tolerance
        return self._record(ScenarioCheck(description, "==", float(expected), float(actual), tolerance, passed))

    def check_greater(self, description: str, bound: float, actual: float, margin: float = 0.0) -> bool:
        """actual > bound + margin."""
        passed = actual > bound + margin
        return self._record(ScenarioCheck(description, ">", float(bound), float(actual), margin, passed))

    def check_less(self, description: str, bound: float, actual: float, margin: float = 0.0) -> bool:
        """actual < bound - margin."""
        passed = actual < bound - margin
        return self._record(ScenarioCheck(description, "<", float(bound), float(actual), margin, passed))

    def check_at_least(self, description: str, bound: float, actual: float, tolerance: float = 0.0) -> bool:
        passed = actual >= bound - tolerance
        return self._record(ScenarioCheck(description, ">=", float(bound), float(actual), tolerance, passed))

    def check_at_most(self, description: str, bound: float, actual: float, tolerance: float = 0.0) -> bool:
        passed = actual <= bound + tolerance
        return self._record(ScenarioCheck(description, "<=", float(bound), float(actual), tolerance, passed))

    def check_flag(self, description: str, expected: bool, actual: bool) -> bool:
        passed = bool(expected) == bool(actual)
        return self._record(ScenarioCheck(description, "is", float(expected), float(actual), 0.0, passed))

    def compare(self, label: str, target: float, achieved: float, tolerance: float = PUBLISHED_TOLERANCE):
        self.comparisons.append(PublishedComparison(label, target, float(achieved), tolerance))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "overall": self.overall,
            "quantities": dict(self.quantities),
            "checks": [c.to_dict() for c in self.checks],
            "comparisons": [c.to_dict() for c in self.comparisons],
            "notes": list(self.notes),
        }


def _seed_bases(m: ProjectiveMeasurement) -> List[np.ndarray]:
    return [m.basis()] if m.is_rank_one else []


def _optima(
    rho_ab: DensityMatrix, config: OptimizerConfig, seeds: Sequence[np.ndarray]
) -> Tuple[OptimizationResult, OptimizationResult]:
    """C_HV from the given seeds, then Δ_cl seeded with the C_HV basis."""
    chv = maximize_c_hv(rho_ab, config, initial_bases=seeds)
    dcl = maximize_delta_cl(rho_ab, config, initial_bases=[chv.basis])
    return chv, dcl


# =========================================================================
# Lemma demonstrations
# =========================================================================


def lemma2_demo(
    rho_ab: DensityMatrix,
    m: ProjectiveMeasurement,
    config: Optional[OptimizerConfig] = None,
    name: str = "lemma2",
    optima: Optional[Tuple[OptimizationResult, OptimizationResult]] = None,
) -> ScenarioReport:
    """Dephase in m and in the best C_HV basis, then compare C_HV and Δ_cl before and after.

    When Δ_cl < C_HV, dephasing in a C_HV-optimal basis keeps C_HV, makes
    Δ_cl equal to it, and therefore raises Δ_cl: a local operation that
    increases the measure.

    Args:
        optima: Already computed (C_HV, Δ_cl) results for rho_ab
    """
    config = config or OptimizerConfig()
    report = ScenarioReport(name)

    chv, dcl = optima or _optima(rho_ab, config, _seed_bases(m))
    gap = chv.value - dcl.value
    report.quantity("C_HV(rho)", chv.value)
    report.quantity("Delta_cl(rho)", dcl.value)
    report.quantity("gap C_HV - Delta_cl (rho)", gap)
    report.quantity("c_HV(rho, given basis)", c_hv(rho_ab, m))
    report.quantity("C_HV shortfall of given basis", chv.value - report.quantities["c_HV(rho, given basis)"])
    has_gap = gap > LEMMA_TOLERANCE

    for label, basis_m, seeds in (
        ("given basis", m, _seed_bases(m)),
        ("optimizer basis", chv.best_measurement, [chv.basis]),
    ):
        dephased = dephase(rho_ab, basis_m)
        chv_after = maximize_c_hv(dephased, config, initial_bases=seeds).value
        dcl_after = maximize_delta_cl(dephased, config, initial_bases=seeds).value
        report.quantity(f"C_HV(rho') [{label}]", chv_after)
        report.quantity(f"Delta_cl(rho') [{label}]", dcl_after)

        if label == "optimizer basis":
            report.check_close(f"C_HV preserved by dephasing [{label}]", chv.value, chv_after, LEMMA_TOLERANCE)
        else:
            report.check_at_most(
                f"C_HV does not increase under dephasing [{label}]", chv.value, chv_after, LEMMA_TOLERANCE
            )
            report.compare(f"C_HV(rho') vs C_HV(rho) [{label}]", chv.value, chv_after, LEMMA_TOLERANCE)
        report.check_close(f"Delta_cl(rho') equals C_HV(rho') [{label}]", chv_after, dcl_after, LEMMA_TOLERANCE)
        if has_gap:
            report.check_greater(f"Delta_cl increases under dephasing [{label}]", dcl.value, dcl_after, INCREASE_MARGIN)
        else:
            report.check_close(f"Delta_cl unchanged by dephasing [{label}]", dcl.value, dcl_after, LEMMA_TOLERANCE)

    return report


def lemma1_report(
    rho_ab: DensityMatrix,
    config: Optional[OptimizerConfig] = None,
    name: str = "lemma1",
    optima: Optional[Tuple[OptimizationResult, OptimizationResult]] = None,
) -> ScenarioReport:
    """C_HV versus Δ_cl and whether an eigenbasis-commuting measurement attains C_HV.

    Equality of the two measures should coincide with the existence of an
    optimal measurement commuting with ρ_A.

    Args:
        optima: Already computed (C_HV, Δ_cl) results for rho_ab
    """
    config = config or OptimizerConfig()
    report = ScenarioReport(name)
    rho_a = partial_trace(rho_ab, "A")

    if optima is None:
        dcl = maximize_delta_cl(rho_ab, config)
        # Seeding with the Δ_cl basis guarantees C_HV >= Δ_cl for the reported values
        chv = maximize_c_hv(rho_ab, config, initial_bases=[dcl.basis])
    else:
        chv, dcl = optima
    eig = eigenbasis_measurement(rho_a)
    gap = chv.value - dcl.value

    report.quantity("C_HV", chv.value)
    report.quantity("Delta_cl", dcl.value)
    report.quantity("gap", gap)
    report.quantity("c_HV(eigenbasis)", c_hv(rho_ab, eig))
    report.quantity("delta_cl(eigenbasis)", delta_cl(rho_ab, eig))
    commutes = commutes_with(chv.best_measurement, rho_a, COMMUTATION_TOLERANCE)
    report.quantity("best C_HV measurement commutes with rho_A", float(commutes))
    degeneracy = eigenbasis_degeneracy(rho_a)
    report.quantity("degenerate eigenvalue clusters", float(len(degeneracy)))
    if degeneracy:
        report.notes.append(f"rho_A eigenbasis is not unique: degenerate clusters {degeneracy}")

    eigen_optimal = abs(report.quantities["c_HV(eigenbasis)"] - chv.value) <= EQUALITY_GAP
    report.check_at_least("Delta_cl <= C_HV", 0.0, gap, 1e-6)
    report.check_flag(
        "equality holds iff a commuting measurement is optimal",
        gap <= EQUALITY_GAP,
        commutes or eigen_optimal,
    )
    return report


# =========================================================================
# Commuting diagram and orthogonal ensembles
# =========================================================================


def diagram_check(
    weights: Sequence[float],
    pure_states: Sequence[np.ndarray],
    channel: Channel,
    name: str = "diagram",
) -> ScenarioReport:
    """Compare "measure, then send each state through Λ" with "apply I⊗Λ, then measure".

    Path A is {p_i, Λ(ψ_i)}. Path B is Bob's outcome ensemble for the
    computational-basis measurement on (I⊗Λ)|ψ><ψ|, |ψ> = Σ √p_i |i>|ψ_i>.
    """
    report = ScenarioReport(name)
    weights = np.asarray(weights, dtype=float)

    members_a = [apply(channel, PureState(s).density()) for s in pure_states]
    path_a = Ensemble(weights, tuple(members_a))

    joint = apply_to_bob(channel, state_from_ensemble(weights, pure_states).density())
    path_b = outcome_ensemble(joint, computational_measurement(len(pure_states)))

    report.check_close("outcome count", float(len(path_a)), float(len(path_b)), 0.0)
    if len(path_a) == len(path_b):
        weight_dev = float(np.max(np.abs(path_a.weights - path_b.weights)))
        member_dev = max(float(np.max(np.abs(a.matrix - b.matrix))) for a, b in zip(path_a.members, path_b.members))
        report.quantity("max weight deviation", weight_dev)
        report.quantity("max member deviation", member_dev)
        report.check_at_most("weights agree", 0.0, weight_dev, 1e-10)
        report.check_at_most("members agree", 0.0, member_dev, 1e-9)

    chi = report.quantity("holevo chi of output ensemble", holevo_chi(path_a))
    chv = report.quantity("c_HV(joint, computational)", c_hv(joint, computational_measurement(len(pure_states))))
    report.check_close("c_HV of the joint state equals chi of the outputs", chi, chv, 1e-9)
    return report


@dataclass(frozen=True)
class OrthogonalScan:
    value: float
    theta: float
    phi: float
    weight: float


def orthogonal_ensemble_search(channel: Channel, grid_points: int = 64, weight_points: int = 41) -> OrthogonalScan:
    """Grid search of χ over output ensembles {q, Λ(v)}, {1-q, Λ(v⊥)} of orthogonal qubit inputs."""
    if channel.dim != 2:
        raise DimensionMismatchError(f"Orthogonal ensemble scan needs a qubit channel, got dimension {channel.dim}")

    unitaries, theta, phi = qubit_grid(grid_points)
    inputs = np.einsum("nak,nck->nkac", unitaries, unitaries.conj())
    outputs = channel.map_operators(inputs)
    output_entropies = entropy_from_eigenvalues(np.clip(eigenvalues(outputs), 0.0, None))

    q = np.linspace(0.0, 1.0, weight_points)
    averages = (
        q[None, :, None, None] * outputs[:, None, 0]
        + (1.0 - q)[None, :, None, None] * outputs[:, None, 1]
    )
    average_entropies = entropy_from_eigenvalues(np.clip(eigenvalues(averages), 0.0, None))
    member_entropies = q[None, :] * output_entropies[:, None, 0] + (1.0 - q)[None, :] * output_entropies[:, None, 1]
    chi = average_entropies - member_entropies

    n, k = np.unravel_index(int(np.argmax(chi)), chi.shape)
    return OrthogonalScan(value=float(chi[n, k]), theta=float(theta[n]), phi=float(phi[n]), weight=float(q[k]))


def orthogonal_ensemble_scan(channel: Channel, grid_points: int = 64, weight_points: int = 41) -> float:
    """Largest χ reachable with two orthogonal pure inputs (grid estimate)."""
    return orthogonal_ensemble_search(channel, grid_points, weight_points).value


# =========================================================================
# Named reproductions
# =========================================================================


def _bell_state() -> DensityMatrix:
    return state_from_ensemble([0.5, 0.5], [[1, 0], [0, 1]]).density()


def _classical_mixture() -> DensityMatrix:
    return DensityMatrix(np.diag([0.5, 0.0, 0.0, 0.5]).astype(np.complex128), (2, 2))


def _product() -> DensityMatrix:
    rho_a = DensityMatrix(np.diag([0.7, 0.3]).astype(np.complex128))
    rho_b = DensityMatrix(np.diag([0.4, 0.6]).astype(np.complex128))
    return product_state(rho_a, rho_b)


class ScenarioRunner:
    """Runs named reproductions; every `_scenario_<name>` method is a target."""

    def __init__(self, config: Optional[OptimizerConfig] = None):
        self.config = config or OptimizerConfig.for_scenarios(Settings())
        # Trivial cases converge from the seeded starts
        self.light_config = replace(self.config, restarts=min(self.config.restarts, LIGHT_RESTARTS))
        self._sw99_optima: Optional[Tuple[OptimizationResult, OptimizationResult]] = None
        self._scenarios: Dict[str, Callable[[], List[ScenarioReport]]] = {}
        self._register_scenarios()

    def _register_scenarios(self):
        for name in dir(self):
            if name.startswith("_scenario_"):
                self._scenarios[name[len("_scenario_") :].replace("_", "-")] = getattr(self, name)

    @property
    def targets(self) -> List[str]:
        return sorted(self._scenarios)

    def run(self, target: str) -> List[ScenarioReport]:
        scenario = self._scenarios.get(target)
        if scenario is None:
            raise ValueError(f"Unknown target: {target!r} (available: {', '.join(self.targets)})")
        return scenario()

    def _sw99_results(self) -> Tuple[OptimizationResult, OptimizationResult]:
        """C_HV and Δ_cl of the sw99 state, shared by the sw99 and lemma targets."""
        if self._sw99_optima is None:
            self._sw99_optima = _optima(sw99_ensemble().state(), self.config, [np.eye(2, dtype=np.complex128)])
        return self._sw99_optima

    # =========================================================================
    # Targets
    # =========================================================================

    def _scenario_sw99(self) -> List[ScenarioReport]:
        construction = sw99_ensemble()
        rho = construction.state()
        rho_a = partial_trace(rho, "A")
        report = ScenarioReport("sw99")
        report.quantity("relative sign of psi1", construction.constants["relative_sign"])

        comp = computational_measurement(2)
        eig = eigenbasis_measurement(rho_a)
        chv_comp = report.quantity("c_HV(computational)", c_hv(rho, comp))
        chv_eig = report.quantity("c_HV(eigenbasis)", c_hv(rho, eig))
        report.quantity("delta_cl(computational)", delta_cl(rho, comp))
        dcl_eig = report.quantity("delta_cl(eigenbasis)", delta_cl(rho, eig))
        report.quantity("S(rho_A)", entropy(rho_a))

        chi = report.quantity("holevo chi of channel outputs", holevo_chi(construction.output_ensemble()))

        chv, dcl = self._sw99_results()
        report.quantity("C_HV (optimizer)", chv.value)
        report.quantity("Delta_cl (optimizer)", dcl.value)
        shortfall = report.quantity("C_HV shortfall of computational basis", chv.value - chv_comp)
        if shortfall > LEMMA_TOLERANCE:
            report.notes.append(
                f"computational basis is not C_HV-optimal: best basis found improves c_HV by {shortfall:.6f}"
            )

        report.check_close("c_HV(computational) equals chi of the outputs", chi, chv_comp, 1e-9)
        report.check_greater("computational basis beats the eigenbasis", chv_eig, chv_comp)
        report.check_close("eigenbasis has no Alice entropy cost", chv_eig, dcl_eig, 1e-9)
        report.check_at_least("C_HV at least c_HV(computational)", chv_comp, chv.value, 1e-12)
        report.check_greater("Delta_cl strictly below C_HV", dcl.value, chv.value, EQUALITY_GAP)
        commutes = commutes_with(chv.best_measurement, rho_a, COMMUTATION_TOLERANCE)
        report.check_flag("best C_HV measurement commutes with rho_A", False, commutes)

        report.compare("c_HV(computational)", SW99_CHV_COMPUTATIONAL, chv_comp)
        report.compare("c_HV(eigenbasis)", SW99_CHV_EIGENBASIS, chv_eig)

        # Literal printed sign, shown for reference only
        literal = sw99_ensemble(relative_sign=1).state()
        literal_comp = report.quantity("c_HV(computational) [printed sign]", c_hv(literal, comp))
        literal_eig = report.quantity(
            "c_HV(eigenbasis) [printed sign]", c_hv(literal, eigenbasis_measurement(partial_trace(literal, "A")))
        )
        report.compare("c_HV(computational) [printed sign]", SW99_CHV_COMPUTATIONAL, literal_comp)
        report.compare("c_HV(eigenbasis) [printed sign]", SW99_CHV_EIGENBASIS, literal_eig)
        return [report]

    def _scenario_knr01(self) -> List[ScenarioReport]:
        construction = knr01_ensemble()
        rho = construction.state()
        rho_a = partial_trace(rho, "A")
        report = ScenarioReport("knr01")
        for key in ("a_printed", "a_used", "b_used", "weight_sum_printed"):
            report.quantity(key, construction.constants[key])

        support, _ = support_basis(rho_a)
        rank = report.quantity("rank(rho_A)", support.shape[1])
        comp = computational_measurement(3)
        eig = eigenbasis_measurement(rho_a)
        chv_comp = report.quantity("c_HV(computational)", c_hv(rho, comp))
        dcl_comp = report.quantity("delta_cl(computational)", delta_cl(rho, comp))
        chv_eig = report.quantity("c_HV(eigenbasis)", c_hv(rho, eig))
        dcl_eig = report.quantity("delta_cl(eigenbasis)", delta_cl(rho, eig))

        povm = compress_to_support(comp, rho_a)
        compressed = restrict_alice(rho, support)
        chv_povm = report.quantity("c_HV(compressed POVM on support)", c_hv(compressed, povm))

        restricted = replace(self.config, support_restricted=True)
        chv_vn = report.quantity("C_HV over support von Neumann (optimizer)", maximize_c_hv(rho, restricted).value)
        dcl_vn = maximize_delta_cl(rho, restricted).value
        dcl_full = maximize_delta_cl(rho, self.config).value
        report.quantity("Delta_cl over support von Neumann (optimizer)", dcl_vn)
        report.quantity("Delta_cl over full-space bases (optimizer)", dcl_full)

        report.check_close("rho_A has rank two", 2.0, rank, 0.0)
        report.check_less("delta_cl(computational) is negative", 0.0, dcl_comp)
        report.check_greater("computational basis beats the eigenbasis for c_HV", chv_eig, chv_comp)
        report.check_close("eigenbasis has no Alice entropy cost", chv_eig, dcl_eig, 1e-9)
        report.check_close("compressed POVM reproduces c_HV(computational)", chv_comp, chv_povm, 1e-9)
        report.check_less("three-outcome POVM beats every support von Neumann measurement", chv_comp, chv_vn)
        report.check_at_least("Delta_cl at least delta_cl(eigenbasis)", dcl_eig, dcl_full, 1e-12)

        report.compare("c_HV(computational)", KNR01_CHV_COMPUTATIONAL, chv_comp)
        report.compare("c_HV(eigenbasis)", KNR01_VON_NEUMANN, chv_eig)
        report.compare("C_HV over support von Neumann", KNR01_VON_NEUMANN, chv_vn, 1e-3)
        report.compare("Delta_cl over support von Neumann", KNR01_VON_NEUMANN, dcl_vn)
        report.compare("Delta_cl over full-space bases", KNR01_VON_NEUMANN, dcl_full)

        # Printed amplitude, normalized before use
        printed = knr01_ensemble(a=construction.constants["a_printed"])
        printed_chv = report.quantity("c_HV(computational) [printed a, normalized]", c_hv(printed.state(), comp))
        report.compare("c_HV(computational) [printed a, normalized]", KNR01_CHV_COMPUTATIONAL, printed_chv)
        return [report]

    def _scenario_lemma1(self) -> List[ScenarioReport]:
        return [
            lemma1_report(sw99_ensemble().state(), self.config, name="lemma1/sw99", optima=self._sw99_results()),
            lemma1_report(_bell_state(), self.light_config, name="lemma1/bell"),
            lemma1_report(_product(), self.light_config, name="lemma1/product"),
        ]

    def _scenario_lemma2(self) -> List[ScenarioReport]:
        comp = computational_measurement(2)
        return [
            lemma2_demo(sw99_ensemble().state(), comp, self.config, name="lemma2/sw99", optima=self._sw99_results()),
            lemma2_demo(_bell_state(), comp, self.light_config, name="lemma2/bell"),
            lemma2_demo(_classical_mixture(), comp, self.light_config, name="lemma2/classical"),
        ]

    def _scenario_diagram(self) -> List[ScenarioReport]:
        reports = []
        for construction in (sw99_ensemble(), knr01_ensemble()):
            name = f"diagram/{construction.name}"
            reports.append(diagram_check(construction.weights, construction.states, construction.channel, name))
        reports.append(diagram_check([0.5, 0.5], [[1, 0], [0, 1]], identity_channel(2), "diagram/identity"))
        return reports

    def _scenario_chi_scan(self) -> List[ScenarioReport]:
        construction = sw99_ensemble()
        report = ScenarioReport("chi-scan/sw99")
        scan = orthogonal_ensemble_search(construction.channel, self.config.grid_points_per_angle)
        report.quantity("max chi over orthogonal inputs", scan.value)
        report.quantity("best theta", scan.theta)
        report.quantity("best phi", scan.phi)
        report.quantity("best weight q", scan.weight)

        chi = report.quantity("chi of the non-orthogonal inputs", holevo_chi(construction.output_ensemble()))
        report.check_less("non-orthogonal inputs beat every orthogonal pair", chi, scan.value)
        report.compare("max chi over orthogonal inputs", SW99_CHV_COMPUTATIONAL, scan.value)
        report.compare("chi of the non-orthogonal inputs", SW99_CHV_COMPUTATIONAL, chi)
        return [report]
