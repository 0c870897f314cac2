"""
Command Executor for deficit-lab.

Routes commands to handlers following the _cmd_{type} pattern. Handlers
return plain dictionaries with a 'status' key ('success', 'failed' or
'error'); rendering and exit codes are left to the CLI.
"""

import platform
from typing import Any, Callable, Dict, Optional

import numpy as np
import scipy

from .. import __version__
from ..config import Settings, get_settings
from ..quantum.measurement import ProjectiveMeasurement, eigenbasis_degeneracy, eigenbasis_measurement
from ..quantum.measures import c_hv, deficit_q, delta_cl, i_go, i_lo, measure_report
from ..quantum.state import entropy, mutual_information, partial_trace
from ..utils.conversion import basis_to_document, load_measurement_file, load_state_file
from .optimizer import OptimizerConfig, maximize_c_hv, maximize_delta_cl, minimize_deficit

_OPTIMIZERS = {
    "chv": maximize_c_hv,
    "dcl": maximize_delta_cl,
    "deficit": minimize_deficit,
}


def _safe_params(params: Dict[str, Any]) -> Dict[str, Any]:
    # Include relevant params (filter out large data)
    return {
        k: v
        for k, v in params.items()
        if not isinstance(v, (bytes, bytearray)) and (not isinstance(v, (list, dict)) or len(str(v)) < 200)
    }


class CommandExecutor:
    """Executes deficit-lab commands."""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or get_settings()

        # Build command handler map
        self._handlers: Dict[str, Callable] = {}
        self._register_handlers()

    def _register_handlers(self):
        """Register all command handlers."""
        for name in dir(self):
            if name.startswith("_cmd_"):
                cmd_type = name[5:]
                self._handlers[cmd_type] = getattr(self, name)

    @property
    def commands(self):
        return sorted(self._handlers)

    def execute(self, cmd_type: str, params: Dict[str, Any]) -> Dict[str, Any]:
        """Execute a command by type.

        Args:
            cmd_type: The command type (e.g., 'reproduce', 'optimize')
            params: Parameters for the command

        Returns:
            Dict with 'status' key ('success', 'failed' or 'error') and command-specific data.
            On error, includes 'operation', 'params', 'error' and 'error_type' keys.
        """
        handler = self._handlers.get(cmd_type)
        if not handler:
            return {
                "status": "error",
                "operation": cmd_type,
                "error": f"Unknown command: {cmd_type}",
                "available_commands": self.commands,
            }

        try:
            result = handler(params)

            # Enrich error responses with operation context
            if result.get("status") == "error":
                result["operation"] = cmd_type
                result.setdefault("params", _safe_params(params))

            return result

        except Exception as e:
            return {
                "status": "error",
                "operation": cmd_type,
                "error": f"{type(e).__name__}: {str(e)}",
                "error_type": type(e).__name__,
                "params": _safe_params(params),
            }

    def _optimizer_config(self, params: Dict[str, Any], scenarios: bool = False) -> OptimizerConfig:
        build = OptimizerConfig.for_scenarios if scenarios else OptimizerConfig.from_settings
        return build(
            self.settings,
            restarts=params.get("restarts"),
            grid_points_per_angle=params.get("grid"),
            seed=params.get("seed"),
            support_restricted=params.get("support_restricted") or None,
            threads=params.get("threads"),
        )

    # =========================================================================
    # COMMANDS
    # =========================================================================

    def _cmd_reproduce(self, params: Dict[str, Any]) -> Dict[str, Any]:
        """Run a named reproduction and collect its reports."""
        # Imported here: scenarios build on the optimizer in this package
        from ..scenarios.reproductions import ScenarioRunner

        target = params.get("target")
        runner = ScenarioRunner(self._optimizer_config(params, scenarios=True))
        if target not in runner.targets:
            return {
                "status": "error",
                "error": f"Unknown target: {target}",
                "available_targets": runner.targets,
            }

        reports = [r.to_dict() for r in runner.run(target)]
        overall = all(r["overall"] for r in reports)
        return {
            "status": "success" if overall else "failed",
            "target": target,
            "overall": overall,
            "reports": reports,
        }

    def _cmd_measures(self, params: Dict[str, Any]) -> Dict[str, Any]:
        """Entropies and information quantities of a state, optionally for one measurement."""
        rho = load_state_file(params["state"])
        rho_a = partial_trace(rho, "A")
        rho_b = partial_trace(rho, "B")

        result: Dict[str, Any] = {
            "status": "success",
            "dims": list(rho.dims),
            "quantities": {
                "S(rho_AB)": entropy(rho),
                "S(rho_A)": entropy(rho_a),
                "S(rho_B)": entropy(rho_b),
                "I_M": mutual_information(rho),
                "I_GO": i_go(rho),
                "I_LO": i_lo(rho),
            },
        }

        eig = eigenbasis_measurement(rho_a)
        clusters = eigenbasis_degeneracy(rho_a, self.settings.tolerances.degeneracy)
        result["eigenbasis"] = {
            "c_hv": c_hv(rho, eig),
            "delta_cl": delta_cl(rho, eig),
            "degenerate_clusters": [list(c) for c in clusters],
            "basis": basis_to_document(eig.basis()),
        }

        if params.get("measurement"):
            m = load_measurement_file(params["measurement"])
            if isinstance(m, ProjectiveMeasurement):
                result["measurement"] = measure_report(rho, m).to_dict()
            else:
                # δ_cl and the deficit need a projective measurement
                result["measurement"] = {"c_hv": c_hv(rho, m)}
        return result

    def _cmd_optimize(self, params: Dict[str, Any]) -> Dict[str, Any]:
        """Optimize one objective over Alice bases."""
        objective = params.get("objective", "chv")
        optimizer = _OPTIMIZERS.get(objective)
        if optimizer is None:
            return {
                "status": "error",
                "error": f"Unknown objective: {objective}",
                "available_objectives": sorted(_OPTIMIZERS),
            }

        rho = load_state_file(params["state"])
        config = self._optimizer_config(params)
        result = optimizer(rho, config)

        document = result.to_dict()
        document["status"] = "success"
        document["config"] = {
            "restarts": config.restarts,
            "grid_points_per_angle": config.grid_points_per_angle,
            "seed": config.seed,
            "support_restricted": config.support_restricted,
        }
        document["best_basis"] = basis_to_document(result.basis)
        document["I_GO"] = i_go(rho)
        document["I_M"] = mutual_information(rho)
        document["I_LO"] = i_lo(rho)
        # Information concentrable by one-way LOCC with the reported basis;
        # its excess over I_LO is delta_cl of that basis
        document["I_oneway"] = document["I_GO"] - deficit_q(rho, result.best_measurement)
        document["I_oneway_minus_I_LO"] = document["I_oneway"] - document["I_LO"]
        return document

    def _cmd_version(self, params: Dict[str, Any]) -> Dict[str, Any]:
        """Package and numeric stack versions."""
        return {
            "status": "success",
            "deficit_lab": __version__,
            "numpy": np.__version__,
            "scipy": scipy.__version__,
            "python": platform.python_version(),
        }
