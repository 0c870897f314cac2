"""
deficit-lab engine package.

Contains:
- optimizer: Multistart search over Alice measurement bases
- command_executor: Command routing and execution
"""

from typing import Optional

from .optimizer import (
    BasisParameterization,
    MeasurementOptimizer,
    OptimizationResult,
    OptimizerConfig,
    grid_scan_qubit,
    maximize_c_hv,
    maximize_delta_cl,
    minimize_deficit,
)
from .command_executor import CommandExecutor

# Global executor instance
_executor: Optional[CommandExecutor] = None


def get_executor() -> CommandExecutor:
    """Get the global command executor, creating it on first use."""
    global _executor
    if _executor is None:
        _executor = CommandExecutor()
    return _executor


def reset_executor():
    """Drop the global executor (settings changes take effect on next use)."""
    global _executor
    _executor = None


__all__ = [
    "BasisParameterization",
    "MeasurementOptimizer",
    "OptimizationResult",
    "OptimizerConfig",
    "grid_scan_qubit",
    "maximize_c_hv",
    "maximize_delta_cl",
    "minimize_deficit",
    "CommandExecutor",
    "get_executor",
    "reset_executor",
]
