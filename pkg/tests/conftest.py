"""Shared fixtures for the deficit-lab test suite."""

import logging

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from deficit_lab.config import reset_settings
from deficit_lab.engine import reset_executor
from deficit_lab.engine.optimizer import OptimizerConfig
from deficit_lab.quantum.channel import KrausChannel
from deficit_lab.quantum.linalg import random_unitary
from deficit_lab.quantum.state import DensityMatrix, product_state, state_from_ensemble
from deficit_lab.scenarios.constructions import build_knr01_state, build_sw99_state

settings.register_profile(
    "deficit-lab",
    deadline=None,
    max_examples=25,
    suppress_health_check=[HealthCheck.function_scoped_fixture],
)
settings.load_profile("deficit-lab")

seeds = st.integers(min_value=0, max_value=2**32 - 1)


@pytest.fixture(autouse=True)
def isolated_environment(monkeypatch, tmp_path):
    """Keep user config, env overrides and CLI logging setup out of every test."""
    monkeypatch.setenv("HOME", str(tmp_path))
    monkeypatch.delenv("DEFICIT_LAB_CONFIG", raising=False)
    monkeypatch.delenv("DEFICIT_LAB_THREADS", raising=False)
    reset_settings()
    reset_executor()
    yield
    reset_settings()
    reset_executor()
    package_logger = logging.getLogger("deficit_lab")
    package_logger.handlers.clear()
    package_logger.propagate = True
    package_logger.setLevel(logging.NOTSET)


@pytest.fixture
def bell() -> DensityMatrix:
    return state_from_ensemble([0.5, 0.5], [[1, 0], [0, 1]]).density()


@pytest.fixture
def classical() -> DensityMatrix:
    return DensityMatrix(np.diag([0.5, 0.0, 0.0, 0.5]).astype(complex), (2, 2))


@pytest.fixture
def product() -> DensityMatrix:
    rho_a = DensityMatrix(np.diag([0.7, 0.3]).astype(complex))
    rho_b = DensityMatrix(np.array([[0.6, 0.2], [0.2, 0.4]], dtype=complex))
    return product_state(rho_a, rho_b)


@pytest.fixture(scope="session")
def sw99() -> DensityMatrix:
    return build_sw99_state()


@pytest.fixture(scope="session")
def knr01() -> DensityMatrix:
    return build_knr01_state()


@pytest.fixture
def small_config() -> OptimizerConfig:
    return OptimizerConfig(grid_points_per_angle=24, restarts=4, seed=0)


def rng_for(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_kraus_channel(d: int, rng: np.random.Generator, n_ops: int = 2) -> KrausChannel:
    """Kraus operators cut from the first d columns of a Haar unitary on C^(d·n_ops)."""
    isometry = random_unitary(d * n_ops, rng)[:, :d]
    return KrausChannel(tuple(isometry[k * d : (k + 1) * d] for k in range(n_ops)))
