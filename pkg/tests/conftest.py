"""Shared fixtures for the solver and CLI tests."""

import json
from pathlib import Path
from typing import Any, Callable, Dict

import pytest

from functions.core_model import (
    FINE_STRUCTURE, ChannelSpec, InteractionSpec, Parity, ParticleSpec, SpinKind, SystemKind,
)
from functions.shooting_solver import SolverSettings


@pytest.fixture
def alpha() -> float:
    return FINE_STRUCTURE


@pytest.fixture
def scalars():
    return ParticleSpec(1.0, SpinKind.SCALAR, name="s1"), ParticleSpec(1.0, SpinKind.SCALAR, name="s2")


@pytest.fixture
def fermions():
    return ParticleSpec(1.0, SpinKind.FERMION, name="f1"), ParticleSpec(1.0, SpinKind.FERMION, name="f2")


@pytest.fixture
def scalar_fermion():
    return ParticleSpec(1.0, SpinKind.FERMION, name="f"), ParticleSpec(1.0, SpinKind.SCALAR, name="s")


@pytest.fixture
def ss_channel() -> ChannelSpec:
    return ChannelSpec(SystemKind.SCALAR_SCALAR, 0)


@pytest.fixture
def sf_channel() -> ChannelSpec:
    return ChannelSpec(SystemKind.SCALAR_FERMION, 0.5, Parity.I)


@pytest.fixture
def coulomb() -> Callable[[float], InteractionSpec]:
    return lambda a: InteractionSpec(alpha=a)


@pytest.fixture
def settings() -> SolverSettings:
    return SolverSettings()


@pytest.fixture
def natural_config() -> Dict[str, Any]:
    """Two equal scalars with a Coulomb coupling, one channel."""
    return {
        "particles": [
            {"name": "a", "mass": 1.0, "spin": "scalar"},
            {"name": "b", "mass": 1.0, "spin": "scalar"},
        ],
        "interaction": {"alpha": 0.1},
        "channels": [{"kind": "SS", "j": 0, "count": 1}],
    }


@pytest.fixture
def free_config(natural_config) -> Dict[str, Any]:
    config = dict(natural_config)
    config["interaction"] = {"alpha": 0.0}
    return config


@pytest.fixture
def write_config(tmp_path: Path) -> Callable[[Dict[str, Any]], Path]:
    def write(data: Dict[str, Any], name: str = "config.json") -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return path
    return write
