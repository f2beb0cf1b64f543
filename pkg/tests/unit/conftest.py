import json
from pathlib import Path

import numpy as np
import pytest

from harmospec.grid import TruncationSpec
from harmospec.symbols import GeneralSymbol, Power, Sampled, Step


# Fixtures
@pytest.fixture
def step_symbol() -> Step:
    return Step(b=1.0, c=0.5)


@pytest.fixture
def power_symbol() -> Power:
    return Power(a=1.0, gamma=1.0)


@pytest.fixture
def bump_symbol() -> Sampled:
    # Changes sign, so its eigenvalues are not monotone in the degree
    return Sampled(radii=(0.0, 0.3, 0.6), values=(1.0, -0.5, 0.0))


@pytest.fixture
def affine_symbol() -> GeneralSymbol:
    return GeneralSymbol(func=lambda x: 1.0 + 0.5 * x[:, 0], d=2, name="affine")


@pytest.fixture
def small_spec() -> TruncationSpec:
    return TruncationSpec.default(4)


@pytest.fixture
def profile_csv(tmp_path: Path) -> Path:
    path = tmp_path / "profile.csv"
    path.write_text("# bump profile\nr,v\n0.0,1.0\n0.3,1.0\n0.6,0.0\n")
    return path


@pytest.fixture
def general_json(tmp_path: Path) -> Path:
    rng = np.random.default_rng(0)
    radii = np.sqrt(rng.uniform(0.0, 0.98, 400))
    theta = rng.uniform(0.0, 2.0 * np.pi, 400)
    points = np.column_stack([radii * np.cos(theta), radii * np.sin(theta)])
    doc = {
        "points": points.tolist(),
        "values": (1.0 - radii).tolist(),
        "gamma": 1.0,
        "a0": 1.0,
        "name": "cone",
    }
    path = tmp_path / "cone.json"
    path.write_text(json.dumps(doc))
    return path
