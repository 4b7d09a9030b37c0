"""Shared pytest fixtures for k-tree tests."""

import pytest
import yaml

from scripts.utils import config as config_module
from scripts.utils.exactnum import QuadReal, RationalK, exact_k, golden_value, parse_k
from scripts.utils.models import GoldenParams


@pytest.fixture(autouse=True)
def fresh_config(monkeypatch):
    """Every test starts from the built-in defaults, never a developer's KTREE_CONFIG."""
    monkeypatch.delenv(config_module.CONFIG_ENV_VAR, raising=False)
    config_module.reset_config()
    yield
    config_module.reset_config()


@pytest.fixture
def phi():
    """k = (1 + sqrt(5)) / 2."""
    return parse_k("golden:1,1")


@pytest.fixture
def three_halves():
    return RationalK(3, 2)


@pytest.fixture
def three():
    return RationalK(3)


@pytest.fixture
def sqrt_two():
    return exact_k(QuadReal.sqrt(2))


@pytest.fixture
def phi_squared():
    """k = (3 + sqrt(5)) / 2, the golden k with (a, b) = (3, -1)."""
    return exact_k(golden_value(3, -1))


@pytest.fixture
def oracle_ks(three_halves, phi, sqrt_two, phi_squared, three):
    """The k values compared against enumeration and the indicator classification."""
    return [three_halves, RationalK(5, 3), phi, sqrt_two, phi_squared, three]


@pytest.fixture
def fibonacci_params():
    return GoldenParams(a=1, b=1)


@pytest.fixture
def recurrence_grid():
    """Every (a, b) with 1 <= a <= 7 and 1 - a < b < 1 + a."""
    return [GoldenParams(a=a, b=b) for a in range(1, 8) for b in range(2 - a, a + 1)]


@pytest.fixture
def indicator_grid():
    """Every (a, b) with 1 <= a <= 9, 2 - a <= b <= a and k > 1."""
    grid = [GoldenParams(a=a, b=b) for a in range(1, 10) for b in range(2 - a, a + 1)]
    return [p for p in grid if p.is_real_above_one]


@pytest.fixture
def grandparent_grid():
    """Every (a, b) with 1 <= a <= 9, 1 - a <= b <= a - 1 and k > 1."""
    grid = [GoldenParams(a=a, b=b) for a in range(1, 10) for b in range(1 - a, a)]
    return [p for p in grid if p.is_real_above_one]


@pytest.fixture
def full_config_dict():
    """A config dict with every section populated."""
    return {
        "project": {"name": "ktree-test", "version": "9.9.9"},
        "precision": {"approx_digits": 32, "max_digits": 256},
        "limits": {"max_nodes": 5000},
        "sweep": {"n_iters": 20, "render_digits": 10, "progress_every": 5},
        "indicators": {"resolution": 50, "grid_size": 100, "boundary_digits": 8},
        "verification": {"cross_check": True, "rho_iters": 30, "brute_force_depth": 8},
        "logging": {"level": "DEBUG"},
    }


@pytest.fixture
def config_yaml_file(tmp_path, full_config_dict):
    """Write the full config to a temporary YAML file."""
    path = tmp_path / "config.yaml"
    with open(path, "w", encoding="utf-8") as f:
        yaml.dump(full_config_dict, f)
    return path
