import json
import os

import pytest
from click.testing import CliRunner

os.environ.setdefault("APP_ENV", "testing")

from manage import cli  # noqa: E402
from tests.oracles import HY4_AIRCRAFT, HY4_FUELCELL  # noqa: E402


@pytest.fixture(scope="session")
def manage():
    """Return the click command group of `manage.py`."""
    return cli


@pytest.fixture(scope="function")
def runner():
    """Set up a click runner that keeps stderr apart from stdout."""
    return CliRunner(mix_stderr=False)


@pytest.fixture(scope="function")
def small_config(tmp_path):
    """Write a short-range HY4 config with a three-point cost-index grid.

    :return: path of the config file
    """
    config: dict = {
        "aircraft": HY4_AIRCRAFT,
        "fuelcell": HY4_FUELCELL,
        "environment": {"altitude_m": 1000.0},
        "cost": {"cost_index": 0.02},
        "ci_grid": [0.0, 0.02, 0.04],
        "mission": {"x_d": 20000.0, "steps": 100},
        "output": {"directory": str(tmp_path / "output"), "formats": ["csv"]},
    }
    path = tmp_path / "small.json"
    path.write_text(json.dumps(config, indent=4), encoding="utf-8")
    return path
