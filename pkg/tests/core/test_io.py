import json
import tempfile
import unittest
from pathlib import Path

import pandas as pd

from h2cruise.core.errors import (
    ConfigParseError,
    ConfigValidateError,
    IOBaseError,
    WriteCSVError,
)
from h2cruise.core.io import (
    SWEEP_COLUMNS,
    TRAJECTORY_COLUMNS,
    checks_frame,
    load_config,
    sweep_frame,
    trajectory_frame,
    write_csv,
)
from h2cruise.core.models import (
    CheckRow,
    CheckStatus,
    CruiseState,
    ParetoPoint,
    SweepRow,
)
from h2cruise.core.plots import plot_pareto, plot_velocity_vs_ci
from h2cruise.core.utils import CONF_PATH
from tests.oracles import HY4_AIRCRAFT, HY4_FUELCELL


class LoadConfigTestCase(unittest.TestCase):
    def setUp(self) -> None:
        self.tmp = tempfile.TemporaryDirectory()
        self.path = Path(self.tmp.name)

    def tearDown(self) -> None:
        self.tmp.cleanup()

    def write(self, name: str, text: str) -> Path:
        path = self.path / name
        path.write_text(text, encoding="utf-8")
        return path

    def test_shipped_configs(self):
        config = load_config(CONF_PATH / "hy4.json")
        self.assertEqual(1760, config.fuelcell.n_cells)
        self.assertEqual(50, len(config.require_grid()))
        self.assertEqual(0.08, config.require_grid()[-1])
        self.assertEqual(0.01, config.build_cost().cost_index)
        self.assertIn("fuelcell.n_cells", config.estimates)
        tabulated = load_config(CONF_PATH / "hy4_440.json")
        self.assertEqual(440, tabulated.fuelcell.n_cells)
        self.assertEqual(["aircraft.wing_area"], tabulated.estimates)

    def test_missing_file(self):
        with self.assertRaises(ConfigParseError) as context:
            load_config(self.path / "missing.json")
        self.assertEqual(0, context.exception.line)

    def test_syntax_error(self):
        path = self.write(
            "broken.json", '{\n  "aircraft": {\n    "wing_area": 17.5,,\n'
        )
        with self.assertRaises(ConfigParseError) as context:
            load_config(path)
        self.assertEqual(3, context.exception.line)
        self.assertEqual(23, context.exception.column)
        self.assertIn("broken.json:3:23", str(context.exception))

    def test_root_not_object(self):
        with self.assertRaises(ConfigValidateError) as context:
            load_config(self.write("list.json", "[1, 2]"))
        self.assertEqual("<root>", context.exception.field)

    def test_invalid_values(self):
        data = {
            "aircraft": HY4_AIRCRAFT | {"fuel_weight": 20000.0},
            "fuelcell": HY4_FUELCELL,
            "environment": {"altitude_m": 1000.0},
        }
        with self.assertRaises(ConfigValidateError) as context:
            load_config(self.write("heavy.json", json.dumps(data)))
        self.assertEqual("aircraft", context.exception.field)

        data["aircraft"] = HY4_AIRCRAFT
        data["fuelcell"] = HY4_FUELCELL | {"n_cells": 0}
        with self.assertRaises(ConfigValidateError) as context:
            load_config(self.write("cells.json", json.dumps(data)))
        self.assertEqual("fuelcell.n_cells", context.exception.field)


class FrameTestCase(unittest.TestCase):
    def setUp(self) -> None:
        self.maxDiff = None
        self.tmp = tempfile.TemporaryDirectory()
        self.path = Path(self.tmp.name)
        self.rows = [
            SweepRow(
                cost_index=ci,
                v_initial=v + 0.5,
                point=ParetoPoint(ci, v, 200_000.0 / v, fuel),
                doc=ci * 200_000.0 / v + fuel * 9.80665,
            )
            for ci, v, fuel in ((0.0, 39.5, 5.4), (0.02, 42.0, 5.8))
        ]

    def tearDown(self) -> None:
        self.tmp.cleanup()

    def test_sweep_columns(self):
        frame = sweep_frame(self.rows)
        self.assertEqual(SWEEP_COLUMNS, list(frame.columns))
        self.assertEqual([40.0, 42.5], frame["v_mps"].tolist())
        self.assertEqual(
            [3.6 * v for v in frame["v_mps"]], frame["v_kmh"].tolist()
        )
        average = sweep_frame(self.rows, speed="average")
        self.assertEqual([39.5, 42.0], average["v_mps"].tolist())

    def test_sweep_with_failure(self):
        rows = self.rows + [
            SweepRow(cost_index=0.04, error="RangeExceededError: empty")
        ]
        frame = sweep_frame(rows)
        self.assertEqual(SWEEP_COLUMNS + ["error"], list(frame.columns))
        self.assertEqual("RangeExceededError: empty", frame["error"].iloc[-1])
        self.assertTrue(frame["v_mps"].isna().iloc[-1])

    def test_trajectory_columns(self):
        samples = [
            CruiseState(t=0.0, x=0.0, w=14709.975, v=40.0, j_w=-0.007),
            CruiseState(t=10.0, x=400.0, w=14709.8, v=39.99, j_w=-0.0069),
        ]
        frame = trajectory_frame(samples)
        self.assertEqual(TRAJECTORY_COLUMNS, list(frame.columns))
        self.assertEqual([144.0, 39.99 * 3.6], frame["v_kmh"].tolist())

    def test_write_csv(self):
        frame = sweep_frame(self.rows)
        first = write_csv(frame, self.path / "out" / "a.csv").read_bytes()
        second = write_csv(frame, self.path / "out" / "b.csv").read_bytes()
        self.assertEqual(first, second)
        self.assertNotIn(b"\r", first)
        lines = first.decode("utf-8").splitlines()
        self.assertEqual(",".join(SWEEP_COLUMNS), lines[0])
        self.assertEqual(3, len(lines))
        self.assertTrue(lines[1].startswith("0,40,144,"))

    def test_write_csv_float_format(self):
        frame = pd.DataFrame(
            {"value": [1 / 3, 1e-20, float("nan")], "name": ["a", "b", "c"]}
        )
        text = write_csv(frame, self.path / "floats.csv").read_text("utf-8")
        self.assertEqual(
            ["value,name", "0.333333333333,a", "1e-20,b", ",c"],
            text.splitlines(),
        )

    def test_write_csv_error(self):
        blocker = self.path / "file"
        blocker.write_text("", encoding="utf-8")
        with self.assertRaises(WriteCSVError):
            write_csv(sweep_frame(self.rows), blocker / "a.csv")

    def test_checks_frame(self):
        frame = checks_frame(
            [CheckRow("ohmic ratio", CheckStatus.PASS, "0.3812", "limit 0.5")]
        )
        self.assertEqual(
            [["ohmic ratio", "PASS", "0.3812", "limit 0.5"]],
            frame.values.tolist(),
        )

    def test_plots(self):
        frame = sweep_frame(self.rows)
        first = plot_pareto(frame, self.path / "a.svg").read_bytes()
        second = plot_pareto(frame, self.path / "b.svg").read_bytes()
        self.assertEqual(first, second)
        self.assertTrue(
            plot_velocity_vs_ci(frame, self.path / "v.svg").exists()
        )
        blocker = self.path / "file"
        blocker.write_text("", encoding="utf-8")
        with self.assertRaises(IOBaseError):
            plot_pareto(frame, blocker / "a.svg")
