import time
import unittest
from unittest import mock

import numpy as np

from h2cruise.core import mission, optimizer
from h2cruise.core.constants import FARADAY, MOLAR_MASS_H2
from h2cruise.core.errors import RangeExceededError, SweepArgumentError
from h2cruise.core.models import CheckStatus, Mode, ParetoPoint, SweepRow
from h2cruise.core.validators import CostModel
from tests.oracles import hy4


class SimulateTestCase(unittest.TestCase):
    @classmethod
    def setUpClass(cls) -> None:
        cls.fc, cls.params, cls.env = hy4()
        cls.cost = CostModel(cost_index=0.01)
        cls.result = mission.simulate(
            cls.fc, cls.params, cls.env, cls.cost, 200_000.0, steps=2000
        )

    def test_hy4_mission(self):
        self.assertIs(Mode.SUBOPTIMAL, self.result.mode)
        self.assertIsNone(self.result.shooting)
        self.assertTrue(0.0 < self.result.fuel_burned_kg < 9.0)
        self.assertTrue(75.0 < self.result.t_f / 60.0 < 90.0)
        self.assertAlmostEqual(
            self.result.fuel_burned_n / 9.80665,
            self.result.fuel_burned_kg,
            places=12,
        )

    def test_trajectory(self):
        samples = self.result.samples
        self.assertEqual(0.0, samples[0].x)
        self.assertEqual(200_000.0, samples[-1].x)
        self.assertTrue(all(b.x > a.x for a, b in zip(samples, samples[1:])))
        self.assertTrue(all(b.w < a.w for a, b in zip(samples, samples[1:])))
        self.assertTrue(all(s.j_w == 0.0 for s in samples))
        self.assertAlmostEqual(
            200_000.0 / self.result.t_f,
            self.result.v_avg,
            delta=1e-6 * self.result.v_avg,
        )

    def test_speed_follows_weight(self):
        samples = self.result.samples
        for s in samples[::250] + [samples[-1]]:
            expected = optimizer.solve_speed(
                self.fc, self.params, self.env, self.cost, s.w
            ).v_opt
            self.assertAlmostEqual(expected, s.v, delta=1e-9)

        # With a time cost the lighter aircraft flies faster.
        speeds = [s.v for s in samples]
        self.assertTrue(all(b > a for a, b in zip(speeds, speeds[1:])))

    def test_speed_at_zero_cost_index(self):
        result = mission.simulate(
            self.fc,
            self.params,
            self.env,
            CostModel(cost_index=0.0),
            200_000.0,
            steps=200,
        )
        speeds = [s.v for s in result.samples]
        self.assertTrue(all(b < a for a, b in zip(speeds, speeds[1:])))
        at_initial_weight, at_dry_weight = (
            optimizer.solve_speed(
                self.fc, self.params, self.env, CostModel(cost_index=0.0), w
            ).v_opt
            for w in (self.params.initial_weight, self.params.dry_weight)
        )
        self.assertAlmostEqual(at_initial_weight, speeds[0], delta=1e-9)
        self.assertTrue(at_dry_weight < speeds[-1] < speeds[0])

    def test_faraday_closure(self):
        expected = (
            self.fc.n_cells * MOLAR_MASS_H2 * self.result.charge / (2 * FARADAY)
        )
        self.assertAlmostEqual(
            expected, self.result.fuel_burned_kg, delta=1e-8 * expected
        )

    def test_energy_balance(self):
        self.assertAlmostEqual(
            self.result.propulsive_energy,
            self.result.electric_energy,
            delta=1e-8 * self.result.propulsive_energy,
        )

    def test_step_halving(self):
        coarse = mission.simulate(
            self.fc, self.params, self.env, self.cost, 200_000.0, steps=1000
        )
        self.assertAlmostEqual(
            self.result.t_f, coarse.t_f, delta=1e-6 * self.result.t_f
        )
        self.assertAlmostEqual(
            self.result.fuel_burned_n,
            coarse.fuel_burned_n,
            delta=1e-6 * self.result.fuel_burned_n,
        )

    def test_decimated(self):
        rows = self.result.decimated(100)
        self.assertEqual(100, len(rows))
        self.assertIs(self.result.samples[0], rows[0])
        self.assertIs(self.result.samples[-1], rows[-1])

    def test_doc_with_prices(self):
        cost = CostModel(c_time=0.02, c_fuel=2.0)
        result = mission.simulate(
            self.fc, self.params, self.env, cost, 20_000.0, steps=200
        )
        self.assertAlmostEqual(
            0.02 * result.t_f + 2.0 * result.fuel_burned_n,
            result.doc,
            places=9,
        )

    def test_range_exceeded(self):
        fc, params, env = hy4(fuel_weight=10.0)
        with self.assertRaises(RangeExceededError):
            mission.simulate(fc, params, env, self.cost, 200_000.0, steps=200)


class SweepTestCase(unittest.TestCase):
    grid = [0.0, 0.02, 0.04, 0.06, 0.08]

    @classmethod
    def setUpClass(cls) -> None:
        cls.fc, cls.params, cls.env = hy4()
        cls.rows = mission.sweep_cost_index(
            cls.fc, cls.params, cls.env, cls.grid, 200_000.0, steps=200
        )

    def test_rows(self):
        self.assertEqual(self.grid, [row.cost_index for row in self.rows])
        self.assertTrue(all(row.ok for row in self.rows))
        speeds = [row.v_initial for row in self.rows]
        self.assertTrue(all(b > a for a, b in zip(speeds, speeds[1:])))

    def test_frontier(self):
        points = [row.point for row in self.rows]
        self.assertEqual([], mission.pareto_violations(points))
        self.assertEqual([], mission.monotonicity_violations(points))
        slopes = mission.frontier_slopes(points)
        self.assertEqual(4, len(slopes))
        self.assertTrue(all(b > a for a, b in zip(slopes, slopes[1:])))

    def test_single_point(self):
        result = mission.simulate(
            self.fc,
            self.params,
            self.env,
            CostModel(cost_index=0.04),
            200_000.0,
            steps=200,
        )
        row = self.rows[2]
        self.assertEqual(result.t_f, row.point.t_f)
        self.assertEqual(result.fuel_burned_kg, row.point.fuel_burned)
        self.assertEqual(result.doc, row.doc)

    def test_failed_point(self):
        simulate = mission.simulate

        def flaky(fc, params, env, cost, *args):
            if cost.cost_index == 0.02:
                raise RangeExceededError("out of hydrogen")
            return simulate(fc, params, env, cost, *args)

        with mock.patch.object(mission, "simulate", side_effect=flaky):
            rows = mission.sweep_cost_index(
                self.fc, self.params, self.env, [0.0, 0.02, 0.04], 20_000.0,
                steps=50,
            )
        self.assertEqual([True, False, True], [row.ok for row in rows])
        self.assertEqual("RangeExceededError: out of hydrogen", rows[1].error)
        self.assertIsNone(rows[1].point)

    def test_process_pool(self):
        kwargs = dict(steps=50)
        grid = [0.0, 0.04]
        sequential = mission.sweep_cost_index(
            self.fc, self.params, self.env, grid, 20_000.0, **kwargs
        )
        pooled = mission.sweep_cost_index(
            self.fc, self.params, self.env, grid, 20_000.0, max_workers=2,
            **kwargs,
        )
        self.assertEqual(
            [row.point for row in sequential], [row.point for row in pooled]
        )

    def test_grid_arguments(self):
        for grid in ([], [0.01, -0.01], [0.02, 0.01], [0.01, 0.01]):
            with self.assertRaises(SweepArgumentError):
                mission.check_ci_grid(grid)
        self.assertEqual([0.0, 0.5], mission.check_ci_grid((0.0, 0.5)))


class FullScaleSweepTestCase(unittest.TestCase):
    """Fifty cost indexes over the 200 km HY4 mission at the shipped step
    count, in a single process."""

    grid = [float(ci) for ci in np.linspace(0.0, 0.08, 50)]

    def setUp(self) -> None:
        self.fc, self.params, self.env = hy4()

    def test_speed_curve(self):
        start = time.perf_counter()
        speeds = [
            optimizer.solve_speed(
                self.fc,
                self.params,
                self.env,
                CostModel(cost_index=ci),
                self.params.initial_weight,
            ).v_kmh
            for ci in self.grid
        ]
        self.assertLess(time.perf_counter() - start, 5.0)
        self.assertTrue(all(b >= a for a, b in zip(speeds, speeds[1:])))
        self.assertLessEqual(speeds[0], 145.0)
        self.assertGreaterEqual(speeds[-1], 171.0)

    def test_pareto_frontier(self):
        start = time.perf_counter()
        rows = mission.sweep_cost_index(
            self.fc, self.params, self.env, self.grid, 200_000.0, steps=2000
        )
        self.assertLess(time.perf_counter() - start, 30.0)
        self.assertTrue(all(row.ok for row in rows))

        points = [row.point for row in rows]
        times = [p.t_f for p in points]
        fuel = [p.fuel_burned for p in points]
        self.assertTrue(all(b < a for a, b in zip(times, times[1:])))
        self.assertTrue(all(b > a for a, b in zip(fuel, fuel[1:])))
        self.assertEqual([], mission.pareto_violations(points))
        slopes = mission.frontier_slopes(points)
        self.assertTrue(all(b >= a for a, b in zip(slopes, slopes[1:])))


def _row(ci: float, v: float, fuel: float, x_d: float = 200_000.0) -> SweepRow:
    return SweepRow(
        cost_index=ci,
        v_initial=v,
        point=ParetoPoint(cost_index=ci, v_avg=v, t_f=x_d / v, fuel_burned=fuel),
        doc=0.0,
    )


class TradeoffTestCase(unittest.TestCase):
    def setUp(self) -> None:
        self.rows = [
            _row(0.0, 40.0, 5.0),
            _row(0.01, 42.0, 5.3),
            _row(0.02, 44.0, 5.6),
            _row(0.03, 47.6, 6.2),
            _row(0.04, 48.0, 6.4),
            SweepRow(cost_index=0.05, error="NoSolutionError: none"),
        ]

    def test_reference_speeds(self):
        report = mission.tradeoff_report(self.rows, 200_000.0)
        self.assertEqual(0.01, report.row_from.cost_index)
        self.assertEqual(0.03, report.row_to.cost_index)
        self.assertAlmostEqual(
            200_000.0 / 42.0 - 200_000.0 / 47.6, report.delta_t_f, places=9
        )
        self.assertAlmostEqual(0.9, report.delta_fuel, places=12)
        self.assertTrue(report.consistent)
        statuses = {check.name: check.status for check in report.checks}
        self.assertEqual(CheckStatus.FLAG, statuses["time saving"])
        self.assertEqual(CheckStatus.PASS, statuses["fuel increase"])

    def test_speed_not_reached(self):
        report = mission.tradeoff_report(
            self.rows, 200_000.0, v_from=41.0, v_to=60.0
        )
        self.assertIsNone(report.row_to)
        self.assertIsNone(report.delta_t_f)
        self.assertFalse(report.consistent)
        self.assertIn(
            CheckStatus.FLAG, [check.status for check in report.checks]
        )

    def test_inconsistent_time(self):
        rows = [_row(0.0, 42.0, 5.0), _row(0.01, 48.0, 5.5)]
        rows[0].point = ParetoPoint(0.0, 42.0, 5000.0, 5.0)
        report = mission.tradeoff_report(rows, 200_000.0)
        self.assertFalse(report.consistent)
        self.assertEqual(CheckStatus.FAIL, report.checks[0].status)


class FrontierTestCase(unittest.TestCase):
    def test_dominated_point(self):
        points = [
            ParetoPoint(0.0, 40.0, 5000.0, 5.0),
            ParetoPoint(0.01, 42.0, 4800.0, 5.4),
            ParetoPoint(0.02, 41.0, 4900.0, 5.5),
        ]
        self.assertEqual([(2, 1)], mission.pareto_violations(points))
        self.assertEqual([1], mission.monotonicity_violations(points))

    def test_slopes_by_speed(self):
        points = [
            ParetoPoint(0.02, 44.0, 4500.0, 5.8),
            ParetoPoint(0.0, 40.0, 5000.0, 5.0),
            ParetoPoint(0.01, 42.0, 4800.0, 5.2),
        ]
        slopes = mission.frontier_slopes(points)
        self.assertAlmostEqual(0.001, slopes[0], places=12)
        self.assertAlmostEqual(0.002, slopes[1], places=12)
