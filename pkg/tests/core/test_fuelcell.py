import unittest

import numpy as np

from h2cruise.core import aero, fuelcell
from h2cruise.core.constants import FARADAY, MOLAR_MASS_H2
from h2cruise.core.errors import ModelDomainError, PowerInfeasibleError
from tests.oracles import hy4


class StackCurrentTestCase(unittest.TestCase):
    def setUp(self) -> None:
        self.maxDiff = None
        self.fc, self.params, self.env = hy4()
        self.eta_n = self.fc.efficiency * self.fc.n_cells

    def test_max_net_power(self):
        self.assertAlmostEqual(46851.2, fuelcell.max_net_power(self.fc), places=6)
        fc_440, _, _ = hy4(n_cells=440)
        self.assertAlmostEqual(
            11712.8, fuelcell.max_net_power(fc_440), places=6
        )

    def test_zero_power(self):
        self.assertEqual(0.0, fuelcell.stack_current(self.fc, 0.0))

    def test_quadratic_residual(self):
        r = self.fc.internal_resistance
        e_oc = self.fc.open_circuit_voltage
        for power in np.linspace(100.0, 46000.0, 17):
            current = fuelcell.stack_current(self.fc, power)
            residual = r * current**2 - e_oc * current + power / self.eta_n
            self.assertLess(abs(residual), 1e-12 * power / self.eta_n)

    def test_power_balance(self):
        for power in (5000.0, 25000.0, 40000.0):
            current = fuelcell.stack_current(self.fc, power)
            delivered = (
                self.eta_n * fuelcell.cell_voltage(self.fc, current) * current
            )
            self.assertAlmostEqual(power, delivered, delta=1e-10 * power)

    def test_small_resistance_limit(self):
        fc = self.fc.update({"internal_resistance": 1e-9})
        power = 30000.0
        expected = power / (self.eta_n * self.fc.open_circuit_voltage)
        self.assertAlmostEqual(
            expected, fuelcell.stack_current(fc, power), delta=1e-6 * expected
        )

    def test_increasing_in_power(self):
        currents = [
            fuelcell.stack_current(self.fc, p)
            for p in np.linspace(0.0, 46000.0, 30)
        ]
        self.assertTrue(all(b > a for a, b in zip(currents, currents[1:])))

    def test_envelope_boundary(self):
        p_max = fuelcell.max_net_power(self.fc)
        current = fuelcell.stack_current(self.fc, p_max)
        self.assertAlmostEqual(
            self.fc.open_circuit_voltage / (2 * self.fc.internal_resistance),
            current,
            places=4,
        )
        self.assertTrue(fuelcell.power_feasibility(self.fc, p_max).feasible)

    def test_infeasible_power(self):
        with self.assertRaises(PowerInfeasibleError) as context:
            fuelcell.stack_current(self.fc, 50000.0)
        record = context.exception.feasibility
        self.assertFalse(record.feasible)
        self.assertEqual(50000.0, record.requested_power)
        self.assertLess(record.margin, 0.0)

    def test_negative_power(self):
        with self.assertRaises(ModelDomainError):
            fuelcell.stack_current(self.fc, -1.0)


class HydrogenFlowTestCase(unittest.TestCase):
    def setUp(self) -> None:
        self.fc, self.params, self.env = hy4()
        self.w = self.params.initial_weight

    def test_charge_from_mass(self):
        self.assertEqual(0.0, fuelcell.charge_from_mass(self.fc, 0.0))
        self.assertAlmostEqual(
            2.0 * FARADAY,
            fuelcell.charge_from_mass(self.fc, MOLAR_MASS_H2),
            delta=1e-9,
        )
        with self.assertRaises(ModelDomainError):
            fuelcell.charge_from_mass(self.fc, -1e-3)

    def test_weight_rate(self):
        for v in (25.0, 40.0, 48.0):
            power = aero.drag(self.params, self.env, v, self.w) * v
            current = fuelcell.stack_current(self.fc, power)
            expected = (
                self.fc.n_cells
                * MOLAR_MASS_H2
                * self.env.gravity
                * current
                / (2.0 * FARADAY)
            )
            self.assertAlmostEqual(
                expected,
                fuelcell.weight_rate(self.fc, self.params, self.env, v, self.w),
                delta=1e-12 * expected,
            )

    def test_charge_rate_is_minus_current(self):
        for v in np.linspace(20.0, 49.0, 12):
            current = fuelcell.operating_point(
                self.fc, self.params, self.env, v, self.w
            ).current
            self.assertAlmostEqual(
                -current,
                fuelcell.charge_rate(self.fc, self.params, self.env, v, self.w),
                delta=1e-10 * current,
            )

    def test_charge_rate_infeasible(self):
        with self.assertRaises(PowerInfeasibleError):
            fuelcell.charge_rate(self.fc, self.params, self.env, 60.0, self.w)


class FeasibilityTestCase(unittest.TestCase):
    def test_cruise_envelope(self):
        fc, params, env = hy4()
        v = 145.0 / 3.6
        record = fuelcell.feasibility(fc, params, env, v, params.initial_weight)
        self.assertTrue(record.feasible)
        self.assertGreater(record.margin, 0.0)

        fc_440, _, _ = hy4(n_cells=440)
        record = fuelcell.feasibility(
            fc_440, params, env, v, params.initial_weight
        )
        self.assertFalse(record.feasible)

    def test_ohmic_ratio(self):
        fc, params, env = hy4()
        point = fuelcell.operating_point(
            fc, params, env, 145.0 / 3.6, params.initial_weight
        )
        self.assertLess(fuelcell.ohmic_ratio(fc, point.current), 0.5)
        self.assertAlmostEqual(
            point.power, point.drag * point.v, delta=1e-12 * point.power
        )
        with self.assertRaises(ModelDomainError):
            fuelcell.ohmic_ratio(fc, 1000.0)
