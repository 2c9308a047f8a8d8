import itertools

import numpy as np
from django.test import SimpleTestCase
from scipy.ndimage import maximum_filter
from scipy.special import eval_genlaguerre

from common.exceptions import DomainValueError
from modes.beams import (
    laguerre,
    lg_angular_spectrum,
    lg_position_field,
    mode_phase,
    pump_angular_spectrum,
    render_pump_profile,
)
from modes.types import LGIndex, PositionGrid, PumpSpec

W = 25e-6


def _momentum_grid(w, samples=401, q_max_factor=8.0):
    axis = np.linspace(-q_max_factor / w, q_max_factor / w, samples)
    qx, qy = np.meshgrid(axis, axis, indexing='xy')
    return np.stack([qx, qy]), (axis[1] - axis[0]) ** 2


class LaguerreTests(SimpleTestCase):
    def test_low_orders_match_closed_forms(self):
        x = np.linspace(0, 10, 23)
        for alpha in (0, 1, 2.5):
            np.testing.assert_allclose(laguerre(0, alpha, x), np.ones_like(x))
            np.testing.assert_allclose(laguerre(1, alpha, x), 1 + alpha - x)
            expected = (x ** 2 - 2 * (alpha + 2) * x + (alpha + 1) * (alpha + 2)) / 2
            np.testing.assert_allclose(laguerre(2, alpha, x), expected, rtol=1e-12, atol=1e-12)

    def test_matches_scipy_up_to_degree_six(self):
        x = np.linspace(0, 20, 41)
        for p in range(7):
            for alpha in range(4):
                np.testing.assert_allclose(laguerre(p, alpha, x), eval_genlaguerre(p, alpha, x),
                                           rtol=1e-10, atol=1e-10)

    def test_scalar_in_scalar_out(self):
        self.assertIsInstance(laguerre(3, 1, 0.7), float)
        self.assertAlmostEqual(laguerre(3, 1, 0.0), 4.0)

    def test_negative_degree_rejected(self):
        with self.assertRaises(DomainValueError):
            laguerre(-1, 0, 1.0)


class AngularSpectrumTests(SimpleTestCase):
    def test_fundamental_value_on_axis(self):
        value = lg_angular_spectrum(LGIndex(0, 0, W), np.array([0.0, 0.0]))
        self.assertAlmostEqual(value.real, W / np.sqrt(2 * np.pi), delta=1e-15)
        self.assertEqual(value.imag, 0.0)

    def test_modes_are_orthonormal(self):
        q, dq2 = _momentum_grid(W, q_max_factor=10.0)
        indices = [(p, ell) for p in range(4) for ell in range(-3, 4)]
        fields = np.stack([lg_angular_spectrum(LGIndex(p, ell, W), q).ravel() for p, ell in indices])
        gram = np.conj(fields) @ fields.T * dq2
        for (a, first), (b, second) in itertools.product(enumerate(indices), repeat=2):
            expected = 1.0 if a == b else 0.0
            delta = 1e-6 if a == b else 1e-8
            self.assertAlmostEqual(abs(gram[a, b]), expected, delta=delta, msg=f"{first} vs {second}")

    def test_opposite_oam_modes_have_equal_magnitude(self):
        q, _ = _momentum_grid(W, samples=64)
        for ell in (1, 2, 3):
            plus = lg_angular_spectrum(LGIndex(1, ell, W), q)
            minus = lg_angular_spectrum(LGIndex(1, -ell, W), q)
            np.testing.assert_allclose(np.abs(plus), np.abs(minus), rtol=1e-12, atol=1e-20)

    def test_mode_phase_convention(self):
        self.assertEqual(mode_phase(0, 0), 1)
        self.assertEqual(mode_phase(1, 0), -1)
        self.assertEqual(mode_phase(0, 1), 1j)
        self.assertEqual(mode_phase(0, -1), -1j)
        self.assertEqual(mode_phase(2, 2), -1)

    def test_pump_superposition_is_linear(self):
        q, _ = _momentum_grid(W, samples=32)
        pump = PumpSpec({-2: 2.46, 0: 1.73, 2: 2.46}, W)
        expected = (2.46 * lg_angular_spectrum(LGIndex(0, -2, W), q)
                    + 1.73 * lg_angular_spectrum(LGIndex(0, 0, W), q)
                    + 2.46 * lg_angular_spectrum(LGIndex(0, 2, W), q))
        np.testing.assert_allclose(pump_angular_spectrum(pump, q), expected, rtol=1e-12)


class PositionFieldTests(SimpleTestCase):
    def test_position_modes_are_unit_normalized(self):
        axis = np.linspace(-5 * W, 5 * W, 401)
        x, y = np.meshgrid(axis, axis)
        dx2 = (axis[1] - axis[0]) ** 2
        for p, ell in ((0, 0), (0, 2), (1, -1), (2, 1)):
            field = lg_position_field(LGIndex(p, ell, W), x, y)
            self.assertAlmostEqual(np.sum(np.abs(field) ** 2) * dx2, 1.0, delta=1e-6)

    def test_position_field_is_inverse_transform_of_angular_spectrum(self):
        q, dq2 = _momentum_grid(W, samples=321)
        points = [(0.3 * W, -0.2 * W), (-0.9 * W, 0.4 * W), (1.2 * W, 1.1 * W)]
        for p, ell in ((0, 1), (0, -2), (1, 1), (1, 0)):
            idx = LGIndex(p, ell, W)
            spectrum = lg_angular_spectrum(idx, q)
            peak = np.max(np.abs(lg_position_field(idx, np.array([0.0, 0.7 * W, 1.0 * W]), 0.0)))
            for x0, y0 in points:
                numeric = np.sum(spectrum * np.exp(1j * (q[0] * x0 + q[1] * y0))) * dq2 / (2 * np.pi)
                closed = lg_position_field(idx, x0, y0)
                self.assertLess(abs(numeric - closed), 1e-6 * max(peak, abs(closed)),
                                msg=f"p={p}, ell={ell}, point=({x0}, {y0})")


class PumpProfileTests(SimpleTestCase):
    def setUp(self):
        self.pump = PumpSpec({-2: 2.46, 0: 1.73, 2: 2.46}, W)
        self.profile = render_pump_profile(self.pump, PositionGrid(extent=4 * W, samples=201))

    def test_four_intensity_maxima(self):
        intensity = self.profile.intensity
        peaks = (intensity == maximum_filter(intensity, size=3)) & (intensity > 0.1 * intensity.max())
        self.assertEqual(int(np.count_nonzero(peaks)), 4)

    def test_field_takes_two_phases_separated_by_pi(self):
        field = self.profile.field
        bright = np.abs(field) > 1e-3 * np.abs(field).max()
        self.assertLess(np.max(np.abs(field.imag)), 1e-12 * np.abs(field).max())
        self.assertTrue(np.any(field.real[bright] > 0))
        self.assertTrue(np.any(field.real[bright] < 0))

    def test_profile_shapes(self):
        self.assertEqual(self.profile.field.shape, (201, 201))
        np.testing.assert_allclose(self.profile.intensity, np.abs(self.profile.field) ** 2)

    def test_grid_validation(self):
        with self.assertRaises(DomainValueError):
            PositionGrid(extent=-1.0, samples=64)
        with self.assertRaises(DomainValueError):
            PositionGrid(extent=1e-4, samples=8)


class PumpSpecTests(SimpleTestCase):
    def test_support_skips_zero_weights(self):
        pump = PumpSpec({2: 1.0, -1: 0.0, 0: 0.5j}, W)
        self.assertEqual(pump.support, (0, 2))
        self.assertEqual(pump.coefficient(-1), 0j)
        self.assertEqual(pump.coefficient(5), 0j)

    def test_all_zero_pump_rejected(self):
        with self.assertRaises(DomainValueError):
            PumpSpec({0: 0.0}, W)

    def test_payload_round_trip(self):
        pump = PumpSpec({-2: 2.46, 0: 1.73 + 0.1j}, W)
        self.assertEqual(PumpSpec.from_payload(pump.as_payload()), pump)

    def test_bad_indices_rejected(self):
        with self.assertRaises(DomainValueError):
            LGIndex(-1, 0, W)
        with self.assertRaises(DomainValueError):
            LGIndex(0, 0, 0.0)
