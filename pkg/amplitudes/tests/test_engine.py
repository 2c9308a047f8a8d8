import numpy as np
from django.test import SimpleTestCase

from amplitudes.engine import amplitude, cosine_basis_row, evaluate_entry, reduced_amplitude, xi
from amplitudes.tests.oracle import brute_force_amplitude
from amplitudes.types import QuadratureConfig
from common.exceptions import DomainValueError, NumericalError
from modes.types import PumpSpec
from phasematching.functions import pmf
from phasematching.types import CrystalSpec, SetupParams

W_P = 25e-6
L = 15e-3

LAB = SetupParams.experimental(lambda_p=405e-9, w_p=W_P, w_s=33e-6, w_i=33e-6, L=L)
MATCHED = SetupParams.experimental(lambda_p=405e-9, w_p=W_P, w_s=np.sqrt(2) * W_P, w_i=np.sqrt(2) * W_P,
                                   L=L, refractive_index=1.7)
QUAD = QuadratureConfig()


class AmplitudeTests(SimpleTestCase):
    def test_gaussian_pump_forbids_nonzero_total_oam(self):
        value = amplitude(1, 1, 0, 0, PumpSpec.gaussian(W_P), CrystalSpec.periodic(L), LAB, QUAD)
        self.assertEqual(value, 0)

    def test_oracle_confirms_gaussian_pump_zero(self):
        pump = PumpSpec.gaussian(W_P)
        crystal = CrystalSpec.periodic(L)
        allowed = brute_force_amplitude(0, 0, {0: 1.0}, LAB, lambda dk: pmf(dk, crystal))
        forbidden = brute_force_amplitude(1, 0, {0: 1.0}, LAB, lambda dk: pmf(dk, crystal))
        self.assertGreater(abs(allowed), 0)
        self.assertLess(abs(forbidden), 1e-8 * abs(allowed))
        self.assertEqual(amplitude(1, 0, 0, 0, pump, crystal, LAB, QUAD), 0)

    def test_agrees_with_brute_force_oracle(self):
        terms = {0: 1.0, 1: 0.7, 2: 0.5j}
        pump = PumpSpec(terms, W_P)
        crystal = CrystalSpec.periodic(L)
        modes = [(0, 0), (-1, 1), (1, -1), (0, 1), (2, -1), (1, 1)]
        engine = {m: amplitude(*m, 0, 0, pump, crystal, LAB, QUAD) for m in modes}
        oracle = {m: brute_force_amplitude(*m, terms, LAB, lambda dk: pmf(dk, crystal)) for m in modes}
        scale = max(abs(v) for v in oracle.values())
        for mode in modes:
            self.assertLess(abs(engine[mode] - oracle[mode]), 1e-4 * scale, msg=f"mode {mode}")

    def test_exchange_symmetry_for_degenerate_setup(self):
        pump = PumpSpec({-1: 0.4, 1: 1.0, 3: 0.2}, W_P)
        crystal = CrystalSpec.cosine([1.0, -0.6], L)
        for ls, li in ((0, 1), (2, -1), (3, -2), (1, 2)):
            a = amplitude(ls, li, 0, 0, pump, crystal, LAB, QUAD)
            b = amplitude(li, ls, 0, 0, pump, crystal, LAB, QUAD)
            self.assertLess(abs(a - b), 1e-9 * abs(a), msg=f"mode ({ls},{li})")

    def test_conjugate_modes_have_equal_magnitude(self):
        pump = PumpSpec({-2: 1.0, -1: 0.5, 0: 1.0, 1: 0.5, 2: 1.0}, W_P)
        crystal = CrystalSpec.cosine([1.0, -0.8, 0.3], L)
        for ls, li in ((1, 1), (0, 2), (2, -1), (-1, 1)):
            a = amplitude(ls, li, 0, 0, pump, crystal, LAB, QUAD)
            b = amplitude(-ls, -li, 0, 0, pump, crystal, LAB, QUAD)
            self.assertAlmostEqual(abs(a) / abs(b), 1.0, delta=1e-8, msg=f"mode ({ls},{li})")

    def test_doubling_nodes_is_stable(self):
        pump = PumpSpec({0: 1.0, 2: 1.0}, W_P)
        crystal = CrystalSpec.cosine([1.0, -0.865], L)
        base = QuadratureConfig(radial_nodes=32, azimuthal_nodes=128)
        for mode in ((0, 0), (-1, 1), (1, 1), (2, 0)):
            coarse = amplitude(*mode, 0, 0, pump, crystal, LAB, base)
            fine = amplitude(*mode, 0, 0, pump, crystal, LAB, base.doubled())
            self.assertLess(abs(coarse - fine), 1e-6 * abs(fine), msg=f"mode {mode}")

    def test_radial_modes_are_supported(self):
        pump = PumpSpec.gaussian(W_P)
        value = amplitude(0, 0, 1, 1, pump, CrystalSpec.periodic(L), LAB, QUAD)
        self.assertTrue(np.isfinite(value))
        with self.assertRaises(DomainValueError):
            amplitude(0, 0, -1, 0, pump, CrystalSpec.periodic(L), LAB, QUAD)

    def test_unresolved_integrand_reports_non_convergence(self):
        crude = QuadratureConfig(radial_nodes=16, azimuthal_nodes=16, qmax_factor=60.0)
        with self.assertRaises(NumericalError):
            amplitude(0, 0, 0, 0, PumpSpec.gaussian(W_P), CrystalSpec.periodic(L), LAB, crude)


class CosineBasisRowTests(SimpleTestCase):
    def test_unit_constant_term_reproduces_sinc_crystal(self):
        row = cosine_basis_row(-1, 1, 0, 0, W_P, LAB, L / 4, 2, QUAD)
        direct = amplitude(-1, 1, 0, 0, PumpSpec.gaussian(W_P), CrystalSpec.periodic(L), LAB, QUAD)
        self.assertLess(abs(row[0] - direct), 1e-10 * abs(direct))

    def test_row_is_linear_in_coefficients(self):
        rng = np.random.default_rng(1)
        row = cosine_basis_row(0, 0, 0, 0, W_P, LAB, L / 4, 2, QUAD)
        pump = PumpSpec.gaussian(W_P)
        for _ in range(3):
            c, c2 = rng.normal(size=(2, 3))
            total = amplitude(0, 0, 0, 0, pump, CrystalSpec.cosine(c + c2, L), LAB, QUAD)
            self.assertLess(abs(total - row @ (c + c2)), 1e-10 * np.sum(np.abs(row)) * 3)

    def test_negative_term_count_rejected(self):
        with self.assertRaises(DomainValueError):
            cosine_basis_row(0, 0, 0, 0, W_P, LAB, L / 4, -1, QUAD)


class ReducedAmplitudeTests(SimpleTestCase):
    def test_xi_on_axis(self):
        setup = SetupParams.idealized(W_P, L)
        self.assertAlmostEqual(xi(0, 0.0, setup) * setup.k_p * W_P ** 2, 1.0)

    def test_constant_crystal_closed_form(self):
        for setup in (SetupParams.idealized(W_P, L), MATCHED):
            a = setup.k_p * W_P ** 2
            value = reduced_amplitude(0, [1.0], setup)
            self.assertAlmostEqual(value.real, np.arctan(L / a), places=10)
            self.assertAlmostEqual(value.imag, 0.0, places=10)

    def test_invalid_mode_numbers_rejected(self):
        setup = SetupParams.idealized(W_P, L)
        for bad in (1, -1, 2, -3):
            with self.assertRaises(DomainValueError):
                reduced_amplitude(bad, [1.0], setup)

    def test_requires_matched_rayleigh_ranges(self):
        with self.assertRaises(DomainValueError):
            reduced_amplitude(0, [1.0], LAB)

    def test_full_rows_follow_reduced_integral(self):
        for (ls, li), n_r in (((1, 1), 0), ((0, 0), 0), ((1, -1), -2), ((2, -2), -4), ((-2, 1), -2)):
            row = cosine_basis_row(ls, li, 0, 0, W_P, MATCHED, L / 4, 2, QUAD)
            reduced = np.array([reduced_amplitude(n_r, np.eye(3)[n], MATCHED) for n in range(3)])
            ratios = row / reduced
            np.testing.assert_allclose(ratios, ratios[0], rtol=1e-3, err_msg=f"mode ({ls},{li})")

    def test_equal_rmn_amplitudes_stay_proportional(self):
        rng = np.random.default_rng(42)
        first = cosine_basis_row(0, 2, 0, 0, W_P, MATCHED, L / 4, 2, QUAD)
        second = cosine_basis_row(1, 1, 0, 0, W_P, MATCHED, L / 4, 2, QUAD)
        ratios = [(first @ c) / (second @ c) for c in rng.uniform(-2, 2, size=(10, 3))]
        np.testing.assert_allclose(ratios, ratios[0], rtol=1e-3)

    def test_suppression_row_zero_carries_over(self):
        row = cosine_basis_row(-1, 1, 0, 0, W_P, MATCHED, L / 4, 1, QUAD)
        c = np.array([1.0, -(row[0] / row[1]).real])
        self.assertLess(abs(reduced_amplitude(-2, c, MATCHED)), 1e-6 * abs(reduced_amplitude(-2, [1.0], MATCHED)))


class EvaluateEntryTests(SimpleTestCase):
    def test_amplitude_payload(self):
        pump = PumpSpec({0: 1.0}, W_P)
        crystal = CrystalSpec.periodic(L)
        payload = {
            'kind': 'amplitude', 'ell_s': -1, 'ell_i': 1, 'p_s': 0, 'p_i': 0,
            'setup': LAB.as_payload(), 'quad': QUAD.as_payload(),
            'pump': pump.as_payload(), 'crystal': crystal.as_payload(),
        }
        re, im = evaluate_entry(payload)
        expected = amplitude(-1, 1, 0, 0, pump, crystal, LAB, QUAD)
        self.assertEqual(complex(re, im), expected)

    def test_unknown_kind_rejected(self):
        with self.assertRaises(DomainValueError):
            evaluate_entry({'kind': 'other', 'ell_s': 0, 'ell_i': 0,
                            'setup': LAB.as_payload(), 'quad': QUAD.as_payload()})
