import numpy as np
from django.test import SimpleTestCase, override_settings

from amplitudes.dispatch import map_entries
from amplitudes.engine import amplitude
from amplitudes.spectra import basis_matrix, spectrum
from amplitudes.types import RAW, UNIT_TOTAL, AmplitudeMatrix, OAMWindow, QuadratureConfig
from common.exceptions import ConfigError, DomainValueError, NumericalError
from modes.types import PumpSpec
from phasematching.types import CrystalSpec, SetupParams

W_P = 25e-6
L = 15e-3
SETUP = SetupParams.experimental(lambda_p=405e-9, w_p=W_P, w_s=33e-6, w_i=33e-6, L=L)
QUAD = QuadratureConfig()


def _populated_diagonals(matrix):
    return sorted({ls + li for ls, li in matrix.window.modes() if matrix.get(ls, li) != 0})


class SpectrumTests(SimpleTestCase):
    def test_gaussian_pump_fills_one_anti_diagonal(self):
        result = spectrum(OAMWindow.symmetric(2), PumpSpec.gaussian(W_P), CrystalSpec.periodic(L), SETUP, QUAD)
        self.assertEqual(_populated_diagonals(result), [0])
        self.assertEqual(result.normalization, UNIT_TOTAL)
        self.assertAlmostEqual(result.total, 1.0, delta=1e-9)

    def test_single_lg_pump_shifts_the_diagonal(self):
        pump = PumpSpec({1: 1.0}, W_P)
        result = spectrum(OAMWindow.symmetric(2), pump, CrystalSpec.periodic(L), SETUP, QUAD)
        self.assertEqual(_populated_diagonals(result), [1])

    def test_superposition_fills_three_diagonals(self):
        pump = PumpSpec({-2: 1.0, 0: 1.0, 2: 1.0}, W_P)
        result = spectrum(OAMWindow.symmetric(3), pump, CrystalSpec.periodic(L), SETUP, QUAD)
        self.assertEqual(_populated_diagonals(result), [-2, 0, 2])
        for ls, li in result.window.modes():
            self.assertAlmostEqual(abs(result.get(ls, li)), abs(result.get(li, ls)), delta=1e-9)

    def test_raw_spectrum_matches_single_amplitudes(self):
        pump = PumpSpec({0: 1.0, 1: 0.5}, W_P)
        crystal = CrystalSpec.cosine([1.0, -0.5], L)
        raw = spectrum(OAMWindow(-1, 1), pump, crystal, SETUP, QUAD, normalize=False)
        self.assertEqual(raw.normalization, RAW)
        self.assertEqual(raw.get(1, 0), amplitude(1, 0, 0, 0, pump, crystal, SETUP, QUAD))

    def test_crystal_length_must_match_setup(self):
        with self.assertRaises(DomainValueError):
            spectrum(OAMWindow.symmetric(1), PumpSpec.gaussian(W_P), CrystalSpec.periodic(2 * L), SETUP, QUAD)


class BasisMatrixTests(SimpleTestCase):
    def test_reconstructs_cosine_crystal_spectrum(self):
        window = OAMWindow.symmetric(1)
        pump = PumpSpec({-2: 2.46, 0: 1.73, 2: 2.46}, W_P)
        basis = basis_matrix(window, pump.support, SETUP, N=1, quad=QUAD)
        c = [1.045, -0.865]
        direct = spectrum(window, pump, CrystalSpec.cosine(c, L), SETUP, QUAD, normalize=False)
        rebuilt = basis.amplitudes(c, pump)
        np.testing.assert_allclose(rebuilt.entries, direct.entries, rtol=1e-10, atol=1e-10 * np.abs(direct.entries).max())

    def test_rows_only_for_pumped_diagonals(self):
        basis = basis_matrix(OAMWindow.symmetric(1), [0], SETUP, N=2, quad=QUAD)
        self.assertEqual(sorted(basis.rows), [(-1, 1), (0, 0), (1, -1)])
        self.assertEqual(basis.row(0, 0).shape, (3,))
        with self.assertRaises(DomainValueError):
            basis.row(1, 1)
        with self.assertRaises(DomainValueError):
            basis.amplitude(0, 0, [1.0, 0.0])


class DispatchTests(SimpleTestCase):
    def setUp(self):
        crystal = CrystalSpec.periodic(L)
        pump = PumpSpec.gaussian(W_P)
        quad = QuadratureConfig(radial_nodes=32, azimuthal_nodes=128)
        self.payloads = [
            {'kind': 'amplitude', 'ell_s': ls, 'ell_i': -ls, 'p_s': 0, 'p_i': 0,
             'setup': SETUP.as_payload(), 'quad': quad.as_payload(),
             'pump': pump.as_payload(), 'crystal': crystal.as_payload()}
            for ls in (-1, 0, 1)
        ]

    def test_backends_agree_and_keep_order(self):
        serial = map_entries(self.payloads, backend='local', n_jobs=1)
        parallel = map_entries(self.payloads, backend='local', n_jobs=2)
        queued = map_entries(self.payloads, backend='celery')
        self.assertEqual(serial, parallel)
        self.assertEqual(serial, queued)

    @override_settings(SPDC_TASK_BACKEND='carrier-pigeon')
    def test_unknown_backend_rejected(self):
        with self.assertRaises(ConfigError):
            map_entries(self.payloads)

    def test_empty_input(self):
        self.assertEqual(map_entries([]), [])


class AmplitudeMatrixTests(SimpleTestCase):
    def test_normalization_and_table(self):
        window = OAMWindow(-1, 0)
        matrix = AmplitudeMatrix(window, [[3.0, 0.0], [0.0, 4.0j]])
        normalized = matrix.normalized()
        self.assertAlmostEqual(normalized.total, 1.0)
        table = normalized.table()
        self.assertEqual(list(table.columns), ['ell_s', 'ell_i', 're', 'im', 'prob'])
        self.assertEqual(len(table), 4)
        self.assertAlmostEqual(table['prob'].sum(), 1.0)
        self.assertAlmostEqual(normalized.get(0, 0).imag, 0.8)

    def test_zero_spectrum_cannot_be_normalized(self):
        with self.assertRaises(NumericalError):
            AmplitudeMatrix(OAMWindow.symmetric(1), np.zeros((3, 3))).normalized()

    def test_shape_and_window_checks(self):
        with self.assertRaises(DomainValueError):
            AmplitudeMatrix(OAMWindow.symmetric(1), np.zeros((2, 2)))
        with self.assertRaises(DomainValueError):
            OAMWindow(2, 1)
        with self.assertRaises(DomainValueError):
            AmplitudeMatrix(OAMWindow.symmetric(1), np.ones((3, 3))).get(2, 0)

    def test_quadrature_config_limits(self):
        with self.assertRaises(DomainValueError):
            QuadratureConfig(tolerance=1e-3)
        with self.assertRaises(DomainValueError):
            QuadratureConfig(radial_nodes=4)
        self.assertEqual(QuadratureConfig().halved(), QuadratureConfig(radial_nodes=32, azimuthal_nodes=128))
