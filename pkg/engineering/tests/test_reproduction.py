"""
End-to-end checks of the engineered sources on the reference setup.

These run the full quadrature and take a while.
"""
import numpy as np
from django.test import SimpleTestCase

from amplitudes.spectra import spectrum
from amplitudes.types import OAMWindow, QuadratureConfig
from common.exceptions import InfeasibleTargetError
from engineering.pipeline import pipeline, source_report
from engineering.presets import target_preset
from entanglement.schmidt import restrict, schmidt
from modes.types import PumpSpec
from phasematching.types import CrystalSpec
from scenarios.presets import setup_preset

SETUP = setup_preset('reference')
QUAD = QuadratureConfig()


def _unintended_peak(source):
    probs = source.restricted.probabilities
    targets = set(source.target.modes)
    unintended = [abs(source.restricted.get(ls, li)) ** 2
                  for ls, li in source.restricted.window.modes() if (ls, li) not in targets]
    return max(unintended) / probs.max()


class BaselineTests(SimpleTestCase):
    def test_gaussian_pump_and_uniform_crystal_are_nearly_separable(self):
        achieved = spectrum(OAMWindow.symmetric(1), PumpSpec.gaussian(SETUP.w_p), CrystalSpec.periodic(SETUP.L),
                            SETUP, QUAD)
        K = schmidt(restrict(achieved, 3)).K
        self.assertAlmostEqual(K, 1.14, delta=0.05)


class Psi1Tests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.pump_only = pipeline(target_preset('psi1'), SETUP, QUAD, engineer_crystal=False)
        cls.combined = pipeline(target_preset('psi1'), SETUP, QUAD)

    def test_pump_only_leaves_unintended_modes(self):
        self.assertAlmostEqual(self.pump_only.schmidt.K, 2.76, delta=0.10)
        self.assertFalse(self.pump_only.mes.is_mes)
        self.assertEqual(self.pump_only.crystal.variant, 'periodic')

    def test_combined_engineering_is_maximally_entangled(self):
        self.assertGreaterEqual(self.combined.schmidt.K, 2.99)
        self.assertTrue(self.combined.mes.is_mes)

    def test_crystal_ratio(self):
        ratio = self.combined.crystal_solution.ratios[0]
        self.assertAlmostEqual(ratio, -0.828, delta=0.05 * 0.828)

    def test_pump_coefficients(self):
        pump = self.combined.pump
        self.assertEqual(pump.support, (-2, 0, 2))
        self.assertEqual(pump.coefficient(1), 0)
        self.assertEqual(pump.coefficient(-1), 0)
        ratio = abs(pump.coefficient(2) / pump.coefficient(0))
        self.assertAlmostEqual(ratio, 1.422, delta=0.05 * 1.422)
        self.assertAlmostEqual(abs(pump.coefficient(-2)), abs(pump.coefficient(2)), delta=1e-9)

    def test_solved_spectrum_matches_target(self):
        restricted = self.combined.restricted
        for ls, li in target_preset('psi1').modes:
            self.assertAlmostEqual(abs(restricted.get(ls, li)) ** 2, 1 / 3, delta=0.01 / 3)
        self.assertLess(_unintended_peak(self.combined), 1e-3)

    def test_exchange_symmetry(self):
        probs = self.combined.achieved.probabilities
        np.testing.assert_allclose(probs, probs.T, atol=1e-9 * probs.max())

    def test_crystal_scale_does_not_change_probabilities(self):
        c = np.array(self.combined.crystal_solution.c)
        scaled = spectrum(OAMWindow.symmetric(1), self.combined.pump, CrystalSpec.cosine(0.5 * c, SETUP.L),
                          SETUP, QUAD)
        np.testing.assert_allclose(scaled.probabilities, self.combined.achieved.probabilities, atol=1e-12)

    def test_report(self):
        report = source_report(self.combined)
        self.assertTrue(report['is_mes'])
        self.assertEqual([term['ell'] for term in report['pump']['a']], [-2, 0, 2])
        self.assertEqual(report['crystal']['c'][0], 1.0)


class Psi3Tests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.source = pipeline(target_preset('psi3'), SETUP, QUAD)

    def test_maximally_entangled_in_five_dimensions(self):
        self.assertGreaterEqual(self.source.schmidt.K, 4.98)
        self.assertLess(_unintended_peak(self.source), 1e-3)

    def test_pump_ratio(self):
        pump = self.source.pump
        self.assertEqual(pump.support, (-3, 0, 3))
        ratio = abs(pump.coefficient(3) / pump.coefficient(0))
        self.assertAlmostEqual(ratio, 1.643, delta=0.05 * 1.643)

    def test_three_cosine_terms(self):
        self.assertEqual(len(self.source.crystal_solution.c), 3)
        self.assertEqual([row['N_R'] for row in self.source.crystal_solution.rows], [0, -2, -4])


class Psi4Tests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.source = pipeline(target_preset('psi4'), SETUP, QUAD)

    def test_crystal_alone_equalizes(self):
        self.assertEqual(self.source.pump.support, (0,))
        self.assertGreaterEqual(self.source.schmidt.K, 2.99)
        ratio = self.source.crystal_solution.ratios[0]
        self.assertAlmostEqual(ratio, -1.549, delta=0.05 * 1.549)


class Psi2Tests(SimpleTestCase):
    def test_rejected_before_any_quadrature(self):
        with self.assertRaises(InfeasibleTargetError) as ctx:
            pipeline(target_preset('psi2'), SETUP, QUAD)
        clash = ctx.exception.details['clashes'][0]
        self.assertEqual((clash['unintended'], clash['target'], clash['N_R']), ([0, 0], [0, 1], 0))
