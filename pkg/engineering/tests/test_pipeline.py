import json

import numpy as np
from django.test import SimpleTestCase

from common.utils import dump_json
from engineering.classification import feasibility
from engineering.pipeline import source_report
from engineering.presets import target_preset
from engineering.types import EngineeredSource
from entanglement.schmidt import is_mes, schmidt
from modes.types import PumpSpec
from phasematching.types import CrystalSpec

L = 15e-3
MES = np.eye(3) / np.sqrt(3)


def _source(name, pump_terms):
    target = target_preset(name)
    return EngineeredSource(
        target=target,
        pump=PumpSpec(pump_terms, 25e-6),
        crystal=CrystalSpec.cosine([1.0, -0.828], L),
        crystal_solution=None,
        feasibility=feasibility(target),
        achieved=None,
        restricted=None,
        schmidt=schmidt(MES),
        mes=is_mes(MES),
    )


class SourceReportTests(SimpleTestCase):
    def test_classification_lists_every_pumped_diagonal(self):
        report = source_report(_source('psi1', {-2: 1.0, 0: 0.7, 2: 1.0}))
        classification = report['classification']
        self.assertEqual([diag['ell_p'] for diag in classification], [-2, 0, 2])
        self.assertEqual(classification[0], {'ell_p': -2, 'targets': [{'mode': [-1, -1], 'N_R': 0}],
                                             'unintended': []})
        center = classification[1]
        self.assertEqual(center['targets'], [{'mode': [0, 0], 'N_R': 0}])
        self.assertEqual(center['unintended'], [{'mode': [-1, 1], 'N_R': -2}, {'mode': [1, -1], 'N_R': -2}])

    def test_gaussian_target_has_nothing_unintended(self):
        report = source_report(_source('psi4', {0: 1.0}))
        self.assertEqual(len(report['classification']), 1)
        diag = report['classification'][0]
        self.assertEqual([m['N_R'] for m in diag['targets']], [-2, 0, -2])
        self.assertEqual(diag['unintended'], [])

    def test_report_serializes(self):
        report = json.loads(dump_json(source_report(_source('psi1', {-2: 1.0, 0: 0.7, 2: 1.0}))))
        self.assertEqual(report['crystal'], {'variant': 'cosine', 'L': L})
        self.assertTrue(report['feasibility']['feasible'])
        self.assertLess(report['schmidt']['max_deviation'], 1e-12)
        self.assertEqual(report['pump']['a'][1]['abs'], 0.7)
