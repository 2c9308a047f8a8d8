from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SchmidtResult:
    """Schmidt coefficients (descending, unit 2-norm), Schmidt number K and effective rank r."""
    lambdas: tuple
    K: float
    r: int

    @property
    def d(self):
        return len(self.lambdas)

    def as_report(self):
        return {'lambdas': list(self.lambdas), 'K': self.K, 'r': self.r}


@dataclass(frozen=True)
class MesReport:
    """Deviation of each Schmidt coefficient from 1/sqrt(d)."""
    is_mes: bool
    deviations: tuple
    tol: float
    schmidt: SchmidtResult

    @property
    def max_deviation(self):
        return float(np.max(np.abs(self.deviations)))

    def as_report(self):
        report = self.schmidt.as_report()
        report.update(is_mes=self.is_mes, deviations=list(self.deviations), max_deviation=self.max_deviation,
                      tol=self.tol)
        return report
