from dataclasses import dataclass

import numpy as np
import pandas as pd

from common.exceptions import DomainValueError, NumericalError

RAW = 'raw'
UNIT_TOTAL = 'unit-total'


def _setting(name, default):
    """Read a Django setting, falling back when settings are not configured (plain library use)."""
    try:
        from django.conf import settings
        return getattr(settings, name, default)
    except Exception:
        return default


@dataclass(frozen=True)
class QuadratureConfig:
    """
    Tensor quadrature over (rho_s, rho_i, phi): Gauss-Legendre radial nodes on [0, q_max]
    with q_max = qmax_factor / min waist, trapezoid azimuthal nodes on [0, 2 pi).
    """
    radial_nodes: int = 64
    azimuthal_nodes: int = 256
    qmax_factor: float = 8.0
    tolerance: float = 1e-6

    def __post_init__(self):
        if self.radial_nodes < 8 or self.azimuthal_nodes < 8:
            raise DomainValueError("quadrature needs at least 8 nodes per axis",
                                   details={'radial_nodes': self.radial_nodes,
                                            'azimuthal_nodes': self.azimuthal_nodes})
        if not self.qmax_factor > 0:
            raise DomainValueError("qmax_factor must be positive", details={'qmax_factor': self.qmax_factor})
        if not 0 < self.tolerance <= 1e-6:
            raise DomainValueError("tolerance must lie in (0, 1e-6]", details={'tolerance': self.tolerance})

    @classmethod
    def from_settings(cls):
        return cls(
            radial_nodes=int(_setting('SPDC_RADIAL_NODES', 64)),
            azimuthal_nodes=int(_setting('SPDC_AZIMUTHAL_NODES', 256)),
            qmax_factor=float(_setting('SPDC_QMAX_FACTOR', 8.0)),
            tolerance=float(_setting('SPDC_QUAD_TOLERANCE', 1e-6)),
        )

    def halved(self):
        """Coarser companion rule used for the error estimate."""
        return QuadratureConfig(
            radial_nodes=max(8, self.radial_nodes // 2),
            azimuthal_nodes=max(8, self.azimuthal_nodes // 2),
            qmax_factor=self.qmax_factor,
            tolerance=self.tolerance,
        )

    def doubled(self):
        return QuadratureConfig(
            radial_nodes=self.radial_nodes * 2,
            azimuthal_nodes=self.azimuthal_nodes * 2,
            qmax_factor=self.qmax_factor,
            tolerance=self.tolerance,
        )

    def as_payload(self):
        return {
            'radial_nodes': self.radial_nodes,
            'azimuthal_nodes': self.azimuthal_nodes,
            'qmax_factor': self.qmax_factor,
            'tolerance': self.tolerance,
        }

    @classmethod
    def from_payload(cls, payload):
        return cls(**payload)


@dataclass(frozen=True)
class OAMWindow:
    """Inclusive OAM index range shared by signal and idler."""
    ell_min: int
    ell_max: int

    def __post_init__(self):
        if int(self.ell_min) != self.ell_min or int(self.ell_max) != self.ell_max:
            raise DomainValueError("OAM window bounds must be integers",
                                   details={'ell_min': self.ell_min, 'ell_max': self.ell_max})
        if self.ell_min > self.ell_max:
            raise DomainValueError("OAM window is empty", details={'ell_min': self.ell_min, 'ell_max': self.ell_max})

    @classmethod
    def symmetric(cls, half_width):
        return cls(-half_width, half_width)

    @property
    def size(self):
        return self.ell_max - self.ell_min + 1

    @property
    def indices(self):
        return range(self.ell_min, self.ell_max + 1)

    def contains(self, ell):
        return self.ell_min <= ell <= self.ell_max

    def modes(self):
        """All (ell_s, ell_i) pairs, signal-major."""
        return [(ls, li) for ls in self.indices for li in self.indices]


@dataclass
class AmplitudeMatrix:
    """
    Biphoton expansion amplitudes C^{ls,li} over an OAM window.

    entries[ls - ell_min, li - ell_min] holds C^{ls,li}.
    """
    window: OAMWindow
    entries: np.ndarray
    normalization: str = RAW

    def __post_init__(self):
        self.entries = np.asarray(self.entries, dtype=complex)
        if self.entries.shape != (self.window.size, self.window.size):
            raise DomainValueError("entries do not match the OAM window",
                                   details={'shape': list(self.entries.shape), 'size': self.window.size})

    def get(self, ell_s, ell_i):
        if not (self.window.contains(ell_s) and self.window.contains(ell_i)):
            raise DomainValueError(f"mode ({ell_s},{ell_i}) outside window", details={'mode': [ell_s, ell_i]})
        return complex(self.entries[ell_s - self.window.ell_min, ell_i - self.window.ell_min])

    @property
    def total(self):
        return float(np.sum(np.abs(self.entries) ** 2))

    def normalized(self):
        total = self.total
        if total == 0:
            raise NumericalError("spectrum vanishes inside the OAM window",
                                 details={'window': [self.window.ell_min, self.window.ell_max]})
        return AmplitudeMatrix(self.window, self.entries / np.sqrt(total), UNIT_TOTAL)

    @property
    def probabilities(self):
        return np.abs(self.entries) ** 2

    def table(self):
        """Long-form table: ell_s, ell_i, re, im, prob."""
        rows = []
        prob = self.probabilities
        for ls, li in self.window.modes():
            i, j = ls - self.window.ell_min, li - self.window.ell_min
            value = self.entries[i, j]
            rows.append({'ell_s': ls, 'ell_i': li, 're': value.real, 'im': value.imag, 'prob': prob[i, j]})
        return pd.DataFrame(rows, columns=['ell_s', 'ell_i', 're', 'im', 'prob'])

    def as_report(self):
        return {
            'window': {'ell_min': self.window.ell_min, 'ell_max': self.window.ell_max},
            'normalization': self.normalization,
            'entries': self.table().to_dict(orient='records'),
        }
