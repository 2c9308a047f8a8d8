"""
Amplitude spectra over an OAM window.

Modes whose l_s + l_i carries no pump weight are exactly zero and never reach a
worker; the rest are dispatched as independent entries.
"""
import logging
from dataclasses import dataclass, field

import numpy as np

from amplitudes.dispatch import map_entries
from amplitudes.types import AmplitudeMatrix, OAMWindow, QuadratureConfig
from common.exceptions import DomainValueError
from modes.types import PumpSpec
from phasematching.types import CrystalSpec, SetupParams

logger = logging.getLogger('spdc_lab')


def _entry(kind, ell_s, ell_i, setup, quad, p_s=0, p_i=0, **extra):
    payload = {
        'kind': kind,
        'ell_s': ell_s,
        'ell_i': ell_i,
        'p_s': p_s,
        'p_i': p_i,
        'setup': setup.as_payload(),
        'quad': quad.as_payload(),
    }
    payload.update(extra)
    return payload


def spectrum(window: OAMWindow, pump: PumpSpec, crystal: CrystalSpec, setup: SetupParams,
             quad: QuadratureConfig = None, p_s=0, p_i=0, normalize=True, backend=None) -> AmplitudeMatrix:
    """
    All amplitudes C^{l_s,l_i}_{p_s,p_i} with l_s, l_i in the window.

    Normalized to unit total probability inside the window unless normalize=False.
    """
    quad = quad or QuadratureConfig.from_settings()
    if crystal.L != setup.L:
        raise DomainValueError("crystal length differs from the setup length",
                               details={'crystal_L': crystal.L, 'setup_L': setup.L})
    modes = [(ls, li) for ls, li in window.modes() if pump.coefficient(ls + li) != 0]
    payloads = [_entry('amplitude', ls, li, setup, quad, p_s, p_i,
                       pump=pump.as_payload(), crystal=crystal.as_payload()) for ls, li in modes]
    results = map_entries(payloads, backend=backend)

    entries = np.zeros((window.size, window.size), dtype=complex)
    for (ls, li), (re, im) in zip(modes, results):
        entries[ls - window.ell_min, li - window.ell_min] = complex(re, im)
    matrix = AmplitudeMatrix(window, entries)
    logger.info(f"Computed spectrum on window [{window.ell_min}, {window.ell_max}]: "
                f"{len(modes)} nonzero modes, crystal={crystal.variant}")
    return matrix.normalized() if normalize else matrix


@dataclass
class BasisMatrix:
    """
    Unit-pump amplitudes per mode for each cosine envelope cos(n z / sigma), n = 0..N.

    rows[(l_s, l_i)][n] is the amplitude with pump LG_0^{l_s+l_i} of unit weight and chi = cos(n z / sigma).
    Amplitudes are linear in c, so C(c) = rows @ c.
    """
    window: OAMWindow
    sigma: float
    N: int
    rows: dict = field(default_factory=dict)

    def row(self, ell_s, ell_i):
        try:
            return self.rows[(ell_s, ell_i)]
        except KeyError:
            raise DomainValueError(f"mode ({ell_s},{ell_i}) has no basis row", details={'mode': [ell_s, ell_i]})

    def amplitude(self, ell_s, ell_i, c, pump_weight=1.0):
        c = np.asarray(c, dtype=float)
        if len(c) != self.N + 1:
            raise DomainValueError(f"expected {self.N + 1} cosine coefficients, got {len(c)}",
                                   details={'N': self.N})
        return complex(pump_weight * (self.row(ell_s, ell_i) @ c))

    def amplitudes(self, c, pump: PumpSpec):
        """Raw (unnormalized) amplitude matrix for crystal coefficients c and the given pump."""
        entries = np.zeros((self.window.size, self.window.size), dtype=complex)
        for (ls, li) in self.rows:
            weight = pump.coefficient(ls + li)
            if weight != 0:
                entries[ls - self.window.ell_min, li - self.window.ell_min] = self.amplitude(ls, li, c, weight)
        return AmplitudeMatrix(self.window, entries)


def basis_matrix(window: OAMWindow, pump_orders, setup: SetupParams, sigma=None, N=2,
                 quad: QuadratureConfig = None, p_s=0, p_i=0, backend=None, w_p=None) -> BasisMatrix:
    """
    Cosine-basis rows for every window mode whose l_s + l_i is in pump_orders.

    pump_orders is any iterable of l_p values (a PumpSpec's support, for instance).
    """
    quad = quad or QuadratureConfig.from_settings()
    sigma = setup.L / 4 if sigma is None else float(sigma)
    w_p = setup.w_p if w_p is None else w_p
    orders = set(pump_orders)
    modes = [(ls, li) for ls, li in window.modes() if ls + li in orders]
    payloads = [_entry('basis', ls, li, setup, quad, p_s, p_i, w_p=w_p, sigma=sigma, N=N)
                for ls, li in modes]
    results = map_entries(payloads, backend=backend)

    rows = {mode: np.array([complex(re, im) for re, im in row]) for mode, row in zip(modes, results)}
    logger.info(f"Computed cosine basis for {len(modes)} modes, N={N}, sigma={sigma:.6g}")
    return BasisMatrix(window=window, sigma=sigma, N=N, rows=rows)
