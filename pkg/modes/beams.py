"""
Laguerre-Gaussian beams at the focal plane.

Momentum-space modes follow the angular-spectrum convention

    LG_p^l(q, w) = sqrt(w^2 p! / (2 pi (p+|l|)!)) (-1)^p i^l (|q| w / sqrt 2)^|l|
                   exp(-|q|^2 w^2 / 4) L_p^|l|(|q|^2 w^2 / 2) exp(i l Arg q)

and are unit-normalized over d^2 q. The i^l factor stands in for (-1)^(l/2) so
odd l is well defined; it is a global phase per mode.
"""
import logging
from math import factorial

import numpy as np

from common.exceptions import DomainValueError
from modes.types import LGIndex, PositionGrid, PumpProfile, PumpSpec

logger = logging.getLogger('spdc_lab')


def laguerre(p, alpha, x):
    """
    Generalized Laguerre polynomial L_p^alpha(x) by upward three-term recurrence.

    (k+1) L_{k+1} = (2k + 1 + alpha - x) L_k - (k + alpha) L_{k-1}

    x may be a scalar or an array; the result has the same shape.
    """
    if int(p) != p or p < 0:
        raise DomainValueError(f"Laguerre degree must be a non-negative integer, got {p}", details={'p': p})
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if p == 0:
        return prev if prev.ndim else float(prev)
    curr = 1.0 + alpha - x
    for k in range(1, int(p)):
        prev, curr = curr, ((2 * k + 1 + alpha - x) * curr - (k + alpha) * prev) / (k + 1)
    return curr if curr.ndim else float(curr)


def mode_phase(p, ell):
    """(-1)^p i^ell, the per-mode phase convention."""
    return (-1) ** p * 1j ** (ell % 4)


def lg_radial(idx: LGIndex, rho):
    """Real radial part of the momentum-space mode (everything except phase factors)."""
    abs_ell = abs(idx.ell)
    norm = np.sqrt(idx.w ** 2 * factorial(idx.p) / (2 * np.pi * factorial(idx.p + abs_ell)))
    u = np.asarray(rho, dtype=float) ** 2 * idx.w ** 2 / 2
    return norm * u ** (abs_ell / 2) * np.exp(-u / 2) * laguerre(idx.p, abs_ell, u)


def lg_angular_spectrum(idx: LGIndex, q):
    """
    Complex angular spectrum of an LG mode at z = 0.

    q is a 2-vector (qx, qy) in rad/m, or an array whose leading axis has length 2.
    At q = 0 the azimuthal factor is irrelevant: the radial factor vanishes for ell != 0.
    """
    q = np.asarray(q, dtype=float)
    qx, qy = q[0], q[1]
    rho = np.hypot(qx, qy)
    azimuth = np.exp(1j * idx.ell * np.arctan2(qy, qx))
    return mode_phase(idx.p, idx.ell) * lg_radial(idx, rho) * azimuth


def pump_angular_spectrum(pump: PumpSpec, q):
    """Sum over the pump superposition of a_l LG_0^l(q, w_p)."""
    total = 0j
    for ell in pump.support:
        total = total + pump.coefficient(ell) * lg_angular_spectrum(LGIndex(0, ell, pump.w_p), q)
    return total


def lg_position_field(idx: LGIndex, x, y):
    """
    Unit-normalized position-space LG mode at z = 0, phased so that it is the
    inverse Fourier transform of lg_angular_spectrum under E(r) = (1/2pi) int V(q) e^{i q.r} d^2q.
    """
    abs_ell = abs(idx.ell)
    r2 = (np.asarray(x, dtype=float) ** 2 + np.asarray(y, dtype=float) ** 2) / idx.w ** 2
    norm = np.sqrt(2 * factorial(idx.p) / (np.pi * factorial(idx.p + abs_ell))) / idx.w
    radial = norm * (2 * r2) ** (abs_ell / 2) * np.exp(-r2) * laguerre(idx.p, abs_ell, 2 * r2)
    # i^l / (-i)^|l| maps the momentum convention onto the Hankel transform sign.
    phase = 1j ** ((idx.ell + abs_ell) % 4)
    return phase * radial * np.exp(1j * idx.ell * np.arctan2(y, x))


def render_pump_profile(pump: PumpSpec, grid: PositionGrid) -> PumpProfile:
    """Evaluate the pump superposition on a square position grid at z = 0."""
    axis = np.linspace(-grid.extent / 2, grid.extent / 2, int(grid.samples))
    x, y = np.meshgrid(axis, axis, indexing='xy')
    field = np.zeros_like(x, dtype=complex)
    for ell in pump.support:
        field += pump.coefficient(ell) * lg_position_field(LGIndex(0, ell, pump.w_p), x, y)

    logger.info(f"Rendered pump profile for l_p={list(pump.support)} on {grid.samples}x{grid.samples} grid")
    return PumpProfile(x=x, y=y, field=field, intensity=np.abs(field) ** 2, phase=np.angle(field))
