"""
Longitudinal phase mismatch and phase-matching functions.

The constant mismatch k_p - k_s - k_i is taken as compensated by the
quasi-phase-matching carrier, so dk only carries the transverse terms and
every crystal variant is described by its slow envelope chi(z).
"""
import logging

import numpy as np
import pandas as pd

from common.exceptions import DomainValueError
from phasematching.types import COSINE, PERIODIC, POLING, CrystalSpec, SetupParams

logger = logging.getLogger('spdc_lab')

# Bounds the (dk samples x domains) working array of the poling PMF.
_POLING_CHUNK = 1 << 22


def sinc(x):
    """Unnormalized sinc: sin(x)/x with sinc(0) = 1."""
    return np.sinc(np.asarray(x, dtype=float) / np.pi)


def delta_kz(q_s, q_i, setup: SetupParams):
    """
    Transverse part of the longitudinal mismatch k_p,z - k_s,z - k_i,z (rad/m), paraxial.

    q_s and q_i are 2-vectors, or arrays whose leading axis has length 2.
    """
    q_s = np.asarray(q_s, dtype=float)
    q_i = np.asarray(q_i, dtype=float)
    q_p2 = (q_s[0] + q_i[0]) ** 2 + (q_s[1] + q_i[1]) ** 2
    q_s2 = q_s[0] ** 2 + q_s[1] ** 2
    q_i2 = q_i[0] ** 2 + q_i[1] ** 2
    return -q_p2 / (2 * setup.k_p) + q_s2 / (2 * setup.k_s) + q_i2 / (2 * setup.k_i)


def delta_kz_polar(rho_s, rho_i, cos_phi, setup: SetupParams):
    """Same mismatch written with |q_s + q_i|^2 = rho_s^2 + rho_i^2 + 2 rho_s rho_i cos(phi)."""
    q_p2 = rho_s ** 2 + rho_i ** 2 + 2 * rho_s * rho_i * cos_phi
    return -q_p2 / (2 * setup.k_p) + rho_s ** 2 / (2 * setup.k_s) + rho_i ** 2 / (2 * setup.k_i)


def chi_profile(z, spec: CrystalSpec):
    """Effective nonlinearity envelope at z (meters)."""
    z_arr = np.asarray(z, dtype=float)
    half = spec.L / 2
    if np.any(np.abs(z_arr) > half * (1 + 1e-12)):
        raise DomainValueError(f"z outside crystal [-{half}, {half}]", details={'z': 'out of range'})

    if spec.variant == PERIODIC:
        value = np.ones_like(z_arr)
    elif spec.variant == COSINE:
        n = np.arange(len(spec.c))
        value = np.tensordot(np.cos(np.multiply.outer(z_arr, n) / spec.sigma), np.asarray(spec.c), axes=1)
    else:
        index = np.clip(np.floor((z_arr + half) / spec.domain_width).astype(int), 0, len(spec.signs) - 1)
        value = np.asarray(spec.signs, dtype=float)[index]
    return value if value.ndim else float(value)


def cosine_term_pmf(dk, n, sigma, L):
    """PMF of the single envelope cos(n z / sigma): (L/2)[sinc((dk + n/sigma)L/2) + sinc((dk - n/sigma)L/2)]."""
    dk = np.asarray(dk, dtype=float)
    shift = n / sigma
    return (L / 2) * (sinc((dk + shift) * L / 2) + sinc((dk - shift) * L / 2))


def _poling_pmf(dk, spec: CrystalSpec):
    signs = np.asarray(spec.signs, dtype=float)
    width = spec.domain_width
    centres = -spec.L / 2 + width * (np.arange(len(signs)) + 0.5)
    flat = np.asarray(dk, dtype=float).ravel()
    out = np.empty(flat.shape, dtype=complex)
    step = max(1, _POLING_CHUNK // len(signs))
    for start in range(0, flat.size, step):
        chunk = flat[start:start + step]
        phases = np.exp(1j * np.multiply.outer(chunk, centres))
        out[start:start + step] = width * sinc(chunk * width / 2) * (phases @ signs)
    return out.reshape(np.shape(dk))


def pmf(dk, spec: CrystalSpec):
    """
    Phase-matching function: integral of chi(z) exp(i dk z) over the crystal.

    Closed forms per variant; vectorized over dk.
    """
    dk_arr = np.asarray(dk, dtype=float)
    if spec.variant == PERIODIC:
        value = (spec.L * sinc(dk_arr * spec.L / 2)).astype(complex)
    elif spec.variant == COSINE:
        value = np.zeros(dk_arr.shape, dtype=complex)
        for n, c_n in enumerate(spec.c):
            if c_n:
                value += c_n * cosine_term_pmf(dk_arr, n, spec.sigma, spec.L)
    elif spec.variant == POLING:
        value = _poling_pmf(dk_arr, spec)
    else:
        raise DomainValueError(f"unknown crystal variant {spec.variant!r}", details={'variant': spec.variant})
    return value if value.ndim else complex(value)


def pmf_table(spec: CrystalSpec, dk_halfL):
    """
    Sample the PMF on a grid of dimensionless dk*L/2 values.

    Returns a DataFrame with columns dk_halfL, re, im, abs.
    """
    dk_halfL = np.asarray(dk_halfL, dtype=float)
    values = pmf(2 * dk_halfL / spec.L, spec)
    return pd.DataFrame({
        'dk_halfL': dk_halfL,
        're': np.real(values),
        'im': np.imag(values),
        'abs': np.abs(values),
    })
