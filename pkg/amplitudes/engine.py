"""
Biphoton LG expansion amplitudes by quadrature.

The overlap of pump x PMF x conj(signal) x conj(idler) over (q_s, q_i) is written
in polar coordinates with phi = phi_s - phi_i. The remaining global azimuth phi_i
only appears as exp(i (l_p - l_s - l_i) phi_i), so its integral is 2 pi when
l_p = l_s + l_i and exactly zero otherwise. With Q = rho_s e^{i phi} + rho_i,

    |q_s + q_i| = |Q|,   Arg(q_s + q_i) = phi_i + Arg(Q),

and the pump factor |Q|^|l_p| e^{i l_p Arg Q} is the polynomial Q^l_p (or conj(Q)^|l_p|).
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from math import factorial

import numpy as np
from scipy import integrate
from scipy.special import roots_legendre

from amplitudes.types import QuadratureConfig
from common.exceptions import DomainValueError, NumericalError
from modes.beams import lg_radial, mode_phase
from modes.types import LGIndex, PumpSpec
from phasematching.functions import cosine_term_pmf, delta_kz_polar, pmf
from phasematching.types import CrystalSpec, SetupParams

logger = logging.getLogger('spdc_lab')


@lru_cache(maxsize=16)
def _nodes(radial_nodes, azimuthal_nodes):
    """Gauss-Legendre nodes/weights on [0, 1] and trapezoid nodes on [0, 2 pi)."""
    x, w = roots_legendre(radial_nodes)
    t = (x + 1) / 2
    wt = w / 2
    phi = 2 * np.pi * np.arange(azimuthal_nodes) / azimuthal_nodes
    return t, wt, phi, 2 * np.pi / azimuthal_nodes


@dataclass
class ModeKernel:
    """
    Everything in the overlap integrand except the PMF, sampled on the quadrature grid.

    amplitude = sum(weights * pmf(dk)); the L1 norm of weights sets the error scale.
    """
    weights: np.ndarray
    dk: np.ndarray

    def integrate(self, pmf_values):
        return complex(np.sum(self.weights * pmf_values))

    @property
    def scale(self):
        return float(np.sum(np.abs(self.weights)))


def mode_kernel(ell_s, ell_i, p_s, p_i, w_p, setup: SetupParams, quad: QuadratureConfig) -> ModeKernel:
    """Integrand kernel for a unit-weight pump LG_0^{l_s + l_i}."""
    ell_p = ell_s + ell_i
    q_max = quad.qmax_factor / min(w_p, setup.w_s, setup.w_i)
    t, wt, phi, w_phi = _nodes(quad.radial_nodes, quad.azimuthal_nodes)
    rho = q_max * t
    w_rho = q_max * wt

    rho_s = rho[:, None, None]
    rho_i = rho[None, :, None]
    phi_g = phi[None, None, :]
    Q = rho_s * np.exp(1j * phi_g) + rho_i
    Q2 = np.abs(Q) ** 2

    abs_p = abs(ell_p)
    pump_norm = np.sqrt(w_p ** 2 / (2 * np.pi * factorial(abs_p))) * (w_p / np.sqrt(2)) ** abs_p
    q_power = Q ** ell_p if ell_p >= 0 else np.conj(Q) ** abs_p
    pump = mode_phase(0, ell_p) * pump_norm * q_power * np.exp(-Q2 * w_p ** 2 / 4)

    signal = np.conj(mode_phase(p_s, ell_s)) * lg_radial(LGIndex(p_s, ell_s, setup.w_s), rho)
    idler = np.conj(mode_phase(p_i, ell_i)) * lg_radial(LGIndex(p_i, ell_i, setup.w_i), rho)

    measure = (w_rho * rho)[:, None, None] * (w_rho * rho)[None, :, None] * w_phi * 2 * np.pi
    weights = (measure * signal[:, None, None] * idler[None, :, None]
               * np.exp(-1j * ell_s * phi_g) * pump)
    dk = delta_kz_polar(rho_s, rho_i, np.cos(phi_g), setup)
    return ModeKernel(weights=weights, dk=dk)


def _checked(values, estimates, scales, quad: QuadratureConfig, label):
    """Compare fine and coarse rules; raise when the estimated error exceeds tolerance."""
    errors = np.abs(np.asarray(values) - np.asarray(estimates))
    limits = quad.tolerance * np.asarray(scales)
    if np.any(errors > limits):
        worst = float(np.max(errors / np.maximum(limits, np.finfo(float).tiny)))
        logger.error(f"Quadrature did not converge for {label}: error/limit = {worst:.3g}")
        raise NumericalError(
            f"quadrature did not converge for {label}",
            details={'mode': label, 'error_over_limit': worst, 'tolerance': quad.tolerance},
        )
    logger.debug(f"Quadrature for {label}: max error estimate {float(np.max(errors)):.3g}")


def unit_amplitude(ell_s, ell_i, p_s, p_i, w_p, crystal: CrystalSpec, setup: SetupParams, quad: QuadratureConfig):
    """Amplitude for a unit pump weight on l_p = l_s + l_i, with a convergence check."""
    fine = mode_kernel(ell_s, ell_i, p_s, p_i, w_p, setup, quad)
    coarse = mode_kernel(ell_s, ell_i, p_s, p_i, w_p, setup, quad.halved())
    value = fine.integrate(pmf(fine.dk, crystal))
    estimate = coarse.integrate(pmf(coarse.dk, crystal))
    _checked([value], [estimate], [fine.scale * crystal.L], quad, f"({ell_s},{ell_i})")
    return value


def amplitude(ell_s, ell_i, p_s, p_i, pump: PumpSpec, crystal: CrystalSpec, setup: SetupParams,
              quad: QuadratureConfig):
    """
    Expansion amplitude C^{l_s,l_i}_{p_s,p_i}.

    Only the pump term with l_p = l_s + l_i survives the azimuthal integral,
    so every other mode is exactly zero.
    """
    if p_s < 0 or p_i < 0:
        raise DomainValueError("radial indices must be non-negative", details={'p_s': p_s, 'p_i': p_i})
    weight = pump.coefficient(ell_s + ell_i)
    if weight == 0:
        return 0j
    return weight * unit_amplitude(ell_s, ell_i, p_s, p_i, pump.w_p, crystal, setup, quad)


def cosine_basis_row(ell_s, ell_i, p_s, p_i, w_p, setup: SetupParams, sigma, N, quad: QuadratureConfig):
    """
    Amplitudes for the unit cosine envelopes cos(n z / sigma), n = 0..N, unit pump on l_s + l_i.

    One kernel serves every n since the PMF is the only n-dependent factor.
    """
    if N < 0:
        raise DomainValueError(f"number of cosine terms must be >= 0, got {N}", details={'N': N})
    fine = mode_kernel(ell_s, ell_i, p_s, p_i, w_p, setup, quad)
    coarse = mode_kernel(ell_s, ell_i, p_s, p_i, w_p, setup, quad.halved())
    values, estimates = [], []
    for n in range(N + 1):
        values.append(fine.integrate(cosine_term_pmf(fine.dk, n, sigma, setup.L)))
        estimates.append(coarse.integrate(cosine_term_pmf(coarse.dk, n, sigma, setup.L)))
    _checked(values, estimates, [fine.scale * setup.L] * (N + 1), quad, f"({ell_s},{ell_i})")
    return np.array(values, dtype=complex)


def xi(N_R, z, setup: SetupParams):
    """(k_p w_p^2 + 2iz)^m / (k_p w_p^2 - 2iz)^(m + 1) with m = -N_R / 2."""
    a = setup.k_p * setup.w_p ** 2
    m = -int(N_R) // 2
    return (a + 2j * z) ** m / (a - 2j * z) ** (m + 1)


def reduced_amplitude(N_R, c, setup: SetupParams, sigma=None):
    """
    z-integral of chi(z) xi(N_R, z) over the crystal, by adaptive quadrature.

    With matched Rayleigh ranges the Gaussian moments of every p = 0 mode of RMN N_R
    carry this z-dependence, so amplitudes of equal RMN are proportional to it up to a
    mode-dependent prefactor.
    """
    if int(N_R) != N_R or N_R > 0 or N_R % 2:
        raise DomainValueError(f"RMN must be an even integer <= 0, got {N_R}", details={'N_R': N_R})
    if not setup.has_matched_rayleigh_ranges:
        raise DomainValueError("reduced amplitudes require w_s = w_i = sqrt(2) w_p and k_s = k_i = k_p/2",
                               details={'mode': setup.mode})
    sigma = setup.L / 4 if sigma is None else sigma
    coefficients = np.asarray(c, dtype=float)
    n = np.arange(len(coefficients))

    def integrand(z):
        return np.dot(coefficients, np.cos(n * z / sigma)) * xi(int(N_R), z, setup)

    value, error = integrate.quad(integrand, -setup.L / 2, setup.L / 2, complex_func=True,
                                  epsabs=1e-13, epsrel=1e-12, limit=200)
    logger.debug(f"Reduced amplitude N_R={N_R}: {value:.6g} (error {error:.2g})")
    return complex(value)


def evaluate_entry(payload):
    """
    Evaluate one dispatched entry from a JSON payload.

    kind 'amplitude' -> [re, im]; kind 'basis' -> [[re, im], ...] for n = 0..N.
    """
    setup = SetupParams.from_payload(payload['setup'])
    quad = QuadratureConfig.from_payload(payload['quad'])
    ell_s, ell_i = payload['ell_s'], payload['ell_i']
    p_s, p_i = payload.get('p_s', 0), payload.get('p_i', 0)

    if payload['kind'] == 'amplitude':
        pump = PumpSpec.from_payload(payload['pump'])
        crystal = CrystalSpec.from_payload(payload['crystal'])
        value = amplitude(ell_s, ell_i, p_s, p_i, pump, crystal, setup, quad)
        return [value.real, value.imag]
    if payload['kind'] == 'basis':
        row = cosine_basis_row(ell_s, ell_i, p_s, p_i, payload['w_p'], setup,
                               payload['sigma'], payload['N'], quad)
        return [[value.real, value.imag] for value in row]
    raise DomainValueError(f"unknown entry kind {payload['kind']!r}", details={'kind': payload['kind']})
