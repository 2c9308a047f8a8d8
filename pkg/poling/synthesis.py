"""
Discrete poling patterns for a cosine-series nonlinearity envelope.

Synthesis is a first-order sigma-delta pass: walking the domains left to right, each sign
keeps the cumulative integral of the pattern as close as possible to the cumulative integral
of the normalized envelope chi(z) / max|chi|. The running difference never exceeds one
domain width, so the pattern PMF tracks the envelope PMF at low |dk|.
"""
import logging

import numpy as np

from common.exceptions import DomainValueError
from phasematching.functions import chi_profile, pmf
from phasematching.types import CrystalSpec
from poling.types import PolingPattern

logger = logging.getLogger('spdc_lab')

MIN_DOMAINS = 64
# |dk L / 2| range and sample count of the default comparison grid
GRID_HALF_WIDTH = 20.0
GRID_SAMPLES = 801


def _envelope(c, sigma, L):
    return CrystalSpec.cosine(c, L, sigma)


def cumulative_envelope(spec: CrystalSpec, z):
    """Exact integral of chi from -L/2 to z for a cosine series."""
    z = np.asarray(z, dtype=float)
    lower = -spec.L / 2
    total = spec.c[0] * (z - lower)
    for n, c_n in enumerate(spec.c[1:], start=1):
        total = total + c_n * spec.sigma / n * (np.sin(n * z / spec.sigma) - np.sin(n * lower / spec.sigma))
    return total


def envelope_peak(spec: CrystalSpec, samples=20001):
    """max |chi| on a dense grid."""
    z = np.linspace(-spec.L / 2, spec.L / 2, samples)
    return float(np.max(np.abs(chi_profile(z, spec))))


def synthesize(c, sigma, L, n_domains) -> PolingPattern:
    """
    Greedy +1/-1 pattern over n_domains equal domains; ties resolve to +1.

    Deterministic, and synthesizing -c yields the negated pattern.
    """
    if int(n_domains) != n_domains or n_domains < MIN_DOMAINS:
        raise DomainValueError(f"need at least {MIN_DOMAINS} domains, got {n_domains}",
                               details={'n_domains': n_domains})
    n_domains = int(n_domains)
    spec = _envelope(c, sigma, L)
    peak = envelope_peak(spec, samples=max(20001, 10 * n_domains + 1))
    if peak == 0:
        raise DomainValueError("envelope vanishes everywhere", details={'c': list(spec.c)})

    width = L / n_domains
    boundaries = -L / 2 + width * np.arange(1, n_domains + 1)
    goal = cumulative_envelope(spec, boundaries) / peak
    signs = np.empty(n_domains, dtype=int)
    running = 0.0
    for k in range(n_domains):
        up = abs(running + width - goal[k])
        down = abs(running - width - goal[k])
        signs[k] = 1 if up <= down else -1
        running += signs[k] * width

    pattern = PolingPattern(signs=tuple(signs.tolist()), domain_width=width, L=L)
    logger.info(f"Synthesized poling pattern: {n_domains} domains, {len(pattern.flips)} flips, "
                f"final cumulative error {abs(running - goal[-1]) / width:.3f} domain widths")
    return pattern


def default_dk_grid(L):
    return np.linspace(-GRID_HALF_WIDTH, GRID_HALF_WIDTH, GRID_SAMPLES) * 2 / L


def pmf_error(pattern: PolingPattern, c, sigma, dk_grid=None, carrier=0.0):
    """
    Relative L2 distance between the pattern PMF and the cosine-series PMF over dk_grid,
    after the optimal complex scaling of the pattern PMF.

    carrier shifts where the pattern PMF is read: pmf_pattern(dk + carrier) against pmf_envelope(dk).
    """
    dk = default_dk_grid(pattern.L) if dk_grid is None else np.asarray(dk_grid, dtype=float)
    if dk.size == 0:
        raise DomainValueError("dk grid is empty", details={'dk_grid': []})
    target = pmf(dk, _envelope(c, sigma, pattern.L))
    actual = pmf(dk + carrier, pattern.as_crystal())
    target_norm = np.linalg.norm(target)
    if target_norm == 0:
        raise DomainValueError("target PMF vanishes on the grid", details={'c': list(c)})
    power = np.vdot(actual, actual).real
    scale = np.vdot(actual, target) / power if power else 0.0
    error = float(np.linalg.norm(scale * actual - target) / target_norm)
    logger.debug(f"PMF error of {pattern.n_domains}-domain pattern: {error:.4g}")
    return error
