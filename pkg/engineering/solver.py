"""
Two-stage inverse solve: cosine crystal coefficients on the constrained anti-diagonal,
then one pump coefficient per anti-diagonal.

Amplitudes are linear in c, so the crystal stage is a linear least-squares problem over
the cosine-basis rows; the pump stage divides target weights by the baseline amplitudes
of the solved crystal.
"""
import logging

import numpy as np

from amplitudes.spectra import basis_matrix
from amplitudes.types import OAMWindow, QuadratureConfig
from common.exceptions import DomainValueError, InfeasibleTargetError, NumericalError
from engineering.classification import classify, feasibility
from engineering.types import CrystalSolution, TargetState
from modes.types import PumpSpec
from phasematching.types import SetupParams

logger = logging.getLogger('spdc_lab')

RESIDUAL_LIMIT = 1e-6
BASELINE_FLOOR = 1e-9


def require_feasible(target: TargetState):
    verdict = feasibility(target)
    if not verdict.feasible:
        details = verdict.as_report()
        details['target'] = target.name or [list(m) for m in target.modes]
        raise InfeasibleTargetError(verdict.reason, details=details)
    return verdict


def target_basis(target: TargetState, setup: SetupParams, N, quad=None, sigma=None, backend=None, w_p=None):
    """Cosine-basis rows for every pumped anti-diagonal of the target inside S_{d x d}."""
    return basis_matrix(OAMWindow.symmetric(target.half), target.pump_orders, setup, sigma=sigma, N=N,
                        quad=quad, backend=backend, w_p=w_p)


def _normalize_c(c):
    """Scale so that c_0 = 1; if c_0 vanishes, make the first nonzero entry positive at unit norm."""
    c = np.asarray(c, dtype=float)
    if abs(c[0]) > 1e-12 * np.linalg.norm(c):
        return c / c[0]
    first = c[np.flatnonzero(np.abs(c) > 1e-12 * np.linalg.norm(c))[0]]
    return c * np.sign(first) / np.linalg.norm(c)


def solve_crystal(target: TargetState, setup: SetupParams, N=None, quad: QuadratureConfig = None,
                  sigma=None, basis=None, backend=None) -> CrystalSolution:
    """
    Cosine coefficients c_0..c_N that set every suppressed N_R class to zero and give the target
    classes the target weights, on the constrained anti-diagonal.

    One row per N_R class; the first target class is pinned to 1 and the others to their weight
    ratio. Solved in the least-squares sense over real c.
    """
    verdict = require_feasible(target)
    N = target.half if N is None else int(N)
    sigma = setup.L / 4 if sigma is None else float(sigma)
    if verdict.constrained_diagonal is None:
        logger.info("No crystal constraints needed, keeping a uniform envelope")
        return CrystalSolution(c=(1.0,) + (0.0,) * N, sigma=sigma, residual=0.0, rank=0)
    if N + 1 < verdict.constraint_count:
        raise DomainValueError(f"{verdict.constraint_count} constraints need at least N = "
                               f"{verdict.constraint_count - 1} cosine terms, got N = {N}",
                               details={'N': N, 'constraints': verdict.constraint_count})

    if basis is None:
        basis = target_basis(target, setup, N, quad, sigma, backend)
    elif basis.N != N:
        raise DomainValueError(f"basis has N = {basis.N}, solver asked for N = {N}", details={'N': N})

    diag = classify(target)[verdict.constrained_diagonal]
    reference = diag.targets[0]
    rows, values, labels = [], [], []
    for N_R in verdict.target_classes:
        member = next(m for m in diag.targets if m.N_R == N_R)
        rows.append(basis.row(*member.mode))
        values.append((member.weight / reference.weight).real)
        labels.append({'mode': list(member.mode), 'N_R': N_R, 'value': values[-1]})
    for N_R in verdict.suppressed_classes:
        member = next(m for m in diag.unintended if m.N_R == N_R)
        rows.append(basis.row(*member.mode))
        values.append(0.0)
        labels.append({'mode': list(member.mode), 'N_R': N_R, 'value': 0.0})

    A = np.array(rows, dtype=complex)
    b = np.array(values, dtype=complex)
    # rows rescaled to O(1) so rcond acts on relative singular values
    scale = np.max(np.abs(A))
    A_real = np.vstack([A.real, A.imag]) / scale
    b_real = np.concatenate([b.real, b.imag])
    c, _, rank, singular = np.linalg.lstsq(A_real, b_real, rcond=1e-10)
    needed = min(len(rows), N + 1)
    if rank < needed:
        logger.error(f"Crystal system is rank deficient: rank {rank} < {needed}")
        raise NumericalError("crystal system is rank deficient",
                             details={'rank': int(rank), 'needed': needed, 'singular_values': singular.tolist()})
    residual = float(np.linalg.norm(A_real @ c - b_real) / np.linalg.norm(b_real))
    if residual > RESIDUAL_LIMIT:
        logger.error(f"Crystal solve residual {residual:.3g} above {RESIDUAL_LIMIT}")
        raise NumericalError("crystal solve residual above threshold",
                             details={'residual': residual, 'limit': RESIDUAL_LIMIT})

    c = _normalize_c(c)
    logger.info(f"Solved crystal on l_p = {verdict.constrained_diagonal}: c = {np.round(c, 6).tolist()}, "
                f"residual {residual:.3g}")
    return CrystalSolution(c=tuple(float(v) for v in c), sigma=sigma, residual=residual, rank=int(rank),
                           rows=tuple(labels))


def solve_pump(target: TargetState, c, setup: SetupParams, quad: QuadratureConfig = None, sigma=None,
               basis=None, backend=None, w_p=None) -> PumpSpec:
    """
    Pump coefficients a_{l_p} = w / C for a reference target mode on each pumped anti-diagonal,
    C being its amplitude under crystal c with a unit pump weight.

    Reported with unit norm and the coefficient of smallest |l_p| real and positive.
    """
    c = np.asarray(c, dtype=float)
    N = len(c) - 1
    w_p = setup.w_p if w_p is None else w_p
    if basis is None:
        basis = target_basis(target, setup, N, quad, sigma, backend, w_p)
    elif basis.N != N:
        raise DomainValueError(f"basis has N = {basis.N}, crystal has N = {N}", details={'N': N})

    scale = max(float(np.max(np.abs(row))) for row in basis.rows.values()) * float(np.sum(np.abs(c)))
    coefficients = {}
    for ell_p, diag in classify(target).items():
        reference = diag.targets[0]
        baseline = basis.amplitude(*reference.mode, c)
        if abs(baseline) < BASELINE_FLOOR * scale:
            logger.error(f"Baseline amplitude of {reference.mode} vanishes under the solved crystal")
            raise NumericalError(f"baseline amplitude of {reference.mode} vanishes",
                                 details={'mode': list(reference.mode), 'baseline': abs(baseline), 'scale': scale})
        coefficients[ell_p] = reference.weight / baseline

    anchor = coefficients[min(coefficients, key=lambda ell: (abs(ell), ell))]
    norm = np.sqrt(sum(abs(a) ** 2 for a in coefficients.values()))
    rotation = np.conj(anchor) / abs(anchor) / norm
    pump = PumpSpec(terms={ell: a * rotation for ell, a in coefficients.items()}, w_p=w_p)
    logger.info("Solved pump: " + ', '.join(f"a_{ell} = {abs(a):.6g} exp({np.angle(a):.4f} i)"
                                             for ell, a in pump.terms.items()))
    return pump
