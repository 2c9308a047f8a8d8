"""
Schmidt analysis of biphoton amplitude matrices restricted to S_{d x d}.

The coefficient matrix of a pure bipartite state is its amplitude matrix, so the
Schmidt coefficients are its singular values after renormalization.
"""
import logging

import numpy as np

from amplitudes.types import UNIT_TOTAL, AmplitudeMatrix, OAMWindow
from common.exceptions import DomainValueError, NumericalError
from entanglement.svd import jacobi_svd
from entanglement.types import MesReport, SchmidtResult

logger = logging.getLogger('spdc_lab')

RANK_TOL = 1e-6
MES_TOL = 0.01


def restrict(matrix: AmplitudeMatrix, d) -> AmplitudeMatrix:
    """Sub-block over l in [-(d-1)/2, (d-1)/2], renormalized to unit total probability."""
    if int(d) != d or d < 3 or d % 2 == 0:
        raise DomainValueError(f"subspace dimension must be odd and >= 3, got {d}", details={'d': d})
    half = (int(d) - 1) // 2
    window = matrix.window
    if not (window.contains(-half) and window.contains(half)):
        raise DomainValueError(f"window [{window.ell_min}, {window.ell_max}] does not cover S_{d}x{d}",
                               details={'d': d, 'ell_min': window.ell_min, 'ell_max': window.ell_max})
    lo = -half - window.ell_min
    block = matrix.entries[lo:lo + d, lo:lo + d]
    if not np.any(block):
        raise NumericalError(f"spectrum vanishes inside S_{d}x{d}", details={'d': d})
    sub = AmplitudeMatrix(OAMWindow.symmetric(half), block)
    return sub.normalized()


def _coefficients(matrix):
    entries = matrix.entries if isinstance(matrix, AmplitudeMatrix) else np.asarray(matrix, dtype=complex)
    if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
        raise DomainValueError("Schmidt analysis needs a square matrix", details={'shape': list(entries.shape)})
    norm = np.linalg.norm(entries)
    if norm == 0:
        raise DomainValueError("zero matrix has no Schmidt decomposition", details={'shape': list(entries.shape)})
    if not (isinstance(matrix, AmplitudeMatrix) and matrix.normalization == UNIT_TOTAL):
        entries = entries / norm
    return entries


def schmidt(matrix, rank_tol=RANK_TOL) -> SchmidtResult:
    """
    Schmidt coefficients, K = 1 / sum(lambda^4) and the count of lambda above rank_tol * lambda_max.

    matrix is an AmplitudeMatrix or a square array; it is renormalized before the SVD.
    """
    _, s, _ = jacobi_svd(_coefficients(matrix))
    lambdas = s / np.linalg.norm(s)
    K = 1.0 / float(np.sum(lambdas ** 4))
    r = int(np.count_nonzero(lambdas > rank_tol * lambdas[0]))
    logger.info(f"Schmidt decomposition of {len(lambdas)}x{len(lambdas)} matrix: K={K:.6f}, r={r}")
    return SchmidtResult(lambdas=tuple(float(v) for v in lambdas), K=K, r=r)


def is_mes(matrix, tol=MES_TOL, rank_tol=RANK_TOL) -> MesReport:
    """Maximally entangled in S_{d x d} iff every lambda_k is within tol of 1/sqrt(d)."""
    result = schmidt(matrix, rank_tol)
    deviations = tuple(float(v) - 1 / np.sqrt(result.d) for v in result.lambdas)
    verdict = bool(max(abs(v) for v in deviations) <= tol)
    return MesReport(is_mes=verdict, deviations=deviations, tol=tol, schmidt=result)


def schmidt_report(matrix, tol=MES_TOL, rank_tol=RANK_TOL):
    """JSON-ready {lambdas, K, r, is_mes, deviations, max_deviation, tol}."""
    return is_mes(matrix, tol, rank_tol).as_report()
