"""
Singular value decomposition of small dense complex matrices by one-sided Jacobi rotations.

Columns of A V are orthogonalized pairwise until every pair is orthogonal to working
precision; the column norms are then the singular values.
"""
import logging

import numpy as np

from common.exceptions import DomainValueError, NumericalError

logger = logging.getLogger('spdc_lab')

MAX_SWEEPS = 60


def _rotate(M, i, j, c, s, phase):
    """In-place rotation of columns i, j after removing the phase of their overlap from column j."""
    col_i = M[:, i].copy()
    col_j = M[:, j] * np.conj(phase)
    M[:, i] = c * col_i - s * col_j
    M[:, j] = s * col_i + c * col_j


def jacobi_svd(A, eps=None, max_sweeps=MAX_SWEEPS):
    """
    Return (U, s, Vh) with A = U @ diag(s) @ Vh and s descending.

    A column pair counts as orthogonal once |<m_i, m_j>| <= eps |m_i| |m_j|;
    eps defaults to 10 n machine epsilons.

    Left vectors of zero singular values are returned as zero columns.
    """
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2:
        raise DomainValueError("SVD needs a 2-D matrix", details={'shape': list(A.shape)})
    transposed = A.shape[0] < A.shape[1]
    M = A.T.copy() if transposed else A.copy()
    n = M.shape[1]
    V = np.eye(n, dtype=complex)
    eps = 10 * n * np.finfo(float).eps if eps is None else eps
    # columns below this squared norm are numerically zero
    floor = (np.finfo(float).eps * np.linalg.norm(M)) ** 2

    for sweep in range(max_sweeps):
        rotated = False
        for i in range(n - 1):
            for j in range(i + 1, n):
                alpha = np.vdot(M[:, i], M[:, i]).real
                beta = np.vdot(M[:, j], M[:, j]).real
                gamma = np.vdot(M[:, i], M[:, j])
                magnitude = abs(gamma)
                if magnitude == 0 or magnitude <= eps * np.sqrt(alpha * beta) or min(alpha, beta) <= floor:
                    continue
                rotated = True
                phase = gamma / magnitude
                zeta = (beta - alpha) / (2 * magnitude)
                t = (1.0 if zeta >= 0 else -1.0) / (abs(zeta) + np.sqrt(1 + zeta ** 2))
                c = 1 / np.sqrt(1 + t ** 2)
                _rotate(M, i, j, c, c * t, phase)
                _rotate(V, i, j, c, c * t, phase)
        if not rotated:
            logger.debug(f"Jacobi SVD of {A.shape[0]}x{A.shape[1]} converged after {sweep + 1} sweeps")
            break
    else:
        raise NumericalError("Jacobi SVD did not converge", details={'sweeps': max_sweeps})

    s = np.linalg.norm(M, axis=0)
    order = np.argsort(-s, kind='stable')
    s, M, V = s[order], M[:, order], V[:, order]
    U = np.zeros_like(M)
    nonzero = s > 0
    U[:, nonzero] = M[:, nonzero] / s[nonzero]
    if transposed:
        # A^T = U s V^H  =>  A = conj(V) s U^T
        return np.conj(V), s, U.T
    return U, s, V.conj().T
