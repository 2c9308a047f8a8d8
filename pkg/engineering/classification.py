"""
Relative mode numbers and the feasibility rules for combined pump and crystal engineering.

With matched Rayleigh ranges every p = 0 amplitude is a mode-dependent prefactor times a
crystal integral that depends only on N_R. The crystal therefore acts on whole N_R classes
at once while the pump scales whole anti-diagonals.
"""
import logging
from collections import defaultdict

import numpy as np

from engineering.types import Clash, DiagonalClass, Feasibility, ModeClass, TargetState

logger = logging.getLogger('spdc_lab')


def rmn(ell_s, ell_i):
    """N_R = |l_s + l_i| - |l_s| - |l_i|."""
    return abs(ell_s + ell_i) - abs(ell_s) - abs(ell_i)


def diagonal_modes(ell_p, d):
    """Modes of S_{d x d} with l_s + l_i = l_p, ascending in l_s."""
    half = (d - 1) // 2
    return [(ls, ell_p - ls) for ls in range(-half, half + 1) if abs(ell_p - ls) <= half]


def classify(target: TargetState):
    """{l_p: DiagonalClass} for every anti-diagonal that carries a target term."""
    result = {}
    for ell_p in target.pump_orders:
        targets, unintended = [], []
        for ls, li in diagonal_modes(ell_p, target.d):
            weight = target.weight(ls, li)
            entry = ModeClass(ls, li, rmn(ls, li), weight)
            (targets if weight != 0 else unintended).append(entry)
        result[ell_p] = DiagonalClass(ell_p=ell_p, targets=tuple(targets), unintended=tuple(unintended))
    return result


def _clashes(diagonals):
    unintended = sorted((m for diag in diagonals.values() for m in diag.unintended),
                        key=lambda m: (-m.N_R, abs(m.ell_p), m.ell_s))
    targets = sorted((m for diag in diagonals.values() for m in diag.targets),
                     key=lambda m: (abs(m.ell_p), -m.ell_p, m.ell_s))
    return [Clash(u.mode, t.mode, u.N_R) for u in unintended for t in targets if t.N_R == u.N_R]


def _unbalanced_group(diag: DiagonalClass):
    """Target modes of one class that the pump and crystal cannot balance against each other, if any."""
    groups = defaultdict(list)
    for m in diag.targets:
        groups[m.N_R].append(m)
    for N_R, group in sorted(groups.items(), reverse=True):
        if len(group) == 1:
            continue
        exchange_pair = (len(group) == 2 and group[0].mode == group[1].mode[::-1]
                         and np.isclose(group[0].weight, group[1].weight, rtol=0, atol=1e-9))
        if not exchange_pair:
            return group
    return None


def _complex_ratio(diag: DiagonalClass):
    """First target whose weight is not a real multiple of the reference target's weight."""
    reference = diag.targets[0].weight
    for m in diag.targets[1:]:
        ratio = m.weight / reference
        if abs(ratio.imag) > 1e-9 * abs(ratio):
            return m
    return None


def _infeasible(reason, **kwargs):
    logger.info(f"Target infeasible: {reason}")
    return Feasibility(feasible=False, reason=reason, **kwargs)


def feasibility(target: TargetState) -> Feasibility:
    """
    Decide whether pump plus crystal engineering reaches the target without post-selection.

    Rules, checked in order:
      1. no unintended mode on a pumped anti-diagonal shares its N_R class with any target mode;
      2. target modes of a common class on one anti-diagonal must be an exchange pair with equal weights;
      3. at most one anti-diagonal needs per-mode crystal constraints;
      4. on that anti-diagonal the target weights differ by real factors only.
    """
    diagonals = classify(target)
    clashes = _clashes(diagonals)
    if clashes:
        return _infeasible(clashes[0].describe(), clashes=tuple(clashes))

    for diag in diagonals.values():
        group = _unbalanced_group(diag)
        if group:
            modes = ', '.join(str(m.mode) for m in group)
            return _infeasible(f"target modes {modes} share N_R = {group[0].N_R} on l_p = {diag.ell_p} "
                               f"and cannot be balanced")

    constrained = [diag for diag in diagonals.values() if diag.needs_crystal]
    if len(constrained) > 1:
        orders = [diag.ell_p for diag in constrained]
        return _infeasible(f"anti-diagonals l_p = {orders} all need per-mode crystal constraints")

    if not constrained:
        logger.info(f"Target {target.name or target.modes} feasible with pump engineering alone")
        return Feasibility(feasible=True)

    diag = constrained[0]
    odd = _complex_ratio(diag)
    if odd is not None:
        return _infeasible(f"target mode {odd.mode} needs a relative phase on l_p = {diag.ell_p} "
                           f"that real crystal coefficients cannot produce")

    suppressed = sorted({m.N_R for m in diag.unintended}, reverse=True)
    logger.info(f"Target {target.name or target.modes} feasible: crystal constrained on l_p = {diag.ell_p}, "
                f"target classes {diag.target_classes}, suppressed classes {suppressed}")
    return Feasibility(
        feasible=True,
        constrained_diagonal=diag.ell_p,
        target_classes=tuple(diag.target_classes),
        suppressed_classes=tuple(suppressed),
    )
