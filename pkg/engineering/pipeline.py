import logging

import numpy as np

from amplitudes.spectra import spectrum
from amplitudes.types import OAMWindow, QuadratureConfig
from engineering.classification import classify
from engineering.solver import require_feasible, solve_crystal, solve_pump, target_basis
from engineering.types import EngineeredSource, Feasibility, TargetState
from entanglement.schmidt import is_mes, restrict, schmidt
from phasematching.types import CrystalSpec, SetupParams

logger = logging.getLogger('spdc_lab')


def _diagnostics(target: TargetState, restricted):
    """Per-mode target weight, achieved amplitude and probability residual inside S_{d x d}."""
    rows = []
    for ls, li in restricted.window.modes():
        weight = target.weight(ls, li)
        value = restricted.get(ls, li)
        rows.append({
            'mode': [ls, li],
            'target_prob': abs(weight) ** 2,
            'achieved_prob': abs(value) ** 2,
            'residual': abs(value) ** 2 - abs(weight) ** 2,
            'achieved': value,
        })
    return rows


def pipeline(target: TargetState, setup: SetupParams, quad: QuadratureConfig = None, N=None, sigma=None,
             engineer_crystal=True, window: OAMWindow = None, backend=None, mes_tol=0.01) -> EngineeredSource:
    """
    Feasibility, crystal solve, pump solve, then the full spectrum of the solved source and its
    Schmidt analysis in S_{d x d}.

    engineer_crystal=False keeps the uniform (periodically poled) crystal and solves the pump only;
    unintended modes then stay in the spectrum.
    """
    quad = quad or QuadratureConfig.from_settings()
    window = window or OAMWindow.symmetric(target.half)
    logger.info(f"Engineering target {target.name or target.modes} in S_{target.d}x{target.d} "
                f"({'pump and crystal' if engineer_crystal else 'pump only'})")

    if engineer_crystal:
        verdict = require_feasible(target)
        N = target.half if N is None else int(N)
        basis = target_basis(target, setup, N, quad, sigma, backend)
        solution = solve_crystal(target, setup, N, quad, sigma, basis=basis)
        crystal = CrystalSpec.cosine(solution.c, setup.L, solution.sigma)
        pump = solve_pump(target, solution.c, setup, quad, basis=basis)
    else:
        verdict = Feasibility(feasible=True, reason='pump only')
        solution = None
        crystal = CrystalSpec.periodic(setup.L)
        pump = solve_pump(target, (1.0,), setup, quad, basis=target_basis(target, setup, 0, quad, sigma, backend))

    achieved = spectrum(window, pump, crystal, setup, quad, backend=backend)
    restricted = restrict(achieved, target.d)
    result = schmidt(restricted)
    mes = is_mes(restricted, tol=mes_tol)
    diagnostics = _diagnostics(target, restricted)
    worst = max(abs(row['residual']) for row in diagnostics)
    logger.info(f"Engineered {target.name or 'target'}: K = {result.K:.6f}, is_mes = {mes.is_mes} "
                f"(max deviation {mes.max_deviation:.3g}), max probability residual {worst:.3g}")
    return EngineeredSource(
        target=target,
        pump=pump,
        crystal=crystal,
        crystal_solution=solution,
        feasibility=verdict,
        achieved=achieved,
        restricted=restricted,
        schmidt=result,
        mes=mes,
        diagnostics=diagnostics,
    )


def source_report(source: EngineeredSource):
    """JSON-ready report: per-anti-diagonal classification, pump a[], crystal c[], residuals, Schmidt analysis."""
    pump_terms = [{'ell': ell, 're': a.real, 'im': a.imag, 'abs': abs(a), 'phase': float(np.angle(a))}
                  for ell, a in source.pump.terms.items()]
    solution = source.crystal_solution
    crystal = {'variant': source.crystal.variant, 'L': source.crystal.L}
    if solution is not None:
        crystal.update(c=list(solution.c), ratios=list(solution.ratios), sigma=solution.sigma,
                       residual=solution.residual, rows=list(solution.rows))
    report = {
        'target': source.target.as_payload(),
        'classification': [diag.as_report() for diag in classify(source.target).values()],
        'feasibility': source.feasibility.as_report(),
        'pump': {'w_p': source.pump.w_p, 'a': pump_terms},
        'crystal': crystal,
        'schmidt': source.mes.as_report(),
        'K': source.schmidt.K,
        'is_mes': source.mes.is_mes,
        'diagnostics': source.diagnostics,
    }
    return report
