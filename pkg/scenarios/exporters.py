"""Writers for command output: tables as CSV or JSON, reports as JSON, poling patterns as text."""
import logging
from pathlib import Path

import numpy as np
import pandas as pd

from common.utils import SIGNIFICANT_DIGITS, dump_json
from modes.types import PumpProfile
from phasematching.functions import pmf_table
from phasematching.types import CrystalSpec
from poling.synthesis import GRID_HALF_WIDTH, GRID_SAMPLES
from scenarios.types import CSV

logger = logging.getLogger('spdc_lab')

# pump profile grid: side length in pump waists, samples per side
PROFILE_EXTENT = 6.0
PROFILE_SAMPLES = 128


def _target(directory, name):
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    return directory / name


def write_table(frame, directory, stem, fmt=CSV):
    """DataFrame to <stem>.csv or <stem>.json (list of records)."""
    if fmt == CSV:
        path = _target(directory, f"{stem}.csv")
        frame.to_csv(path, index=False, float_format=f"%.{SIGNIFICANT_DIGITS}g")
    else:
        path = _target(directory, f"{stem}.json")
        path.write_text(dump_json(frame.to_dict(orient='records')))
    logger.info(f"Wrote {len(frame)} rows to {path}")
    return path


def write_report(report, directory, stem):
    path = _target(directory, f"{stem}.json")
    path.write_text(dump_json(report))
    logger.info(f"Wrote report {path}")
    return path


def write_spectrum(matrix, directory, fmt=CSV):
    """Amplitude matrix as a long-form CSV table, or as a JSON report keeping window and normalization."""
    if fmt == CSV:
        return write_table(matrix.table(), directory, 'spectrum', fmt)
    path = write_report(matrix.as_report(), directory, 'spectrum')
    logger.info(f"Wrote {matrix.entries.size} amplitudes to {path}")
    return path


def write_pattern(pattern, directory, stem='poling_pattern'):
    path = _target(directory, f"{stem}.txt")
    path.write_text(pattern.to_text())
    logger.info(f"Wrote {pattern.n_domains}-domain pattern to {path}")
    return path


def pmf_comparison(crystal: CrystalSpec, half_width=GRID_HALF_WIDTH, samples=GRID_SAMPLES):
    """PMF of crystal sampled in dk L / 2, with the periodic-crystal magnitude alongside."""
    grid = np.linspace(-half_width, half_width, int(samples))
    table = pmf_table(crystal, grid)
    table['periodic_abs'] = pmf_table(CrystalSpec.periodic(crystal.L), grid)['abs']
    return table


def profile_table(profile: PumpProfile):
    """Pump field samples in long form: x, y, re, im, intensity, phase."""
    return pd.DataFrame({
        'x': profile.x.ravel(),
        'y': profile.y.ravel(),
        're': profile.field.real.ravel(),
        'im': profile.field.imag.ravel(),
        'intensity': profile.intensity.ravel(),
        'phase': profile.phase.ravel(),
    })
