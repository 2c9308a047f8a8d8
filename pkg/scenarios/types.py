from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from amplitudes.types import OAMWindow, QuadratureConfig
from engineering.types import TargetState
from modes.types import PumpSpec
from phasematching.types import COSINE, POLING, CrystalSpec, SetupParams

CSV = 'csv'
JSON = 'json'
OUTPUT_FORMATS = (CSV, JSON)


@dataclass(frozen=True)
class ScenarioConfig:
    """Everything one command run needs, parsed and validated."""
    setup: SetupParams
    pump: PumpSpec
    crystal: CrystalSpec
    window: OAMWindow
    quad: QuadratureConfig
    d: int = 3
    output_dir: Path = Path('output')
    output_format: str = CSV
    target: Optional[TargetState] = None
    N: Optional[int] = None
    engineer_crystal: bool = True
    n_domains: int = 2000

    def as_payload(self):
        """Scenario document that parses back to this exact configuration."""
        crystal = {'variant': self.crystal.variant}
        if self.crystal.variant == COSINE:
            crystal.update(c=list(self.crystal.c), sigma=self.crystal.sigma)
        elif self.crystal.variant == POLING:
            crystal.update(signs=list(self.crystal.signs), domain_width=self.crystal.domain_width)
        setup = self.setup.as_payload()
        if setup['mode'] == 'idealized':
            setup = {key: setup[key] for key in ('mode', 'lambda_p', 'w_p', 'L')}
        payload = {
            'setup': setup,
            'pump': self.pump.as_payload(),
            'crystal': crystal,
            'window': {'ell_min': self.window.ell_min, 'ell_max': self.window.ell_max},
            'quadrature': self.quad.as_payload(),
            'd': self.d,
            'output': {'directory': str(self.output_dir), 'format': self.output_format},
            'engineering': {'engineer_crystal': self.engineer_crystal},
            'poling': {'n_domains': self.n_domains},
        }
        if self.N is not None:
            payload['engineering']['N'] = self.N
        if self.target is not None:
            payload['target'] = self.target.as_payload()
        return payload
