from dataclasses import dataclass
from math import isclose

import numpy as np

from common.exceptions import ConfigError, DomainValueError
from phasematching.types import CrystalSpec


@dataclass(frozen=True)
class PolingPattern:
    """Orientation (+1/-1) of equal-width domains laid left to right over [-L/2, L/2]."""
    signs: tuple
    domain_width: float
    L: float

    def __post_init__(self):
        signs = tuple(int(s) for s in self.signs)
        if not signs or any(s not in (1, -1) for s in signs):
            raise DomainValueError("poling pattern must be a nonempty sequence of +1/-1", details={'signs': 'invalid'})
        if not self.domain_width > 0 or not isclose(len(signs) * self.domain_width, self.L, rel_tol=1e-9):
            raise DomainValueError("domains must cover the crystal exactly: count * width = L",
                                   details={'count': len(signs), 'domain_width': self.domain_width, 'L': self.L})
        object.__setattr__(self, 'signs', signs)

    @property
    def n_domains(self):
        return len(self.signs)

    @property
    def flips(self):
        """Indices k where domain k differs from domain k - 1."""
        return np.flatnonzero(np.diff(self.signs)) + 1

    def as_crystal(self) -> CrystalSpec:
        return CrystalSpec.poling(self.signs, self.domain_width, self.L)

    def to_text(self):
        header = [f"# domain_width = {self.domain_width!r}", f"# L = {self.L!r}", f"# n_domains = {self.n_domains}"]
        return '\n'.join(header + [f"{s:+d}" for s in self.signs]) + '\n'

    @classmethod
    def from_text(cls, text):
        header, signs = {}, []
        for number, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line:
                continue
            if line.startswith('#'):
                key, _, value = line[1:].partition('=')
                header[key.strip()] = value.strip()
                continue
            if line not in ('+1', '-1', '1'):
                raise ConfigError(f"line {number}: expected +1 or -1, got {line!r}", details={'line': number})
            signs.append(int(line))
        try:
            return cls(signs=tuple(signs), domain_width=float(header['domain_width']), L=float(header['L']))
        except KeyError as exc:
            raise ConfigError(f"pattern header is missing {exc.args[0]}", details={'field': exc.args[0]})
