from dataclasses import dataclass, field
from typing import Mapping

from common.exceptions import DomainValueError


@dataclass(frozen=True)
class LGIndex:
    """Laguerre-Gaussian mode label: radial index p, OAM index ell, waist w (meters)."""
    p: int
    ell: int
    w: float

    def __post_init__(self):
        if int(self.p) != self.p or self.p < 0:
            raise DomainValueError(f"radial index p must be a non-negative integer, got {self.p}",
                                   details={'p': self.p})
        if int(self.ell) != self.ell:
            raise DomainValueError(f"OAM index must be an integer, got {self.ell}", details={'ell': self.ell})
        if not self.w > 0:
            raise DomainValueError(f"beam waist must be positive, got {self.w}", details={'w': self.w})


@dataclass(frozen=True)
class PumpSpec:
    """
    Pump as a superposition of p=0 LG modes sharing the waist w_p.

    terms maps the pump OAM index to its complex weight.
    """
    terms: Mapping[int, complex]
    w_p: float
    _support: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        terms = {int(ell): complex(a) for ell, a in dict(self.terms).items()}
        if not terms or all(a == 0 for a in terms.values()):
            raise DomainValueError("pump needs at least one nonzero coefficient", details={'terms': {}})
        if not self.w_p > 0:
            raise DomainValueError(f"pump waist must be positive, got {self.w_p}", details={'w_p': self.w_p})
        object.__setattr__(self, 'terms', dict(sorted(terms.items())))
        object.__setattr__(self, '_support', tuple(ell for ell, a in self.terms.items() if a != 0))

    @classmethod
    def gaussian(cls, w_p):
        return cls(terms={0: 1.0}, w_p=w_p)

    @property
    def support(self):
        """Pump OAM indices with nonzero weight, ascending."""
        return self._support

    def coefficient(self, ell):
        return self.terms.get(int(ell), 0j)

    def unit(self, ell):
        """Single-term pump with unit weight on ell, same waist."""
        return PumpSpec(terms={int(ell): 1.0}, w_p=self.w_p)

    def as_payload(self):
        return {
            'w_p': self.w_p,
            'terms': [{'ell': ell, 're': a.real, 'im': a.imag} for ell, a in self.terms.items()],
        }

    @classmethod
    def from_payload(cls, payload):
        terms = {int(t['ell']): complex(t['re'], t.get('im', 0.0)) for t in payload['terms']}
        return cls(terms=terms, w_p=float(payload['w_p']))


@dataclass(frozen=True)
class PositionGrid:
    """Square grid centred on the beam axis: full side length extent (meters) and samples per side."""
    extent: float
    samples: int

    def __post_init__(self):
        if not self.extent > 0:
            raise DomainValueError(f"grid extent must be positive, got {self.extent}",
                                   details={'extent': self.extent})
        if int(self.samples) != self.samples or self.samples < 16:
            raise DomainValueError(f"grid needs at least 16 samples per side, got {self.samples}",
                                   details={'samples': self.samples})


@dataclass(frozen=True)
class PumpProfile:
    """Sampled position-space pump at z = 0."""
    x: object
    y: object
    field: object
    intensity: object
    phase: object
