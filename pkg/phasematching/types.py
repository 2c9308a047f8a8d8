from dataclasses import dataclass
from math import isclose, pi, sqrt
from typing import Optional

from common.exceptions import DomainValueError

IDEALIZED = 'idealized'
EXPERIMENTAL = 'experimental'
SETUP_MODES = (IDEALIZED, EXPERIMENTAL)

DEFAULT_REFRACTIVE_INDEX = 1.8


@dataclass(frozen=True)
class SetupParams:
    """
    Physical scenario: pump wavelength, in-crystal wavenumbers (rad/m), waists and crystal length (m).

    Build it with SetupParams.idealized or SetupParams.experimental rather than directly.
    """
    lambda_p: float
    k_p: float
    k_s: float
    k_i: float
    w_p: float
    w_s: float
    w_i: float
    L: float
    mode: str = EXPERIMENTAL

    def __post_init__(self):
        for name in ('lambda_p', 'k_p', 'k_s', 'k_i', 'w_p', 'w_s', 'w_i', 'L'):
            value = getattr(self, name)
            if not value > 0:
                raise DomainValueError(f"{name} must be positive, got {value}", details={name: value})
        if self.mode not in SETUP_MODES:
            raise DomainValueError(f"unknown setup mode {self.mode!r}", details={'mode': self.mode})
        if self.mode == IDEALIZED:
            consistent = (
                isclose(self.k_p, self.L / self.w_p ** 2, rel_tol=1e-12)
                and isclose(self.w_s, sqrt(2) * self.w_p, rel_tol=1e-12)
                and isclose(self.w_i, sqrt(2) * self.w_p, rel_tol=1e-12)
                and self.is_degenerate
            )
            if not consistent:
                raise DomainValueError("idealized setup requires k_p = L/w_p^2, k_s = k_i = k_p/2 "
                                       "and w_s = w_i = sqrt(2) w_p", details={'mode': self.mode})

    @classmethod
    def idealized(cls, w_p, L, lambda_p=405e-9):
        """Equal Rayleigh lengths for pump, signal and idler in degenerate SPDC."""
        k_p = L / w_p ** 2
        return cls(lambda_p=lambda_p, k_p=k_p, k_s=k_p / 2, k_i=k_p / 2,
                   w_p=w_p, w_s=sqrt(2) * w_p, w_i=sqrt(2) * w_p, L=L, mode=IDEALIZED)

    @classmethod
    def experimental(cls, lambda_p, w_p, w_s, w_i, L, refractive_index=DEFAULT_REFRACTIVE_INDEX,
                     k_p: Optional[float] = None, k_s: Optional[float] = None, k_i: Optional[float] = None):
        if k_p is None:
            k_p = 2 * pi * refractive_index / lambda_p
        return cls(lambda_p=lambda_p, k_p=k_p,
                   k_s=k_p / 2 if k_s is None else k_s,
                   k_i=k_p / 2 if k_i is None else k_i,
                   w_p=w_p, w_s=w_s, w_i=w_i, L=L, mode=EXPERIMENTAL)

    @property
    def is_degenerate(self):
        return isclose(self.k_s, self.k_i, rel_tol=1e-12) and isclose(self.k_s, self.k_p / 2, rel_tol=1e-12)

    @property
    def has_matched_rayleigh_ranges(self):
        """w_s = w_i = sqrt(2) w_p and k_s = k_i = k_p/2: pump, signal and idler share one Rayleigh range."""
        return (self.is_degenerate
                and isclose(self.w_s, sqrt(2) * self.w_p, rel_tol=1e-9)
                and isclose(self.w_i, sqrt(2) * self.w_p, rel_tol=1e-9))

    @property
    def min_waist(self):
        return min(self.w_p, self.w_s, self.w_i)

    def as_payload(self):
        return {name: getattr(self, name) for name in
                ('lambda_p', 'k_p', 'k_s', 'k_i', 'w_p', 'w_s', 'w_i', 'L', 'mode')}

    @classmethod
    def from_payload(cls, payload):
        return cls(**payload)


PERIODIC = 'periodic'
COSINE = 'cosine'
POLING = 'poling'


@dataclass(frozen=True)
class CrystalSpec:
    """
    Nonlinearity envelope chi(z) on [-L/2, L/2].

    variant 'periodic'  chi = 1 (sinc PMF of a periodically poled crystal)
    variant 'cosine'    chi = sum_n c_n cos(n z / sigma)
    variant 'poling'    chi = +-1 per domain of equal width
    """
    variant: str
    L: float
    c: tuple = ()
    sigma: Optional[float] = None
    signs: tuple = ()
    domain_width: Optional[float] = None

    def __post_init__(self):
        if not self.L > 0:
            raise DomainValueError(f"crystal length must be positive, got {self.L}", details={'L': self.L})
        if self.variant == COSINE:
            if not self.c:
                raise DomainValueError("cosine series needs at least c_0", details={'c': []})
            object.__setattr__(self, 'c', tuple(float(v) for v in self.c))
            sigma = self.L / 4 if self.sigma is None else self.sigma
            if not sigma > 0:
                raise DomainValueError(f"sigma must be positive, got {sigma}", details={'sigma': sigma})
            object.__setattr__(self, 'sigma', float(sigma))
        elif self.variant == POLING:
            signs = tuple(int(s) for s in self.signs)
            if not signs or any(s not in (1, -1) for s in signs):
                raise DomainValueError("poling pattern must be a nonempty sequence of +1/-1",
                                       details={'signs': 'invalid'})
            if self.domain_width is None or not isclose(len(signs) * self.domain_width, self.L, rel_tol=1e-9):
                raise DomainValueError("poling domains must cover the crystal exactly: count * width = L",
                                       details={'domain_width': self.domain_width, 'count': len(signs)})
            object.__setattr__(self, 'signs', signs)
        elif self.variant != PERIODIC:
            raise DomainValueError(f"unknown crystal variant {self.variant!r}", details={'variant': self.variant})

    @classmethod
    def periodic(cls, L):
        return cls(variant=PERIODIC, L=L)

    @classmethod
    def cosine(cls, c, L, sigma=None):
        return cls(variant=COSINE, L=L, c=tuple(c), sigma=sigma)

    @classmethod
    def poling(cls, signs, domain_width, L):
        return cls(variant=POLING, L=L, signs=tuple(signs), domain_width=domain_width)

    def as_payload(self):
        payload = {'variant': self.variant, 'L': self.L}
        if self.variant == COSINE:
            payload.update(c=list(self.c), sigma=self.sigma)
        elif self.variant == POLING:
            payload.update(signs=list(self.signs), domain_width=self.domain_width)
        return payload

    @classmethod
    def from_payload(cls, payload):
        payload = dict(payload)
        for key in ('c', 'signs'):
            if key in payload:
                payload[key] = tuple(payload[key])
        return cls(**payload)
