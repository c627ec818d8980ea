"""Resonator geometry, mirror transmission profiles and the length conditions
under which periodic ("field-crystallization") modes exist.

Lengths may be in any consistent unit; the CLI uses units of the wavelength.
Transverse coordinates are made dimensionless with xi = x * sqrt(k / 2l).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .errors import NoPeriodError

#: Relative tolerance on 2 L lambda / p^2 being an integer.
RESONANCE_RTOL = 1e-9


@dataclass(frozen=True)
class ResonatorConfig:
    """Two plane mirrors at z = +-l; the mirror at z = -l is uniform."""

    half_length: float
    wavelength: float
    beta1: float = 0.0
    aperture_a: Optional[float] = None
    aperture_b: Optional[float] = None

    def __post_init__(self):
        if not (self.half_length > 0 and self.wavelength > 0):
            raise ValueError("half_length and wavelength must be positive")
        if not 0.0 <= self.beta1 < 1.0:
            raise ValueError(f"beta1 must lie in [0, 1), got {self.beta1}")
        kl = self.k * self.half_length
        if kl < 100:
            raise ValueError(f"paraxial regime requires k*l >= 100, got {kl:.3g}")
        if kl < 1e4:
            warnings.warn(f"k*l = {kl:.3g} is below 1e4; paraxial accuracy degrades",
                          stacklevel=2)

    @property
    def length(self) -> float:
        return 2.0 * self.half_length

    @property
    def k(self) -> float:
        return 2.0 * math.pi / self.wavelength

    @property
    def xi_scale(self) -> float:
        """Factor sqrt(k / 2l) converting physical x to dimensionless xi."""
        return math.sqrt(self.k / (2.0 * self.half_length))


@dataclass(frozen=True)
class Uniform:
    beta2: float = 0.0


@dataclass(frozen=True)
class Sinusoidal:
    """T2(xi) = 1 - beta2 (1 + m cos(alpha xi))."""

    beta2: float
    m: float
    period: float

    def __post_init__(self):
        if not 0.0 <= self.beta2 <= 0.5:
            raise ValueError(f"sinusoidal beta2 must lie in [0, 1/2], got {self.beta2}")
        if not 0.0 <= self.m <= 1.0:
            raise ValueError(f"modulation depth m must lie in [0, 1], got {self.m}")
        if not self.period > 0:
            raise ValueError("period must be positive")


@dataclass(frozen=True)
class Stepped:
    """T2 = 1 - beta2 on slots of width ``slot`` centred on multiples of the
    period, 1 - beta2 (1 - gamma) between them."""

    beta2: float
    gamma: float
    period: float
    slot: float

    def __post_init__(self):
        if not 0.0 <= self.beta2 < 1.0:
            raise ValueError(f"stepped beta2 must lie in [0, 1), got {self.beta2}")
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError(f"gamma must lie in [0, 1], got {self.gamma}")
        if not 0.0 < self.slot < self.period:
            raise ValueError("slot width must satisfy 0 < slot < period")

    @property
    def duty(self) -> float:
        return (self.period - self.slot) / self.slot

    @property
    def beta2_bar(self) -> float:
        """Effective loss between slots, beta2 (1 - gamma)."""
        return self.beta2 * (1.0 - self.gamma)


MirrorProfile = Union[Uniform, Sinusoidal, Stepped]


@dataclass(frozen=True)
class DimensionlessGeometry:
    alpha: float
    p_bar: float
    tau_bar: Optional[float] = None
    duty: Optional[float] = None


@dataclass(frozen=True)
class ResonancePair:
    n1: int
    n2: int
    s: float
    parity: str = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "parity", "odd" if (self.n1 + self.n2) % 2 else "even")

    @property
    def total(self) -> int:
        return self.n1 + self.n2

    @property
    def s_signed(self) -> float:
        """Transverse wavenumber with the sign fixed by alpha^2 + 2 alpha s = 2 pi n1."""
        return math.copysign(self.s, self.n1 - self.n2) if self.n1 != self.n2 else 0.0


def dimensionless(config: ResonatorConfig, profile: MirrorProfile) -> DimensionlessGeometry:
    if isinstance(profile, Uniform):
        raise NoPeriodError("no period defined for a uniform mirror")
    scale = config.xi_scale
    p_bar = profile.period * scale
    alpha = 2.0 * math.pi / p_bar
    if isinstance(profile, Stepped):
        return DimensionlessGeometry(alpha, p_bar, profile.slot * scale, profile.duty)
    return DimensionlessGeometry(alpha, p_bar)


def evaluate_T2(profile: MirrorProfile, xi, config: Optional[ResonatorConfig] = None):
    """Amplitude transmission of the periodic mirror at dimensionless ``xi``.

    ``config`` is needed to fix alpha and the dimensionless period.
    """
    xi = np.asarray(xi, dtype=float)
    if isinstance(profile, Uniform):
        return np.full_like(xi, 1.0 - profile.beta2)
    if config is None:
        raise ValueError("evaluate_T2 needs the resonator config for a periodic profile")
    geo = dimensionless(config, profile)
    if isinstance(profile, Sinusoidal):
        return 1.0 - profile.beta2 * (1.0 + profile.m * np.cos(geo.alpha * xi))
    in_slot = slot_mask(xi, geo.p_bar, geo.tau_bar)
    return np.where(in_slot, 1.0 - profile.beta2, 1.0 - profile.beta2 * (1.0 - profile.gamma))


def slot_mask(xi, p_bar: float, tau_bar: float):
    """True where |xi - n p_bar| <= tau_bar / 2 for some integer n."""
    xi = np.asarray(xi, dtype=float)
    offset = xi - p_bar * np.round(xi / p_bar)
    return np.abs(offset) <= 0.5 * tau_bar


def pair_total(config: ResonatorConfig, period: float) -> float:
    """alpha^2 / pi = 2 L lambda / p^2 for the given period."""
    return 2.0 * config.length * config.wavelength / period ** 2


def resonance_order(config: ResonatorConfig, period: float) -> Optional[int]:
    """The integer n1 + n2 if the length is resonant, else None."""
    total = pair_total(config, period)
    nearest = round(total)
    if nearest >= 1 and abs(total - nearest) <= RESONANCE_RTOL * total:
        return int(nearest)
    return None


def transverse_wavenumber(n1: int, n2: int) -> float:
    total = n1 + n2
    if total <= 0:
        raise ValueError("n1 + n2 must be positive")
    return math.sqrt(math.pi * (n1 - n2) ** 2 / (4.0 * total))


def enumerate_resonances(
    config: ResonatorConfig, profile: MirrorProfile, n_max: int
) -> list[ResonancePair]:
    """All pairs (n1, n2), |n1|, |n2| <= n_max, with alpha^2 = pi (n1 + n2)."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if isinstance(profile, Uniform):
        raise NoPeriodError("no period defined for a uniform mirror")
    total = resonance_order(config, profile.period)
    if total is None:
        return []
    pairs = []
    for n1 in range(-n_max, n_max + 1):
        n2 = total - n1
        if abs(n2) <= n_max and n1 > -n2:
            pairs.append(ResonancePair(n1, n2, transverse_wavenumber(n1, n2)))
    return pairs


def is_resonant(config: ResonatorConfig, profile: MirrorProfile, pair: ResonancePair) -> bool:
    if isinstance(profile, Uniform):
        return False
    total = resonance_order(config, profile.period)
    return total is not None and pair.total == total


def admissible_lengths(p: float, wavelength: float, r_max: int):
    """Resonator lengths of the odd (L0 (2r-1)/4) and even (L0 r/2) families,
    with L0 = 2 p^2 / lambda, for r = 1..r_max."""
    if r_max < 1:
        raise ValueError("r_max must be >= 1")
    L0 = 2.0 * p ** 2 / wavelength
    r = np.arange(1, r_max + 1)
    return list(L0 * (2 * r - 1) / 4.0), list(L0 * r / 2.0)
