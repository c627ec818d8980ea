"""Trap sites of the periodic modes: the field nodes in 1, 2 or 3 dimensions.

Transverse nodes sit at x_n = p (2n - 1) / 4 (pitch p/2). Along the axis the
node planes repeat every p/2, the first one a quarter period from the mirror.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import No3DModeError, NotPeriodicModeError
from .resonator import (
    RESONANCE_RTOL,
    ResonancePair,
    ResonatorConfig,
    is_resonant,
    transverse_wavenumber,
)


@dataclass(frozen=True)
class TrapLattice:
    nodes: np.ndarray  # (n, 3) physical (x, y, z); unused axes are 0
    pitch_x: float
    pitch_y: Optional[float]
    plane_spacing: Optional[float]
    counts: tuple

    @property
    def size(self) -> int:
        return int(self.nodes.shape[0])


def axis_nodes(half_width: float, p: float) -> np.ndarray:
    """p (2n - 1) / 4 for all n with |x| <= half_width (closed interval)."""
    if not (half_width > 0 and p > 0):
        raise ValueError("half_width and p must be positive")
    n_hi = math.floor(2 * half_width / p + 0.5)
    n = np.arange(1 - n_hi, n_hi + 1)
    x = p * (2 * n - 1) / 4.0
    return x[np.abs(x) <= half_width]


def axial_planes(length: float, p: float, offset: Optional[float] = None) -> np.ndarray:
    offset = p / 4.0 if offset is None else offset
    if length < offset:
        return np.empty(0)
    count = math.floor((length - offset) / (p / 2.0)) + 1
    z = offset + 0.5 * p * np.arange(count)
    return z[z <= length]


def enumerate_nodes(half_x: float, length: float, p_x: float, dims: int = 3,
                    half_y: Optional[float] = None, p_y: Optional[float] = None,
                    z_offset: Optional[float] = None) -> TrapLattice:
    """Node lattice of a box |x| <= half_x, |y| <= half_y, 0 <= z <= length."""
    if dims not in (1, 2, 3):
        raise ValueError("dims must be 1, 2 or 3")
    xs = axis_nodes(half_x, p_x)
    axes = [xs]
    pitch_y = plane = None
    if dims >= 2:
        p_y = p_x if p_y is None else p_y
        half_y = half_x if half_y is None else half_y
        axes.append(axis_nodes(half_y, p_y))
        pitch_y = p_y / 2
    else:
        axes.append(np.zeros(1))
    if dims == 3:
        axes.append(axial_planes(length, min(p_x, p_y), z_offset))
        plane = min(p_x, p_y) / 2
    else:
        axes.append(np.zeros(1))
    grid = np.meshgrid(*axes, indexing="ij")
    nodes = np.stack([g.ravel() for g in grid], axis=1)
    counts = tuple(len(a) for a in axes[:dims])
    return TrapLattice(nodes, p_x / 2, pitch_y, plane, counts)


def node_lattice(config: ResonatorConfig, profile, pair: ResonancePair, dims: int = 3,
                 periods: Optional[tuple] = None, z_offset: Optional[float] = None
                 ) -> TrapLattice:
    """Trap lattice of a resonant configuration; the aperture half-widths are
    ``config.aperture_a`` and ``aperture_b`` (defaulting to ``aperture_a``)."""
    if not is_resonant(config, profile, pair):
        raise NotPeriodicModeError("not a periodic mode: geometry is not resonant")
    if config.aperture_a is None:
        raise ValueError("node_lattice needs the aperture half-width")
    p_x, p_y = periods if periods is not None else (profile.period, profile.period)
    half_y = config.aperture_b if config.aperture_b is not None else config.aperture_a
    return enumerate_nodes(config.aperture_a, config.length, p_x, dims, half_y, p_y, z_offset)


def trap_count_estimate(A_ap: float, L: float, p: float) -> float:
    """8 A^2 L / p^3 with A the full transverse aperture width."""
    if not (A_ap > 0 and L > 0 and p > 0):
        raise ValueError("A_ap, L and p must be positive")
    return 8.0 * A_ap ** 2 * L / p ** 3


@dataclass(frozen=True)
class LengthCheck:
    n: int
    residual: float
    passed: bool


def admissible_length_check(L: float, p: float, wavelength: float) -> LengthCheck:
    """Nearest n in L = (2 p^2 / lambda) n (ties round down) and the residual."""
    if not (L > 0 and p > 0 and wavelength > 0):
        raise ValueError("L, p and wavelength must be positive")
    unit = 2 * p ** 2 / wavelength
    n = int(math.ceil(L / unit - 0.5))
    residual = L - unit * n
    return LengthCheck(n, residual, n >= 1 and abs(residual) / L <= 1e-9)


@dataclass(frozen=True)
class Mode3D:
    q_prime: int
    n1: int
    n2: int
    m1: int
    m2: int
    s_x: float
    s_y: float
    admissible: bool = True


def mode_indices_3d(q_prime: int, n1: int, m1: int, pair_sum: int,
                    p_x: float = 1.0, p_y: Optional[float] = None) -> Mode3D:
    """Indices (q', n1, m1) of a 3D periodic mode on crossed stepped gratings.

    The y-sum is m1 + m2 = (n1 + n2) (p_x / p_y)^2 and both sums must be even.
    """
    p_y = p_x if p_y is None else p_y
    if pair_sum < 1:
        raise ValueError("pair_sum must be positive")
    if pair_sum % 2:
        raise No3DModeError("no 3D periodic mode: n1 + n2 must be even")
    m_sum_real = pair_sum * (p_x / p_y) ** 2
    m_sum = round(m_sum_real)
    if m_sum < 1 or abs(m_sum_real - m_sum) > RESONANCE_RTOL * m_sum_real or m_sum % 2:
        raise No3DModeError(
            f"no 3D periodic mode: m1 + m2 = {m_sum_real:.6g} is not an even integer"
        )
    n2, m2 = pair_sum - n1, m_sum - m1
    return Mode3D(q_prime, n1, n2, m1, m2, transverse_wavenumber(n1, n2),
                  transverse_wavenumber(m1, m2))
