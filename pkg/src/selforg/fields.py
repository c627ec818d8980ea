"""Closed-form fields of the periodic modes.

Near the sinusoidal mirror the periodic-mode field is a comb of delta
functions at xi_n = (2n - 1) pi / (2 alpha), i.e. x_n = p (2n - 1) / 4. Combs
are kept symbolic (positions and weights) and rasterised with a normalised
Gaussian only when sampled. On a stepped mirror the field is confined to the
slots (or, for the complementary family, to the gaps between them).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .errors import NotPeriodicModeError, ParityError
from .modes import periodic_spectrum
from .resonator import (
    ResonancePair,
    ResonatorConfig,
    Sinusoidal,
    Stepped,
    dimensionless,
    is_resonant,
    slot_mask,
)

DEFAULT_VOLUME_TRUNCATION = 32


@dataclass(frozen=True)
class DeltaComb:
    """sum_n prefactor * weights[n] * delta(xi - node_positions[n])."""

    node_index: np.ndarray
    node_positions: np.ndarray
    node_weights: np.ndarray
    prefactor: complex
    xi_scale: float
    regularization_width: float = 0.0
    zeta: float = 0.5

    @property
    def node_x(self) -> np.ndarray:
        return self.node_positions / self.xi_scale

    @property
    def amplitudes(self) -> np.ndarray:
        return self.prefactor * self.node_weights

    def rasterize(self, xi, width: Optional[float] = None) -> np.ndarray:
        w = self.regularization_width if width is None else width
        if not w > 0:
            raise ValueError("rasterising a delta comb needs a positive width")
        xi = np.asarray(xi, dtype=float)
        d = xi[..., None] - self.node_positions
        kernel = np.exp(-0.5 * (d / w) ** 2) / (math.sqrt(2 * math.pi) * w)
        return kernel @ self.amplitudes

    def to_grid(self, xi, width: Optional[float] = None) -> "FieldGrid":
        xi = np.asarray(xi, dtype=float)
        return FieldGrid(xi, np.array([self.zeta]), self.rasterize(xi, width)[None, :],
                         self.xi_scale)


@dataclass(frozen=True)
class FieldGrid:
    xi_grid: np.ndarray
    zeta_grid: np.ndarray
    values: np.ndarray  # shape (len(zeta_grid), len(xi_grid))
    xi_scale: Optional[float] = None

    def records(self):
        for iz, z in enumerate(self.zeta_grid):
            for ix, x in enumerate(self.xi_grid):
                v = complex(self.values[iz, ix])
                yield float(x), float(z), v.real, v.imag, abs(v) ** 2


ShapeFunction = Union[None, Callable, tuple]


def _offset(xi, p_bar):
    """Position relative to the nearest slot centre, in [-p_bar/2, p_bar/2)."""
    return (xi + 0.5 * p_bar) % p_bar - 0.5 * p_bar


@dataclass(frozen=True)
class MaskedField:
    """prefactor * cos(s xi) * shape(offset) on the support, zero elsewhere."""

    s: float
    prefactor: complex
    p_bar: float
    tau_bar: float
    complementary: bool
    shift: float
    xi_scale: float
    shape: ShapeFunction = None
    zeta: float = 0.5

    def support(self, xi) -> np.ndarray:
        in_slot = slot_mask(np.asarray(xi, dtype=float) + self.shift, self.p_bar, self.tau_bar)
        return ~in_slot if self.complementary else in_slot

    def _shape(self, u):
        if self.shape is None:
            return np.ones_like(u)
        if callable(self.shape):
            return np.asarray(self.shape(u), dtype=complex)
        us, vs = self.shape
        return np.interp(u, us, np.real(vs)) + 1j * np.interp(u, us, np.imag(vs))

    def evaluate(self, xi) -> np.ndarray:
        xi = np.asarray(xi, dtype=float)
        on = self.support(xi)
        u = _offset(xi + self.shift, self.p_bar)
        vals = self.prefactor * np.cos(self.s * xi) * self._shape(u)
        return np.where(on, vals, 0.0 + 0.0j)

    def evaluate_x(self, x) -> np.ndarray:
        return self.evaluate(np.asarray(x, dtype=float) * self.xi_scale)

    def support_intervals(self, x_lo: float, x_hi: float):
        """Support as a list of (lo, hi) intervals in physical x within [x_lo, x_hi]."""
        c = self.xi_scale
        p, t = self.p_bar / c, self.tau_bar / c
        shift = self.shift / c
        n_lo = math.floor((x_lo + shift) / p) - 1
        n_hi = math.ceil((x_hi + shift) / p) + 1
        out = []
        for n in range(n_lo, n_hi + 1):
            centre = n * p - shift
            if self.complementary:
                lo, hi = centre + 0.5 * t, centre + p - 0.5 * t
            else:
                lo, hi = centre - 0.5 * t, centre + 0.5 * t
            lo, hi = max(lo, x_lo), min(hi, x_hi)
            if hi > lo:
                out.append((lo, hi))
        return out


def _require_resonant(pair, config, profile):
    if not is_resonant(config, profile, pair):
        raise NotPeriodicModeError(
            f"not a periodic mode: n1 + n2 = {pair.total} does not match 2 L lambda / p^2"
        )


def _q_prime(pair, config, profile, q_prime):
    if q_prime is not None:
        return int(q_prime)
    return periodic_spectrum(pair, config, profile).q_prime


def _node_indices(alpha: float, xi_scale: float, config, n_nodes, offset: float):
    """Indices n with |(2n - 1) pi / (2 alpha) + offset| inside the aperture."""
    if n_nodes is not None:
        return np.arange(-n_nodes + 1, n_nodes + 1)
    if config.aperture_a is None:
        raise ValueError("either n_nodes or an aperture must be given")
    half = config.aperture_a * xi_scale
    step = math.pi / alpha
    lo = math.ceil((-half - offset) / step + 0.5)
    hi = math.floor((half - offset) / step + 0.5)
    return np.arange(lo, hi + 1)


def nearfield_sinusoidal(
    pair: ResonancePair,
    config: ResonatorConfig,
    profile: Sinusoidal,
    C1: complex = 1.0,
    C2: complex = 1.0,
    side: float = 0.5,
    q_prime: Optional[int] = None,
    n_nodes: Optional[int] = None,
    regularization_width: Optional[float] = None,
) -> DeltaComb:
    """Boundary comb of a periodic mode on a sinusoidal mirror.

    Odd n1 + n2 gives equal-weight nodes times cos(s xi_n); even n1 + n2 adds
    the alternating term i (-1)^n C2. On the uniform mirror (``side=-0.5``)
    the odd-case nodes are displaced by a quarter period. The result does not
    depend on the modulation depth m.
    """
    if side not in (0.5, -0.5):
        raise ValueError("side must be +0.5 or -0.5")
    _require_resonant(pair, config, profile)
    geo = dimensionless(config, profile)
    alpha, scale = geo.alpha, config.xi_scale
    qp = _q_prime(pair, config, profile, q_prime)
    offset = math.pi / (2 * alpha) if (side < 0 and pair.parity == "odd") else 0.0
    n = _node_indices(alpha, scale, config, n_nodes, offset)
    xi_n = (2 * n - 1) * math.pi / (2 * alpha) + offset
    b1, b2 = config.beta1, profile.beta2
    prefactor = (math.pi * b2 * (1 - b1) ** 0.25 / (alpha * (1 - b2) ** 0.25)
                 * np.exp(-0.25j * (pair.s ** 2 - 2 * math.pi * qp)))
    envelope = np.cos(pair.s * xi_n)
    if pair.parity == "odd":
        weights = C1 * envelope + 0j
    else:
        weights = (C1 + 1j * (-1.0) ** n * C2) * envelope
    width = geo.p_bar / 50 if regularization_width is None else regularization_width
    return DeltaComb(n, xi_n, np.asarray(weights, dtype=complex), complex(prefactor), scale,
                     width, side)


def boundary_series_even(pair, config, profile, xi, C1=1.0, C2=1.0, n_terms=200,
                         damping: float = 0.0, q_prime=None):
    """Fourier-series form of the even-case boundary field, optionally damped
    by exp(-(K damping)^2 / 2) per harmonic K (a Gaussian smoothing of width
    ``damping``)."""
    geo = dimensionless(config, profile)
    alpha = geo.alpha
    qp = _q_prime(pair, config, profile, q_prime)
    xi = np.asarray(xi, dtype=float)
    b1, b2 = config.beta1, profile.beta2
    pre = b2 * (1 - b1) ** 0.25 / (1 - b2) ** 0.25 * np.exp(-0.25j * (pair.s ** 2 - 2 * math.pi * qp))
    n = np.arange(-n_terms, n_terms + 1)
    K = 2 * n * alpha
    cos_part = ((-1.0) ** n * np.exp(-0.5 * (K * damping) ** 2)) @ np.cos(np.outer(K, xi))
    m = np.arange(1, n_terms + 1)
    K2 = (2 * m - 1) * alpha
    sin_part = ((-1.0) ** (m - 1) * np.exp(-0.5 * (K2 * damping) ** 2)) @ np.sin(np.outer(K2, xi))
    return pre * np.cos(pair.s * xi) * (C1 * cos_part + 2j * C2 * sin_part)


def volume_field(
    pair: ResonancePair,
    config: ResonatorConfig,
    profile: Sinusoidal,
    xi,
    zeta,
    C1: complex = 1.0,
    truncation_N: int = DEFAULT_VOLUME_TRUNCATION,
    j: int = 0,
    q_prime: Optional[int] = None,
    regularization_width: float = 0.0,
) -> FieldGrid:
    """Field inside the resonator for odd n1 + n2 as a truncated harmonic sum.

    Harmonics K_n = s + 2 n alpha, n in [-N, N], with s signed so that
    alpha^2 + 2 alpha s = 2 pi n1. The printed sum does not
    converge pointwise (the field concentrates on delta-like nodes), so a
    positive ``regularization_width`` damps harmonic K by exp(-(K w)^2 / 2),
    which is the sum smoothed by a Gaussian of width w in xi.
    """
    if pair.parity != "odd":
        raise ParityError("volume form given only for odd case (n1 + n2 odd)")
    if truncation_N < 4:
        raise ValueError("truncation_N must be >= 4")
    _require_resonant(pair, config, profile)
    qp = _q_prime(pair, config, profile, q_prime)
    q = qp + 2 * j
    r = (pair.total - 1) // 2
    alpha = dimensionless(config, profile).alpha
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    zeta = np.atleast_1d(np.asarray(zeta, dtype=float))
    b1, b2 = config.beta1, profile.beta2
    log_d = math.log((1 - b1) * (1 - b2))
    ratio = math.sqrt((1 - b1) / (1 - b2))
    n = np.arange(-truncation_N, truncation_N + 1)
    K = pair.s_signed + 2 * n * alpha
    P = 2 * n * pair.n1 + n * (2 * n - 1) * (2 * r + 1)
    amp = C1 * np.exp(-0.25j * K ** 2) * np.exp(-0.5 * (K * regularization_width) ** 2)
    z = zeta[:, None]
    forward = ratio * np.exp(-0.5 * z * log_d) * np.exp(-1j * math.pi * (2 * j - q)) \
        * np.exp(-1j * math.pi * P[None, :] * z)
    backward = (-1.0) ** (q + n)[None, :] * np.exp(0.5 * z * log_d) \
        * np.exp(1j * math.pi * (2 * j - q)) * np.exp(1j * math.pi * P[None, :] * z)
    coeff = amp[None, :] * (forward - backward)          # (nz, nK)
    values = coeff @ np.cos(np.outer(K, xi))           # (nz, nxi)
    return FieldGrid(xi, zeta, values, config.xi_scale)


def midplane_comb(
    pair: ResonancePair,
    config: ResonatorConfig,
    profile: Sinusoidal,
    C: complex = 1.0,
    q_prime: Optional[int] = None,
    n_nodes: Optional[int] = None,
    regularization_width: Optional[float] = None,
    standing: bool = False,
) -> DeltaComb:
    """Comb in the central plane zeta = 0 at xi = pi (2n + 1) / (4 alpha).

    Node weight: [a - e^{i pi q}] - i (-1)^n e^{-i alpha s} [a + e^{i pi q}],
    times exp(i s xi_n - i s^2 / 4), with a = sqrt((1 - beta1) / (1 - beta2))
    (1 / sqrt(1 - beta2) for an ideal uniform mirror). Survives both m -> 0
    and beta2 -> 0.

    This is the exp(+i s xi) wave alone; ``standing=True`` adds its s -> -s
    partner, which is what the cos-based volume field reduces to at zeta = 0.
    """
    if pair.parity != "odd":
        raise ParityError("mid-plane form given only for odd case (n1 + n2 odd)")
    _require_resonant(pair, config, profile)
    geo = dimensionless(config, profile)
    alpha, scale = geo.alpha, config.xi_scale
    q = _q_prime(pair, config, profile, q_prime)
    if n_nodes is not None:
        n = np.arange(-n_nodes, n_nodes)
    else:
        if config.aperture_a is None:
            raise ValueError("either n_nodes or an aperture must be given")
        half = config.aperture_a * scale
        step = math.pi / (2 * alpha)
        n = np.arange(math.ceil((-half / step - 1) / 2), math.floor((half / step - 1) / 2) + 1)
    xi_n = math.pi * (2 * n + 1) / (4 * alpha)
    a = math.sqrt((1.0 - config.beta1) / (1.0 - profile.beta2))
    eq = np.exp(1j * math.pi * q)

    def travelling(s):
        return ((a - eq) - 1j * (-1.0) ** n * np.exp(-1j * alpha * s) * (a + eq)) \
            * np.exp(1j * s * xi_n - 0.25j * s ** 2)

    weights = travelling(pair.s)
    if standing:
        weights = weights + travelling(-pair.s)
    prefactor = C * (math.pi / (2 * alpha))
    width = geo.p_bar / 50 if regularization_width is None else regularization_width
    return DeltaComb(n, xi_n, np.asarray(weights, dtype=complex), complex(prefactor), scale,
                     width, 0.0)


def midplane_field(pair, config, profile, C=1.0, xi=None, **kw) -> FieldGrid:
    comb = midplane_comb(pair, config, profile, C, **kw)
    if xi is None:
        raise ValueError("a xi grid is required")
    return comb.to_grid(xi)


def nearfield_stepped(
    pair: ResonancePair,
    config: ResonatorConfig,
    profile: Stepped,
    g: ShapeFunction = None,
    complementary: bool = False,
    side: float = 0.5,
    A: complex = 1.0,
    q_prime: Optional[int] = None,
) -> MaskedField:
    """Periodic-mode field on a stepped mirror.

    ``complementary=False`` puts the field in the slots (the transmission
    minima); ``True`` gives the complementary family confined between them.
    On the uniform mirror (``side=-0.5``) the pattern is displaced by half a
    period when n1 is odd.
    """
    if side not in (0.5, -0.5):
        raise ValueError("side must be +0.5 or -0.5")
    if not isinstance(profile, Stepped):
        raise TypeError("nearfield_stepped needs a stepped profile")
    if pair.parity != "even":
        raise ParityError("stepped periodic modes exist only for even (n1 + n2)")
    _require_resonant(pair, config, profile)
    geo = dimensionless(config, profile)
    qp = _q_prime(pair, config, profile, q_prime)
    b1 = config.beta1
    b2 = profile.beta2_bar if complementary else profile.beta2
    s = pair.s
    if side > 0:
        prefactor = A * b2 * (1 - b1) ** 0.25 / (1 - b2) ** 0.75 \
            * np.exp(-0.25j * (s ** 2 - 2 * math.pi * qp))
        shift = 0.0
    else:
        prefactor = -A * b1 * np.exp(-0.25j * (s ** 2 + 2 * math.pi * qp)) \
            / ((1 - b1) * (1 - b2)) ** 0.25
        shift = math.pi / geo.alpha if pair.n1 % 2 else 0.0
    return MaskedField(s, complex(prefactor), geo.p_bar, geo.tau_bar, complementary, shift,
                       config.xi_scale, g, side)
