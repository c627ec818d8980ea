"""Far-zone diffraction of the periodic modes.

The Fraunhofer integral is evaluated over the part of the aperture where the
near field is non-zero. Lobe positions and widths are extracted from sampled
patterns and compared with the closed-form sum of shifted sinc^2 terms.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np
from scipy.integrate import quad

from .errors import FraunhoferZoneError
from .fields import DeltaComb, FieldGrid, MaskedField
from .numerics import oscillatory_quadrature, panels_needed
from .resonator import ResonancePair, ResonatorConfig, Stepped

#: Peaks below this fraction of the global maximum are ignored.
PEAK_FLOOR = 1e-3
FRAC_SMALL = 0.1


@dataclass(frozen=True)
class Lobe:
    theta: float
    height: float
    width: Optional[float] = None


@dataclass(frozen=True)
class DiffractionPattern:
    positions: np.ndarray  # x at distance z
    intensity: np.ndarray
    z: float
    normalized: bool = False
    norm_intensity: Optional[np.ndarray] = None
    main_lobes: list = field(default_factory=list)

    @property
    def theta(self) -> np.ndarray:
        return self.positions / self.z


@dataclass(frozen=True)
class FourierCoeffs:
    """b_0 .. b_N of G(x) = sum_n b_n cos(2 pi n x / p)."""

    b: np.ndarray
    duty: Optional[float] = None

    @property
    def b_prime(self) -> np.ndarray:
        """Weights of the ± branches: the constant term counts twice."""
        bp = np.array(self.b, dtype=float)
        bp[0] *= 2.0
        return bp


def _check_zone(aperture_a: float, wavelength: float, z: float):
    rayleigh = aperture_a ** 2 / wavelength
    if z < 10 * rayleigh:
        raise FraunhoferZoneError(
            f"Fraunhofer precondition violated: z = {z:.3g} < 10 a^2/lambda = {10 * rayleigh:.3g}"
        )
    if z < 100 * rayleigh:
        warnings.warn("z < 100 a^2/lambda: Fraunhofer approximation is marginal", stacklevel=3)


Nearfield = Union[DeltaComb, MaskedField, FieldGrid]


def fraunhofer_amplitude(nearfield: Nearfield, aperture_a: float, wavelength: float,
                         z: float, x_grid, panel_factor: int = 2) -> np.ndarray:
    """Far-zone amplitude F(x, z) on ``x_grid`` (complex)."""
    _check_zone(aperture_a, wavelength, z)
    x = np.asarray(x_grid, dtype=float)
    kappa = 2 * math.pi * x / (wavelength * z)
    if isinstance(nearfield, DeltaComb):
        xn = nearfield.node_x
        keep = np.abs(xn) <= aperture_a
        # delta(xi - xi_n) = delta(x - x_n) / scale
        amp = nearfield.amplitudes[keep] / nearfield.xi_scale
        integral = np.exp(-1j * np.outer(kappa, xn[keep])) @ amp
    elif isinstance(nearfield, MaskedField):
        integral = np.zeros(x.shape, dtype=complex)
        for lo, hi in nearfield.support_intervals(-aperture_a, aperture_a):
            n = panel_factor * panels_needed(lo, hi, kappa)
            integral = integral + oscillatory_quadrature(nearfield.evaluate_x, lo, hi, kappa, n)
    elif isinstance(nearfield, FieldGrid):
        xs = nearfield.xi_grid / _grid_scale(nearfield)
        vals = nearfield.values[-1]

        def g(t):
            return np.interp(t, xs, vals.real) + 1j * np.interp(t, xs, vals.imag)

        lo, hi = max(-aperture_a, xs[0]), min(aperture_a, xs[-1])
        n = panel_factor * max(panels_needed(lo, hi, kappa), xs.size)
        integral = oscillatory_quadrature(g, lo, hi, kappa, n)
    else:
        raise TypeError(f"unsupported near field {type(nearfield).__name__}")
    phase = np.exp(1j * 2 * math.pi * z / wavelength) * np.exp(1j * math.pi * x ** 2 / (wavelength * z))
    return -1j / (wavelength * z) * phase * integral


def _grid_scale(grid: FieldGrid) -> float:
    if grid.xi_scale is None:
        raise ValueError("FieldGrid far field needs grid.xi_scale")
    return grid.xi_scale


def fraunhofer(nearfield: Nearfield, aperture_a: float, wavelength: float, z: float,
               x_grid, find_lobes: bool = True) -> DiffractionPattern:
    """|F|^2 of the far-zone field."""
    F = fraunhofer_amplitude(nearfield, aperture_a, wavelength, z, x_grid)
    x = np.asarray(x_grid, dtype=float)
    intensity = np.abs(F) ** 2
    lobes = extract_lobes(x / z, intensity) if find_lobes else []
    return DiffractionPattern(x, intensity, z, False, None, lobes)


def closed_form_scale(config: ResonatorConfig, profile: Stepped, A_amp: complex, z: float,
                      complementary: bool = True) -> float:
    """Intensity factor multiplying sum b_n'^2 {...}: |P|^2 a^2 / (4 lambda^2 z^2)."""
    b1 = config.beta1
    b2 = profile.beta2_bar if complementary else profile.beta2
    P2 = abs(A_amp) ** 2 * b2 ** 2 * (1 - b1) ** 0.5 / (1 - b2) ** 1.5
    return P2 * config.aperture_a ** 2 / (4 * config.wavelength ** 2 * z ** 2)


def lobe_angles(pair: ResonancePair, config: ResonatorConfig, period: float, orders,
                sinusoidal: bool = False):
    """theta_n for the + and - branches. The sinusoidal grating uses 4 pi n / p."""
    n = np.asarray(orders, dtype=float)
    lam, l = config.wavelength, config.half_length
    shift = pair.s * math.sqrt(math.pi / (lam * l))
    step = (4 if sinusoidal else 2) * math.pi / period
    return (step * n + shift) * lam / (2 * math.pi), (step * n - shift) * lam / (2 * math.pi)


def intensity_closed_form(
    pair: ResonancePair,
    config: ResonatorConfig,
    profile: Stepped,
    coeffs: FourierCoeffs,
    A_amp: complex,
    z: float,
    x_grid,
    find_lobes: bool = True,
) -> DiffractionPattern:
    """Incoherent sum of shifted sinc^2 lobes for the complementary stepped mode.

    ``norm_intensity`` is scaled so that the peak of order n equals b_n'^2
    (4 b_n'^2 when s = 0, where both branches land on the same angle).
    """
    a = config.aperture_a
    if a is None:
        raise ValueError("closed form needs the aperture half-width")
    if profile.period / a > 0.1:
        warnings.warn("p/a > 0.1: closed form degrades", stacklevel=2)
    x = np.asarray(x_grid, dtype=float)
    lam, l, p = config.wavelength, config.half_length, profile.period
    shift = pair.s * math.sqrt(math.pi / (lam * l))
    kappa = 2 * math.pi * x / (lam * z)
    bp = coeffs.b_prime
    N = bp.size - 1
    n = np.arange(-N, N + 1)
    w = bp[np.abs(n)] ** 2
    u_plus = (shift - kappa[:, None] + 2 * math.pi * n[None, :] / p) * a / math.pi
    u_minus = (-shift - kappa[:, None] + 2 * math.pi * n[None, :] / p) * a / math.pi
    sum_ = (np.sinc(u_plus) ** 2 + np.sinc(u_minus) ** 2) @ w
    if pair.s == 0:
        # the branches coincide and add coherently
        sum_ = 2.0 * sum_
    scale = closed_form_scale(config, profile, A_amp, z)
    intensity = scale * sum_
    lobes = extract_lobes(x / z, intensity) if find_lobes else []
    return DiffractionPattern(x, intensity, z, True, sum_, lobes)


def fourier_coeffs_uniform(sigma: float, N: int) -> FourierCoeffs:
    """b_0 = sigma/(1+sigma), b_n = 2/(1+sigma) sinc(n/(1+sigma))."""
    if not sigma > 0:
        raise ValueError("duty sigma must be positive")
    if N < 0:
        raise ValueError("N must be >= 0")
    n = np.arange(N + 1)
    b = 2.0 / (1 + sigma) * np.sinc(n / (1 + sigma))
    b[0] = sigma / (1 + sigma)
    return FourierCoeffs(b, sigma)


def fourier_coeffs_numeric(sigma: float, N: int, support: str = "slot") -> FourierCoeffs:
    """Cosine coefficients of the slot (or complement) indicator on one
    period of unit length, by adaptive quadrature."""
    if support not in ("slot", "complement"):
        raise ValueError("support must be 'slot' or 'complement'")
    tau = 1.0 / (1 + sigma)
    out = np.empty(N + 1)
    for n in range(N + 1):
        f = (lambda x, n=n: math.cos(2 * math.pi * n * x))
        if support == "slot":
            val = quad(f, -tau / 2, tau / 2, limit=200, epsabs=1e-14, epsrel=1e-13)[0]
        else:
            val = quad(f, tau / 2, 1 - tau / 2, limit=200, epsabs=1e-14, epsrel=1e-13)[0]
        out[n] = val if n == 0 else 2 * val
    return FourierCoeffs(out, sigma)


def parseval_power(coeffs: FourierCoeffs) -> float:
    b = np.asarray(coeffs.b)
    return float(b[0] ** 2 + 0.5 * np.sum(b[1:] ** 2))


def lobe_count(sigma: float, frac_small: float = FRAC_SMALL) -> int:
    """Number of lobes singled out by the b_n^2 envelope."""
    if not sigma > 0:
        raise ValueError("duty sigma must be positive")
    v = 1.0 + 1.0 / sigma
    whole = math.floor(v)
    if v - whole < frac_small:
        return 2 * whole - 1
    return 2 * whole + 1


def _quad_vertex(y0, y1, y2):
    denom = y0 - 2 * y1 + y2
    if denom == 0:
        return 0.0, y1
    d = 0.5 * (y0 - y2) / denom
    return d, y1 - 0.25 * (y0 - y2) * d


def extract_lobes(theta, intensity, floor: float = PEAK_FLOOR, main_only: bool = True) -> list:
    """Local maxima above ``floor`` of the global maximum, refined by a
    parabola through three samples. Width is the distance between the
    neighbouring minima. With ``main_only`` the sinc^2 side lobes (half the
    width of a main lobe) are dropped."""
    t = np.asarray(theta, dtype=float)
    y = np.asarray(intensity, dtype=float)
    if y.size < 3 or not np.any(y > 0):
        return []
    h = t[1] - t[0]
    top = y.max()
    interior = np.arange(1, y.size - 1)
    is_max = (y[interior] >= y[interior - 1]) & (y[interior] > y[interior + 1]) & (y[interior] >= floor * top)
    is_min = (y[interior] <= y[interior - 1]) & (y[interior] < y[interior + 1])
    minima = interior[is_min]
    refined_min = np.array([t[i] + h * _quad_vertex(y[i - 1], y[i], y[i + 1])[0] for i in minima])
    lobes = []
    for i in interior[is_max]:
        d, peak = _quad_vertex(y[i - 1], y[i], y[i + 1])
        left = refined_min[minima < i]
        right = refined_min[minima > i]
        width = float(right[0] - left[-1]) if left.size and right.size else None
        lobes.append(Lobe(float(t[i] + h * d), float(peak), width))
    widths = [lb.width for lb in lobes if lb.width is not None]
    if main_only and widths:
        cut = 0.75 * max(widths)
        lobes = [lb for lb in lobes if lb.width is not None and lb.width >= cut]
    return lobes


def lobe_table(pair: ResonancePair, config: ResonatorConfig, profile: Stepped,
               frac_small: float = FRAC_SMALL):
    """Rows (n, branch, theta, b_n'^2) for |n| <= (n* - 1)/2."""
    n_star = lobe_count(profile.duty, frac_small)
    half = (n_star - 1) // 2
    bp = fourier_coeffs_uniform(profile.duty, half).b_prime
    orders = np.arange(-half, half + 1)
    plus, minus = lobe_angles(pair, config, profile.period, orders)
    rows = []
    for n, tp, tm in zip(orders, plus, minus):
        height = float(bp[abs(int(n))] ** 2)
        if pair.s == 0:
            rows.append((int(n), "0", float(tp), height))
        else:
            rows.append((int(n), "+", float(tp), height))
            rows.append((int(n), "-", float(tm), height))
    return n_star, rows
