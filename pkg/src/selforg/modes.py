"""Eigen-spectrum of the resonator with a sinusoidal mirror.

The boundary field is expanded in Bloch harmonics exp(i (s + n alpha) xi);
the coefficients satisfy a tridiagonal recurrence whose determinant condition
is solved as det(T + w D) = 0 with w = exp(-i chi_bar). Away from the
resonance manifold alpha^2 +- 2 alpha s = 2 pi n the same spectrum is given by
a series in beta2; on it, the periodic modes have the closed-form spectrum
chi_bar = s^2 - 4 pi j + i ln[(1 - beta1)(1 - beta2)].
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import DegenerateEigenvalueError, InfiniteQError, PerturbationBreakdown
from .numerics import generalized_eigenvalues
from .resonator import (
    ResonancePair,
    ResonatorConfig,
    Sinusoidal,
    Stepped,
    dimensionless,
)

DEFAULT_TRUNCATION = 16
BREAKDOWN_MARGIN = 1e-3
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class BlochSystem:
    s_j: float
    alpha: float
    truncation_N: int
    T: np.ndarray
    D: np.ndarray
    beta1: float
    beta2: float
    half_length: Optional[float] = None
    wavelength: Optional[float] = None

    @property
    def harmonics(self) -> np.ndarray:
        return np.arange(-self.truncation_N, self.truncation_N + 1)


@dataclass(frozen=True)
class Spectrum:
    chi_bar: complex
    j: int = 0
    harmonic: int = 0
    q_prime: Optional[int] = None
    k_complex: Optional[complex] = None
    k_x: Optional[float] = None
    k_z: Optional[complex] = None
    Q: Optional[float] = None
    n1: Optional[int] = None


def bloch_matrices(alpha: float, s: float, beta1: float, beta2: float, m: float, N: int):
    """Tridiagonal T and diagonal D (as a vector) of the harmonic recurrence."""
    if N < 1:
        raise ValueError("truncation_N must be >= 1")
    n = np.arange(-N, N + 1)
    dim = n.size
    c = 0.5 * (1.0 - beta1) * beta2 * m
    T = np.zeros((dim, dim), dtype=complex)
    T[np.arange(dim), np.arange(dim)] = -(1.0 - beta1) * (1.0 - beta2)
    if c != 0.0:
        rows = np.arange(1, dim)
        # coupling of A_n to A_{n-1}
        T[rows, rows - 1] = c * np.exp(1j * (2 * alpha ** 2 * n[rows] - (alpha ** 2 - 2 * alpha * s)))
        rows = np.arange(0, dim - 1)
        # coupling of A_n to A_{n+1}
        T[rows, rows + 1] = c * np.exp(-1j * (2 * alpha ** 2 * n[rows] + (alpha ** 2 + 2 * alpha * s)))
    D = np.exp(1j * (s + n * alpha) ** 2)
    return T, D


def build_bloch(
    profile: Sinusoidal,
    config: ResonatorConfig,
    s_j: float,
    truncation_N: int = DEFAULT_TRUNCATION,
) -> BlochSystem:
    alpha = dimensionless(config, profile).alpha
    T, D = bloch_matrices(alpha, s_j, config.beta1, profile.beta2, profile.m, truncation_N)
    return BlochSystem(s_j, alpha, truncation_N, T, D, config.beta1, profile.beta2,
                       config.half_length, config.wavelength)


def _wrap(x):
    return (x + math.pi) % TWO_PI - math.pi


def _k_fields(chi0: complex, transverse: float, half_length: float, wavelength: float):
    """q', k, k_x, k_z for a j = 0 eigenvalue at the given resonator size."""
    k0 = TWO_PI / wavelength
    q_prime = int(round((4 * half_length * k0 - chi0.real) / TWO_PI))
    k = (chi0 + TWO_PI * q_prime) / (4 * half_length)
    k_x = transverse * math.sqrt(k.real / (2 * half_length))
    k_z = k - transverse ** 2 / (4 * half_length)
    return q_prime, k, k_x, k_z


def _quality(q_prime: Optional[int], chi: complex) -> Optional[float]:
    if q_prime is None:
        return None
    if chi.imag == 0.0:
        return math.inf
    return -math.pi * q_prime / chi.imag


def solve_spectrum(
    sys: BlochSystem,
    branch_j_range: Iterable[int] = (0,),
    retain: Optional[int] = None,
) -> list[Spectrum]:
    """Eigenvalues chi_bar of a Bloch system, replicated over branches j.

    Each eigenvalue is labelled by the harmonic dominating its eigenvector
    and unwrapped onto the branch nearest that harmonic's free phase
    (s + n alpha)^2. Only harmonics with |n| <= ``retain`` (default N // 2)
    are returned; the outermost ones are truncation artefacts.
    """
    if retain is None:
        retain = sys.truncation_N // 2
    w, vecs = generalized_eigenvalues(sys.T, sys.D, return_vectors=True)
    if np.any(np.abs(w) == 0.0):
        raise DegenerateEigenvalueError("degenerate eigenvalue: |w| = 0")
    harmonics = sys.harmonics
    js = list(branch_j_range)
    out = []
    for idx in range(w.size):
        n = int(harmonics[np.argmax(np.abs(vecs[:, idx]))])
        if abs(n) > retain:
            continue
        principal = 1j * np.log(w[idx])
        ref = (sys.s_j + n * sys.alpha) ** 2
        chi0 = complex(ref + _wrap(principal.real - ref), principal.imag)
        transverse = sys.s_j + n * sys.alpha
        if sys.half_length is not None:
            q_prime, k, k_x, k_z = _k_fields(chi0, transverse, sys.half_length, sys.wavelength)
        else:
            q_prime = k = k_x = k_z = None
        for j in js:
            chi = chi0 - 4 * math.pi * j
            out.append(Spectrum(chi, j, n, q_prime, k, k_x, k_z, _quality(q_prime, chi)))
    out.sort(key=lambda sp: (sp.j, sp.harmonic))
    return out


def periodic_spectrum(
    pair: ResonancePair,
    config: ResonatorConfig,
    profile,
    j: int = 0,
    complementary: bool = False,
) -> Spectrum:
    """Closed-form spectrum of a periodic mode.

    For a stepped mirror ``complementary`` selects the modes living between
    the slots, whose loss is beta2 (1 - gamma).
    """
    beta2 = profile.beta2
    if complementary:
        if not isinstance(profile, Stepped):
            raise ValueError("complementary modes exist only for stepped profiles")
        beta2 = profile.beta2_bar
    loss = math.log((1.0 - config.beta1) * (1.0 - beta2))
    chi0 = complex(pair.s ** 2, loss)
    q_prime, k, k_x, k_z = _k_fields(chi0, pair.s, config.half_length, config.wavelength)
    chi = chi0 - 4 * math.pi * j
    return Spectrum(chi, j, 0, q_prime, k, k_x, k_z, _quality(q_prime, chi), pair.n1)


def breakdown_distance(alpha: float, s_j: float) -> float:
    """Distance of alpha^2 +- 2 alpha s from the nearest multiple of 2 pi."""
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    return min(abs(_wrap(alpha ** 2 + 2 * alpha * s_j)), abs(_wrap(alpha ** 2 - 2 * alpha * s_j)))


@dataclass(frozen=True)
class PerturbativeMode:
    """Boundary field f2 = f2^(0) + beta2 f2^(1) + beta2^2 f2^(2).

    ``corrections[o]`` lists (harmonic n, coefficient) pairs of order ``o``;
    for the standing bases the harmonic n multiplies cos/sin((s + n alpha) xi).
    ``mu`` holds the eigenvalue corrections of chi_bar order by order.
    """

    base: str
    s_j: float
    alpha: float
    m: float
    order: int
    corrections: dict = field(default_factory=dict)
    mu: tuple = ()

    @property
    def mu_half_angle(self) -> tuple:
        """Corrections of chi = chi_bar / 2."""
        return tuple(0.5 * v for v in self.mu)

    def chi_bar(self, chi0: complex, beta2: float) -> complex:
        return chi0 + sum(beta2 ** (o + 1) * v for o, v in enumerate(self.mu))

    def evaluate(self, xi, beta2: float):
        xi = np.asarray(xi, dtype=float)
        kernel = {
            "traveling": lambda q: np.exp(1j * q * xi),
            "cos": lambda q: np.cos(q * xi) + 0j,
            "sin": lambda q: np.sin(q * xi) + 0j,
        }[self.base]
        total = kernel(self.s_j)
        for o, terms in self.corrections.items():
            for n, coeff in terms:
                total = total + beta2 ** o * coeff * kernel(self.s_j + n * self.alpha)
        return total


def first_order_coefficients(alpha: float, s_j: float, m: float):
    """A^(1)_{+1}, A^(1)_{-1} = -(m/2) / (1 - exp[-i (alpha^2 +- 2 alpha s)])."""
    a_plus = -0.5 * m / (1.0 - np.exp(-1j * (alpha ** 2 + 2 * alpha * s_j)))
    a_minus = -0.5 * m / (1.0 - np.exp(-1j * (alpha ** 2 - 2 * alpha * s_j)))
    return complex(a_plus), complex(a_minus)


def perturbative_mode(
    profile: Sinusoidal,
    s_j: float,
    alpha: float,
    order: int = 1,
    base: str = "cos",
    breakdown_margin: float = BREAKDOWN_MARGIN,
) -> PerturbativeMode:
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    if base not in ("traveling", "cos", "sin"):
        raise ValueError(f"unknown base {base!r}")
    m = profile.m
    dist = breakdown_distance(alpha, s_j)
    if order == 2:
        dist = min(dist, abs(_wrap(4 * alpha ** 2 + 4 * alpha * s_j)),
                   abs(_wrap(4 * alpha ** 2 - 4 * alpha * s_j)))
    if dist < breakdown_margin:
        raise PerturbationBreakdown(
            f"perturbation invalid near a resonance (distance {dist:.3g} < {breakdown_margin})"
        )
    phi_p = alpha ** 2 + 2 * alpha * s_j
    phi_m = alpha ** 2 - 2 * alpha * s_j
    a1, am1 = first_order_coefficients(alpha, s_j, m)
    corrections = {1: [(1, a1), (-1, am1)]}
    mu = [-1j]
    if order == 2:
        a2 = 0.5 * m * a1 * np.exp(1j * (3 * alpha ** 2 + 2 * alpha * s_j)) / (
            1.0 - np.exp(1j * (4 * alpha ** 2 + 4 * alpha * s_j)))
        am2 = 0.5 * m * am1 * np.exp(1j * (3 * alpha ** 2 - 2 * alpha * s_j)) / (
            1.0 - np.exp(1j * (4 * alpha ** 2 - 4 * alpha * s_j)))
        corrections[2] = [(2, complex(a2)), (-2, complex(am2))]
        S = 1.0 / (1.0 - np.exp(1j * phi_p)) + 1.0 / (1.0 - np.exp(1j * phi_m))
        mu.append(complex(-0.5j - 0.25j * m ** 2 * S))
    return PerturbativeMode(base, s_j, alpha, m, order, corrections, tuple(mu))


def quality_factor(q_prime: int, beta1: float, beta2: float, gamma: Optional[float] = None):
    """(Q, Q_bar) of the periodic modes; Q_bar belongs to the complementary
    stepped-grating modes with loss beta2 (1 - gamma) and equals Q if gamma is
    not given."""
    if q_prime < 1:
        raise ValueError("q' must be >= 1")
    log_main = math.log((1.0 - beta1) * (1.0 - beta2))
    if log_main == 0.0:
        raise InfiniteQError("infinite Q: zero total loss")
    Q = -math.pi * q_prime / log_main
    if gamma is None:
        return Q, Q
    log_bar = math.log((1.0 - beta1) * (1.0 - beta2 + beta2 * gamma))
    if log_bar == 0.0:
        raise InfiniteQError("infinite Q: complementary mode has zero total loss")
    return Q, -math.pi * q_prime / log_bar
