"""Mean-field thermodynamics of photon condensation.

Three models, all with k_B = 1 and temperatures in energy units:

* Dicke two-level emitters coupled to one resonator mode;
* an order-disorder ferroelectric (tunnelling pseudospins) coupled to the mode;
* a displacement ferroelectric (two-band electrons, an optical phonon and the
  photon mode).

Each reduces to a gap equation x u = tanh(b u) for u >= 1, which has a root
u > 1 exactly when x < 1 and x < tanh(b). The bracket [1, 1/x] always
contains it.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from .errors import ConvergenceError, SelforgError
from .numerics import find_root_bracketed

HBAR_CGS = 1.054571817e-27  # erg s
E_CGS = 4.80320471e-10  # esu
SMALLNESS_WARN = 0.1
BISECTION_RTOL = 1e-8


def _log2cosh(x):
    x = np.abs(x)
    return x + np.log1p(np.exp(-2.0 * x))


@dataclass(frozen=True)
class DickeParams:
    epsilon: float
    lam: float
    hbar_omega: Optional[float] = None  # defaults to resonance with epsilon

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if self.lam < 0:
            raise ValueError("lambda must be >= 0")
        if self.hbar_omega is not None and not self.hbar_omega > 0:
            raise ValueError("hbar_omega must be positive")

    @property
    def omega(self) -> float:
        return self.epsilon if self.hbar_omega is None else self.hbar_omega

    @property
    def ratio(self) -> float:
        """epsilon hbar_omega / lambda^2; condensation needs ratio < 1."""
        return math.inf if self.lam == 0 else self.epsilon * self.omega / self.lam ** 2


@dataclass(frozen=True)
class OrderDisorderParams:
    hbar_Omega: float
    J0: float
    lam: float
    hbar_omega: float

    def __post_init__(self):
        if not self.hbar_Omega > 0:
            raise ValueError("hbar_Omega must be positive")
        if self.J0 < 0 or self.lam < 0:
            raise ValueError("J0 and lambda must be >= 0")
        if not self.hbar_omega > 0:
            raise ValueError("hbar_omega must be positive")

    @property
    def J_tilde(self) -> float:
        return self.J0 + 2 * self.lam ** 2 / self.hbar_omega

    @property
    def ratio(self) -> float:
        """2 hbar_Omega / J_tilde; condensation needs ratio < 1."""
        return math.inf if self.J_tilde == 0 else 2 * self.hbar_Omega / self.J_tilde


@dataclass(frozen=True)
class DisplacementParams:
    epsilon: float
    hbar_Omega0: float
    hbar_omega_q: float
    lambda1: float
    lambda2: float
    gamma_c: float = 0.0

    def __post_init__(self):
        for name in ("epsilon", "hbar_Omega0", "hbar_omega_q"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.lambda1 == 0 or self.lambda2 == 0:
            raise ValueError("lambda1 and lambda2 must be non-zero")
        if self.gamma_c < 0:
            raise ValueError("|gamma| must be >= 0")

    @property
    def delta1(self) -> float:
        return self.epsilon * self.hbar_Omega0 / self.lambda1 ** 2

    @property
    def delta2(self) -> float:
        return self.epsilon * self.hbar_omega_q / self.lambda2 ** 2

    @property
    def chi(self) -> float:
        return self.epsilon * self.gamma_c / abs(self.lambda1 * self.lambda2)

    @property
    def ratio(self) -> float:
        """(1/delta1 + 1/delta2)^-1; condensation needs ratio < 1."""
        return 1.0 / (1.0 / self.delta1 + 1.0 / self.delta2)

    @property
    def phi(self) -> float:
        """Relative phase aligning the y1 y2 term under the square root."""
        return 0.0 if self.lambda1 * self.lambda2 > 0 else math.pi

    def smallness(self) -> dict:
        c = self.chi
        return {"chi": c, "chi2_d1d2": c ** 2 / (self.delta1 * self.delta2),
                "chi2_d1sq": c ** 2 / self.delta1 ** 2}


Model = Union[DickeParams, OrderDisorderParams, DisplacementParams]


@dataclass(frozen=True)
class PhasePoint:
    """One temperature. ``y2`` is y^2 (y1^2, phonons, for the displacement
    model); ``s_or_y2b`` is the pseudospin polarisation s, the Dicke
    coherence, or the photon number y2^2 respectively."""

    T: float
    y2: float
    s_or_y2b: float
    phi: float
    free_energy: float
    ordered: bool
    u: float = 1.0
    sign: int = 1


@dataclass(frozen=True)
class PhaseCurve:
    T_grid: np.ndarray
    points: list
    T_c: Optional[float]
    exponent_fit: Optional[float] = None
    fit_r2: Optional[float] = None

    @property
    def y2(self) -> np.ndarray:
        return np.array([pt.y2 for pt in self.points])


def _gap_root(x: float, b: float) -> float:
    """u > 1 with x u = tanh(b u), or 1.0 if only the trivial branch exists."""
    if not x < 1.0 or not math.tanh(b) > x:
        return 1.0
    g = lambda u: math.tanh(b * u) - x * u
    hi = 1.0 / x
    try:
        res = find_root_bracketed(g, 1.0, hi, tol=1e-15)
    except SelforgError as exc:
        raise ConvergenceError(f"solver failure: gap equation bracket [1, {hi:.6g}]: {exc}") from exc
    return res.root


def gap_residual(x: float, b: float, u: float) -> float:
    return x * u - math.tanh(b * u)


def _artanh_tc(scale: float, ratio: float, divisor: float) -> Optional[float]:
    if not 0.0 < ratio < 1.0:
        return None
    return scale / (divisor * math.atanh(ratio))


# -- Dicke -------------------------------------------------------------------

def dicke_critical_temperature(p: DickeParams) -> Optional[float]:
    """epsilon / (2 artanh(epsilon hbar_omega / lambda^2)); None without strong coupling."""
    return _artanh_tc(p.epsilon, p.ratio, 2.0)


def dicke_free_energy(p: DickeParams, y, T: float):
    y = np.asarray(y, dtype=float)
    E = np.sqrt(p.epsilon ** 2 + 4 * p.lam ** 2 * y ** 2)
    return p.omega * y ** 2 - T * _log2cosh(E / (2 * T))


def dicke_solve(p: DickeParams, T: float) -> PhasePoint:
    if not T > 0:
        raise ValueError("T must be positive")
    u = _gap_root(p.ratio, p.epsilon / (2 * T))
    y2 = 0.0 if u == 1.0 else (u * u - 1) * p.epsilon ** 2 / (4 * p.lam ** 2)
    y = math.sqrt(y2)
    E = p.epsilon * u
    coherence = 2 * p.lam * y / E * math.tanh(E / (2 * T))
    f = float(dicke_free_energy(p, y, T))
    return PhasePoint(T, y2, coherence, 0.0, f, u > 1.0, u)


def dicke_order_parameter(p: DickeParams, hbar_omega: Optional[float], T: float) -> float:
    """y^2 = <a+a>/N minimising the mean-field free energy."""
    if hbar_omega is not None:
        p = DickeParams(p.epsilon, p.lam, hbar_omega)
    return dicke_solve(p, T).y2


# -- order-disorder ferroelectric --------------------------------------------

def od_critical_temperature(p: OrderDisorderParams) -> Optional[float]:
    """hbar_Omega / (2 artanh(2 hbar_Omega / J_tilde)); None if the condition fails."""
    return _artanh_tc(p.hbar_Omega, p.ratio, 2.0)


def od_free_energy(p: OrderDisorderParams, y, s, T: float):
    y = np.asarray(y, dtype=float)
    s = np.asarray(s, dtype=float)
    E = np.sqrt(p.hbar_Omega ** 2 + (p.J0 * s - 2 * p.lam * y) ** 2)
    return p.hbar_omega * y ** 2 + 0.5 * p.J0 * s ** 2 - T * _log2cosh(E / (2 * T))


def od_gap_solve(p: OrderDisorderParams, T: float) -> PhasePoint:
    """Ordered branch with s > 0; the photon amplitude is y = -(lambda / hbar_omega) s."""
    if not T > 0:
        raise ValueError("T must be positive")
    u = _gap_root(p.ratio, p.hbar_Omega / (2 * T))
    if u == 1.0:
        s = y2 = 0.0
    else:
        s = p.hbar_Omega / p.J_tilde * math.sqrt(u * u - 1)
        # separately from s so that lambda = 0 gives exactly zero photons
        y2 = (u * u - 1) * (p.lam * p.hbar_Omega / (p.J_tilde * p.hbar_omega)) ** 2
    y = -math.copysign(math.sqrt(y2), p.lam) if p.lam else 0.0
    f = float(od_free_energy(p, y, s, T))
    return PhasePoint(T, y2, s, 0.0, f, u > 1.0, u)


# -- displacement ferroelectric ----------------------------------------------

def disp_critical_temperature(p: DisplacementParams) -> Optional[float]:
    """epsilon / (4 artanh[(1/delta1 + 1/delta2)^-1]); None if the condition fails."""
    return _artanh_tc(p.epsilon, p.ratio, 4.0)


def disp_free_energy(p: DisplacementParams, y1, y2, phi, T: float):
    y1 = np.asarray(y1, dtype=float)
    y2 = np.asarray(y2, dtype=float)
    eps, l1, l2 = p.epsilon, p.lambda1, p.lambda2
    root = np.sqrt(1 + (2 * l1 / eps) ** 2 * y1 ** 2 + (2 * l2 / eps) ** 2 * y2 ** 2
                   + 8 * l1 * l2 / eps ** 2 * y1 * y2 * np.cos(phi))
    cross = 2 * l1 * l2 / eps * p.chi * y1 * y2 * np.sin(phi)
    return (p.hbar_Omega0 * y1 ** 2 + p.hbar_omega_q * y2 ** 2 - cross
            - 2 * T * _log2cosh(eps * root / (4 * T)))


def disp_gap_solve(p: DisplacementParams, T: float) -> PhasePoint:
    """Leading order in the small parameters chi, chi^2/(delta1 delta2), chi^2/delta1^2."""
    if not T > 0:
        raise ValueError("T must be positive")
    x = p.ratio
    u = _gap_root(x, p.epsilon / (4 * T))
    base = (u * u - 1) * x ** 2 * p.epsilon ** 2 / 4
    y1sq = base / (p.delta1 * p.lambda1) ** 2
    y2sq = base / (p.delta2 * p.lambda2) ** 2
    phi = p.phi
    f = float(disp_free_energy(p, math.sqrt(y1sq), math.sqrt(y2sq), phi, T))
    return PhasePoint(T, y1sq, y2sq, phi, f, u > 1.0, u)


# -- material couplings --------------------------------------------------------

@dataclass(frozen=True)
class Material:
    """CGS inputs for the displacement-model couplings."""

    m_eff: float  # g, magnitude of the effective mass
    M_ion: float  # g
    lattice_l: float  # cm
    density: float  # N / V, cm^-3
    Omega0: float  # s^-1
    omega_q: float  # s^-1
    polarization_dot: float = 1.0  # e_q . n
    charge: float = E_CGS


def displacement_couplings(material: Material, epsilon: float, lambda1: float,
                           warn: bool = True) -> DisplacementParams:
    """lambda2 and |gamma| from the material constants (energies in erg)."""
    m = material
    for name in ("m_eff", "M_ion", "lattice_l", "density", "Omega0", "omega_q"):
        if not getattr(m, name) > 0:
            raise ValueError(f"{name} must be positive")
    if abs(m.polarization_dot) > 1:
        raise ValueError("|e_q . n| must not exceed 1")
    e, h = m.charge, HBAR_CGS
    lam2 = -(math.pi * e * h / (m.m_eff * m.lattice_l)) * math.sqrt(
        2 * math.pi * h * m.density / m.omega_q)
    gamma = math.sqrt(math.pi * e ** 2 * h ** 2 * m.omega_q * m.density / (m.M_ion * m.Omega0)) \
        * abs(m.polarization_dot)
    params = DisplacementParams(epsilon, h * m.Omega0, h * m.omega_q, lambda1, lam2, gamma)
    if warn:
        for key, val in params.smallness().items():
            if val > SMALLNESS_WARN:
                warnings.warn(f"smallness regime violated: {key} = {val:.3g} > {SMALLNESS_WARN}",
                              stacklevel=2)
    return params


# -- curves ------------------------------------------------------------------

def solve(model: Model, T: float) -> PhasePoint:
    if isinstance(model, DickeParams):
        return dicke_solve(model, T)
    if isinstance(model, OrderDisorderParams):
        return od_gap_solve(model, T)
    if isinstance(model, DisplacementParams):
        return disp_gap_solve(model, T)
    raise TypeError(f"unknown model {type(model).__name__}")


def critical_temperature(model: Model) -> Optional[float]:
    if isinstance(model, DickeParams):
        return dicke_critical_temperature(model)
    if isinstance(model, OrderDisorderParams):
        return od_critical_temperature(model)
    return disp_critical_temperature(model)


def _energy_scale(model: Model) -> float:
    if isinstance(model, OrderDisorderParams):
        return model.hbar_Omega
    return model.epsilon


def locate_tc(model: Model, rtol: float = BISECTION_RTOL) -> Optional[float]:
    """T_c by bisection on the ordered flag of the solver."""
    scale = _energy_scale(model)
    lo = 1e-6 * scale
    if not solve(model, lo).ordered:
        return None
    hi = scale
    while solve(model, hi).ordered:
        lo, hi = hi, 2 * hi
    while hi - lo > rtol * lo:
        mid = 0.5 * (lo + hi)
        if solve(model, mid).ordered:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _linear_fit(x, y):
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid ** 2)) / ss_tot if ss_tot > 0 else 0.0
    return float(slope), r2


def phase_curve(model: Model, T_grid: Sequence[float], band: float = 0.05,
                n_fit: int = 21) -> PhaseCurve:
    """Order parameters over ``T_grid``, the located T_c and a linear fit of
    y^2 against (T_c - T) over the ``band`` just below T_c."""
    T = np.asarray(T_grid, dtype=float)
    if T.ndim != 1 or T.size == 0 or np.any(T <= 0) or np.any(np.diff(T) <= 0):
        raise ValueError("T_grid must be strictly increasing and positive")
    points = []
    for t in T:
        try:
            points.append(solve(model, float(t)))
        except SelforgError as exc:
            raise ConvergenceError(f"solver failure at T = {t!r}: {exc}") from exc
    tc = locate_tc(model)
    slope = r2 = None
    if tc is not None:
        ts = tc * (1 - band * np.linspace(0.02, 1.0, n_fit))
        ys = np.array([solve(model, float(t)).y2 for t in ts])
        slope, r2 = _linear_fit(tc - ts, ys)
    return PhaseCurve(T, points, tc, slope, r2)
