"""Shared numerical kernels: bracketed roots, the dense generalized
eigenproblem det(T + wD) = 0, and panel quadrature for integrands of the form
g(x) exp(-i k x).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from .errors import (
    BracketError,
    EvaluationError,
    ResolutionError,
    SingularScalingError,
)

#: Smallest admissible |D_nn| before the scaling is declared singular.
SCALING_GUARD = 1e-14
#: Largest phase advance allowed across one quadrature panel.
MAX_PANEL_PHASE = math.pi / 4


@dataclass(frozen=True)
class RootResult:
    root: float
    residual: float
    iterations: int


def find_root_bracketed(
    f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-12
) -> RootResult:
    """Root of ``f`` inside ``[lo, hi]`` by Brent's method.

    ``f(lo)`` and ``f(hi)`` must not share a sign. Raises :class:`BracketError`
    otherwise and :class:`EvaluationError` if ``f`` returns a non-finite value.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    if lo > hi:
        lo, hi = hi, lo

    def checked(x: float) -> float:
        v = float(f(x))
        if not math.isfinite(v):
            raise EvaluationError(f"evaluation failure: f({x!r}) = {v!r}")
        return v

    flo, fhi = checked(lo), checked(hi)
    if flo == 0.0:
        return RootResult(lo, 0.0, 0)
    if fhi == 0.0:
        return RootResult(hi, 0.0, 0)
    if flo * fhi > 0:
        raise BracketError(
            f"bracket invalid: f({lo!r})={flo:.3g} and f({hi!r})={fhi:.3g} share a sign"
        )
    root, info = brentq(checked, lo, hi, xtol=tol, rtol=4 * np.finfo(float).eps,
                        maxiter=500, full_output=True)
    return RootResult(float(root), abs(checked(root)), int(info.iterations))


def generalized_eigenvalues(T, D, return_vectors: bool = False):
    """All ``w`` with det(T + w D) = 0 for square ``T`` and diagonal ``D``.

    ``D`` may be given as a vector of diagonal entries or as a diagonal
    matrix. The problem is reduced to the standard eigenproblem of
    ``-D^{-1} T``. Eigenvalues are returned sorted by ``|w|`` descending;
    with ``return_vectors`` the matching eigenvectors are the columns of
    the second return value.
    """
    T = np.asarray(T, dtype=complex)
    d = np.asarray(D, dtype=complex)
    if d.ndim == 2:
        d = np.diag(d)
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        raise ValueError(f"T must be square, got shape {T.shape}")
    if d.shape != (T.shape[0],):
        raise ValueError("D must match the dimension of T")
    if not (np.all(np.isfinite(T)) and np.all(np.isfinite(d))):
        raise ValueError("matrix entries must be finite")
    if np.min(np.abs(d)) <= SCALING_GUARD:
        raise SingularScalingError("singular scaling: zero diagonal entry in D")

    M = -T / d[:, None]
    w, v = np.linalg.eig(M)
    order = np.lexsort((np.angle(w), -np.abs(w)))
    w = w[order]
    if return_vectors:
        return w, v[:, order]
    return w


def _gauss_legendre(order: int):
    x, wts = np.polynomial.legendre.leggauss(order)
    return x, wts


def panels_needed(a: float, b: float, phase_rate) -> int:
    """Smallest panel count keeping the phase advance per panel below pi/4."""
    k = float(np.max(np.abs(phase_rate))) if np.size(phase_rate) else 0.0
    return max(1, int(math.floor(k * (b - a) / MAX_PANEL_PHASE)) + 1)


def oscillatory_quadrature(
    g: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    phase_rate,
    n_panels: int,
    order: int = 8,
):
    """Composite Gauss-Legendre estimate of ``int_a^b g(x) exp(-i k x) dx``.

    ``phase_rate`` (k) may be a scalar or an array; the result has the same
    shape. ``g`` must accept an array of abscissae. The panel count must be
    large enough that ``|k| (b - a) / n_panels < pi/4`` for every k, otherwise
    :class:`ResolutionError` is raised carrying the suggested count.
    """
    if not a < b:
        raise ValueError("quadrature interval requires a < b")
    if n_panels < 1:
        raise ValueError("n_panels must be >= 1")
    k = np.asarray(phase_rate, dtype=float)
    kmax = float(np.max(np.abs(k))) if k.size else 0.0
    if kmax * (b - a) / n_panels >= MAX_PANEL_PHASE:
        need = panels_needed(a, b, k)
        raise ResolutionError(
            f"insufficient resolution: phase advance per panel "
            f"{kmax * (b - a) / n_panels:.3g} rad >= pi/4; use n_panels >= {need}",
            need,
        )
    xg, wg = _gauss_legendre(order)
    edges = np.linspace(a, b, n_panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    x = (mid[:, None] + half[:, None] * xg[None, :]).ravel()
    w = (half[:, None] * wg[None, :]).ravel()
    gw = np.asarray(g(x), dtype=complex) * w
    flat = k.ravel()
    out = np.empty(flat.shape, dtype=complex)
    # chunk over k to bound memory for long grids
    step = max(1, 2_000_000 // max(1, x.size))
    for i in range(0, flat.size, step):
        kk = flat[i:i + step]
        out[i:i + step] = np.exp(-1j * np.outer(kk, x)) @ gw
    if k.ndim == 0:
        return complex(out[0])
    return out.reshape(k.shape)
