"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

from __future__ import annotations

import math
import time
from pathlib import Path

import numpy as np
import pytest

from selforg import farfield as ff
from selforg.cli import main
from selforg.fields import midplane_comb, nearfield_sinusoidal, nearfield_stepped, volume_field
from selforg.modes import bloch_matrices, BlochSystem, build_bloch, perturbative_mode, solve_spectrum
from selforg.resonator import (
    ResonancePair,
    ResonatorConfig,
    Sinusoidal,
    Stepped,
    dimensionless,
    enumerate_resonances,
    transverse_wavenumber,
)
from selforg.thermo import (
    DickeParams,
    DisplacementParams,
    OrderDisorderParams,
    critical_temperature,
    dicke_critical_temperature,
    disp_critical_temperature,
    disp_free_energy,
    disp_gap_solve,
    od_critical_temperature,
    od_free_energy,
    od_gap_solve,
    phase_curve,
    solve,
)
from selforg.traps import enumerate_nodes, trap_count_estimate

from oracles import brute_resonances, grid_minimize, indicator_cosine_coeffs

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


@pytest.fixture
def verdict(capsys):
    def report(n: int, ok: bool, detail: str):
        line = f"CRITERION {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
        with capsys.disabled():
            print("\n" + line, end="")
        assert ok, line
    return report


def pair(n1, n2):
    return ResonancePair(n1, n2, transverse_wavenumber(n1, n2))


# 1 ---------------------------------------------------------------------------

def test_c01_unperturbed_spectrum(verdict):
    t0 = time.perf_counter()
    rng = np.random.default_rng(2024)
    alpha, worst = 1.3, 0.0
    for _ in range(20):
        s, beta1, j = rng.uniform(-3, 3), rng.uniform(0, 0.95), int(rng.integers(-3, 4))
        T, D = bloch_matrices(alpha, s, beta1, 0.0, 0.7, 4)
        sp = [x for x in solve_spectrum(BlochSystem(s, alpha, 4, T, D, beta1, 0.0), (j,))
              if x.harmonic == 0][0]
        worst = max(worst, abs(sp.chi_bar - (s * s - 4 * math.pi * j + 1j * math.log(1 - beta1))))
    dt = time.perf_counter() - t0
    verdict(1, worst <= 1e-10 and dt < 1.0, f"max |err| = {worst:.2e} (<= 1e-10), {dt:.3f} s")


# 2 ---------------------------------------------------------------------------

def test_c02_perturbation_vs_bloch(verdict):
    t0 = time.perf_counter()
    p = 20.0
    cfg = ResonatorConfig(half_length=math.sqrt(2) * p * p / 8, wavelength=1.0, beta1=0.1)
    s = 0.3
    chi0 = complex(s * s, math.log(1 - 0.1))
    C = []
    for beta2 in (0.01, 0.02, 0.04):
        prof = Sinusoidal(beta2, 0.7, p)
        sys = build_bloch(prof, cfg, s, 16)
        exact = [x for x in solve_spectrum(sys) if x.harmonic == 0][0].chi_bar
        mu1 = perturbative_mode(prof, s, sys.alpha).mu[0]
        C.append(abs(exact - (chi0 + beta2 * mu1)) / beta2 ** 2)
    mean = float(np.mean(C))
    spread = max(abs(c - mean) / mean for c in C)
    dt = time.perf_counter() - t0
    verdict(2, spread <= 0.3 and dt < 5.0,
            f"C = {', '.join(f'{c:.4f}' for c in C)}; spread {spread:.1%} (<= 30%), {dt:.3f} s")


# 3 ---------------------------------------------------------------------------

def test_c03_resonance_enumeration(verdict):
    t0 = time.perf_counter()
    rng = np.random.default_rng(11)
    mismatches, nonempty = 0, 0
    for _ in range(50):
        p = float(rng.uniform(20, 80))
        total = int(rng.integers(1, 15)) + (0.37 if rng.random() < 0.2 else 0.0)
        cfg = ResonatorConfig(half_length=total * p * p / 4, wavelength=1.0)
        prof = Sinusoidal(0.1, 0.5, p)
        alpha = dimensionless(cfg, prof).alpha
        got = sorted((q.n1, q.n2, q.s) for q in enumerate_resonances(cfg, prof, 10))
        ref = brute_resonances(alpha, 10)
        nonempty += bool(ref)
        same = [g[:2] for g in got] == [r[:2] for r in ref] and all(
            abs(g[2] - r[2]) <= 1e-12 * max(1.0, r[2]) for g, r in zip(got, ref))
        mismatches += not same
    dt = time.perf_counter() - t0
    verdict(3, mismatches == 0 and dt < 1.0,
            f"{mismatches} mismatches in 50 geometries ({nonempty} resonant), {dt:.3f} s")


# 4 ---------------------------------------------------------------------------

def test_c04_m_independence(verdict):
    p = 20.0
    odd_cfg = ResonatorConfig(half_length=3 * p * p / 4, wavelength=1.0, beta1=0.05)
    even_cfg = ResonatorConfig(half_length=p * p, wavelength=1.0, beta1=0.05)
    outputs = []
    for m in (0.1, 0.5, 1.0):
        prof = Sinusoidal(0.2, m, p)
        xi = np.linspace(-10, 10, 401)
        odd = nearfield_sinusoidal(pair(1, 2), odd_cfg, prof, n_nodes=20)
        even = nearfield_sinusoidal(pair(3, 1), even_cfg, prof, C1=0.3, C2=0.8, n_nodes=20)
        mid = midplane_comb(pair(1, 2), odd_cfg, prof, n_nodes=20)
        vol = volume_field(pair(1, 2), odd_cfg, prof, xi, [-0.5, 0.0, 0.5],
                           regularization_width=0.05)
        outputs.append([odd.node_positions, odd.amplitudes, odd.rasterize(xi),
                        even.node_positions, even.amplitudes, even.rasterize(xi),
                        mid.node_positions, mid.amplitudes, mid.rasterize(xi), vol.values])
    same = all(np.array_equal(a, b) for other in outputs[1:] for a, b in zip(outputs[0], other))
    verdict(4, same, "boundary (odd, even), mid-plane and volume fields bit-identical "
                     "for m in {0.1, 0.5, 1.0}")


# 5 ---------------------------------------------------------------------------

def test_c05_stepped_support(verdict):
    p = 20.0
    cfg = ResonatorConfig(half_length=p * p / 2, wavelength=1.0, beta1=0.1)
    prof = Stepped(0.3, 0.4, p, 7.0)
    xi = np.random.default_rng(5).uniform(-200, 200, 100_000)
    bad = 0
    for side in (0.5, -0.5):
        for q in (pair(1, 1), pair(2, 0)):
            slot = nearfield_stepped(q, cfg, prof, side=side)
            comp = nearfield_stepped(q, cfg, prof, complementary=True, side=side)
            mask = slot.support(xi)
            bad += int(np.count_nonzero(slot.evaluate(xi)[~mask]))
            bad += int(np.count_nonzero(comp.evaluate(xi)[mask]))
            bad += int(np.count_nonzero(comp.support(xi) == mask))
    verdict(5, bad == 0, f"{bad} nonzero samples off-mask over 1e5 points x 8 fields")


# 6 ---------------------------------------------------------------------------

def _farfield_case(sigma):
    lam, p = 1.0, 100.0
    a = 50 * p
    z = 200 * a * a / lam
    cfg = ResonatorConfig(half_length=p * p / lam, wavelength=lam, beta1=0.1, aperture_a=a)
    prof = Stepped(0.4, 0.5, p, p / (1 + sigma))
    q = pair(3, 1)
    coeffs = ff.fourier_coeffs_uniform(sigma, 40)
    nf = nearfield_stepped(q, cfg, prof, complementary=True)

    # every closed-form main lobe over the orders that carry weight
    theta = np.arange(-22 * lam / p, 22 * lam / p, lam / (40 * a))
    closed = ff.intensity_closed_form(q, cfg, prof, coeffs, 1.0, z, theta * z)
    peaks = np.array([lb.theta for lb in closed.main_lobes])
    ref = ff.intensity_closed_form(q, cfg, prof, coeffs, 1.0, z, peaks * z,
                                   find_lobes=False).intensity
    num = np.abs(ff.fraunhofer_amplitude(nf, a, lam, z, peaks * z)) ** 2
    rel = float(np.max(np.abs(num - ref) / ref))

    # geometry of the numeric pattern around the centre
    window = np.arange(-2.6 * lam / p, 2.6 * lam / p, lam / (20 * a))
    pat = ff.fraunhofer(nf, a, lam, z, window * z)
    orders = np.arange(-3, 4)
    plus, minus = ff.lobe_angles(q, cfg, p, orders)
    pos_err, spacing_err, width_err = 0.0, 0.0, 0.0
    found = {}
    for lb in pat.main_lobes:
        cand = [(abs(lb.theta - t), n, br) for br, ts in (("+", plus), ("-", minus))
                for n, t in zip(orders, ts)]
        d, n, br = min(cand)
        pos_err = max(pos_err, d)
        found[(br, int(n))] = lb.theta
        width_err = max(width_err, abs(lb.width - lam / a) / (lam / a))
    for (br, n), t in found.items():
        if (br, n + 1) in found:
            spacing_err = max(spacing_err, abs(found[(br, n + 1)] - t - lam / p))
    return dict(rel=rel, n_peaks=len(peaks), n_num=len(pat.main_lobes), pos=pos_err * a / lam,
                spacing=spacing_err * a / lam, width=width_err,
                pairs=sum((br, n + 1) in found for br, n in found))


def test_c06_farfield_oracle(verdict):
    t0 = time.perf_counter()
    res = {s: _farfield_case(s) for s in (1.0, 3.0, 10.0)}
    dt = time.perf_counter() - t0
    ok = dt < 30.0
    parts = []
    for s, r in res.items():
        ok &= r["rel"] <= 0.01 and r["spacing"] <= 0.1 and r["width"] <= 0.2
        ok &= r["pos"] <= 0.1 and r["pairs"] > 0 and r["n_num"] > 0
        parts.append(f"sigma={s:g}: {r['n_peaks']} peaks max rel {r['rel']:.1e}, "
                     f"spacing err {r['spacing']:.3f} lam/a, width err {r['width']:.1%}")
    verdict(6, ok, "; ".join(parts) + f"; {dt:.1f} s")


# 7 ---------------------------------------------------------------------------

def test_c07_fourier_coefficients(verdict):
    worst = 0.0
    for sigma in (0.5, 1.0, 2.0, 10.0):
        closed = ff.fourier_coeffs_uniform(sigma, 20).b
        slot = ff.fourier_coeffs_numeric(sigma, 20, "slot").b
        comp = ff.fourier_coeffs_numeric(sigma, 20, "complement").b
        oracle = indicator_cosine_coeffs(sigma, 20, "slot")
        worst = max(worst, float(np.max(np.abs(closed[1:] - slot[1:]))),
                    float(np.max(np.abs(closed[1:] - oracle[1:]))), abs(closed[0] - comp[0]))
    b0 = ff.fourier_coeffs_uniform(1.0, 0).b[0]
    verdict(7, worst <= 1e-8 and b0 == 0.5,
            f"max |closed - numeric| = {worst:.1e} (n <= 20); sigma=1 b0 = {b0!r}")


# 8 ---------------------------------------------------------------------------

def _closed_form_count(sigma, threshold=math.exp(-2)):
    lam, p = 1.0, 100.0
    a = 50 * p
    z = 200 * a * a / lam
    cfg = ResonatorConfig(half_length=p * p / lam, wavelength=lam, aperture_a=a)
    prof = Stepped(0.4, 0.5, p, p / (1 + sigma))
    coeffs = ff.fourier_coeffs_uniform(sigma, 60)
    orders = np.arange(0, 61)
    theta, _ = ff.lobe_angles(pair(2, 2), cfg, p, orders)  # s = 0: single branch
    h = ff.intensity_closed_form(pair(2, 2), cfg, prof, coeffs, 1.0, z, theta * z,
                                 find_lobes=False).norm_intensity
    b2 = h / 4.0  # coherent s = 0 doubling
    b0sq = b2[0] / 4.0  # b_0' = 2 b_0
    n = 1
    while b2[n] >= threshold * b0sq:
        n += 1
    return 2 * (n - 1) + 1


def test_c08_lobe_count(verdict):
    rows = {s: (ff.lobe_count(s), _closed_form_count(s)) for s in (0.5, 1.0, 2 / 3, 5.0, 100.0)}
    ok = all(a == b for a, b in rows.values()) and rows[100.0][0] == 1
    verdict(8, ok, ", ".join(f"sigma={s:.3g}: n*={a} counted={b}" for s, (a, b) in rows.items()))


# 9 ---------------------------------------------------------------------------

def test_c09_trap_scaling(verdict):
    grid = np.linspace(5, 100, 10)
    ratios = []
    for A in grid:
        for L in grid:
            lat = enumerate_nodes(A / 2, L, 1.0, dims=3)
            ratios.append(lat.size / trap_count_estimate(A, L, 1.0))
    est = trap_count_estimate(30.0, 10.0, 1.0)
    ok = 0.5 <= min(ratios) and max(ratios) <= 2.0 and est == 72000 and 1e4 <= est < 1e5
    verdict(9, ok, f"count/estimate in [{min(ratios):.3f}, {max(ratios):.3f}]; "
                   f"A/p=30, L/p=10 -> {est:.0f}")


# 10 --------------------------------------------------------------------------

def _models(ratio):
    return {
        "dicke": DickeParams(1.0, 1.0 / math.sqrt(ratio)),
        "order-disorder": OrderDisorderParams(1.0, 2.0 / ratio - 2 * 0.3 ** 2, 0.3, 1.0),
        "displacement": DisplacementParams(1.0, 2 * ratio, 2 * ratio * 1.44, 1.0, 1.2),
    }


def test_c10_condition_gates(verdict):
    temps = np.logspace(-5, 1, 60)
    ok, parts = True, []
    for name in ("dicke", "order-disorder", "displacement"):
        tcs = []
        for ratio in (0.9, 0.99, 1.01, 1.1):
            m = _models(ratio)[name]
            assert m.ratio == pytest.approx(ratio, rel=1e-12)
            ordered = any(solve(m, float(t)).ordered for t in temps)
            tc = critical_temperature(m)
            ok &= ordered == (ratio < 1) and (tc is not None) == (ratio < 1)
            tcs.append(tc)
        near = critical_temperature(_models(1 - 1e-9)[name])
        ok &= tcs[0] > tcs[1] > near > 0
        parts.append(f"{name}: T_c(0.9)={tcs[0]:.4f} T_c(0.99)={tcs[1]:.4f} "
                     f"T_c(1-1e-9)={near:.4f}, none above 1")
    verdict(10, ok, "; ".join(parts))


# 11 --------------------------------------------------------------------------

def test_c11_closed_form_tc(verdict):
    tc1 = od_critical_temperature(OrderDisorderParams(1.0, 3.82, 0.3, 1.0))  # 2/(3.82+0.18)
    tcd = dicke_critical_temperature(DickeParams(1.0, math.sqrt(2.0)))
    tc2 = disp_critical_temperature(DisplacementParams(1.0, 1.0, 1.44, 1.0, 1.2))
    e1, e2, e3 = abs(tc1 - 0.9102392266268374), abs(tcd - 0.9102392266268374), \
        abs(tc2 - 0.4551196133134187)
    verdict(11, max(e1, e2, e3) <= 1e-9,
            f"T_c(1)={tc1:.12f} Dicke={tcd:.12f} T_c(2)={tc2:.12f}; "
            f"errors {e1:.1e} {e2:.1e} {e3:.1e}")


# 12 --------------------------------------------------------------------------

def test_c12_gap_oracle(verdict):
    t0 = time.perf_counter()
    od = OrderDisorderParams(1.0, 3.82, 0.3, 1.0)
    dp = DisplacementParams(1.0, 0.8, 1.152, 1.0, 1.2)
    worst = 0.0
    for frac in np.linspace(0.1, 0.9, 10):
        T = float(frac * od_critical_temperature(od))
        pt = od_gap_solve(od, T)
        y, s = grid_minimize(lambda y, s: od_free_energy(od, y, s, T), [(-1.0, 1.0), (0.0, 1.5)])
        worst = max(worst, abs(pt.s_or_y2b - s) / s, abs(pt.y2 - y * y) / (y * y))
        T = float(frac * disp_critical_temperature(dp))
        pt = disp_gap_solve(dp, T)
        y1, y2, _ = grid_minimize(lambda a, b, c: disp_free_energy(dp, a, b, c, T),
                                  [(0.0, 3.0), (0.0, 3.0), (-math.pi, math.pi)], n=21)
        worst = max(worst, abs(pt.y2 - y1 * y1) / (y1 * y1), abs(pt.s_or_y2b - y2 * y2) / (y2 * y2))
    dt = time.perf_counter() - t0
    verdict(12, worst <= 1e-6 and dt < 30.0,
            f"max relative deviation from grid minimum {worst:.1e} over 2 x 10 temperatures, "
            f"{dt:.1f} s")


# 13 --------------------------------------------------------------------------

def test_c13_mean_field_exponent(verdict):
    r2 = {}
    for name, m in _models(0.5).items():
        tc = critical_temperature(m)
        r2[name] = phase_curve(m, np.linspace(0.1, 1.2, 12) * tc).fit_r2
    verdict(13, all(v > 0.999 for v in r2.values()),
            ", ".join(f"{k}: R^2={v:.6f}" for k, v in r2.items()))


# 14 --------------------------------------------------------------------------

def test_c14_ordered_relation(verdict):
    m = OrderDisorderParams(1.0, 2.5, 0.7, 0.8)
    tc = od_critical_temperature(m)
    curve = phase_curve(m, np.linspace(0.01, 1.2, 120) * tc)
    ordered = [pt for pt in curve.points if pt.ordered]
    worst = max(abs(pt.s_or_y2b ** 2 - (m.hbar_omega / m.lam) ** 2 * pt.y2) for pt in ordered)
    verdict(14, worst <= 1e-10 and len(ordered) > 50,
            f"max |s^2 - (hw/lambda)^2 y^2| = {worst:.1e} over {len(ordered)} ordered points")


# 15 --------------------------------------------------------------------------

def test_c15_tc_enhancement(verdict):
    hO, J0, hw = 1.0, 3.0, 1.0  # 2 hO / J0 = 2/3 < 1
    g = np.linspace(0.0, 3.0, 31)  # lambda^2 / hw
    tcs = [od_critical_temperature(OrderDisorderParams(hO, J0, math.sqrt(x * hw), hw)) for x in g]
    ok = all(b > a for a, b in zip(tcs, tcs[1:]))
    verdict(15, ok, f"T_c rises from {tcs[0]:.4f} (lambda=0) to {tcs[-1]:.4f} "
                    f"strictly over 31 values of lambda^2/hw")


# 16 --------------------------------------------------------------------------

def test_c16_cli_determinism(verdict, tmp_path):
    commands = ["resonances", "spectrum", "field", "farfield", "traps", "phase", "scan"]
    diffs, files = [], 0
    for cmd in commands:
        for fmt in ("csv", "json"):
            runs = []
            for k in (0, 1):
                d = tmp_path / f"{cmd}-{fmt}-{k}"
                d.mkdir()
                code = main([cmd, "--config", str(CONFIGS / f"{cmd}.toml"),
                             "--out", str(d / f"out.{fmt}"), "--format", fmt])
                runs.append((code, {f.name: f.read_bytes() for f in sorted(d.iterdir())}))
            (c0, a), (c1, b) = runs
            files += len(a)
            if c0 != 0 or c1 != 0 or a != b:
                diffs.append(f"{cmd}/{fmt}")
    verdict(16, not diffs, f"{files} output files byte-identical across re-runs"
                           + (f"; differing: {diffs}" if diffs else ""))
