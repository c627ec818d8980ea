"""Command-line front end.

    selforg <command> --config run.toml [--out PATH] [--format csv|json] [--workers N]

The config is a TOML document with typed sections; see README.md for the keys.
Exit status: 0 success, 2 invalid configuration, 3 solver failure.
"""

from __future__ import annotations

import argparse
import copy
import json
import math
import os
import re
import sys
import tempfile
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib

from . import farfield as ff
from . import fields, modes, thermo, traps
from .errors import ConfigError, SelforgError
from .resonator import (
    ResonancePair,
    ResonatorConfig,
    Sinusoidal,
    Stepped,
    Uniform,
    dimensionless,
    enumerate_resonances,
    resonance_order,
    transverse_wavenumber,
)

COMMANDS = ("resonances", "spectrum", "field", "farfield", "traps", "phase", "scan")
WORKERS_ENV = "SELFORG_WORKERS"

F, I, S, B, LF = float, int, str, bool, "list[float]"
SCHEMA: dict = {
    "command": S,
    "resonator": {"length": F, "half_length": F, "wavelength": F, "beta1": F,
                  "aperture_a": F, "aperture_b": F},
    "profile": {"kind": S, "beta2": F, "m": F, "period": F, "gamma": F, "slot": F, "duty": F},
    "mode": {"n1": I, "n2": I, "q_prime": I, "j": I, "s": F, "n_max": I, "truncation": I,
             "C1": F, "C2": F, "A": F, "side": F, "complementary": B, "n_nodes": I},
    "field": {"kind": S, "xi_min": F, "xi_max": F, "steps": I, "zeta": LF, "width": F,
              "truncation": I},
    "farfield": {"z": F, "theta_min": F, "theta_max": F, "steps": I, "n_coeffs": I,
                 "frac_small": F},
    "traps": {"dims": I, "z_offset": F, "period_y": F},
    "model": {"kind": S, "epsilon": F, "lambda": F, "hbar_omega": F, "hbar_Omega": F,
              "J0": F, "hbar_Omega0": F, "hbar_omega_q": F, "lambda1": F, "lambda2": F,
              "gamma": F},
    "temperature": {"Tmin": F, "Tmax": F, "steps": I},
    "scan": {"command": S, "parameter": S, "start": F, "stop": F, "steps": I},
    "output": {"path": S, "format": S},
}

HEADERS = {
    "resonances": ["n1", "n2", "parity", "s"],
    "spectrum": ["qprime", "n1", "re_chi", "im_chi", "re_k", "im_k", "Q"],
    "field": ["xi", "zeta", "re", "im", "abs2"],
    "farfield": ["x", "intensity", "norm_intensity"],
    "traps": ["x", "y", "z"],
    "phase": ["T", "y2", "s_or_y2b", "phi", "f", "ordered"],
}

LENGTH_UNITS = "lengths in resonator.wavelength units"


@dataclass
class ScanAxis:
    command: str
    parameter: str
    values: list


@dataclass
class RunConfig:
    command: str
    data: dict
    output_path: Optional[str] = None
    fmt: str = "csv"
    scan: Optional[ScanAxis] = None


@dataclass
class Result:
    columns: list
    rows: list
    units: str
    extras: dict = field(default_factory=dict)
    sidecar: Optional[tuple] = None  # (suffix, columns, rows)


# -- parsing -----------------------------------------------------------------

def _line_of(text: str, section: Optional[str], key: str) -> Optional[int]:
    lines = text.splitlines()
    start = 0
    if section is not None:
        pat = re.compile(r"^\s*\[\s*" + re.escape(section) + r"\s*\]")
        for i, ln in enumerate(lines):
            if pat.match(ln):
                start = i + 1
                break
    kpat = re.compile(r"^\s*" + re.escape(key) + r"\s*=")
    for i in range(start, len(lines)):
        if section is not None and i > start and re.match(r"^\s*\[", lines[i]):
            break
        if kpat.match(lines[i]):
            return i + 1
    return None


def _where(text, section, key):
    line = _line_of(text, section, key)
    return f" (line {line})" if line else ""


def _check_type(value, kind) -> bool:
    if kind is F:
        return isinstance(value, (int, float)) and not isinstance(value, bool)
    if kind is I:
        return isinstance(value, int) and not isinstance(value, bool)
    if kind is B:
        return isinstance(value, bool)
    if kind is S:
        return isinstance(value, str)
    if kind == LF:
        return isinstance(value, list) and all(_check_type(v, F) for v in value)
    return False


def _type_name(kind) -> str:
    return kind if isinstance(kind, str) else kind.__name__


def parse_config(text: str, command: Optional[str] = None) -> RunConfig:
    """Validate a TOML run configuration."""
    try:
        raw = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"config syntax error: {exc}") from exc
    for key, value in raw.items():
        if key not in SCHEMA:
            raise ConfigError(f"unknown key '{key}'{_where(text, None, key)}")
        spec = SCHEMA[key]
        if isinstance(spec, dict):
            if not isinstance(value, dict):
                raise ConfigError(f"'{key}' must be a section")
            for sub, v in value.items():
                path = f"{key}.{sub}"
                if sub not in spec:
                    raise ConfigError(f"unknown key '{path}'{_where(text, key, sub)}")
                if not _check_type(v, spec[sub]):
                    raise ConfigError(f"bad type for '{path}': expected {_type_name(spec[sub])}"
                                      f"{_where(text, key, sub)}")
        elif not _check_type(value, spec):
            raise ConfigError(f"bad type for '{key}': expected {_type_name(spec)}")
    cmd = command or raw.get("command")
    if cmd is None:
        raise ConfigError("missing key 'command'")
    if cmd not in COMMANDS:
        raise ConfigError(f"unknown command '{cmd}'")
    out = raw.get("output", {})
    fmt = out.get("format", "csv")
    if fmt not in ("csv", "json"):
        raise ConfigError("bad value for 'output.format': expected csv or json")
    data = {k: v for k, v in raw.items() if isinstance(v, dict)}
    scan = None
    if cmd == "scan":
        sc = _require(data, "scan", "command", "parameter", "start", "stop", "steps")
        if sc["command"] not in COMMANDS or sc["command"] == "scan":
            raise ConfigError(f"bad value for 'scan.command': {sc['command']!r}")
        if sc["steps"] < 2:
            raise ConfigError("'scan.steps' must be >= 2")
        if not (math.isfinite(sc["start"]) and math.isfinite(sc["stop"])):
            raise ConfigError("scan range must be finite")
        sec, _, key = sc["parameter"].partition(".")
        if sec not in SCHEMA or not isinstance(SCHEMA[sec], dict) or key not in SCHEMA[sec]:
            raise ConfigError(f"unknown scan parameter '{sc['parameter']}'")
        if SCHEMA[sec][key] not in (F, I):
            raise ConfigError(f"scan parameter '{sc['parameter']}' is not numeric")
        values = [float(v) for v in np.linspace(sc["start"], sc["stop"], sc["steps"])]
        if SCHEMA[sec][key] is I:
            if any(v != round(v) for v in values):
                raise ConfigError(f"scan over integer '{sc['parameter']}' needs integer steps")
            values = [int(round(v)) for v in values]
        scan = ScanAxis(sc["command"], sc["parameter"], values)
    return RunConfig(cmd, data, out.get("path"), fmt, scan)


def expand_scan(rc: RunConfig) -> list:
    """Child configurations of a scan, one per value."""
    if rc.scan is None:
        raise ConfigError("not a scan configuration")
    sec, _, key = rc.scan.parameter.partition(".")
    children = []
    for v in rc.scan.values:
        data = copy.deepcopy(rc.data)
        data.pop("scan", None)
        data.setdefault(sec, {})[key] = v
        children.append(RunConfig(rc.scan.command, data, None, rc.fmt))
    return children


def _require(data: dict, section: str, *keys):
    sec = data.get(section)
    if sec is None:
        raise ConfigError(f"missing key '{section}.{keys[0]}'")
    for k in keys:
        if k not in sec:
            raise ConfigError(f"missing key '{section}.{k}'")
    return sec


def _opt(data, section, key, default=None):
    return data.get(section, {}).get(key, default)


# -- builders ----------------------------------------------------------------

def _resonator(data) -> ResonatorConfig:
    sec = data.get("resonator")
    if sec is None:
        raise ConfigError("missing key 'resonator.length'")
    if "half_length" in sec:
        half = sec["half_length"]
    elif "length" in sec:
        half = 0.5 * sec["length"]
    else:
        raise ConfigError("missing key 'resonator.length'")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return ResonatorConfig(half, sec.get("wavelength", 1.0), sec.get("beta1", 0.0),
                               sec.get("aperture_a"), sec.get("aperture_b"))


def _profile(data):
    sec = data.get("profile", {})
    kind = sec.get("kind", "sinusoidal")
    if kind == "uniform":
        return Uniform(sec.get("beta2", 0.0))
    if "period" not in sec:
        raise ConfigError("missing key 'profile.period'")
    if kind == "sinusoidal":
        _require(data, "profile", "beta2", "m")
        return Sinusoidal(sec["beta2"], sec["m"], sec["period"])
    if kind == "stepped":
        _require(data, "profile", "beta2", "gamma")
        if "slot" in sec:
            slot = sec["slot"]
        elif "duty" in sec:
            slot = sec["period"] / (1 + sec["duty"])
        else:
            raise ConfigError("missing key 'profile.slot'")
        return Stepped(sec["beta2"], sec["gamma"], sec["period"], slot)
    raise ConfigError(f"bad value for 'profile.kind': {kind!r}")


def _pair(data, config, profile) -> ResonancePair:
    n1 = _opt(data, "mode", "n1")
    if n1 is None:
        raise ConfigError("missing key 'mode.n1'")
    n2 = _opt(data, "mode", "n2")
    if n2 is None:
        total = resonance_order(config, profile.period)
        if total is None:
            raise ConfigError("missing key 'mode.n2' (geometry is not resonant)")
        n2 = total - n1
    return ResonancePair(n1, n2, transverse_wavenumber(n1, n2))


def _model(data):
    sec = data.get("model")
    if sec is None or "kind" not in sec:
        raise ConfigError("missing key 'model.kind'")
    kind = sec["kind"]
    if kind == "dicke":
        _require(data, "model", "epsilon", "lambda")
        return thermo.DickeParams(sec["epsilon"], sec["lambda"], sec.get("hbar_omega"))
    if kind == "order_disorder":
        _require(data, "model", "hbar_Omega", "J0", "lambda", "hbar_omega")
        return thermo.OrderDisorderParams(sec["hbar_Omega"], sec["J0"], sec["lambda"],
                                          sec["hbar_omega"])
    if kind == "displacement":
        _require(data, "model", "epsilon", "hbar_Omega0", "hbar_omega_q", "lambda1", "lambda2")
        return thermo.DisplacementParams(sec["epsilon"], sec["hbar_Omega0"], sec["hbar_omega_q"],
                                         sec["lambda1"], sec["lambda2"], sec.get("gamma", 0.0))
    raise ConfigError(f"bad value for 'model.kind': {kind!r}")


# -- commands ----------------------------------------------------------------

def cmd_resonances(data) -> Result:
    config, profile = _resonator(data), _profile(data)
    n_max = _opt(data, "mode", "n_max", 3)
    rows = [[p.n1, p.n2, p.parity, p.s] for p in enumerate_resonances(config, profile, n_max)]
    return Result(HEADERS["resonances"], rows, "s dimensionless")


def _spectrum_row(sp: modes.Spectrum, n1):
    k = sp.k_complex
    return [sp.q_prime, n1, sp.chi_bar.real, sp.chi_bar.imag, k.real, k.imag, sp.Q]


def cmd_spectrum(data) -> Result:
    config, profile = _resonator(data), _profile(data)
    j = _opt(data, "mode", "j", 0)
    complementary = _opt(data, "mode", "complementary", False)
    rows = []
    total = resonance_order(config, profile.period) if not isinstance(profile, Uniform) else None
    if total is not None:
        for pair in enumerate_resonances(config, profile, _opt(data, "mode", "n_max", 3)):
            sp = modes.periodic_spectrum(pair, config, profile, j, complementary)
            rows.append(_spectrum_row(sp, pair.n1))
    elif isinstance(profile, Sinusoidal):
        s = _opt(data, "mode", "s", 0.0)
        N = _opt(data, "mode", "truncation", modes.DEFAULT_TRUNCATION)
        system = modes.build_bloch(profile, config, s, N)
        for sp in modes.solve_spectrum(system, (j,)):
            rows.append(_spectrum_row(sp, sp.harmonic))
    else:
        raise ConfigError("spectrum needs a resonant geometry or a sinusoidal profile")
    return Result(HEADERS["spectrum"], rows, f"k in rad per wavelength unit; {LENGTH_UNITS}")


def cmd_field(data) -> Result:
    config, profile = _resonator(data), _profile(data)
    if isinstance(profile, Uniform):
        raise ConfigError("missing key 'profile.period'")
    pair = _pair(data, config, profile)
    geo = dimensionless(config, profile)
    xi = np.linspace(_opt(data, "field", "xi_min", -2 * geo.p_bar),
                     _opt(data, "field", "xi_max", 2 * geo.p_bar),
                     _opt(data, "field", "steps", 801))
    side = _opt(data, "mode", "side", 0.5)
    qp = _opt(data, "mode", "q_prime")
    rows = []
    if isinstance(profile, Stepped):
        mf = fields.nearfield_stepped(pair, config, profile, None,
                                      _opt(data, "mode", "complementary", False), side,
                                      _opt(data, "mode", "A", 1.0), qp)
        grid = fields.FieldGrid(xi, np.array([side]), mf.evaluate(xi)[None, :])
    else:
        kind = _opt(data, "field", "kind", "boundary")
        width = _opt(data, "field", "width", geo.p_bar / 50)
        n_nodes = _opt(data, "mode", "n_nodes", int(abs(xi).max() / geo.p_bar) + 4)
        C1 = _opt(data, "mode", "C1", 1.0)
        if kind == "boundary":
            comb = fields.nearfield_sinusoidal(pair, config, profile, C1,
                                               _opt(data, "mode", "C2", 1.0), side, qp,
                                               n_nodes, width)
            grid = comb.to_grid(xi)
        elif kind == "midplane":
            comb = fields.midplane_comb(pair, config, profile, C1, qp, n_nodes, width,
                                        standing=True)
            grid = comb.to_grid(xi)
        elif kind == "volume":
            zeta = _opt(data, "field", "zeta", [-0.5, 0.0, 0.5])
            grid = fields.volume_field(pair, config, profile, xi, zeta, C1,
                                       _opt(data, "field", "truncation",
                                            fields.DEFAULT_VOLUME_TRUNCATION),
                                       _opt(data, "mode", "j", 0), qp, width)
        else:
            raise ConfigError(f"bad value for 'field.kind': {kind!r}")
    rows = [list(r) for r in grid.records()]
    return Result(HEADERS["field"], rows, "xi = x sqrt(k/2l), zeta = z/2l; field in mode units")


def cmd_farfield(data) -> Result:
    config, profile = _resonator(data), _profile(data)
    if isinstance(profile, Uniform):
        raise ConfigError("missing key 'profile.period'")
    a = config.aperture_a
    if a is None:
        raise ConfigError("missing key 'resonator.aperture_a'")
    pair = _pair(data, config, profile)
    lam, p = config.wavelength, profile.period
    z = _opt(data, "farfield", "z", 200 * a ** 2 / lam)
    theta = np.linspace(_opt(data, "farfield", "theta_min", -3 * lam / p),
                        _opt(data, "farfield", "theta_max", 3 * lam / p),
                        _opt(data, "farfield", "steps", 6001))
    x = theta * z
    qp = _opt(data, "mode", "q_prime")
    extras: dict = {"z": z}
    sidecar = None
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        if isinstance(profile, Stepped):
            complementary = _opt(data, "mode", "complementary", True)
            A = _opt(data, "mode", "A", 1.0)
            nf = fields.nearfield_stepped(pair, config, profile, None, complementary, 0.5, A, qp)
            pat = ff.fraunhofer(nf, a, lam, z, x)
            norm = pat.intensity / ff.closed_form_scale(config, profile, A, z, complementary)
            frac = _opt(data, "farfield", "frac_small", ff.FRAC_SMALL)
            n_star, table = ff.lobe_table(pair, config, profile, frac)
            cols = ["n", "branch", "theta", "height"]
            extras.update({"n_star": n_star,
                           "lobes": [dict(zip(cols, r)) for r in table]})
            sidecar = ("lobes", cols, [list(r) for r in table])
        else:
            n_nodes = int(a * config.xi_scale / dimensionless(config, profile).p_bar) + 2
            comb = fields.nearfield_sinusoidal(pair, config, profile,
                                               _opt(data, "mode", "C1", 1.0),
                                               _opt(data, "mode", "C2", 1.0), 0.5, qp, n_nodes)
            pat = ff.fraunhofer(comb, a, lam, z, x)
            top = pat.intensity.max()
            norm = pat.intensity / top if top > 0 else pat.intensity
    extras["main_lobes"] = [{"theta": lb.theta, "height": lb.height, "width": lb.width}
                            for lb in pat.main_lobes]
    rows = [[xi, yi, ni] for xi, yi, ni in zip(x, pat.intensity, norm)]
    return Result(HEADERS["farfield"], rows, f"x at distance z; {LENGTH_UNITS}", extras, sidecar)


def cmd_traps(data) -> Result:
    config, profile = _resonator(data), _profile(data)
    if isinstance(profile, Uniform):
        raise ConfigError("missing key 'profile.period'")
    pair = _pair(data, config, profile)
    dims = _opt(data, "traps", "dims", 3)
    py = _opt(data, "traps", "period_y", profile.period)
    lat = traps.node_lattice(config, profile, pair, dims, (profile.period, py),
                             _opt(data, "traps", "z_offset"))
    rows = [list(r) for r in lat.nodes]
    extras = {"counts": list(lat.counts), "size": lat.size,
              "estimate": traps.trap_count_estimate(2 * config.aperture_a, config.length,
                                                    profile.period)}
    return Result(HEADERS["traps"], rows, f"z from the periodic mirror; {LENGTH_UNITS}", extras)


def cmd_phase(data) -> Result:
    model = _model(data)
    sec = _require(data, "temperature", "Tmin", "Tmax", "steps")
    if sec["steps"] < 2:
        raise ConfigError("'temperature.steps' must be >= 2")
    if not 0 < sec["Tmin"] < sec["Tmax"]:
        raise ConfigError("temperature range must satisfy 0 < Tmin < Tmax")
    T = np.linspace(sec["Tmin"], sec["Tmax"], sec["steps"])
    curve = thermo.phase_curve(model, T)
    rows = [[pt.T, pt.y2, pt.s_or_y2b, pt.phi, pt.free_energy, pt.ordered] for pt in curve.points]
    extras = {"T_c": curve.T_c, "exponent_fit": curve.exponent_fit, "fit_r2": curve.fit_r2}
    return Result(HEADERS["phase"], rows, "energies and T in model units (k_B = 1)", extras)


DISPATCH = {"resonances": cmd_resonances, "spectrum": cmd_spectrum, "field": cmd_field,
            "farfield": cmd_farfield, "traps": cmd_traps, "phase": cmd_phase}


# -- output ------------------------------------------------------------------

def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return ""
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def _jsonable(v):
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        return float(v) if math.isfinite(v) else None
    return v


def _plain(v):
    """Like _jsonable but keeps non-finite floats (Python's json round-trips them)."""
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        return float(v)
    return v


def render_csv(command: str, res: Result) -> str:
    lines = [f"# {command}: {res.units}"]
    for key in ("T_c", "n_star"):
        if key in res.extras:
            lines.append(f"# {key}: {_fmt(res.extras[key])}")
    lines.append(",".join(res.columns))
    lines.extend(",".join(_fmt(v) for v in row) for row in res.rows)
    return "\n".join(lines) + "\n"


def render_json(command: str, res: Result) -> str:
    doc = {"command": command, "units": res.units, "columns": res.columns,
           "records": [dict(zip(res.columns, row)) for row in res.rows]}
    doc.update(res.extras)
    return json.dumps(_jsonable(doc), indent=1, sort_keys=False) + "\n"


def _write_atomic(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    with os.fdopen(fd, "w", newline="") as fh:
        fh.write(text)
    os.replace(tmp, path)


def execute(rc: RunConfig) -> Result:
    return DISPATCH[rc.command](rc.data)


def run_scan(rc: RunConfig, workers: int = 1) -> Result:
    children = expand_scan(rc)
    with tempfile.TemporaryDirectory(prefix="selforg-scan-") as tmp:
        def child(i):
            res = execute(children[i])
            # each child is persisted on its own before merging
            _write_atomic(Path(tmp) / f"child_{i:05d}.json",
                          json.dumps({"columns": res.columns, "rows": _plain(res.rows),
                                      "units": res.units}))
            return i

        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                list(pool.map(child, range(len(children))))
        else:
            for i in range(len(children)):
                child(i)
        rows, columns, units = [], None, ""
        for i, v in enumerate(rc.scan.values):
            doc = json.loads((Path(tmp) / f"child_{i:05d}.json").read_text())
            columns, units = doc["columns"], doc["units"]
            rows.extend([v] + r for r in doc["rows"])
    return Result(["scan_value"] + columns, rows, f"scan over {rc.scan.parameter}; {units}",
                  {"scan_parameter": rc.scan.parameter})


def run(rc: RunConfig, out: Optional[str] = None, fmt: Optional[str] = None,
        workers: int = 1, stdout=None) -> int:
    fmt = fmt or rc.fmt
    res = run_scan(rc, workers) if rc.command == "scan" else execute(rc)
    command = rc.scan.command if rc.command == "scan" else rc.command
    text = render_json(command, res) if fmt == "json" else render_csv(command, res)
    target = out or rc.output_path
    if target:
        path = Path(target)
        _write_atomic(path, text)
        if res.sidecar and fmt == "csv":
            suffix, cols, rows = res.sidecar
            side = Result(cols, rows, res.units)
            _write_atomic(path.with_name(f"{path.stem}.{suffix}.csv"), render_csv(command, side))
    else:
        (stdout or sys.stdout).write(text)
    return 0


def _error(exc: SelforgError, stream) -> None:
    stream.write(json.dumps({"error": exc.code, "message": str(exc)}) + "\n")


def main(argv: Optional[list] = None) -> int:
    parser = argparse.ArgumentParser(prog="selforg", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", required=True)
    parser.add_argument("--out")
    parser.add_argument("--format", choices=("csv", "json"))
    parser.add_argument("--workers", type=int)
    args = parser.parse_args(argv)
    workers = args.workers or int(os.environ.get(WORKERS_ENV, "1") or 1)
    try:
        text = Path(args.config).read_text()
        rc = parse_config(text, args.command)
    except OSError as exc:
        _error(ConfigError(f"cannot read config: {exc}"), sys.stderr)
        return 2
    except ConfigError as exc:
        _error(exc, sys.stderr)
        return 2
    try:
        return run(rc, args.out, args.format, max(1, workers))
    except ConfigError as exc:
        _error(exc, sys.stderr)
        return 2
    except SelforgError as exc:
        _error(exc, sys.stderr)
        return 3
    except ValueError as exc:
        _error(ConfigError(str(exc)), sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
