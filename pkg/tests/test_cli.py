from __future__ import annotations

import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from selforg.cli import HEADERS, execute, expand_scan, main, parse_config, render_csv
from selforg.errors import ConfigError

CONFIGS = Path(__file__).resolve().parent.parent / "configs"
DOCUMENTED = ["resonances", "spectrum", "field", "farfield", "traps", "phase", "scan"]

PHASE = """
command = "phase"
[model]
kind = "dicke"
epsilon = 1.0
lambda = {lam}
[temperature]
Tmin = 0.1
Tmax = 2.0
steps = {steps}
"""


def read_csv(path):
    lines = [ln for ln in Path(path).read_text().splitlines() if not ln.startswith("#")]
    return list(csv.reader(lines))


def run_cli(tmp_path, name, *extra, config=None):
    out = tmp_path / f"{name}.out"
    cfg = config or CONFIGS / f"{name}.toml"
    code = main([name, "--config", str(cfg), "--out", str(out), *extra])
    return code, out


def test_minimal_phase_config():
    rc = parse_config(PHASE.format(lam=1.5, steps=5))
    assert rc.command == "phase" and rc.fmt == "csv"
    assert rc.data["model"]["lambda"] == 1.5


def test_missing_period_named():
    text = (CONFIGS / "field.toml").read_text().replace("period = 20.0\n", "")
    rc = parse_config(text)
    with pytest.raises(ConfigError, match=r"profile\.period"):
        execute(rc)


def test_unknown_key_with_line():
    text = (CONFIGS / "resonances.toml").read_text().replace("m = 0.5", "m = 0.5\ncolour = 1")
    with pytest.raises(ConfigError, match=r"unknown key 'profile\.colour' \(line \d+\)"):
        parse_config(text)


def test_bad_type():
    with pytest.raises(ConfigError, match=r"bad type for 'mode\.n_max'"):
        parse_config('command = "resonances"\n[mode]\nn_max = "three"\n')


def test_scan_expansion():
    rc = parse_config((CONFIGS / "scan.toml").read_text())
    children = expand_scan(rc)
    assert len(children) == 11
    values = [c.data["profile"]["beta2"] for c in children]
    assert values[0] == 0.0 and values[-1] == 0.5
    assert all(c.command == "spectrum" for c in children)


def test_scan_validation():
    text = (CONFIGS / "scan.toml").read_text().replace("steps = 11", "steps = 1")
    with pytest.raises(ConfigError):
        parse_config(text)


def test_resonances_rows(tmp_path):
    code, out = run_cli(tmp_path, "resonances")
    rows = read_csv(out)
    assert code == 0 and rows[0] == HEADERS["resonances"]
    assert {(int(r[0]), int(r[1])) for r in rows[1:]} == {(-1, 3), (0, 2), (1, 1), (2, 0), (3, -1)}


@pytest.mark.parametrize("name", DOCUMENTED)
def test_headers(tmp_path, name):
    code, out = run_cli(tmp_path, name)
    assert code == 0
    header = read_csv(out)[0]
    key = "spectrum" if name == "scan" else name
    assert header[-len(HEADERS[key]):] == HEADERS[key]
    assert Path(out).read_text().startswith("# ")


def test_phase_disordered(tmp_path):
    cfg = tmp_path / "p.toml"
    cfg.write_text(PHASE.format(lam=0.5, steps=6))
    code, out = run_cli(tmp_path, "phase", config=cfg)
    assert code == 0
    rows = read_csv(out)[1:]
    assert all(float(r[1]) == 0 and r[5] == "false" for r in rows)
    code, out = run_cli(tmp_path, "phase", "--format", "json", config=cfg)
    assert json.loads(out.read_text())["T_c"] is None


def test_farfield_single_lobe(tmp_path):
    code, out = run_cli(tmp_path, "farfield", "--format", "json")
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["n_star"] == 1 and len(doc["lobes"]) == 1
    assert len(doc["main_lobes"]) == 1


def test_json_mirrors_csv(tmp_path):
    (tmp_path / "j").mkdir()
    _, c = run_cli(tmp_path, "traps")
    code, j = run_cli(tmp_path / "j", "traps", "--format", "json")
    doc = json.loads(j.read_text())
    rows = read_csv(c)
    assert doc["columns"] == rows[0]
    assert len(doc["records"]) == len(rows) - 1
    for rec, b in zip(doc["records"], rows[1:]):
        assert [rec[k] for k in doc["columns"]] == [float(v) for v in b]


def test_validation_exit_code(tmp_path, capsys):
    cfg = tmp_path / "bad.toml"
    cfg.write_text('command = "phase"\n[model]\nkind = "dicke"\n')
    code, _ = run_cli(tmp_path, "phase", config=cfg)
    assert code == 2
    err = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert err["error"] and "model" in err["message"]


def test_solver_failure_exit_code(tmp_path):
    text = (CONFIGS / "traps.toml").read_text().replace("n2 = 1", "n2 = 2")
    cfg = tmp_path / "t.toml"
    cfg.write_text(text)
    code, _ = run_cli(tmp_path, "traps", config=cfg)
    assert code == 3


def test_missing_file(tmp_path):
    assert main(["phase", "--config", str(tmp_path / "nope.toml")]) == 2


def test_entry_point_stdout():
    proc = subprocess.run([sys.executable, "-m", "selforg", "resonances",
                           "--config", str(CONFIGS / "resonances.toml")],
                          capture_output=True, text=True, check=True)
    assert "n1,n2,parity,s" in proc.stdout


@pytest.mark.parametrize("name", DOCUMENTED)
@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_deterministic(tmp_path, name, fmt):
    a = tmp_path / "a"
    b = tmp_path / "b"
    a.mkdir()
    b.mkdir()
    assert run_cli(a, name, "--format", fmt)[0] == 0
    assert run_cli(b, name, "--format", fmt)[0] == 0
    for fa in sorted(a.iterdir()):
        assert fa.read_bytes() == (b / fa.name).read_bytes()


def test_scan_workers_independent(tmp_path):
    one = run_cli(tmp_path, "scan", "--workers", "1")[1].read_bytes()
    four = run_cli(tmp_path, "scan", "--workers", "4")[1].read_bytes()
    assert one == four


def test_scan_is_concatenation(tmp_path):
    _, out = run_cli(tmp_path, "scan")
    merged = read_csv(out)
    rc = parse_config((CONFIGS / "scan.toml").read_text())
    expected = []
    for child in expand_scan(rc):
        text = render_csv("spectrum", execute(child))
        body = [r for r in csv.reader(io.StringIO(text)) if r and not r[0].startswith("#")][1:]
        expected.extend(body)
    assert [r[1:] for r in merged[1:]] == expected
