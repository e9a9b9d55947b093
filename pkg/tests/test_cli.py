import json
import subprocess
import sys

import pytest

from msdyn import cli, propagator, scenarios

NON_COMMUTING = """
[run]
scenario = custom
[grid]
t_start = -5
t_end = 5
n_steps = 2000
[linkage]
sets = 2, 2, 2
couplings = g1-m1:p, g2-m2:p, g1-m2:q, m1-e1:s, m2-e2:s2
[pulse:p]
kind = gaussian
amplitude = 3
[pulse:q]
kind = gaussian
amplitude = 1
[pulse:s]
kind = gaussian
amplitude = 2
[pulse:s2]
kind = gaussian
amplitude = 1
center = 0.5
[pulse:delta]
kind = constant
amplitude = 0
[initial]
state = g1
[target]
e1 = 1
"""

SMALL_X = """
[run]
scenario = x-fstirap
emit = summary, timeseries
[grid]
n_steps = 120000
[pulse:vp2]
amplitude = 121
"""


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_list(capsys):
    code, out, _ = run(["list"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 5
    assert any(line.startswith("x-fstirap: Fig. 4") for line in lines)
    assert {line.split(":")[0] for line in lines} == set(scenarios.PRESETS)


def test_list_json(capsys):
    code, out, _ = run(["list", "--json"], capsys)
    data = json.loads(out)
    assert code == 0 and len(data) == 5
    assert {"name": "npod-cpr", "provenance": "Fig. 2"}.items() <= data[0].items()


def test_run_w_rap(tmp_path, capsys):
    code, out, _ = run(["run", "--scenario", "w-rap", "--out", str(tmp_path)], capsys)
    assert code == 0
    summary = json.loads((tmp_path / "w-rap_summary.json").read_text())
    assert summary["fidelity"] >= 0.95
    assert json.loads(out)["fidelity"] == summary["fidelity"]
    assert summary["parameters"] == json.loads(json.dumps(scenarios.w_rap().parameters()))
    lines = (tmp_path / "w-rap_timeseries.csv").read_text().splitlines()
    assert lines[0] == "t,g1,g2,e1,e2,e3,de1,bg1,be1,bg2,be2,adiabaticity_ratio,nonadiabatic_max"
    assert len(lines) == 1 + scenarios.w_rap().grid.n_steps + 1
    assert (tmp_path / "w-rap_diagnostics.csv").exists()


def test_step_guard_exit_code(tmp_path, capsys):
    code, _, err = run(["run", "--scenario", "npod-cpr", "--steps", "100", "--out", str(tmp_path)], capsys)
    assert code == 3
    payload = json.loads(err)
    assert payload["error"] == "precondition" and "steps" in payload["message"]
    assert not any(tmp_path.iterdir())


def test_non_commuting_config_exit_code(tmp_path, capsys):
    cfg = tmp_path / "custom.cfg"
    cfg.write_text(NON_COMMUTING)
    code, _, err = run(["run", "--config", str(cfg), "--out", str(tmp_path / "out")], capsys)
    assert code == 3
    assert "commutator residual" in json.loads(err)["message"]


@pytest.mark.parametrize(
    "text",
    [
        "[run]\nscenario = w-rap\nspeed = 3\n",
        "[runn]\nscenario = w-rap\n",
        "[run]\nscenario = w-rap\n[grid]\nn_steps = many\n",
        "[run]\nscenario = nope\n",
        "[run]\nscenario = w-rap\n[pulse:vp]\nsigma = 2\n",
        "[run]\nscenario = w-rap\n[pulse:new]\namplitude = 2\n",
        "[run]\nscenario = custom\n[linkage]\npreset = W5\n",
        "this is not ini",
        "[run]\nscenario = w-rap\nemit = pictures\n",
    ],
)
def test_config_errors_exit_2(text, tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text(text)
    code, _, err = run(["run", "--config", str(cfg), "--out", str(tmp_path)], capsys)
    assert code == 2
    assert json.loads(err)["error"] == "config"


def test_missing_config_file(tmp_path, capsys):
    code, _, _ = run(["run", "--config", str(tmp_path / "absent.cfg")], capsys)
    assert code == 2


def test_integration_failure_exit_4(tmp_path, capsys, monkeypatch):
    monkeypatch.setattr(propagator, "rk4_linear", lambda c0, m, v, h: c0[None] * float("nan"))
    code, _, err = run(["run", "--scenario", "w-half-rap", "--out", str(tmp_path)], capsys)
    assert code == 4
    assert json.loads(err)["error"] == "integration"


def test_config_overrides_preset(tmp_path, capsys):
    cfg = tmp_path / "x.cfg"
    cfg.write_text(SMALL_X)
    code, out, _ = run(["run", "--config", str(cfg), "--out", str(tmp_path)], capsys)
    assert code == 0
    summary = json.loads(out)
    assert summary["parameters"]["grid"]["n_steps"] == 120000
    assert summary["parameters"]["pulses"]["vp2"]["amplitude"] == 121
    assert summary["parameters"]["pulses"]["vp2"]["width"] == 2.0
    assert sorted(p.name for p in tmp_path.iterdir()) == ["x-fstirap_summary.json", "x-fstirap_timeseries.csv", "x.cfg"]


def test_custom_config_with_amplitudes(tmp_path, capsys):
    cfg = tmp_path / "rabi.cfg"
    cfg.write_text(
        "[run]\nscenario = custom\nname = rabi\n[grid]\nt_start = 0\nt_end = 3.141592653589793\nn_steps = 4000\n"
        "[linkage]\nsets = 1, 1\ncouplings = g1-e:V\n[pulse:V]\nkind = constant\namplitude = 1\n"
        "[pulse:delta]\nkind = constant\namplitude = 0\n[initial]\ng1 = 1\n[target]\ne = 1j\n"
    )
    code, out, _ = run(["run", "--config", str(cfg), "--out", str(tmp_path), "--no-timeseries",
                        "--no-diagnostics"], capsys)
    assert code == 0
    assert json.loads(out)["fidelity"] == pytest.approx(1.0, abs=1e-10)
    assert (tmp_path / "rabi_summary.json").exists()


def test_outputs_are_deterministic(tmp_path, capsys):
    for sub in ("a", "b"):
        assert run(["run", "--scenario", "w-half-rap", "--out", str(tmp_path / sub)], capsys)[0] == 0
    for name in ("w-half-rap_timeseries.csv", "w-half-rap_diagnostics.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    a = json.loads((tmp_path / "a" / "w-half-rap_summary.json").read_text())
    b = json.loads((tmp_path / "b" / "w-half-rap_summary.json").read_text())
    a.pop("wall_time")
    b.pop("wall_time")
    assert a == b


def test_parallel_jobs(tmp_path, capsys):
    c1, c2 = tmp_path / "one.cfg", tmp_path / "two.cfg"
    c1.write_text("[run]\nscenario = w-half-rap\nname = one\nemit = summary\n")
    c2.write_text("[run]\nscenario = w-half-rap\nname = two\nemit = summary\n[grid]\nn_steps = 30000\n")
    code, _, _ = run(["run", "--config", str(c1), "--config", str(c2), "--jobs", "2", "--out", str(tmp_path)],
                     capsys)
    assert code == 0
    one = json.loads((tmp_path / "one_summary.json").read_text())
    two = json.loads((tmp_path / "two_summary.json").read_text())
    assert one["parameters"]["grid"]["n_steps"] == 20000
    assert two["parameters"]["grid"]["n_steps"] == 30000


def test_adiabatic_exponent_flag(tmp_path, capsys):
    base = run(["run", "--scenario", "w-half-rap", "--out", str(tmp_path), "--no-timeseries"], capsys)
    alt = run(["run", "--scenario", "w-half-rap", "--out", str(tmp_path), "--no-timeseries",
               "--adiabatic-exponent", "0.5"], capsys)
    r1 = json.loads(base[1])["max_adiabaticity_ratio"]
    r2 = json.loads(alt[1])["max_adiabaticity_ratio"]
    assert r1 != r2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "msdyn", "list"], capture_output=True, text=True)
    assert proc.returncode == 0 and "w-rap: Fig. 3" in proc.stdout
