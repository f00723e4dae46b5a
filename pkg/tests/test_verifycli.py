import json
import subprocess
import sys

import pytest

from chowforge.groebner import ideals_equal, parse_ideal
from chowforge.verifycli import (ConfigError, SuiteConfig, build_cases, export_ideal, main,
                                 parse_config, run)


def _strip(report):
    d = report.to_dict(timing=False)
    return d


def test_default_config_is_valid():
    cfg = SuiteConfig()
    cfg.validate()
    assert "engine" in cfg.selected and "gamma" in cfg.selected


@pytest.mark.parametrize("kwargs", [
    {"n_max": 4},
    {"r_max": 3},
    {"l_max": 5},
    {"n_max": 1},
    {"seed": -1},
    {"workers": 0},
    {"suites": ["nope"]},
])
def test_envelope_errors(kwargs):
    with pytest.raises(ConfigError):
        SuiteConfig(**kwargs).validate()


def test_force_lifts_envelope():
    SuiteConfig(n_max=4, force=True).validate()


def test_case_ids_unique():
    ids = [c.case_id for c in build_cases(SuiteConfig())]
    assert len(ids) == len(set(ids))


def test_deterministic_across_workers():
    cfg1 = SuiteConfig(suites=["steinberg", "gamma", "engine"], workers=1)
    cfg2 = SuiteConfig(suites=["steinberg", "gamma", "engine"], workers=2)
    a, b = _strip(run(cfg1)), _strip(run(cfg2))
    a["config"].pop("workers", None)
    b["config"].pop("workers", None)
    assert a == b
    assert a["summary"]["fail"] == 0


def test_report_schema():
    rep = run(SuiteConfig(suites=["sk1"]))
    d = json.loads(rep.to_json())
    assert d["schema"] == 1
    assert set(d["summary"]) == {"pass", "fail", "timeout", "open"}
    case = d["cases"][0]
    assert set(case) == {"suite", "case_id", "params", "verdict", "wall_ms", "gb_stats", "witness", "seed"}


def test_timeout_verdict():
    rep = run(SuiteConfig(suites=["intersection"], budget_steps=1, n_max=3))
    verdicts = {r.case_id: r.verdict for r in rep.records}
    assert "timeout" in verdicts.values()
    assert not rep.ok()
    assert rep.ok(soft_timeouts=True) == all(v != "fail" for v in verdicts.values())


def test_sl_jacobian_fails_and_sets_exit_code(capsys):
    rc = main(["jacobians"])
    out = capsys.readouterr().out
    assert rc == 1
    assert "FAIL" in out and "sl/n2/r1" in out


def test_json_stdout(capsys):
    rc = main(["gamma", "--json", "-"])
    d = json.loads(capsys.readouterr().out)
    assert rc == 0 and d["summary"]["pass"] == 7


def test_env_defaults(monkeypatch):
    monkeypatch.setenv("CHOWFORGE_SEED", "11")
    monkeypatch.setenv("CHOWFORGE_SUITES", "gamma,sk1")
    cfg = parse_config([])
    assert cfg.seed == 11 and cfg.selected == ["gamma", "sk1"]


def test_bad_cli_argument_exits():
    with pytest.raises(SystemExit):
        parse_config(["--n-max", "7"])


@pytest.mark.parametrize("case_id,nvars,ngens", [("Afrak:2:1", 6, 2), ("C:2:1:1", 6, 1)])
def test_export_round_trip(tmp_path, case_id, nvars, ngens):
    path = tmp_path / "ideal.txt"
    assert main(["export", case_id, str(path)]) == 0
    back = parse_ideal(path.read_text())
    orig = export_ideal(case_id)
    assert back.ring == orig.ring and ideals_equal(back, orig)
    assert len(orig.ring.free_vars) == nvars and len(orig.generators) == ngens


@pytest.mark.parametrize("case_id", ["Afrak:2:9", "nope:1:1", "C:2:x:1", "Sigma:2"])
def test_export_bad_id(tmp_path, case_id):
    assert main(["export", case_id, str(tmp_path / "x.txt")]) == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "chowforge.verifycli", "steinberg"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "pass=5" in proc.stdout
