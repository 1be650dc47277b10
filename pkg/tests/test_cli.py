import json
import os
import subprocess
import sys

import pytest

from ospboson.cli import RunConfig, UsageError, main, print_object, run_suite


def _clean_env():
    env = {k: v for k, v in os.environ.items() if not k.startswith("OSPBOSON_")}
    return env


def _spawn(args, cwd, env=None):
    full = dict(_clean_env())
    if env:
        full.update(env)
    return subprocess.run(
        [sys.executable, "-m", "ospboson", *args],
        cwd=cwd, env=full, capture_output=True, text=True, timeout=600)


# ---------------------------------------------------------------------------
# config validation


def test_config_defaults_valid():
    RunConfig().validate()


@pytest.mark.parametrize("kwargs", [
    {"order": 3},
    {"samples": 9},
    {"suite": "bogus"},
    {"convention": 0},
    {"digits": 30, "tolerance": 1e-40},
])
def test_config_rejects(kwargs):
    with pytest.raises(UsageError):
        RunConfig(**kwargs).validate()


# ---------------------------------------------------------------------------
# printer


def test_print_kernel_ee_has_monomial_line():
    text = print_object("kernel", "EE")
    assert "(z - w)" in text


def test_print_coproduct_e_two_terms():
    text = print_object("coproduct", "E")
    assert "E(z; 0) (x) 1" in text
    assert "H-(z*p^((1/2)*c_0); 0) (x) E(z*p^(c_0); 1)" in text


def test_print_structure_function_modes_differ():
    canonical = print_object("structure-function", "HH")
    strict = print_object("structure-function", "HH", strict_text=True)
    assert canonical != strict
    assert "theta_q2" in canonical


def test_print_unknown_id():
    with pytest.raises(UsageError):
        print_object("kernel", "XX")
    with pytest.raises(UsageError):
        print_object("widget", "EE")


# ---------------------------------------------------------------------------
# run_suite semantics (in process)


def test_ope_suite_three_contraction_passes(tmp_path):
    out = tmp_path / "r.json"
    code = run_suite(RunConfig(suite="ope", order=8, out=str(out)))
    assert code == 0
    rep = json.loads(out.read_text(encoding="utf-8"))
    reports = rep["suites"][0]["reports"]
    assert len(reports) == 3
    assert all(r["check"] == "contraction-identity" for r in reports)
    assert all(r["verdict"] == "pass" for r in reports)
    assert rep["overall_verdict"] == "pass"


def test_report_key_order(tmp_path):
    out = tmp_path / "r.json"
    run_suite(RunConfig(suite="ope", order=8, out=str(out)))
    rep = json.loads(out.read_text(encoding="utf-8"))
    assert list(rep) == [
        "tool_version", "generated_at", "config", "suites", "overall_verdict"]
    assert list(rep["config"])[0] == "suite"


def test_hopf_suite_fails_with_witnesses(tmp_path):
    # the antipode obstruction on the odd generators is real: the suite
    # must exit 1 and still write the full report
    out = tmp_path / "r.json"
    code = run_suite(RunConfig(suite="hopf", out=str(out)))
    assert code == 1
    rep = json.loads(out.read_text(encoding="utf-8"))
    assert rep["overall_verdict"] == "fail"
    search = rep["suites"][0]["reports"][-1]
    assert search["check"] == "hopf-convention-search"
    assert search["universal_failures"] == ["a2:E", "a2:F"]
    assert search["corrected_antipode_annotation"]["passing_conventions"]


def test_main_usage_error_exit_2(tmp_path):
    code = main(["--tolerance", "1e-40", "--digits", "30",
                 "--out", str(tmp_path / "r.json")])
    assert code == 2
    assert not (tmp_path / "r.json").exists()


def test_env_overrides(tmp_path, monkeypatch):
    monkeypatch.setenv("OSPBOSON_SUITE", "ope")
    monkeypatch.setenv("OSPBOSON_ORDER", "8")
    monkeypatch.setenv("OSPBOSON_OUT", str(tmp_path / "env.json"))
    assert main([]) == 0
    rep = json.loads((tmp_path / "env.json").read_text(encoding="utf-8"))
    assert [s["name"] for s in rep["suites"]] == ["ope"]
    assert rep["config"]["order"] == 8
    # explicit flags win over the environment
    monkeypatch.setenv("OSPBOSON_ORDER", "99")
    assert main(["--order", "8", "--suite", "ope",
                 "--out", str(tmp_path / "env2.json")]) == 0
    rep2 = json.loads((tmp_path / "env2.json").read_text(encoding="utf-8"))
    assert rep2["config"]["order"] == 8


# ---------------------------------------------------------------------------
# exit codes via the spawned binary


def test_spawned_ope_exit_0(tmp_path):
    res = _spawn(["--suite", "ope", "--order", "8", "--out", "r.json"],
                 cwd=tmp_path)
    assert res.returncode == 0, res.stderr


def test_spawned_hopf_exit_1_report_written(tmp_path):
    res = _spawn(["--suite", "hopf", "--out", "r.json"], cwd=tmp_path)
    assert res.returncode == 1, res.stderr
    assert (tmp_path / "r.json").exists()


def test_spawned_bad_flag_exit_2(tmp_path):
    res = _spawn(["--suite", "nonsense"], cwd=tmp_path)
    assert res.returncode == 2


def test_spawned_print(tmp_path):
    res = _spawn(["print", "kernel", "EE"], cwd=tmp_path)
    assert res.returncode == 0
    assert "(z - w)" in res.stdout
    res = _spawn(["print", "kernel", "XX"], cwd=tmp_path)
    assert res.returncode == 2


def test_full_suite_deterministic(tmp_path):
    # identical config and seed, two fresh working directories: reports are
    # byte-identical apart from the timestamp line
    args = ["--samples", "10", "--digits", "30", "--seed", "3",
            "--out", "report.json"]
    dirs = []
    for name in ("one", "two"):
        d = tmp_path / name
        d.mkdir()
        res = _spawn(args, cwd=d)
        assert res.returncode == 1, res.stderr  # honest hopf failure
        dirs.append(d)
    texts = []
    for d in dirs:
        lines = (d / "report.json").read_text(encoding="utf-8").splitlines()
        texts.append([ln for ln in lines if '"generated_at"' not in ln])
    assert texts[0] == texts[1]
