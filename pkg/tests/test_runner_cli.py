"""Suite orchestration and command-line contract: config validation, record
ordering, byte-stable reports, the frozen schema, and exit codes."""

import json
import os

import pytest

from triadlab.cli import main
from triadlab.runner import (
    RESIDUAL_UNEVALUABLE,
    ConfigError,
    Report,
    RunConfig,
    emit_report,
    run_suite,
)

SMALL = dict(example_id="r3-standard", c_values=(0.0,), points=2, seed=3)


def test_config_validation_rejects_bad_inputs():
    RunConfig(**SMALL).validate()
    with pytest.raises(ConfigError):
        RunConfig(example_id="nope").validate()
    with pytest.raises(ConfigError):
        RunConfig(example_id="r3-standard", c_values=()).validate()
    with pytest.raises(ConfigError):
        RunConfig(example_id="r3-standard", points=0).validate()
    with pytest.raises(ConfigError):
        RunConfig(example_id="r3-standard", mode="symbolic").validate()
    with pytest.raises(ConfigError):
        RunConfig(example_id="r3-standard", fmt="xml").validate()
    with pytest.raises(ConfigError):
        RunConfig(example_id="r3-standard", fd_step=0.0).validate()


def test_run_suite_small_config_passes():
    rep = run_suite(RunConfig(**SMALL))
    assert rep.ok
    assert rep.records
    keys = [(r["name"], r["variant"], r["point_index"]) for r in rep.records]
    assert keys == sorted(keys)
    # summary tallies must agree with the raw records
    for name, s in rep.summary.items():
        mine = [r for r in rep.records if r["name"] == name]
        assert s["count"] == len(mine)
        assert s["passed"] == sum(r["passed"] for r in mine)
        assert s["max_residual"] == max(r["residual"] for r in mine)
    assert rep.example["id"] == "r3-standard"
    assert rep.engine["mode"] == "ad"


def test_run_suite_twenty_point_sweep():
    rep = run_suite(RunConfig(example_id="r3-standard", c_values=(0.0,),
                              points=20, seed=42))
    assert rep.ok


def test_negative_mode_every_control_fires():
    rep = run_suite(RunConfig(example_id="r3-standard",
                              negative_controls=True))
    assert rep.ok
    assert rep.records
    assert all(not r["passed"] for r in rep.records)
    names = {r["name"] for r in rep.records}
    # the plane Nijenhuis tensor vanishes in dimension three, so the two
    # J-sensitive faults are (correctly) not scheduled on this example
    assert "fault-flipped-correction" not in names
    assert "fault-wrong-family-parameter" in names
    assert "fault-scale-mismatch" in names
    assert "control-structure-equation-dropped-torsion" in names


def test_negative_mode_includes_j_faults_when_twisted():
    rep = run_suite(RunConfig(example_id="r5-perturbed-J", points=2,
                              negative_controls=True))
    assert rep.ok
    names = {r["name"] for r in rep.records}
    assert "fault-flipped-correction" in names
    assert "fault-levi-civita-not-complex-linear" in names


def test_check_errors_become_records_not_crashes(monkeypatch):
    def boom(*a, **kw):
        raise RuntimeError("synthetic failure")

    monkeypatch.setattr("triadlab.runner.check_axioms", boom)
    rep = run_suite(RunConfig(**SMALL))
    assert not rep.ok
    bad = [r for r in rep.records if r["note"].startswith("error:")]
    assert len(bad) == 2 * 6  # two points, six axiom names each
    for r in bad:
        assert r["residual"] == RESIDUAL_UNEVALUABLE
        assert not r["passed"]
        assert "synthetic failure" in r["note"]


def test_json_report_is_byte_deterministic():
    a = emit_report(run_suite(RunConfig(**SMALL)), "json")
    b = emit_report(run_suite(RunConfig(**SMALL)), "json")
    assert a == b
    assert a.endswith(b"\n")
    assert b'"fd_step":1.000000000000e-04' in a


def test_json_report_reparses_with_sorted_keys():
    rep = run_suite(RunConfig(**SMALL))
    doc = json.loads(emit_report(rep, "json"))
    assert list(doc) == sorted(doc)
    assert doc["schema_version"] == "1"
    assert doc["ok"] is True
    assert len(doc["records"]) == len(rep.records)
    for got, want in zip(doc["records"], rep.records):
        assert list(got) == sorted(got)
        assert got["name"] == want["name"]
        assert got["residual"] == pytest.approx(want["residual"], rel=1e-11,
                                                abs=1e-300)


def test_report_schema_matches_frozen_golden():
    def skeleton(obj):
        if isinstance(obj, bool):
            return "bool"
        if isinstance(obj, int):
            return "int"
        if isinstance(obj, float):
            return "float"
        if isinstance(obj, str):
            return "str"
        if obj is None:
            return "null"
        if isinstance(obj, dict):
            return {k: skeleton(v) for k, v in sorted(obj.items())}
        if isinstance(obj, (list, tuple)):
            return [skeleton(obj[0])] if len(obj) else []
        raise TypeError(type(obj))

    here = os.path.dirname(__file__)
    with open(os.path.join(here, "golden", "report_schema.json")) as fh:
        golden = json.load(fh)
    rep = run_suite(RunConfig(**SMALL))
    assert skeleton(rep.to_dict()) == golden


def test_csv_report_shape():
    rep = run_suite(RunConfig(**SMALL))
    text = emit_report(rep, "csv").decode("utf-8")
    lines = text.splitlines()
    assert lines[0] == "name,variant,point_index,residual,tolerance,passed"
    assert len(lines) == 1 + len(rep.records)
    for line in lines[1:]:
        cols = line.split(",")
        assert len(cols) == 6
        float(cols[3])
        float(cols[4])
        assert cols[5] in ("true", "false")
    assert emit_report(run_suite(RunConfig(**SMALL)), "csv").decode() == text


# -- command line ----------------------------------------------------------

CLI_FAST = ["check", "--example", "r3-standard", "--c", "0",
            "--points", "1", "--seed", "4"]


def test_cli_check_writes_json_to_stdout(capsys):
    assert main(CLI_FAST) == 0
    out = capsys.readouterr().out
    doc = json.loads(out)
    assert doc["ok"] is True
    assert doc["config"]["example"] == "r3-standard"


def test_cli_check_csv_format(capsys):
    assert main(CLI_FAST + ["--format", "csv"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("name,variant,point_index,residual")


def test_cli_empty_parameter_sweep_is_usage_error(capsys):
    assert main(["check", "--example", "r3-standard", "--c", ""]) == 2
    assert "at least one c" in capsys.readouterr().err


def test_cli_unparseable_parameter_is_usage_error(capsys):
    assert main(["check", "--example", "r3-standard", "--c", "zero"]) == 2
    assert "could not parse" in capsys.readouterr().err


def test_cli_unknown_example_is_usage_error(capsys):
    assert main(["check", "--example", "mystery", "--points", "1"]) == 2
    assert "list-examples" in capsys.readouterr().err


def test_cli_list_examples(capsys):
    assert main(["list-examples"]) == 0
    out = capsys.readouterr().out
    for ex_id in ("r3-standard", "r5-standard", "r7-standard", "r9-standard",
                  "t3-tight", "r3-perturbed-J", "r5-perturbed-J"):
        assert ex_id in out


def test_cli_describe_check(capsys):
    assert main(["describe-check", "scaling-transfer"]) == 0
    assert "scaling-transfer" in capsys.readouterr().out
    assert main(["describe-check", "bogus"]) == 2
    err = capsys.readouterr().err
    assert "unknown check" in err and "axiom-hermitian" in err


def test_cli_no_command_prints_help(capsys):
    assert main([]) == 2
    assert "usage" in capsys.readouterr().out.lower()


def test_cli_missing_required_argument(capsys):
    assert main(["check"]) == 2


def test_cli_help_exits_zero(capsys):
    assert main(["--help"]) == 0


def test_cli_out_file_and_determinism(tmp_path, capsys):
    p1 = tmp_path / "a.json"
    p2 = tmp_path / "sub" / "b.json"
    assert main(CLI_FAST + ["--out", str(p1)]) == 0
    assert main(CLI_FAST + ["--out", str(p2)]) == 0
    assert capsys.readouterr().out == ""
    assert p1.read_bytes() == p2.read_bytes()
    json.loads(p1.read_bytes())


def test_cli_out_respects_report_dir_env(tmp_path, monkeypatch):
    monkeypatch.setenv("TRIADLAB_REPORT_DIR", str(tmp_path))
    assert main(CLI_FAST + ["--out", "nested/report.json"]) == 0
    assert (tmp_path / "nested" / "report.json").exists()


def test_cli_failing_suite_exits_one(monkeypatch, capsys):
    fake = Report(config={}, engine={}, example={}, records=[], summary={},
                  ok=False)
    monkeypatch.setattr("triadlab.cli.run_suite", lambda cfg: fake)
    assert main(CLI_FAST) == 1
    assert json.loads(capsys.readouterr().out)["ok"] is False


def test_cli_negative_controls_healthy(capsys):
    assert main(["check", "--example", "r3-standard",
                 "--negative-controls"]) == 0
    assert json.loads(capsys.readouterr().out)["ok"] is True
