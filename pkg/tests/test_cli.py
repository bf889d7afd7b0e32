import json
import subprocess
import sys

import pytest

from conftest import double, redirect_mul, relabel_arrows
from dgc.cli import RunConfig, UsageError, main, run_cli
from dgc.dblgrpd import DoubleGroupoid
from dgc.formats import parse_input, to_json


def run(command, path, **kw):
    return run_cli(RunConfig(command, str(path), **kw))


@pytest.fixture
def interchange_fixture(tmp_path):
    D = double("dinertia", "Z2")
    bad = DoubleGroupoid(D.V, D.H, redirect_mul(D.top, "(0,1)", "(1,0)", "(1,1)"), D.left)
    path = tmp_path / "interchange.json"
    path.write_text(to_json(bad), encoding="utf-8")
    return path


def test_check_dinertia_pair2_passes():
    code, text = run("check", "dinertia:pair:2")
    assert code == 0
    assert text.endswith("ALL CHECKS PASSED (|D|=16, |C|=4, leaves: 4/4/4/4)\n")
    headers = [l for l in text.splitlines() if l.startswith("[")]
    assert headers == ["[VALIDATE]", "[LEAVES]", "[IDENTITIES]", "[COMPARE]"]


def test_leaves_lists_four_leaves_of_size_two():
    code, text = run("leaves", "dinertia:pair:2", kind="X")
    assert code == 0
    leaf_lines = [l for l in text.splitlines() if l.strip().startswith("leaf ")]
    assert len(leaf_lines) == 4 and all("(size 2)" in l for l in leaf_lines)


def test_interchange_fixture_exits_one(interchange_fixture):
    code, text = run("validate", interchange_fixture)
    assert code == 1
    assert "FAIL interchange (" in text
    line = next(l for l in text.splitlines() if "FAIL interchange" in l)
    assert line.count("),") + 1 >= 4  # a four-square witness
    assert text.splitlines()[-1].startswith("FAILED: [VALIDATE] ")


def test_check_on_invalid_skips_later_stages(interchange_fixture):
    code, text = run("check", interchange_fixture)
    assert code == 1
    assert text.count("skipped: the structure is not valid") == 3


def test_reduce_and_core_commands():
    code, text = run("reduce", "dinertia:pair:2", kind="X")
    assert code == 0 and "reduction=yes" in text and "total_on_dom=no" in text
    code, text = run("core", "dinertia:group:z2")
    assert code == 0 and "(1,0) ∘ (1,0) = (0,0)" in text


def test_groupoid_check_runs_star_monoid_stage():
    code, text = run("check", "pair:3")
    assert code == 0 and "[STAR-MONOID]" in text


def test_json_report_is_valid_json(interchange_fixture):
    code, text = run("validate", interchange_fixture, format="json")
    data = json.loads(text)
    assert code == 1 and data["ok"] is False
    assert data["first_failure"]["stage"] == "VALIDATE"
    laws = [v["law"] for v in data["stages"][0]["violations"]]
    assert "interchange" in laws


def test_fail_fast_keeps_one_violation(interchange_fixture):
    _, full = run("validate", interchange_fixture)
    _, fast = run("validate", interchange_fixture, fail_fast=True)
    assert fast.count("FAIL ") == 1 < full.count("FAIL ")


def test_exit_two_on_parse_errors(tmp_path):
    assert run("validate", tmp_path / "none.json")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    code, text = run("validate", bad)
    assert code == 2 and "line 1" in text
    assert run("leaves", "pair:2", kind="X")[0] == 2  # needs a double


def test_config_invariants():
    with pytest.raises(UsageError):
        RunConfig("leaves", "pair:2")
    with pytest.raises(UsageError):
        RunConfig("export", "pair:2", format="text")
    with pytest.raises(UsageError):
        RunConfig("check", "pair:2", format="dot")
    with pytest.raises(UsageError):
        RunConfig("leaves", "pair:2", kind="Q")
    assert RunConfig("leaves", "x", kind="Y").kind.value == "Y"


def test_export_round_trip_through_cli(tmp_path):
    code, text = run("export", "dinertia:pair:2", format="json")
    assert code == 0
    path = tmp_path / "d.json"
    path.write_text(text, encoding="utf-8")
    assert parse_input(path) == double("dinertia", "Pair(2)")
    assert run("export", path, format="json") == (0, text)
    code, dot = run("export", "dmain:group:z2", format="dot")
    assert code == 0 and dot.count('class="core"') == 1


def test_repeated_runs_are_byte_identical(interchange_fixture):
    for args in (("check", "dinertia:pair:2"), ("validate", str(interchange_fixture)),
                 ("leaves", "dinertia:pair:3"), ("export", "dinertia:group:z3")):
        kw = {"kind": "W"} if args[0] == "leaves" else {}
        if args[0] == "export":
            kw["format"] = "dot"
        assert run(*args, **kw) == run(*args, **kw)


def test_main_entry_point(capsys):
    assert main(["check", "dmain:group:z2"]) == 0
    assert capsys.readouterr().out.endswith("ALL CHECKS PASSED (|D|=2, |C|=1, leaves: 1/1/1/1)\n")
    assert main(["leaves", "dmain:group:z2"]) == 2
    assert "requires --kind" in capsys.readouterr().err
    assert main(["export", "group:z2"]) == 0
    assert json.loads(capsys.readouterr().out)["arrows"] == ["0", "1"]


def test_console_script_subprocess(tmp_path):
    bad = tmp_path / "v.json"
    D = double("dinertia", "Z3")
    relabelled = DoubleGroupoid(relabel_arrows(D.V, {"0": "1", "1": "0"}), D.H, D.top, D.left)
    bad.write_text(to_json(relabelled), encoding="utf-8")
    out = subprocess.run([sys.executable, "-m", "dgc.cli", "validate", str(bad)],
                         capture_output=True, text=True)
    assert out.returncode == 1
    assert "compat:top.src:unit-preservation" in out.stdout
