"""Command-line interface: determinism, exit codes, formats."""

import json

import pytest

from gradedmod import cli
from gradedmod.textio import parse_workspace, serialize_workspace

WORKSPACE = """modulus 4
group G moduli
ring R G
  component 1
  one 1
  mult 0 0 1
end
ring S G
  component 1
  rel 2
  one 1
  mult 0 0 1
end
ringhom h R S
  map 0 1
end
module M R
  component 1
  act 0 0 1
end
check ringepi h true
"""

FAILING = WORKSPACE.replace("check ringepi h true", "check ringepi h false")


def _run(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, out


@pytest.fixture()
def ws_file(tmp_path):
    p = tmp_path / "ws.txt"
    p.write_text(WORKSPACE)
    return str(p)


def test_validate_ok(capsys, ws_file):
    code, out = _run(capsys, ["--input", ws_file, "validate"])
    assert code == 0
    assert "ok" in out or "valid" in out


def test_deterministic_output(capsys, ws_file):
    for cmd in (["--input", ws_file, "epitest", "--h", "h"],
                ["--input", ws_file, "tensor", "M", "M", "--format", "json"],
                ["epitest", "--h", "z4_to_z2"],
                ["canon", "sigma", "frobenius", "frobenius.SS",
                 "--format", "json"],
                ["scenario", "run", "d40C"]):
        _, first = _run(capsys, list(cmd))
        _, second = _run(capsys, list(cmd))
        assert first == second, f"non-deterministic output for {cmd}"


def test_json_format_version(capsys, ws_file):
    code, out = _run(capsys, ["--input", ws_file, "analyze", "M",
                              "--format", "json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["format_version"] == "1"
    assert payload["command"] == "analyze"


def test_text_and_json_agree_on_flags(capsys):
    _, text_out = _run(capsys, ["epitest", "--h", "z4_to_z2"])
    _, json_out = _run(capsys, ["epitest", "--h", "z4_to_z2",
                                "--format", "json"])
    assert "ring epimorphism: true" in text_out
    assert json.loads(json_out)["ring epimorphism"] is True


def test_exit_code_assertion_failure(capsys, tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text(FAILING)
    code, out = _run(capsys, ["--input", str(p), "validate"])
    assert code == 1


def test_exit_code_input_error(capsys, tmp_path):
    p = tmp_path / "broken.txt"
    p.write_text("modulus x\n")
    code, out = _run(capsys, ["--input", str(p), "validate"])
    assert code == 2
    assert "error:" in out

    code, out = _run(capsys, ["analyze", "no_such_name"])
    assert code == 2


def test_global_flags_after_subcommand(capsys, ws_file):
    before, _ = cli.main(["--input", ws_file, "validate"]), None
    after = cli.main(["validate", "--input", ws_file])
    assert before == after == 0


def test_battery_command(capsys):
    code, out = _run(capsys, ["battery", "--h", "z4_to_z2",
                              "--family", "z4_to_z2.SS"])
    assert code == 0
    for verdict in ("i", "ii", "iii", "iv", "v", "vi", "vii"):
        assert f"{verdict}: true" in out


def test_scenario_list(capsys):
    code, out = _run(capsys, ["scenario", "list"])
    assert code == 0
    for name in ("d40C", "d25E", "c150-frobenius", "d70-battery-epi",
                 "d70-battery-nonepi", "d80-coarsen"):
        assert name in out


def test_workspace_round_trip(ws_file):
    ws = parse_workspace(WORKSPACE)
    assert parse_workspace(serialize_workspace(ws)) == ws


def test_change_of_ring_commands(capsys, ws_file):
    for cmd in ("restrict", "extend", "coextend"):
        argv = ["--input", ws_file, cmd, "--h", "h", "M"]
        if cmd == "restrict":
            # restriction goes the other way: S-module along h
            argv = ["restrict", "--h", "z4_to_z2", "z4_to_z2.SS"]
        code, out = _run(capsys, argv)
        assert code == 0, (cmd, out)
        assert "cardinality" in out
