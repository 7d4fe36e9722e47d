import json
import subprocess
import sys

import pytest

from toralrev import cli
from toralrev.errors import ParseError


def run(*argv):
    return cli.run(list(argv))


def run_main(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def j(*argv):
    code, text = cli.run(list(argv) + ["--json"])
    return code, json.loads(text)


def test_reversible_json():
    code, doc = j("reversible", "2,1;1,1")
    assert code == 0 and doc["schema_version"] == "1" and doc["command"] == "reversible"
    assert doc["verdicts"]["reversible"] and doc["verdicts"]["strongly_reversible"]
    types = {c["type"] for c in doc["certificates"]}
    assert types == {"reverser", "involutive_reverser"} and all(c["verified"] for c in doc["certificates"])


def test_negative_verdict_exit_zero():
    code, doc = j("reversible", "1,1;1,0")
    assert code == 0 and not doc["verdicts"]["reversible"] and doc["certificates"] == []


def test_fixed_points_obstruction():
    code, doc = j("fixed-points", "1,1;0,1|0,1/3")
    assert code == 0 and doc["verdicts"]["verdict"] == "empty"
    assert "second-coordinate" in doc["verdicts"]["reason"]


def test_pick_negative_entries():
    code, doc = j("pick", "-5,1;1,0")
    assert code == 0
    assert doc["verdicts"] == {"criterion_holds": True, "area": 5, "g1": 1, "g2": 1}


@pytest.mark.parametrize(
    "argv",
    [
        ["classify", "0,-1;1,0"],
        ["involution", "1,0;-1,-1"],
        ["conjugate", "1,5;0,1", "1,-5;0,1"],
        ["strongly-reversible", "1,7;0,1"],
        ["affine-reversible", "2,1;1,1|1/2,1/3"],
        ["affine-strongly-reversible", "1,3;0,1|1/5,2/7"],
        ["g-conjugate", "1,1;0,1|0,1/3", "1,1;0,1|1/2,2/3"],
        ["dichotomy", "1,0;0,-1"],
        ["lattice", "-1,0;0,-1"],
        ["entropy", "2,1;1,1"],
        ["entropy", "2,1;1,1|1/2,1/3"],
        ["growth", "2,1;1,1", "30"],
        ["orbit", "2,1;1,1|0,0", "1/5,2/5", "50"],
        ["reciprocal-pair", "3,1;2,1"],
        ["render-orbit", "1,0;0,1|1/2,0", "0,0", "5"],
        ["render-parallelogram", "2,1;1,1"],
    ],
)
def test_commands_answer(argv):
    code, doc = j(*argv)
    assert code == 0 and doc["command"] == argv[0]
    for c in doc["certificates"]:
        assert c["verified"]


def test_round_trip_echo():
    for argv in (["reversible", "2,1;1,1"], ["g-conjugate", "1,1;0,1|0,1/3", "1,1;0,1|0,2/3"], ["growth", "3,1;2,1", "12"]):
        _, first = j(*argv)
        echo = list(first["input_echo"].values())
        _, second = j(argv[0], *echo)
        assert json.dumps(first["verdicts"], sort_keys=True) == json.dumps(second["verdicts"], sort_keys=True)
        assert first["certificates"] == second["certificates"]


def test_text_output():
    code, text = run("reversible", "2,1;1,1")
    assert code == 0 and "strongly_reversible: true" in text and "verified" in text


def test_entropy_digits_env(monkeypatch):
    monkeypatch.setenv("TORALREV_MAX_DIGITS", "20")
    _, doc = j("entropy", "2,1;1,1")
    assert doc["verdicts"]["decimal"] == "0.96242365011920689500"
    monkeypatch.setenv("TORALREV_MAX_DIGITS", "oops")
    with pytest.raises(ParseError):
        run("entropy", "2,1;1,1")


def test_exit_codes(capsys):
    assert run_main(capsys, "reversible", "1,2;3,4")[0] == 2
    assert run_main(capsys, "reversible", "banana")[0] == 2
    assert run_main(capsys, "no-such-command")[0] == 2
    assert run_main(capsys, "growth", "2,1;1,1", "0")[0] == 2
    assert run_main(capsys, "growth", "2,1;1,1", str(10**6 + 1))[0] == 2
    assert run_main(capsys, "growth", "1,1;0,1", "3")[0] == 3
    assert run_main(capsys, "growth", "0,-1;1,0", "4")[0] == 3
    assert run_main(capsys, "lattice", "1,1;0,1")[0] == 3
    assert run_main(capsys, "reciprocal-pair", "1,1;0,1")[0] == 3
    code, out, err = run_main(capsys, "pick", "-5,1;1,0")
    assert code == 0 and "area: 5" in out and err == ""


def test_invariant_violation_exit(capsys, monkeypatch):
    from toralrev import gl2z
    from toralrev.exactmath import UniMat

    real = gl2z.reversibility

    def broken(a):
        rep = real(a)
        return gl2z.ReversibilityReport(rep.matrix, True, False, rep.method, UniMat(1, 1, 0, 1), None)

    monkeypatch.setattr(gl2z, "reversibility", broken)
    assert run_main(capsys, "reversible", "2,1;1,1")[0] == 4


def test_verify_agreement():
    for argv in (
        ["reversible", "2,1;1,1"],
        ["reversible", "1,1;1,0"],
        ["strongly-reversible", "2,1;1,1"],
        ["conjugate", "2,1;1,1", "1,-1;-1,2"],
        ["involution", "1,0;-1,-1"],
        ["lattice", "-5,1;1,0"],
        ["pick", "2,1;1,1"],
        ["fixed-points", "-5,1;1,0|1/2,1/2"],
        ["fixed-points", "1,1;0,1|0,1/3"],
        ["fixed-points", "1,0;0,-1|0,1/3"],
        ["affine-reversible", "2,1;1,1|1/2,1/3"],
    ):
        code, doc = j("verify", *argv, "--bound", "6")
        assert code == 0 and doc["verify"]["agree"], (argv, doc["verify"])


def test_verify_disagreement_exits_4(monkeypatch, capsys):
    from toralrev import gl2z

    real = gl2z.reversibility

    def lying(a):
        rep = real(a)
        return gl2z.ReversibilityReport(rep.matrix, False, False, rep.method)

    monkeypatch.setattr(gl2z, "reversibility", lying)
    assert run_main(capsys, "verify", "reversible", "2,1;1,1", "--bound", "3")[0] == 4


def test_out_file(tmp_path):
    target = tmp_path / "p.svg"
    code, text = run("render-parallelogram", "-5,1;1,0", "--out", str(target))
    assert code == 0 and text == ""
    svg = target.read_text()
    assert svg.startswith("<?xml") and svg.count('class="lattice-node') == 8


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "toralrev", "reversible", "2,1;1,1", "--json"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["verdicts"]["reversible"]
