import subprocess
import sys

import pytest

from knightpaths import cli
from knightpaths.harness import appendix_b_rows, reproduce


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_enumerate_length_four(capsys):
    code, out, _ = run(capsys, "enumerate", "--length", "4")
    assert code == 0
    assert out.splitlines()[0] == "classes: 3"


def test_enumerate_length_five_is_empty(capsys):
    code, out, _ = run(capsys, "enumerate", "--length", "5")
    assert code == 0 and out == "classes: 0\n"


def test_enumerate_length_six_matches_appendix(capsys):
    code, out, _ = run(capsys, "enumerate", "--length", "6")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "classes: 25"
    assert lines[1] == "1: 1 2 10 11 15 16"
    assert len(lines) == 26
    assert [list(map(int, l.split(":")[1].split())) for l in lines[1:]] == appendix_b_rows()


def test_every_lotto_line_is_traversable(capsys):
    _, out, _ = run(capsys, "enumerate", "--length", "6")
    for i, line in enumerate(out.splitlines()[1:], start=1):
        nums = ",".join(line.split(":")[1].split())
        code, res, _ = run(capsys, "check", "--numbers", nums)
        assert code == 0
        assert res == f"traversable: yes\nclass: {i}\n"


def test_cells_and_ascii_formats(capsys):
    code, out, _ = run(capsys, "enumerate", "--length", "4", "--format", "cells")
    assert code == 0
    assert out.splitlines()[1] == "1: (0,0) (1,2) (2,1) (3,3)"
    code, out, _ = run(capsys, "enumerate", "--length", "4", "--format", "ascii")
    body = out.split("\n", 1)[1]
    blocks = body.strip("\n").split("\n\n")
    assert len(blocks) == 3
    assert all(b.count("#") == 4 and len(b.splitlines()) == 5 for b in blocks)


def test_cycle_mode_and_verify_flag(capsys):
    code, out, _ = run(capsys, "enumerate", "--length", "6", "--mode", "cycle", "--verify")
    assert code == 0 and out.startswith("classes: 25\n")


def test_lotto_format_refused_when_classes_overflow_the_slip(capsys):
    code, _, err = run(capsys, "enumerate", "--length", "8", "--format", "lotto")
    assert code == 1 and "7x7" in err
    code, out, _ = run(capsys, "enumerate", "--length", "8")
    assert code == 0 and out.startswith("classes: 478\n") and "(" in out


def test_verify_disagreement_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(cli, "enumerate_cycles_oracle", lambda cfg: set())
    code, _, err = run(capsys, "enumerate", "--length", "4", "--verify")
    assert code == 2 and "disagree" in err


@pytest.mark.parametrize("argv", [
    ["enumerate"],
    ["enumerate", "--length", "x"],
    ["enumerate", "--length", "2"],
    ["enumerate", "--length", "4", "--board-size", "2"],
    ["enumerate", "--length", "4", "--workers", "0"],
    ["enumerate", "--length", "4", "--format", "svg"],
    ["nope"],
])
def test_invalid_flags_exit_one(capsys, argv):
    code = None
    try:
        code = cli.main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 1


def test_check_codes(capsys):
    code, out, _ = run(capsys, "check", "--numbers", "1,2,10,11,15,16")
    assert code == 0 and out.startswith("traversable: yes\nclass: 1\n")
    code, out, _ = run(capsys, "check", "--numbers", "1,2,3,4,5,6")
    assert code == 3 and out == "traversable: no\n"
    code, out, _ = run(capsys, "check", "--numbers", "2,15,17,30,32,45")
    assert code == 0 and "class: 25" in out


@pytest.mark.parametrize("nums,token", [("1,2,3", None), ("1,2,x,4,5,6", "'x'"),
                                        ("1,2,3,4,5,99", "'99'"), ("1,2,2,4,5,6", "'2'")])
def test_check_malformed(capsys, nums, token):
    code, out, err = run(capsys, "check", "--numbers", nums)
    assert code == 1 and out == ""
    assert len(err.strip().splitlines()) == 1
    if token:
        assert token in err


def test_catalog_and_render(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0 and out.splitlines()[1] == "1: 1 2 10 11 15 16"
    code, out, _ = run(capsys, "render")
    assert code == 0 and out.startswith("classes: 3\n") and out.count("#") == 12


def test_reproduce_command(capsys):
    code, out, _ = run(capsys, "reproduce", "--length", "6")
    assert code == 0
    assert "combination_class_count: 25" in out and "oracle_agreement: true" in out


def test_verify_passes_and_is_deterministic(capsys):
    code1, out1, _ = run(capsys, "verify")
    code2, out2, _ = run(capsys, "verify")
    assert code1 == 0 and out1 == out2
    lines = out1.splitlines()
    assert len(lines) == 4 and all(l.startswith("PASS ") for l in lines)


def test_verify_corrupted_fixture(capsys, monkeypatch, tmp_path):
    cache = {n: reproduce(n) for n in (4, 6, 8)}
    monkeypatch.setattr(cli, "reproduce", lambda n, workers=1: cache[n])
    rows = appendix_b_rows()
    rows[0][-1] = 17
    bad = tmp_path / "bad.txt"
    bad.write_text("".join(f"{i}: " + " ".join(map(str, r)) + "\n" for i, r in enumerate(rows, 1)))
    code, out, _ = run(capsys, "verify", "--fixture", str(bad))
    assert code == 2
    assert "FAIL appendix_b: row 1" in out


def test_extend_command(capsys, tmp_path):
    code, _, _ = run(capsys, "extend", "--length", "8", "--budget", "10")
    assert code == 1
    cp = tmp_path / "cp.json"
    code, out, _ = run(capsys, "extend", "--length", "10", "--budget", "0.001", "--checkpoint", str(cp))
    assert code == 0 and "status: timeout" in out and cp.exists()
    code, out, _ = run(capsys, "extend", "--length", "10", "--budget", "0.001", "--checkpoint", str(cp), "--resume")
    assert "progress: 2/121" in out
    code, _, _ = run(capsys, "extend", "--length", "10", "--budget", "1", "--resume")
    assert code == 1


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "knightpaths", "enumerate", "--length", "4"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("classes: 3\n")
