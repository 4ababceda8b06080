import json
import subprocess
import sys

import pytest

from castling_pool import PV_POOL
from pvcast.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_residual(capsys):
    code, rep = run_json(capsys, "residual", "(2;3)")
    assert code == 0
    assert rep["results"]["residual"] == 0
    assert rep["input"] == "(2; 3)"
    assert rep["version"] and rep["schema"]


def test_residual_not_solution(capsys):
    code, rep = run_json(capsys, "residual", "(2;2)")
    assert code == 3
    assert rep["results"]["residual"] == -1


def test_residual_parse_error(capsys):
    code, out, err = run(capsys, "residual", "(2;x)")
    assert code == 2
    assert json.loads(out)["results"]["error"]["span"] == [3, 4]
    assert "bytes 3..4" in err


def test_enumerate_json(capsys):
    code, rep = run_json(capsys, "enumerate", "2", "--max-part", "200", "--max-k", "3")
    assert code == 0
    names = [r["solution"] for r in rep["results"]["solutions"]]
    assert "(2; 3, 11)" in names
    assert rep["results"]["all_residuals_zero"]


def test_enumerate_exclude_repetition(capsys):
    _, rep = run_json(capsys, "enumerate", "3", "--max-part", "12", "--max-k", "2", "--exclude-repetition")
    names = [r["solution"] for r in rep["results"]["solutions"]]
    assert "(3; 2)" not in names and "(3; 4)" in names


def test_enumerate_csv(capsys):
    code, out, _ = run(capsys, "enumerate", "5", "--max-part", "6", "--max-k", "1", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["solution,k,residual,essential", "(5; 4),1,0,true", "(5; 6),1,0,true"]


def test_enumerate_essential_only(capsys):
    _, rep = run_json(capsys, "enumerate", "2", "--max-part", "200", "--max-k", "3", "--essential-only")
    assert all(r["essential"] for r in rep["results"]["solutions"])


def test_enumerate_bad_flags(capsys):
    with pytest.raises(SystemExit) as info:
        main(["enumerate", "2", "--max-part", "many"])
    assert info.value.code == 2
    assert run(capsys, "enumerate", "2", "--max-part", "0")[0] == 2
    assert run(capsys, "enumerate", "4")[0] == 5


def test_descend(capsys):
    code, rep = run_json(capsys, "descend", "(2;3,11,131)")
    assert code == 0
    assert rep["results"]["base"] == "(2; 1)"
    assert rep["results"]["path_length"] == 3
    _, rep = run_json(capsys, "descend", "(2;1)")
    assert rep["results"]["path"] == []
    assert run(capsys, "descend", "(2;2)")[0] == 3


def test_verify_examples(capsys):
    code, rep = run_json(capsys, "verify", "(2;1)")
    assert code == 0
    assert rep["results"]["certificate"]["witness"] is not None
    code, rep = run_json(capsys, "verify", "gl(1)+sl(5)+sl(4) : L1#L2#L1")
    assert code == 0
    assert rep["results"]["certificate"]["space_dim"] == 40
    assert run(capsys, "verify", "(7;6)")[0] == 5


def test_verify_negative_and_errors(capsys):
    assert run(capsys, "verify", "(2;2)")[0] == 4
    assert run(capsys, "verify", "sl(2) : L1")[0] == 4
    assert run(capsys, "verify", "gl(1) : L2")[0] == 5
    assert run(capsys, "verify", "gl(1)+sl(2) : L1")[0] == 2
    assert run(capsys, "verify", "(2;3,11,131)")[0] == 5
    assert run(capsys, "verify", "(2;1)", "--trials", "0")[0] == 2


def test_castle_check(capsys):
    code, rep = run_json(capsys, "castle-check", "gl(1)+sl(2) : L1#3L1", "--n", "1")
    assert code == 0
    assert rep["results"]["both_generic"] and rep["results"]["isotropy_equal"]
    assert run(capsys, "castle-check", "gl(1)+sl(2) : L1#3L1", "--n", "4")[0] == 2
    assert run(capsys, "castle-check", "gl(1)+sl(2) : L1#3L1", "--n", "2", "--trials", "3")[0] == 4
    assert run(capsys, "castle-check", "gl(1)+sl(2) : L1#", "--n", "1")[0] == 2


@pytest.mark.parametrize("text,n", [(t, n) for t, ns in PV_POOL for n in ns][::2])
def test_castle_check_pool(capsys, text, n):
    assert run(capsys, "castle-check", text, "--n", str(n), "--seed", "5")[0] == 0


@pytest.mark.parametrize("argv", [
    ["verify", "(3;2)", "--seed", "4"],
    ["castle-check", "sl(2)+sl(3) : L1#L1", "--n", "2", "--seed", "9"],
    ["enumerate", "3", "--max-part", "1000", "--max-k", "3"],
])
def test_byte_identical_reports(capsys, argv):
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second


def test_timings_are_opt_in(capsys):
    _, rep = run_json(capsys, "verify", "(2;1)")
    assert "timings" not in rep["results"]
    _, rep = run_json(capsys, "verify", "(2;1)", "--timings")
    assert set(rep["results"]["timings"]) == {"build_s", "certify_s"}


def test_config_file(capsys, tmp_path, monkeypatch):
    cfg = tmp_path / "pvcast.conf"
    cfg.write_text("# defaults\ntrials = 7\nbound = 2\nseed = 3\n")
    monkeypatch.setenv("PVCAST_CONFIG", str(cfg))
    _, rep = run_json(capsys, "verify", "(2;1)")
    assert rep["options"]["trials"] == 7 and rep["seed"] == 3
    _, rep = run_json(capsys, "verify", "(2;1)", "--trials", "9")
    assert rep["options"]["trials"] == 9
    cfg.write_text("colour = blue\n")
    assert run(capsys, "verify", "(2;1)")[0] == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "pvcast.cli", "residual", "(5; 6)"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["is_solution"] is True
