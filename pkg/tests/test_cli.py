import subprocess
import sys

import pytest

from lincert.cli import main
from lincert.linalg import Matrix
from lincert.matrix_io import MatrixFormatError, format_matrix, parse_matrix

A_TEXT = "lincert-matrix v1 3 4 101\n1 2 3 4\n2 4 6 8\n0 1 0 1\n"
S_TEXT = "lincert-matrix v1 3 3 Q\n# symmetric\n2 1 0\n1 -3 0\n0 0 0\n"


@pytest.fixture
def files(tmp_path):
    a, s = tmp_path / "A.txt", tmp_path / "S.txt"
    a.write_text(A_TEXT)
    s.write_text(S_TEXT)
    return tmp_path, str(a), str(s)


def test_matrix_format_round_trip():
    A = parse_matrix(A_TEXT)
    assert A.p == 101 and A.rows[1] == [2, 4, 6, 8]
    assert parse_matrix(format_matrix(A)) == A
    assert parse_matrix(S_TEXT).p is None
    for bad in ("", "lincert-matrix v2 1 1 7\n1\n", "lincert-matrix v1 2 1 7\n1\n", "lincert-matrix v1 1 1 8\n1\n"):
        with pytest.raises(Exception):
            parse_matrix(bad)
    with pytest.raises(MatrixFormatError):
        parse_matrix("lincert-matrix v1 1 2 7\n1 x\n")


def test_certify_exit_codes(files, capsys):
    _, a, s = files
    assert main(["certify", "crp_interactive", a]) == 0
    assert "[0, 1]" in capsys.readouterr().out
    assert main(["certify", "rank_upper", a, "--claim", "1"]) == 1
    assert main(["certify", "signature", s]) == 0
    assert "(1, 1, 1)" in capsys.readouterr().out
    assert main(["certify", "ldup", a + ".missing"]) == 2
    assert main(["certify", "freivalds", a]) == 2


def test_seed_from_environment(files, monkeypatch, capsys):
    _, a, _ = files
    monkeypatch.setenv("LINCERT_SEED", "9")
    assert main(["certify", "rpm_full", a]) == 0
    monkeypatch.setenv("LINCERT_SEED", "not-a-number")
    assert main(["certify", "rpm_full", a]) == 2


def test_fiat_shamir_commands(files, capsys):
    tmp, a, _ = files
    cert = str(tmp / "c.bin")
    assert main(["fs-prove", "rpm_full", a, "-o", cert]) == 0
    assert main(["fs-verify", cert, a]) == 0
    data = bytearray(open(cert, "rb").read())
    data[-3] ^= 0x55
    open(cert, "wb").write(bytes(data))
    assert main(["fs-verify", cert, a]) == 1


def test_oracle_command(files, capsys):
    _, a, s = files
    assert main(["oracle", "rank", a]) == 0
    assert capsys.readouterr().out.strip() == "2"
    assert main(["oracle", "signature", s]) == 0
    assert capsys.readouterr().out.strip() == "(1, 1, 1)"


def test_soundness_command(capsys):
    assert main(["soundness", "--trials", "200", "--attack", "grp_scaling", "--attack", "freivalds_rank_one"]) == 0
    out = capsys.readouterr().out
    assert "grp_scaling" in out and "FAIL" not in out


def test_verify_against_stdio_prover(files):
    _, a, _ = files
    square = a.replace("A.txt", "N.txt")
    open(square, "w").write("lincert-matrix v1 2 2 101\n0 1\n1 0\n")
    prover = f"{sys.executable} -m lincert.cli prove determinant {square} --stdio"
    out = subprocess.run(
        [sys.executable, "-m", "lincert.cli", "verify", "determinant", square, "--exec", prover],
        capture_output=True,
        text=True,
        timeout=60,
    )
    assert out.returncode == 0, out.stderr
    assert out.stdout.splitlines() == ["ACCEPT", "100"]
