"""The command line frontend: formats, exit codes, reproducibility."""

import json
from fractions import Fraction

import pytest

from schouten.chains import Chain, chain_to_text, wedge_chain
from schouten.cli import main


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr().out
    return rc, out


def test_dims_plain(capsys):
    rc, out = run(capsys, "dims", "--n", "2", "--w", "0", "--h", "0")
    assert rc == 0
    assert "m=2  dim=18" in out


def test_dims_empty_block(capsys):
    rc, out = run(capsys, "dims", "--n", "1", "--w", "1", "--h", "0")
    assert rc == 0
    assert "empty" in out


def test_dims_csv_and_structured(capsys):
    rc, out = run(capsys, "dims", "--n", "2", "--w", "0", "--h", "0",
                  "--format", "csv")
    assert out.splitlines()[0] == "m,dim"
    assert "2,18" in out.splitlines()
    rc, out = run(capsys, "dims", "--n", "2", "--w", "0", "--h", "0",
                  "--format", "structured")
    data = json.loads(out)
    assert data["dims"][1] == {"m": 2, "dim": 18}


def test_betti_guaranteed_zero_exit(capsys):
    rc, out = run(capsys, "betti", "--n", "2", "--m", "2", "--w", "1", "--h", "1")
    assert rc == 0
    assert "betti=0" in out


def test_betti_nonzero_unguaranteed_block_is_fine(capsys):
    # m = 5 at weight (0,0) has betti 2; no published zero is violated
    rc, out = run(capsys, "betti", "--n", "2", "--m", "5", "--w", "0", "--h", "0")
    assert rc == 0
    assert "betti=2" in out


def test_euler_zero(capsys):
    rc, out = run(capsys, "euler", "--n", "2", "--w", "1", "--h", "1",
                  "--format", "csv")
    assert rc == 0
    assert out.splitlines()[1] == "2,1,1,0"


def test_verify_jacobi_pass(capsys):
    rc, out = run(capsys, "verify", "jacobi", "--n", "3", "--seed", "7")
    assert rc == 0
    assert "jacobi: pass (200 checked)" in out


def test_verify_psi_vacuous_note(capsys):
    rc, out = run(capsys, "verify", "psi", "--n", "2", "--w", "0")
    assert rc == 0
    assert "vacuous" in out


def test_verify_all_csv(capsys):
    rc, out = run(capsys, "verify", "all", "--n", "2", "--w", "0", "--h", "0",
                  "--format", "csv")
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "suite,checked,failures"
    assert all(line.endswith(",0") for line in lines[1:])


def test_verify_structured_reproducible(capsys):
    rc1, out1 = run(capsys, "verify", "jacobi", "--n", "2", "--seed", "3",
                    "--format", "structured")
    rc2, out2 = run(capsys, "verify", "jacobi", "--n", "2", "--seed", "3",
                    "--format", "structured")
    assert (rc1, out1) == (rc2, out2)
    assert json.loads(out1)["status"] == "pass"


@pytest.fixture
def pipi_file(tmp_path):
    pi = Chain.from_word(2, [((1, 2), (1, 1))])
    U = wedge_chain(pi, pi)
    p = tmp_path / "pipi.txt"
    p.write_text(chain_to_text(U) + "\n")
    return p


def test_certify_and_check_round_trip(capsys, tmp_path, pipi_file):
    cert_path = tmp_path / "cert.json"
    rc, _ = run(capsys, "certify", "--n", "2", "--input", str(pipi_file),
                "--output", str(cert_path))
    assert rc == 0
    data = json.loads(cert_path.read_text())
    assert data["block"] == [2, 2]
    assert data["p"][0] != "0"
    rc, out = run(capsys, "check-certificate", "--input", str(cert_path))
    assert rc == 0
    assert "valid" in out


def test_certify_non_cycle_exit_1(capsys, tmp_path):
    p = tmp_path / "noncycle.txt"
    p.write_text("1 | x[0,0] d[1] ; x[1,2] d[1,2]\n")
    rc = main(["certify", "--n", "2", "--input", str(p)])
    captured = capsys.readouterr()
    assert rc == 1
    assert "not a cycle" in captured.err


def test_certify_malformed_exit_2(capsys, tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("this is not a chain\n")
    rc = main(["certify", "--n", "2", "--input", str(p)])
    assert rc == 2
    assert "malformed" in capsys.readouterr().err


def test_check_tampered_certificate_exit_1(capsys, tmp_path, pipi_file):
    cert_path = tmp_path / "cert.json"
    run(capsys, "certify", "--n", "2", "--input", str(pipi_file),
        "--output", str(cert_path))
    data = json.loads(cert_path.read_text())
    head, _, tail = data["V"][0].partition(" | ")
    data["V"][0] = "%s | %s" % (Fraction(head) + 1, tail)
    cert_path.write_text(json.dumps(data))
    rc, out = run(capsys, "check-certificate", "--input", str(cert_path))
    assert rc == 1
    assert "INVALID" in out


def test_check_malformed_certificate_exit_2(capsys, tmp_path):
    p = tmp_path / "junk.json"
    p.write_text("{]")
    rc = main(["check-certificate", "--input", str(p)])
    assert rc == 2


def test_no_partial_output_on_failure(tmp_path, capsys):
    target = tmp_path / "out.json"
    p = tmp_path / "bad.txt"
    p.write_text("garbage\n")
    rc = main(["certify", "--n", "2", "--input", str(p), "--output", str(target)])
    capsys.readouterr()
    assert rc == 2
    assert not target.exists()


def test_basis_listing(capsys):
    rc, out = run(capsys, "basis", "--n", "2", "--m", "1", "--w", "0", "--h", "0")
    assert rc == 0
    assert len(out.strip().splitlines()) == 4


def test_psi_matrix_header(capsys):
    rc, out = run(capsys, "psi-matrix", "--n", "2", "--w", "0")
    assert rc == 0
    rows, cols, nnz = map(int, out.splitlines()[0].split())
    assert rows == cols == 18
    assert nnz == len(out.splitlines()) - 1


def test_output_file_matches_stdout(capsys, tmp_path):
    rc, out = run(capsys, "dims", "--n", "2", "--w", "1", "--h", "1",
                  "--format", "structured")
    target = tmp_path / "dims.json"
    rc2 = main(["dims", "--n", "2", "--w", "1", "--h", "1",
                "--format", "structured", "--output", str(target)])
    capsys.readouterr()
    assert rc == rc2 == 0
    assert target.read_text() == out
