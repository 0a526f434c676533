import json

import pytest

from peanolab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_verb(capsys):
    code, out, _ = run(capsys, "parse", "0=0 & 0=0")
    assert code == 0
    assert out.strip() == "~(0 = 0 -> ~(0 = 0))"


def test_parse_error_exit_2(capsys):
    code, _, err = run(capsys, "parse", "0 = )")
    assert code == 2
    assert "error" in err


def test_parse_from_file(tmp_path, capsys):
    source = tmp_path / "f.pa"
    source.write_text("# a comment\n0 = 0 -> 0 = 0\n", encoding="utf-8")
    code, out, _ = run(capsys, "parse", "--file", str(source))
    assert code == 0
    assert out.strip() == "0 = 0 -> 0 = 0"


def test_missing_file_is_io_error(capsys):
    code, _, err = run(capsys, "check-proof", "/nonexistent/path.pf")
    assert code == 2
    assert "io error" in err


def test_prove_and_check_roundtrip(tmp_path, capsys):
    out_file = tmp_path / "fact.pf"
    code, _, _ = run(capsys, "prove-fact", "add", "2", "2", "--out", str(out_file))
    assert code == 0
    code, out, _ = run(capsys, "check-proof", str(out_file))
    assert code == 0
    assert out.startswith("accepted:")


def test_check_proof_rejection_exit_1(tmp_path, capsys):
    bad = tmp_path / "bad.pf"
    bad.write_text("1 | 0 = 0 | PA3\n", encoding="utf-8")
    code, out, _ = run(capsys, "check-proof", str(bad))
    assert code == 1
    assert "rejected at line 1" in out


def test_prove_fact_stdout(capsys):
    code, out, _ = run(capsys, "prove-fact", "neq", "0", "1")
    assert code == 0
    assert "| PA3" in out


def test_goedelize_formula(capsys):
    code, out, _ = run(capsys, "goedelize", "--formula", "0 = 0")
    assert code == 0
    doc = json.loads(out)
    assert doc == {"kind": "formula", "scheme": "prime-v1", "value": "1518750"}


def test_goedelize_proof(tmp_path, capsys):
    proof = tmp_path / "p.pf"
    run(capsys, "prove-fact", "add", "1", "1", "--out", str(proof))
    code, out, _ = run(capsys, "goedelize", "--proof", str(proof))
    assert code == 0
    doc = json.loads(out)
    assert doc["kind"] == "proof"
    assert doc["scheme"] == "pack-v1"


def test_encode_seq(capsys):
    code, out, _ = run(capsys, "encode-seq", "3", "1", "4")
    assert code == 0
    doc = json.loads(out)
    assert doc == {"b": "64828", "c": "24", "k": 2}


def test_encode_seq_guard(capsys):
    code, _, err = run(capsys, "encode-seq", "999", "--max-c-bits", "64")
    assert code == 2
    assert "error" in err


def test_eval_verdicts(capsys):
    code, out, _ = run(capsys, "eval", "forall x. x + 0 = x")
    assert code == 0
    assert json.loads(out)["verdict"] == "verified_to"

    code, out, _ = run(capsys, "eval", "forall x. x = 0")
    assert code == 1
    doc = json.loads(out)
    assert doc["verdict"] == "false"
    assert doc["counterexample"] == {"x": 1}

    code, out, _ = run(capsys, "eval", "forall x. x + 0 = x",
                       "--mode", "computable")
    assert code == 0
    assert json.loads(out)["verdict"] == "true"


def test_eval_cutoff_flag(capsys):
    code, out, _ = run(capsys, "eval", "exists x. x = S(S(S(0)))", "--cutoff", "1")
    # the linear solver still finds the witness beyond the cutoff
    assert code == 0
    assert json.loads(out)["verdict"] == "true"


def test_certify_and_audit(tmp_path, capsys):
    cert = tmp_path / "cert.json"
    code, out, _ = run(capsys, "certify", "--stream", "rational:1/7",
                       "--k", "2", "--out", str(cert))
    assert code == 0
    assert "certified rational:1/7 prefix k=2" in out
    code, out, _ = run(capsys, "audit", str(cert))
    assert code == 0
    assert out.startswith("audit ok")

    doc = json.loads(cert.read_text(encoding="utf-8"))
    doc["digits"][0] = 9
    doc["entries"][0]["digit"] = 9
    cert.write_text(json.dumps(doc), encoding="utf-8")
    code, out, _ = run(capsys, "audit", str(cert))
    assert code == 1
    assert "audit failure" in out


def test_certify_resource_limit_is_clean(capsys):
    code, _, err = run(capsys, "certify", "--stream", "rational:1/7", "--k", "6")
    assert code == 2
    assert "error" in err


def test_usage_error(capsys):
    assert main(["no-such-verb"]) == 2


@pytest.mark.parametrize("argv", [["goedelize"]])
def test_goedelize_needs_input(argv, capsys):
    assert main(argv) == 2
