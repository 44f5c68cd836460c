import json

from superschrod.cli import main
from superschrod.singular import SingularVectorReport


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_algebra_verify_pass(capsys):
    code, out, _ = run(capsys, "algebra", "verify", "--algebra", "ssch2")
    assert code == 0
    assert "jacobi: pass" in out
    assert "convention=graded" in out


def test_algebra_verify_identity_fails(capsys):
    code, out, _ = run(capsys, "algebra", "verify", "--algebra", "ssch1",
                       "--adjoint", "identity")
    assert code == 1
    assert "fail" in out


def test_algebra_dump_roundtrip(capsys):
    code, out, _ = run(capsys, "algebra", "dump", "--algebra", "ssch1")
    assert code == 0
    data = json.loads(out)
    assert len(data["generators"]) == 9
    assert set(data["triangular"]["plus"]) == {"K", "G", "S"}


def test_singular_find_json(capsys):
    code, out, _ = run(capsys, "singular", "find", "--algebra", "ssch1",
                       "--d", "-1/2", "--m", "1", "--max-degree", "6",
                       "--json")
    assert code == 0
    data = json.loads(out)
    assert len(data["reports"]) == 1
    report = data["reports"][0]
    assert report["matched"] == "prop2-massive"
    assert report["weight"] == 1
    parsed = SingularVectorReport.from_json_dict(report)
    assert parsed.to_json_dict() == report


def test_singular_check(capsys):
    code, out, _ = run(capsys, "singular", "check", "--algebra", "ssch2",
                       "--d", "3/2", "--m", "1", "--r", "0", "--p", "1")
    assert code == 0
    assert "annihilated by Q+/Q-/P/X-: yes" in out
    assert "rec5=pass" in out


def test_singular_check_rejects_mismatched_parameters(capsys):
    code, _, err = run(capsys, "singular", "check", "--algebra", "ssch1",
                       "--d", "0", "--m", "1", "--p", "1")
    assert code == 2
    assert "d = p - 1/2" in err


def test_classify_json(capsys):
    code, out, _ = run(capsys, "classify", "--algebra", "ssch1",
                       "--d", "2", "--m", "0", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["dimension"] == 5
    assert data["verdict"] == "(V^p/I^1)/I^p"


def test_gram_command(capsys):
    code, out, _ = run(capsys, "gram", "--algebra", "ssch1", "--d", "-1/2",
                       "--m", "1", "--weight", "1", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["det"] == "0"


def test_realization_verify(capsys):
    code, out, _ = run(capsys, "realization", "verify", "--algebra", "ssch1",
                       "--d", "3/4", "--m", "1", "--degree", "4")
    assert code == 0
    assert "relations: pass" in out


def test_usage_errors(capsys):
    code, _, err = run(capsys, "singular", "find", "--algebra", "ssch1",
                       "--d", "0.5", "--m", "1")
    assert code == 2
    code, _, _ = run(capsys, "singular", "find", "--algebra", "nope",
                     "--d", "1", "--m", "1")
    assert code == 2
    code, _, err = run(capsys, "singular", "find", "--algebra", "ssch1",
                       "--d", "1", "--m", "1", "--max-degree", "0")
    assert code == 2
    code, _, err = run(capsys, "singular", "find", "--algebra", "ssch2",
                       "--d", "1", "--m", "1")
    assert code == 2
    assert "--r" in err


def test_byte_determinism(capsys):
    args = ["singular", "find", "--algebra", "ssch2", "--d", "3/2",
            "--m", "1", "--r", "0", "--max-degree", "4", "--json"]
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert out1 == out2
    args = ["classify", "--algebra", "ssch2", "--d", "3", "--m", "0",
            "--r", "-3", "--json"]
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert out1 == out2


def test_env_cutoff(capsys, monkeypatch):
    monkeypatch.setenv("SUPERSCHROD_CUTOFF", "3")
    code, out, _ = run(capsys, "singular", "find", "--algebra", "ssch1",
                       "--d", "-1/2", "--m", "1", "--json")
    assert code == 0
    assert json.loads(out)["max_degree"] == 3
