import json

from divaria.cli import main
from divaria.dsl import parse_expression


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out


def test_derive_associative(capsys):
    code, out = run(capsys, "derive", "--variety", "associative")
    assert code == 0
    body = [l.strip() for l in out.splitlines() if l.startswith("  ")]
    got = {str(parse_expression(l)) for l in body}
    want = {
        "(x1-|x2)|-x3 - (x1|-x2)|-x3",
        "- x1-|(x2-|x3) + x1-|(x2|-x3)",
        "(x1-|x2)-|x3 - x1-|(x2-|x3)",
        "(x1|-x2)-|x3 - x1|-(x2-|x3)",
        "(x1|-x2)|-x3 - x1|-(x2|-x3)",
    }
    assert got == want


def test_derive_accepts_var_suffix_and_paths(tmp_path, capsys):
    code, _ = run(capsys, "derive", "--variety", "lie.var")
    assert code == 0
    f = tmp_path / "mine.var"
    f.write_text("variety mine\nidentity x1*x2 - x2*x1\n")
    code, out = run(capsys, "derive", "--variety", str(f))
    assert code == 0 and "variety mine" in out


def test_check_exit_codes(tmp_path, capsys):
    code, _ = run(capsys, "check", "--dialgebra", "leibniz2.json", "--variety", "lie")
    assert code == 0
    code, out = run(capsys, "check", "--dialgebra", "leibniz2.json", "--variety", "commutative")
    assert code == 1 and "fail" in out
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["check", "--dialgebra", str(bad), "--variety", "lie"]) == 2
    missing = tmp_path / "missing.json"
    assert main(["check", "--dialgebra", str(missing), "--variety", "lie"]) == 2


def test_dialgebra_schema_with_tables(tmp_path, capsys):
    data = {
        "dim": 2,
        "left": [[["0", "0"], ["0", "0"]], [["0", "0"], ["0", "0"]]],
        "right": [[["0", "1/1"], ["0", "0"]], [["0", "0"], ["0", "0"]]],
    }
    f = tmp_path / "d.json"
    f.write_text(json.dumps(data))
    # right product e1|-e1=e2, everything else zero: that is a 0-dialgebra
    code, _ = run(capsys, "envelope", "--dialgebra", str(f))
    assert code == 0


def test_envelope_verify(capsys):
    code, out = run(capsys, "envelope", "--dialgebra", "leibniz2.json",
                    "--variety", "lie", "--verify")
    assert code == 0
    assert "ideal rank 1" in out
    assert "oracle equalities hold" in out


def test_represent(capsys):
    code, out = run(capsys, "represent", "--leibniz", "leibniz2.json", "--module", "trivial")
    assert code == 0
    assert "faithful: pass" in out


def test_operad_selftest_small(capsys):
    code, out = run(capsys, "operad-selftest", "--trials", "60", "--seed", "5")
    assert code == 0
    assert "worked composition example reproduced" in out


def test_json_reports_are_deterministic(capsys):
    code1, out1 = run(capsys, "derive", "--variety", "jordan", "--single-op", "--json")
    code2, out2 = run(capsys, "derive", "--variety", "jordan", "--single-op", "--json")
    assert code1 == code2 == 0
    assert out1 == out2
    payload = json.loads(out1)
    assert payload["status"] == "pass" and payload["command"] == "derive"


def test_max_degree_env_guard(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("DIVARIA_MAX_DEGREE", "0")
    # any envelope verification needs degree 1 terms; the guard trips to exit 2
    assert main(["envelope", "--dialgebra", "leibniz2.json", "--verify"]) == 2
