import json

import pytest

from qpalg.cli import EXIT_ERROR, EXIT_OK, EXIT_UNDECIDED, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--output", "json")
    return code, json.loads(out)


def test_verify_trivial_fixture(capsys):
    code, out = run_json(capsys, "verify", "--hopf", "trivial.json")
    assert code == EXIT_OK and out["dim"] == 1
    assert all(v is True for k, v in out.items() if k != "dim")


def test_verify_trivial_text(capsys):
    code, out, _ = run(capsys, "verify", "--hopf", "trivial.json")
    assert code == EXIT_OK and "associative: yes" in out and ": no" not in out


def test_build_json_round_trips_through_verify(capsys, tmp_path):
    code, out, _ = run(capsys, "build", "--group", "trivial.toml", "--algebra", "group", "--output", "json")
    assert code == EXIT_OK
    p = tmp_path / "kG.json"
    p.write_text(out)
    code, rep = run_json(capsys, "verify", "--hopf", str(p))
    assert code == EXIT_OK and rep["associative"]


def test_verify_rejects_broken_structure(capsys, tmp_path):
    _, out, _ = run(capsys, "build", "--factorization", "s4_c4.toml", "--output", "json")
    obj = json.loads(out)
    obj["counit"] = [[0, "2"]] + obj["counit"][1:]
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(obj))
    code, rep = run_json(capsys, "verify", "--hopf", str(p))
    assert code == EXIT_ERROR and rep["counital"] is False and "witnesses" in rep


def test_certify_c4s3_refuted(capsys):
    code, out = run_json(capsys, "certify", "--factorization", "s4_c4.toml")
    assert code == EXIT_OK and out["status"] == "NOT_QPA_refuted" and out["dim"] == 24
    assert out["envelope"]["dim"] == 8


def test_certify_dual_and_reverify(capsys, tmp_path):
    code, out, _ = run(capsys, "certify", "--factorization", "s4_c4.toml", "--dual", "--output", "json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["status"] == "QPA_certified" and doc["degree"] == 10
    assert "96" in doc["derivation"]
    p = tmp_path / "verdict.json"
    p.write_text(out)
    code, rep = run_json(capsys, "verify", "--hopf", str(p))
    assert code == EXIT_OK and rep["certificate"] and rep["full"] and rep["size"] == 10
    # the bare certificate re-verifies as well
    c = tmp_path / "cert.json"
    c.write_text(json.dumps(doc["certificate"]))
    assert run_json(capsys, "verify", "--hopf", str(c))[0] == EXIT_OK


def test_tampered_certificate_fails(capsys, tmp_path):
    _, out, _ = run(capsys, "certify", "--factorization", "kac_paljutkin.toml", "--output", "json")
    doc = json.loads(out)["certificate"]
    doc["entries"][0][0] = []
    p = tmp_path / "cert.json"
    p.write_text(json.dumps(doc))
    code, rep = run_json(capsys, "verify", "--hopf", str(p))
    assert code == EXIT_ERROR and rep["certificate"] is False


def test_refute_undecided_exit_code(capsys):
    code, out = run_json(capsys, "refute", "--factorization", "s4_c4.toml", "--dual")
    assert code == EXIT_UNDECIDED and out["status"] == "undecided" and out["notes"]


def test_refute_text_summarizes_cases(capsys):
    code, out, _ = run(capsys, "refute", "--factorization", "s4_c4.toml")
    assert code == EXIT_OK
    assert "status: NOT_QPA_refuted" in out
    assert "cases:" in out and "examined:" in out and "FAILED" not in out


def test_envelope_undecided_for_group(capsys):
    code, out = run_json(capsys, "envelope", "--group", "trivial.toml")
    assert code == EXIT_UNDECIDED and out["notes"]


def test_report_c4s3(capsys):
    code, out = run_json(capsys, "report", "--factorization", "s4_c4.toml")
    assert code == EXIT_OK and out["dim"] == 24
    orbits = sorted(len(o["orbit"]) for o in out["orbits_of_Gamma_on_F"])
    assert orbits == [1, 1, 4]
    assert out["axioms"]["s_squared_identity"] and out["verdict"]["status"] == "NOT_QPA_refuted"


def test_twist_bicharacter(capsys):
    code, out = run_json(capsys, "twist", "--cocycle", "zn_zn.toml")
    assert code == EXIT_OK
    assert out["dim"] == 9 and out["center_dim"] == 1 and out["central_simple"] and out["associative"]


def test_twist_lifted_cocycle(capsys):
    code, out = run_json(capsys, "twist", "--cocycle", "klein_four.toml")
    assert code == EXIT_OK and out["dim"] == 24 and not out["commutative"]
    assert out["suff_twist"]["permutation"]["condition"] and out["suff_twist"]["permutation"]["full"]
    assert not out["suff_twist"]["cayley"]["condition"]


def test_output_file(capsys, tmp_path):
    p = tmp_path / "r.txt"
    code, out, _ = run(capsys, "build", "--group", "trivial.toml", "--out", str(p))
    assert code == EXIT_OK and out == "" and "dim: 1" in p.read_text()


def test_json_output_is_deterministic(capsys):
    a = run(capsys, "certify", "--factorization", "kac_paljutkin.toml", "--output", "json")
    b = run(capsys, "certify", "--factorization", "kac_paljutkin.toml", "--output", "json")
    assert a == b and a[0] == EXIT_OK


@pytest.mark.parametrize("argv,needle", [
    (["build"], "exactly one"),
    (["build", "--group", "x.toml", "--factorization", "y.toml"], "exactly one"),
    (["build", "--group", "missing.toml"], "file not found"),
    (["build", "--factorization", "s5_c5.toml", "--order-cap", "60"], "exceeds cap"),
    (["twist", "--group", "trivial.toml"], "lifted_cocycle or bicharacter"),
])
def test_errors_exit_one(capsys, argv, needle):
    code, out, err = run(capsys, *argv)
    assert code == EXIT_ERROR and err.startswith("error: ") and needle in err


def test_parse_error_location(capsys, tmp_path):
    p = tmp_path / "e.toml"
    p.write_text('kind = "group"\ndegree = 3\ngens = ["(12)"\n')
    code, _, err = run(capsys, "build", "--group", str(p))
    assert code == EXIT_ERROR and f"{p}:" in err


@pytest.mark.parametrize("flag,value", [("--conductor", "0"), ("--conductor", "10001"), ("--order-cap", "0")])
def test_option_ranges(capsys, flag, value):
    with pytest.raises(SystemExit) as exc:
        main(["build", "--group", "trivial.toml", flag, value])
    assert exc.value.code == EXIT_ERROR
    assert "must lie in" in capsys.readouterr().err


def test_unknown_subcommand_exits_one(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == EXIT_ERROR


def test_conductor_override(capsys):
    code, out = run_json(capsys, "twist", "--cocycle", "clifford.toml", "--conductor", "4")
    assert code == EXIT_OK and out["center_dim"] == 1
