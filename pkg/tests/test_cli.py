import json
from fractions import Fraction

import pytest

from ktypes import cli
from ktypes.cli import decode_vector, encode_vector, main
from ktypes.config import bundled_config
from ktypes.exact import vec


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def records(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


@pytest.mark.parametrize("config, mu, want", [
    ("sl2", "5", vec(3)),
    ("sp4", "5,-1", vec(2, 0)),
    ("u11", "4,0", vec(3, 1)),
])
def test_lambda_u_examples(capsys, config, mu, want):
    code, out, _ = run(capsys, "lambda", "--config", config, f"--mu={mu}", "--json")
    assert code == 0
    (rec,) = records(out)
    assert decode_vector(rec["lambda"]) == want
    code, out, _ = run(capsys, "lambda", "--config", config, f"--mu={mu}")
    assert code == 0 and "lambda_u=" in out


def test_lambda_invalid_mu_names_root(capsys):
    code, _, err = run(capsys, "lambda", "--config", "sp4", "--mu=1,2")
    assert code == 2 and "(1,-1)" in err
    code, _, err = run(capsys, "lambda", "--config", "sp4", "--mu=1")
    assert code == 2 and "rank" in err
    code, _, err = run(capsys, "lambda", "--config", "sp4", "--mu=a,b")
    assert code == 2


@pytest.mark.parametrize("argv, count", [
    (["--config", "sp4"], 25),
    (["--config", "sp4", "--mode", "small"], 5),
    (["--config", "sl2", "--mode", "fiber", "--lambda-u", "0"], 5),
    (["--config", "u11", "--mu-z", "1,1"], 3),
])
def test_enumerate_counts(capsys, argv, count):
    code, out, _ = run(capsys, "enumerate", *argv, "--json")
    recs = records(out)
    assert code == 0 and recs[-1]["count"] == count
    weights = [tuple(decode_vector(r["mu"])) for r in recs[:-1]]
    assert weights == sorted(weights)
    assert all(all(r["conditions"].values()) for r in recs[:-1]) or "fiber" in argv
    code, text, _ = run(capsys, "enumerate", *argv)
    assert text.splitlines()[-1] == f"count: {count}"


def test_enumerate_is_deterministic(capsys):
    assert run(capsys, "enumerate", "--config", "sp4") == run(capsys, "enumerate", "--config", "sp4")


def test_enumerate_input_errors(capsys):
    assert run(capsys, "enumerate", "--config", "sl2", "--mode", "fiber")[0] == 2
    assert run(capsys, "enumerate", "--config", "u11", "--mu-z", "1,0")[0] == 2


def test_json_round_trip():
    v = vec(Fraction(-3, 4), 2, 0)
    assert decode_vector(json.loads(json.dumps(encode_vector(v)))) == v


def test_verify_suites(capsys):
    code, out, _ = run(capsys, "verify", "--config", "sp4", "--suite", "prop3.1c", "--lambda-u", "4,0", "--json")
    assert code == 0 and records(out)[-1]["ok"]
    code, out, _ = run(capsys, "verify", "--suite", "clifford", "--clifford-max", "6")
    assert code == 0 and out.splitlines()[-1].startswith("PASS")
    code, out, _ = run(capsys, "verify", "--suite", "thm6.7")
    assert code == 0
    code, _, _ = run(capsys, "verify", "--config", "sl2", "--suite", "thm6.7", "--max-norm", "9")
    assert code == 0
    code, _, _ = run(capsys, "verify", "--config", "u11", "--suite", "projections", "--samples", "50")
    assert code == 0


def test_verify_failure_exit_code(capsys):
    # a non-value of lambda_u cannot give a bijection
    code, out, _ = run(capsys, "verify", "--config", "sl2", "--suite", "prop3.1c", "--lambda-u", "1/2")
    assert code == 1 and "FAIL" in out


def test_examples_command(capsys):
    code, out, _ = run(capsys, "paper-examples")
    assert code == 0 and out.split() == ["sl2:", "match", "sp4:", "match", "u11:", "match"]


def test_examples_command_mismatch(capsys, monkeypatch):
    monkeypatch.setattr(cli.goldens, "compare_all", lambda: {"sl2": None, "sp4": "line 3: differs", "u11": None})
    code, out, _ = run(capsys, "paper-examples")
    assert code == 1 and "MISMATCH at line 3" in out


def test_spin_command(capsys):
    code, out, _ = run(capsys, "spin", "--config", "sp4", "--json")
    (rec,) = records(out)
    assert code == 0 and rec["wedge_dimension"] == 64 and rec["wedge_equals_spin_square"]
    assert sum(m for _, m in rec["spin_weights"]) == 8


def test_dirac_command(capsys):
    code, out, _ = run(capsys, "dirac", "--config", "sl2", "--mu-tilde", "1", "--phi", "2", "--json")
    (rec,) = records(out)
    assert code == 0 and rec["eigenvalue"] == [-3, 1] and not rec["inequality"] and not rec["in_hull"]
    code, out, _ = run(capsys, "dirac", "--config", "sp4", "--json")
    assert records(out)[0]["eigenvalue"] == [0, 1]


def test_config_errors(capsys, tmp_path):
    assert run(capsys, "lambda", "--config", "nope", "--mu=1")[0] == 2
    bad = bundled_config("sl2").to_dict()
    # a compact set that is not closed under negation
    bad["compact_roots"] = [["2"]]
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(bad))
    code, _, err = run(capsys, "enumerate", "--config", str(p))
    assert code == 2 and err.startswith("error:")


def test_custom_config_path(capsys, tmp_path):
    p = tmp_path / "mine.json"
    p.write_text(json.dumps(bundled_config("su21").to_dict()))
    code, out, _ = run(capsys, "enumerate", "--config", str(p), "--json")
    assert code == 0 and records(out)[-1]["count"] > 0


def test_usage_errors(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "lambda", "--config", "sl2")[0] == 2
    assert run(capsys, "--help")[0] == 0
