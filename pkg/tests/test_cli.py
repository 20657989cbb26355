import json
import os
import subprocess
import sys

import pytest

from binaryk.cli import RANDGEN_KINDS, main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--json")
    return code, json.loads(out)


@pytest.mark.parametrize("name,code", [
    ("elementary_acyclic.json", 0),
    ("d2_nonzero.json", 1),
    ("malformed.json", 2),
    ("dses_not_exact.json", 1),
    ("triple_not_quasi_iso.json", 1),
    ("multi_not_commuting.json", 1),
    ("multi_diagonal_2d.json", 0),
    ("triple_ses_f2_f4.json", 0),
    ("weak_equivalence_f2_f4.json", 0),
    ("triple_diagonal_f2_f4.json", 0),
    ("multi_ses_2d.json", 0),
])
def test_validate_exit_codes(capsys, fixture_path, name, code):
    assert run(capsys, "validate", fixture_path(name))[0] == code


def test_d2_failure_has_degree_witness(capsys, fixture_path):
    code, rep = run_json(capsys, "validate", fixture_path("d2_nonzero.json"))
    assert code == 1 and rep["outcome"] == "fail"
    failed = [c for c in rep["checks"] if c["status"] == "fail"]
    assert failed[0]["witness"]["degree"] == 2


def test_missing_file_and_bad_args(capsys, tmp_path):
    assert run(capsys, "validate", tmp_path / "nope.json")[0] == 2
    assert main(["frobnicate"]) == 2
    assert main(["validate"]) == 2
    capsys.readouterr()


def test_k1class_diagonal_is_one(capsys, fixture_path):
    code, rep = run_json(capsys, "k1class", fixture_path("diagonal_binary.json"))
    assert code == 0 and rep["result"]["value"] == "1"


def test_k1class_elementary(capsys, fixture_path):
    code, rep = run_json(capsys, "k1class", fixture_path("elementary_binary_f7.json"))
    assert code == 0 and rep["result"]["value"] == "3"


def test_r_example_values_stable(capsys, fixture_path):
    path = fixture_path("r_example_f5.json")
    values = set()
    for _ in range(2):
        code, rep = run_json(capsys, "nenashev-class", path)
        assert code == 0 and rep["result"]["epsilon"] == -1
        values.add(rep["result"]["value"])
        code, k1 = run_json(capsys, "k1class", path)
        assert k1["result"]["value"] == rep["result"]["value"]
    assert values == {"2"}
    assert rep["result"]["oracle"] == "3"


def test_calibrate(capsys, fixture_path):
    code, rep = run_json(capsys, "calibrate", fixture_path("r_example_f5.json"), "--cases", 10)
    assert code == 0 and rep["result"]["epsilon"] == -1


def test_homology_over_z(capsys, fixture_path):
    code, rep = run_json(capsys, "homology", fixture_path("z_times_two.json"))
    assert code == 0 and rep["result"]["homology"] == {"0": "Z/2", "1": "0"}


def test_hfunctor(capsys, fixture_path):
    code, rep = run_json(capsys, "hfunctor", fixture_path("elementary_binary_f7.json"))
    assert code == 0 and rep["outcome"] == "ok"


def test_relative_generator_order_three(capsys, fixture_path):
    code, out = run(capsys, "relative", "class", fixture_path("f2_f4_generator.json"))
    assert code == 0 and "class order 3" in out
    code, rep = run_json(capsys, "relative", "class", fixture_path("f2_f4_generator.json"))
    assert rep["result"]["order"] == 3 and rep["result"]["text"] == "class order 3"


def test_relative_boundary(capsys, fixture_path):
    code, rep = run_json(capsys, "relative", "boundary", fixture_path("f2_f4_generator.json"))
    assert code == 0 and rep["result"]["boundary"] == 0
    code, rep = run_json(capsys, "relative", "boundary", fixture_path("triple_not_quasi_iso.json"))
    assert rep["result"]["boundary"] == 1 and rep["result"]["valid"] is False


@pytest.mark.parametrize("name", ["triple_ses_f2_f4.json", "weak_equivalence_f2_f4.json",
                                  "triple_diagonal_f2_f4.json"])
def test_relative_certify(capsys, fixture_path, name):
    assert run(capsys, "relative", "certify", fixture_path(name))[0] == 0


def test_multicheck_diagonal(capsys, fixture_path):
    code, rep = run_json(capsys, "multicheck", fixture_path("multi_diagonal_2d.json"))
    assert code == 0 and rep["result"]["diagonal_axes"] == [1]
    assert run(capsys, "multicheck", fixture_path("multi_diagonal_2d.json"), "--signature", "Cq,Bq")[0] == 1


def test_fixture_dir(capsys, fixture_path):
    fdir = os.path.dirname(fixture_path("x"))
    assert run(capsys, "validate", "elementary_acyclic.json", "--fixture-dir", fdir)[0] == 0


@pytest.mark.parametrize("kind", RANDGEN_KINDS)
def test_randgen_validates_and_replays(capsys, tmp_path, kind):
    ring = "F4" if kind.startswith(("triple", "weak")) else "F5"
    code, first = run(capsys, "randgen", kind, "--ring", ring, "--size", 3, "--seed", 12)
    assert code == 0
    second = run(capsys, "randgen", kind, "--ring", ring, "--size", 3, "--seed", 12)[1]
    assert first == second
    path = tmp_path / "p.json"
    path.write_text(first)
    assert run(capsys, "validate", path)[0] == 0


def test_randgen_size_zero_is_zero_complex(capsys):
    payload = json.loads(run(capsys, "randgen", "binary", "--ring", "F5", "--size", 0)[1])
    assert payload["degrees"] == {}


def test_selftest_zero_cases_warns(capsys):
    code, rep = run_json(capsys, "selftest", "--cases", 0, "--suite", "k1")
    assert code == 0
    assert {c["status"] for c in rep["checks"]} == {"warn"}


def test_selftest_small_run(capsys):
    code, rep = run_json(capsys, "selftest", "--cases", 3, "--seed", 5)
    assert code == 0 and rep["outcome"] == "ok"
    suites = rep["result"]["suites"]
    assert set(suites) == {"linalg", "complexes", "torsion", "k1", "hfunctor", "nenashev", "relative", "multicube"}
    assert all(s["checks"] > 0 and s["failed"] == 0 for s in suites.values())
    assert sum(s["cases"] for s in suites.values()) == rep["result"]["summary"]["cases"]


def test_env_seed_is_default():
    env = dict(os.environ, BINARYK_SEED="77")
    cmd = [sys.executable, "-m", "binaryk", "randgen", "binary", "--size", "2"]
    a = subprocess.run(cmd, env=env, capture_output=True, text=True, check=True).stdout
    b = subprocess.run(cmd + ["--seed", "77"], capture_output=True, text=True, check=True).stdout
    c = subprocess.run(cmd + ["--seed", "78"], capture_output=True, text=True, check=True).stdout
    assert a == b != c


def test_text_output_has_digest(capsys, fixture_path):
    code, out = run(capsys, "validate", fixture_path("elementary_acyclic.json"))
    assert out.splitlines()[0] == "validate: ok"
    assert out.splitlines()[-1].startswith("digest: ")
