import io
import json
import sys
from fractions import Fraction

import pytest

from modelk.automorphisms import AffineMap, PAMap
from modelk.cli import main
from modelk.cosets import AffineCoset
from modelk.defsets import make_block
from modelk.jsonio import dumps, pamap_to_json

CROSS = "ambient 2; pp(x1 = 0) | pp(x2 = 0)"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def doubling_with_patch() -> PAMap:
    full = AffineCoset.full(1)
    p1 = AffineCoset.single_point((Fraction(1),))
    p2 = AffineCoset.single_point((Fraction(2),))
    return PAMap(1, [
        (make_block(full, [p1, p2]), AffineMap.make([[2]], [0])),
        (make_block(p1), AffineMap.make([[1]], [3])),
        (make_block(p2), AffineMap.make([[1]], [0])),
    ])


# --- set-level commands -------------------------------------------------------

def test_k0_json(capsys):
    code, out, _ = run(capsys, "--json", "k0", CROSS)
    assert code == 0
    doc = json.loads(out)
    assert doc["coeffs"] == [-1, 2]  # two lines sharing a point


def test_iso(capsys):
    code, out, _ = run(capsys, "iso", "ambient 2; pp(x1 = 0)",
                       "ambient 2; pp(x2 = 7)")
    assert code == 0 and out.startswith("definably isomorphic")
    code, out, _ = run(capsys, "iso", "ambient 2; pp(x1 = 0)",
                       "ambient 2; pp(x1 = 0 & x2 = 0)")
    assert code == 0 and out.startswith("not definably isomorphic")


def test_dim(capsys):
    code, out, _ = run(capsys, "dim", "ambient 2; !pp(x1 = 0)")
    assert (code, out.strip()) == (0, "2")
    code, out, _ = run(capsys, "dim", "ambient 1; pp(x1 = 0) & pp(x1 = 1)")
    assert (code, out.strip()) == (0, "-inf (empty)")
    code, out, _ = run(capsys, "--json", "dim",
                       "ambient 1; pp(x1 = 0) & pp(x1 = 1)")
    assert json.loads(out) == {"dim": None, "empty": True}


def test_count(capsys):
    code, out, _ = run(capsys, "count", CROSS, "--prime", "5")
    assert code == 0
    assert out.strip() == "9 points mod 5; class predicts 9; prime is good"
    code, out, _ = run(capsys, "count", "ambient 1; pp(5*x1 = 1)",
                       "--prime", "5")
    assert code == 0
    assert out.strip() == "0 points mod 5; class predicts 1; prime is bad"


def test_formula_errors_exit_1(capsys):
    code, out, err = run(capsys, "k0", "ambient 2; pp(x3 = 0)")
    assert code == 1 and out == "" and err.startswith("error:")
    code, _, err = run(capsys, "count", "ambient 1; pp(", "--prime", "3")
    assert code == 1 and "error:" in err


# --- piecewise-affine map commands ----------------------------------------------

def test_aut_validate_and_queries(tmp_path, capsys):
    path = tmp_path / "map.json"
    path.write_text(dumps(pamap_to_json(doubling_with_patch())))
    code, out, _ = run(capsys, "aut", "validate", str(path))
    assert code == 0 and out.startswith("[ok]")
    code, out, _ = run(capsys, "aut", "dim", str(path))
    assert (code, out.strip()) == (0, "1")
    code, out, _ = run(capsys, "--json", "aut", "support", str(path))
    doc = json.loads(out)
    assert code == 0 and doc["dim"] == 1
    code, out, _ = run(capsys, "aut", "decompose", str(path))
    assert code == 0
    assert "matrix [[2]], offset [0]" in out
    assert "support dimension 0" in out


def test_aut_reads_stdin(capsys, monkeypatch):
    payload = dumps(pamap_to_json(doubling_with_patch()))
    monkeypatch.setattr(sys, "stdin", io.StringIO(payload))
    code, out, _ = run(capsys, "aut", "dim", "-")
    assert (code, out.strip()) == (0, "1")


def test_aut_invalid_map(tmp_path, capsys):
    # second piece shadows part of the first: not a bijection
    full = AffineCoset.full(1)
    point = AffineCoset.single_point((Fraction(0),))
    bad = PAMap(1, [(make_block(full), AffineMap.identity(1)),
                    (make_block(point), AffineMap.make([[1]], [1]))])
    path = tmp_path / "bad.json"
    path.write_text(dumps(pamap_to_json(bad)))
    # validate reports the failure but is itself a successful run
    code, out, _ = run(capsys, "aut", "validate", str(path))
    assert code == 0 and out.startswith("[FAIL]")
    # queries that need a bijection refuse to run
    code, _, err = run(capsys, "aut", "support", str(path))
    assert code == 1 and err.startswith("error:")


def test_aut_missing_file(capsys):
    code, _, err = run(capsys, "aut", "validate", "/no/such/file.json")
    assert code == 1 and err.startswith("error:")


# --- symbolic commands -----------------------------------------------------------

def test_k1_text_and_json(capsys):
    code, out, _ = run(capsys, "k1", "--ring", "fq:5")
    assert code == 0 and "Z_2" in out and "Z_4" in out
    code, out, _ = run(capsys, "--json", "k1", "--ring", "fq:5")
    doc = json.loads(out)
    kinds = {(s["atom"], s.get("k")) for s in doc["summands"]}
    assert ("Zmod", 2) in kinds and ("Zmod", 4) in kinds
    assert all(s["mult"] == "countable" for s in doc["summands"])


def test_k1_over_the_integers(capsys):
    code, out, _ = run(capsys, "k1", "--ring", "z")
    assert code == 0 and "Z_2" in out
    code, _, err = run(capsys, "k1", "--ring", "z", "--free-rank", "2")
    assert code == 1 and "error:" in err


def test_k1_rejects_f2_and_flagless_domains(capsys):
    code, _, err = run(capsys, "k1", "--ring", "fq:2")
    assert code == 1 and "error:" in err
    code, _, err = run(capsys, "k1", "--ring", "ed:R")
    assert code == 1
    code, out, _ = run(capsys, "k1", "--ring", "ed:R", "--unit-sum",
                       "--t-closed")
    assert code == 0 and "R^x" in out


def test_k1_flag_validation(capsys):
    code, _, err = run(capsys, "k1", "--ring", "fq:5", "--t-closed",
                       "--cofinal-even")
    assert code == 1 and "mutually exclusive" in err
    code, _, err = run(capsys, "k1", "--ring", "nonsense:9")
    assert code == 1 and "error:" in err


def test_omega_ab(capsys):
    code, out, _ = run(capsys, "omega-ab", "--ring", "fq:4", "--n", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("level 2:")
    assert lines[1].startswith("level 1:")
    assert lines[2] == "level 0: Z_2"
    assert lines[3].startswith("total:")
    code, out, _ = run(capsys, "--json", "omega-ab", "--ring", "z", "--n", "2")
    doc = json.loads(out)
    assert [lvl["level"] for lvl in doc["levels"]] == [2, 1, 0]
    assert {"atom": "UndeterminedZ2"} in doc["levels"][2]["atoms"]


def test_omega_ab_cofinal_odd(capsys):
    # an abstract unit-sum domain needs the theory flags spelled out
    code, out, _ = run(capsys, "omega-ab", "--ring", "ed:S", "--unit-sum",
                       "--cofinal-odd", "--n", "1")
    assert code == 0
    assert out.splitlines()[0].count("Z_2") == 1  # extra parity summand


# --- verification suites -----------------------------------------------------------

def test_verify_suite_passes(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "perm")
    assert code == 0 and out.startswith("[ok]")


def test_verify_is_deterministic(capsys):
    code, first, _ = run(capsys, "--json", "--seed", "11", "verify",
                         "--suite", "lift")
    assert code == 0
    code, second, _ = run(capsys, "--json", "--seed", "11", "verify",
                          "--suite", "lift")
    assert first == second
    code, third, _ = run(capsys, "--json", "--seed", "12", "verify",
                         "--suite", "lift")
    assert code == 0 and json.loads(third)["passed"]


def test_verify_cap_errors_exit_1(capsys):
    code, _, err = run(capsys, "--cap", "3", "verify", "--suite", "gl")
    assert code == 1 and "error:" in err


# --- group helpers ------------------------------------------------------------------

def test_abelianize_catalogue_and_extended_specs(capsys):
    code, out, _ = run(capsys, "--json", "abelianize", "--group", "sym:4")
    doc = json.loads(out)
    assert code == 0 and doc["order"] == 24 and doc["abelianization"] == [2]
    code, out, _ = run(capsys, "--json", "abelianize", "--group", "gl:2:3")
    doc = json.loads(out)
    assert doc["order"] == 48 and doc["abelianization"] == [2]
    code, out, _ = run(capsys, "--json", "abelianize", "--group",
                       "wreath:cyclic:2:2")
    doc = json.loads(out)
    assert doc["order"] == 8 and doc["abelianization"] == [2, 2]
    code, _, err = run(capsys, "abelianize", "--group", "mystery:7")
    assert code == 1 and "error:" in err


# --- usage errors --------------------------------------------------------------------

def test_usage_errors_exit_2(capsys):
    for argv in ([], ["frobnicate"], ["count", CROSS],
                 ["aut", "rotate", "x.json"], ["k1"]):
        with pytest.raises(SystemExit) as info:
            main(argv)
        assert info.value.code == 2
        capsys.readouterr()


def test_json_output_is_byte_stable(capsys):
    code, first, _ = run(capsys, "--json", "k0", CROSS)
    code2, second, _ = run(capsys, "--json", "k0", CROSS)
    assert (code, code2) == (0, 0) and first == second
    assert first.endswith("\n")
