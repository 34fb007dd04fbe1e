import hashlib
import json
import subprocess
import sys

import jsonschema
import pytest

from cubecover.boolean import is_distinct_dnf, is_tautology, parse_dnf
from cubecover.cli import main
from cubecover.schemas import SCHEMAS

ERDOS = "0 mod 2\n0 mod 3\n1 mod 4\n5 mod 6\n7 mod 12\n"


def run_json(capsys, *argv):
    code = main([*argv, "--json"])
    doc = json.loads(capsys.readouterr().out)
    schema = SCHEMAS["error" if "error" in doc else argv[0]]
    jsonschema.validate(doc, schema)
    return code, doc


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return _write


@pytest.mark.parametrize("name", sorted(SCHEMAS))
def test_schemas_are_valid(name):
    jsonschema.Draft202012Validator.check_schema(SCHEMAS[name])


def test_verify_erdos(capsys, write):
    path = write("erdos.txt", ERDOS)
    code, doc = run_json(capsys, "verify-covsys", path)
    assert code == 0
    assert doc["report"]["is_cover"] and doc["is_distinct"] and not doc["is_exact"]
    assert doc["top_moduli"] is None
    digest = hashlib.sha256(ERDOS.encode()).hexdigest()
    assert doc["manifest"]["inputs"] == {path: digest}
    assert doc["manifest"]["subcommand"] == "verify-covsys"


def test_verify_not_cover(capsys, write):
    code, doc = run_json(capsys, "verify-covsys", write("half.txt", "0 mod 2\n"))
    assert code == 1
    assert doc["report"]["uncovered"] == [1]


def test_verify_exact_reports_theorem_checks(capsys, write):
    code, doc = run_json(capsys, "verify-covsys", write("exact.txt", "0 mod 2\n1 mod 4\n3 mod 4\n"))
    assert code == 0 and doc["is_exact"]
    assert doc["top_moduli"]["holds"] and doc["znam"] == {"p": 2, "multiplicity": 2, "holds": True}


def test_verify_malformed(capsys, write):
    code, doc = run_json(capsys, "verify-covsys", write("bad.txt", "0 mod 2\n1 mod\n"))
    assert code == 2
    assert doc["error"]["type"] == "ParseError" and doc["error"]["line"] == 2


def test_verify_missing_file(capsys, tmp_path):
    code, doc = run_json(capsys, "verify-covsys", str(tmp_path / "absent.txt"))
    assert code == 2


def test_verify_lcm_cap(capsys, write):
    code, doc = run_json(capsys, "verify-covsys", write("big.txt", "0 mod 1009\n"),
                         "--max-lcm", "1000")
    assert code == 4 and doc["error"]["type"] == "CapacityError"


def test_crt_map_worked_example(capsys, write):
    code, doc = run_json(capsys, "crt-map", write("s.txt", "7 mod 10\n0 mod 3\n"), "--check")
    assert code == 0
    assert doc["M"] == 30 and doc["radices"] == [2, 3, 5]
    first = doc["subboxes"][0]
    assert first["fixed_by_prime"] == {"2": 1, "5": 2} and first["fixed"] == {"0": 1, "2": 2}
    assert first["points"] == 3
    assert doc["equivalent"] is True


def test_crt_map_rejects_erdos(capsys, write):
    code, doc = run_json(capsys, "crt-map", write("erdos.txt", ERDOS))
    assert code == 3
    assert "2^2" in doc["error"]["message"]


def test_crt_map_full_box(capsys, write):
    code, doc = run_json(capsys, "crt-map", write("one.txt", "0 mod 1\n"))
    assert code == 0
    assert doc["M"] == 1 and doc["subboxes"][0]["fixed"] == {}


def test_construct_check_roundtrip(capsys, tmp_path):
    out = tmp_path / "ph.dnf"
    code, doc = run_json(capsys, "dnf-construct", "--n", "9", "--t", "4", "--out", str(out))
    assert code == 0 and doc["terms"] == 252
    dnf = parse_dnf(out.read_text())
    assert is_tautology(dnf) and is_distinct_dnf(dnf)
    code, doc = run_json(capsys, "dnf-check", str(out))
    assert code == 0
    assert doc["is_tautology"] and doc["is_distinct"] and doc["min_size"] == 4
    assert doc["mndr"] is None


@pytest.mark.parametrize("n, t", [(n, t) for n in range(1, 9) for t in range(1, n + 1) if 2 * t != n])
def test_construct_check_roundtrip_all_valid(capsys, tmp_path, n, t):
    out = tmp_path / "ph.dnf"
    assert main(["dnf-construct", "--n", str(n), "--t", str(t), "--out", str(out)]) == 0
    assert main(["dnf-check", str(out)]) == 0
    assert "tautology: yes" in capsys.readouterr().out


def test_construct_invalid_t(capsys):
    code, doc = run_json(capsys, "dnf-construct", "--n", "4", "--t", "2")
    assert code == 2


def test_dnf_check_non_tautology(capsys, write):
    code, doc = run_json(capsys, "dnf-check", write("d.dnf", "n = 3\nx1\nx2\nx3\n"))
    assert code == 1 and doc["uncovered_count"] == 1


def test_dnf_check_exact_mndr(capsys, write):
    code, doc = run_json(capsys, "dnf-check", write("d.dnf", "n = 2\nx1\n!x1 & x2\n!x1 & !x2\n"))
    assert code == 0 and doc["is_exact"]
    assert doc["mndr"] == {"max_size": 2, "multiplicity": 2, "holds": True, "degenerate": None}


def test_bounds_A(capsys):
    code, doc = run_json(capsys, "bounds", "--table", "A", "--max-n", "14")
    assert code == 0
    rows = {r["n"]: r for r in doc["rows"]}
    assert rows[14]["value"] == 10
    assert rows[4]["tail"] == "33/16"
    assert rows[1]["value"] == 0 and doc["notes"]


def test_bounds_B_strict(capsys):
    code, doc = run_json(capsys, "bounds", "--table", "B", "--max-n", "14", "--mode", "strict")
    assert [r["value"] for r in doc["rows"]] == [0, 0, 1, 2, 3, 3, 4, 5, 6, 6, 7, 8, 9, 9]
    assert doc["notes"] == []


def test_bounds_text(capsys):
    assert main(["bounds", "--table", "A", "--max-n", "5"]) == 0
    out = capsys.readouterr().out
    assert "  5   3  51/32" in out and "note:" in out


def test_search_uniform_impossible(capsys, tmp_path):
    outcome = tmp_path / "o.json"
    witness = tmp_path / "w.dnf"
    code, doc = run_json(capsys, "search", "--n", "3", "--uniform", "1", "--strategy", "exhaustive",
                         "--outcome", str(outcome), "--witness", str(witness))
    assert code == 1
    assert doc["outcome"]["status"] == "ProvedImpossible"
    assert doc["outcome"]["uncovered_count"] == 1
    assert doc["manifest"]["seed"] == 0
    saved = json.loads(outcome.read_text())
    jsonschema.validate(saved, SCHEMAS["search"])
    assert saved["outcome"] == doc["outcome"] | {"elapsed_s": saved["outcome"]["elapsed_s"]}
    assert len(parse_dnf(witness.read_text())) == 3


def test_search_distinct_certified(capsys, tmp_path):
    witness = tmp_path / "w.dnf"
    code, doc = run_json(capsys, "search", "--n", "6", "--min-size", "4", "--witness", str(witness))
    assert code == 0 and doc["certified"] is True
    assert main(["dnf-check", str(witness)]) == 0


def test_search_exhaustive_cap_is_capacity(capsys):
    code, doc = run_json(capsys, "search", "--n", "12", "--uniform", "8", "--strategy", "exhaustive")
    assert code == 4


def test_search_requires_target():
    with pytest.raises(SystemExit) as exc:
        main(["search", "--n", "3"])
    assert exc.value.code == 2


def test_box_check(capsys, write):
    path = write("b.txt", "box: 2 3 5\nfix 1=1 3=2\n")
    code, doc = run_json(capsys, "box-check", path)
    assert code == 1 and doc["report"]["uncovered_count"] == 27
    assert doc["density_tail"] == "11/30" and doc["density_clears"] is False
    path = write("c.txt", "box: 2 2\nfix 1=1\nfix 2=1\nfix 1=0 2=0\n")
    code, doc = run_json(capsys, "box-check", path)
    assert code == 0 and doc["report"]["non_parallel"]


def test_point_cap_env(capsys, write, monkeypatch):
    monkeypatch.setenv("CUBECOVER_POINT_CAP", "10")
    code, doc = run_json(capsys, "box-check", write("b.txt", "box: 4 4\nfix 1=0\n"))
    assert code == 4


def test_module_entry_point_and_pipe():
    construct = subprocess.run([sys.executable, "-m", "cubecover", "dnf-construct", "--n", "5",
                                "--t", "2"], capture_output=True, text=True, check=True)
    check = subprocess.run([sys.executable, "-m", "cubecover", "dnf-check", "-", "--json"],
                           input=construct.stdout, capture_output=True, text=True)
    assert check.returncode == 0
    doc = json.loads(check.stdout)
    jsonschema.validate(doc, SCHEMAS["dnf-check"])
    assert doc["is_tautology"] and doc["is_distinct"] and "-" in doc["manifest"]["inputs"]
