import json
import subprocess
import sys

import pytest

from matchdisc.cli import int_range, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_int_range():
    assert int_range("3..5") == [3, 4, 5]
    assert int_range("7") == [7]


def test_table1_exit_zero(capsys):
    code, out, _ = run(capsys, "thresholds", "table", "--r", "2", "--k", "3..19")
    assert code == 0
    assert "0.6280" in out and "0.6221" in out


def test_table2_flags_the_misprinted_cell(capsys):
    code, out, err = run(capsys, "thresholds", "table", "--r", "3..5", "--k", "3..9")
    assert code == 1
    assert err.count("mismatch") == 1 and "0.5363" in err


@pytest.mark.parametrize("fmt", ["md", "csv", "json"])
def test_table_formats(capsys, fmt):
    code, out, _ = run(capsys, "thresholds", "table", "--r", "2", "--k", "3..4", "--format", fmt)
    assert code == 0
    if fmt == "json":
        assert json.loads(out)["k"] == [3, 4]


def test_trim_zeros_flag(capsys):
    _, out, _ = run(capsys, "thresholds", "table", "--r", "2", "--k", "3", "--trim-zeros", "--format", "csv")
    assert out.strip().splitlines()[1] == "g_2(k),0.75"


def test_value_json(capsys):
    code, out, _ = run(capsys, "thresholds", "value", "--r", "2", "--k", "4", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["g"] == "175/256" and doc["maximizers"] == [[1, 2]]


def test_construct_and_census(capsys, tmp_path):
    path = tmp_path / "h.json"
    assert run(capsys, "construct", "--a", "1,1", "--n", "6", "-o", str(path))[0] == 0
    doc = json.loads(path.read_text())
    assert doc["n"] == 6 and len(doc["edges"]) == 18
    assert doc["edges"] == sorted(doc["edges"], key=lambda e: e["v"])
    code, out, _ = run(capsys, "matchings", "census", "-i", str(path), "--threads", "1")
    assert code == 0 and json.loads(out) == {"profiles": [{"counts": [1, 1], "pm_count": 9}], "total": 9}
    code, out, _ = run(capsys, "matchings", "best", "-i", str(path))
    assert code == 0 and json.loads(out)["value"] == 1


def test_construct_with_sizes(capsys):
    code, out, _ = run(capsys, "construct", "--a", "0,2", "--sizes", "2,4")
    assert code == 0 and json.loads(out)["n"] == 6


def test_census_threads_deterministic(capsys, tmp_path):
    path = tmp_path / "h.json"
    run(capsys, "construct", "--a", "0,1,1", "--sizes", "4,4,4", "-o", str(path))
    outs = {run(capsys, "matchings", "census", "-i", str(path), "--threads", t)[1] for t in ("1", "2", "4")}
    assert len(outs) == 1


def test_gadgets_find(capsys, tmp_path):
    path = tmp_path / "h.json"
    run(capsys, "construct", "--a", "1,1", "--n", "6", "-o", str(path))
    code, out, _ = run(capsys, "gadgets", "find", "-i", str(path), "--kinds", "1,2,3")
    assert code == 0 and out.strip() == "none"
    doc = json.loads(path.read_text())
    doc["edges"][0]["c"] = 3 - doc["edges"][0]["c"]
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "gadgets", "find", "-i", str(path))
    assert code == 0 and json.loads(out)["kind"] in (1, 2, 3)


def test_structure_recover(capsys, tmp_path):
    path = tmp_path / "h.json"
    run(capsys, "construct", "--a", "1,1", "--n", "6", "-o", str(path))
    code, out, _ = run(capsys, "structure", "recover", "-i", str(path), "--threshold", "1")
    assert code == 0 and json.loads(out)["a_vector"] == [1, 1]
    code, _, err = run(capsys, "structure", "recover", "-i", str(path), "--threshold", "auto")
    assert code == 1 and "UntypedPair" in err


def test_verify_tables_reports_single_mismatch(capsys):
    code, out, _ = run(capsys, "verify", "tables", "--format", "json")
    doc = json.loads(out)
    bad = [c for c in doc["cells"] if not c["match"]]
    assert code == 1
    assert [(c["function"], c["k"]) for c in bad] == [("g_4(k)", 4)]
    assert all(m["match"] for m in doc["maximizers"])


def test_verify_appendix(capsys):
    code, out, _ = run(capsys, "verify", "appendix", "--k-max", "200", "--format", "json")
    assert code == 0 and json.loads(out)["passed"]


def test_verify_oracle(capsys):
    code, out, _ = run(capsys, "verify", "oracle", "--seed", "11", "--trials", "8")
    assert code == 0 and out.strip().endswith("PASS")


@pytest.mark.parametrize("argv", [
    [],
    ["thresholds", "table", "--r", "x", "--k", "3"],
    ["construct", "--a", "1,1"],
    ["construct", "--a", "2,1", "--n", "6"],
    ["matchings", "census", "-i", "/nonexistent/file.json"],
    ["structure", "recover", "-i", "x.json", "--threshold", "abc"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_parse_error_exit_two(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"n": 3, "k": 3, "r": 1, "edges": [{"v": [0, 1], "c": 1}]}')
    code, _, err = run(capsys, "matchings", "census", "-i", str(path))
    assert code == 2 and "WrongEdgeSize" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "matchdisc", "thresholds", "value", "--r", "2", "--k", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "3/4" in proc.stdout
