import json
import subprocess
import sys

import pytest

from gjs import planar, serialize
from gjs.cli import main
from gjs.graded import GradedElement


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


def element_file(tmp_path, name, element, delta):
    return write(tmp_path, name, serialize.element_to_json(element, delta))


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_check_exit_codes(capsys, tmp_path):
    out_file = tmp_path / "report.jsonl"
    code, _, _ = run(["check", "--delta", "5/2", "--seed", "42", "--suite", "fock", "--out", str(out_file)], capsys)
    assert code == 0
    assert all(json.loads(line)["suite"] == "fock" for line in out_file.read_text().splitlines())
    code, _, err = run(["check", "--delta", "3/2"], capsys)
    assert code == 2 and "exceed 2" in err
    code, _, err = run(["check", "--suite", "bogus"], capsys)
    assert code == 2 and "bogus" in err
    code, _, err = run(["check", "--delta", "2.5"], capsys)
    assert code == 2 and "p/q" in err


def test_check_reports_gated_failure(capsys, monkeypatch):
    import gjs.verify as verify

    original = verify.run_suites

    def failing(cfg, progress=None):
        report = original(cfg)
        report.records[0].passed = False
        return report

    monkeypatch.setattr("gjs.cli.run_suites", failing)
    code, _, err = run(["check", "--suite", "fock"], capsys)
    assert code == 1 and "FAILED" in err


def test_eval_examples(alg, tmp_path, capsys):
    p2 = serialize.element_to_json(alg.jones_projection(2), alg.delta)
    code, out, _ = run(["eval", "--expr", write(tmp_path, "t.json", {"trace": {"lit": p2}})], capsys)
    assert code == 0 and json.loads(out)["scalar"] == "25/4"

    p1 = {"lit": serialize.element_to_json(alg.jones_projection(1), alg.delta)}
    code, out, _ = run(["eval", "--expr", write(tmp_path, "w.json", {"wedge": [p1, p1]})], capsys)
    assert code == 0 and serialize.element_from_json(json.loads(out))[1] == alg.jones_projection(1)

    x = {"lit": serialize.element_to_json(GradedElement.diagram(3, 0, 1, planar.enumerate_nc_pairings(4, 3)[1]), alg.delta)}
    code, out, _ = run(["eval", "--expr", write(tmp_path, "s.json", {"star": {"star": x}})], capsys)
    assert json.loads(out) == x["lit"]


def test_eval_output_round_trips(alg, tmp_path, capsys):
    tree = {"walker": [{"jones": 1}, {"iota": {"arg": {"jones": 0}, "n": 1}}, {"jones": 1}]}
    code, first, _ = run(["eval", "--expr", write(tmp_path, "a.json", tree)], capsys)
    assert code == 0
    code, second, _ = run(["eval", "--expr", write(tmp_path, "b.json", {"lit": json.loads(first)})], capsys)
    assert first == second


def test_eval_bimodule_operators(alg, tmp_path, capsys):
    strand = {"lit": serialize.corner_to_json(
        serialize.corner_from_json({"shape": [0, 1], **serialize.element_to_json(
            GradedElement.diagram(1, 0, 1, planar.identity(1)), alg.delta)}), alg.delta)}
    cases = {
        "inner_right": [strand, strand],
        "inner_left": [strand, strand],
        "fuse": [strand, strand],
        "conjugate": strand,
        "dot_shift": {"arg": strand, "steps": 1},
        "F": {"morphism": serialize.morphism_to_json(alg.category.identity(1)), "arg": strand},
        "En": {"arg": {"jones": 1}, "n": 1},
        "E": {"jones": 0},
        "phi": {"jones": 3},
    }
    for op, arg in cases.items():
        code, out, err = run(["eval", "--expr", write(tmp_path, f"{op}.json", {op: arg})], capsys)
        assert code == 0, (op, err)
    code, out, _ = run(["eval", "--expr", write(tmp_path, "l2.json", {"trace": {"inner_right": [strand, strand]}})], capsys)
    assert json.loads(out)["scalar"] == "5/2"


def test_eval_errors_name_the_node(tmp_path, capsys):
    code, _, err = run(["eval", "--expr", write(tmp_path, "bad.json", {"wedge": [{"jones": 1}, {"nope": 1}]})], capsys)
    assert code == 2 and "$.wedge[1]" in err
    code, _, err = run(["eval", "--expr", write(tmp_path, "shape.json", {"inner_right": [{"jones": 1}, {"jones": 2}]})], capsys)
    assert code == 2 and "$.inner_right" in err
    code, _, err = run(["eval", "--expr", str(tmp_path / "missing.json")], capsys)
    assert code == 2


def test_norm_command(cat, alg, tmp_path, capsys):
    e = alg.frobenius_reciprocity(cat.compose(cat.cup(1), cat.cap(1)) * (1 / cat.delta))
    code, out, _ = run(["norm", "--input", element_file(tmp_path, "e.json", e, alg.delta), "--p-max", "64"], capsys)
    result = json.loads(out)
    assert code == 0 and result["estimates"][-1] >= 0.97
    assert result["gns_norm"] == pytest.approx(1.0, abs=1e-7)
    code, out, _ = run(["norm", "--input", element_file(tmp_path, "p.json", alg.jones_projection(2), alg.delta)], capsys)
    assert json.loads(out)["estimates"] == [1.0] * 7
    off = GradedElement.diagram(0, 0, 2, planar.cup(1))
    code, _, err = run(["norm", "--input", element_file(tmp_path, "off.json", off, alg.delta)], capsys)
    assert code == 2 and "(0, 2)" in err
    code, _, err = run(["norm", "--input", element_file(tmp_path, "e2.json", e, alg.delta), "--p-max", "48"], capsys)
    assert code == 2


def test_norm_budget(alg, tmp_path, capsys, monkeypatch):
    x = GradedElement.diagram(2, 1, 1, planar.enumerate_nc_pairings(4, bottom=2)[0])
    monkeypatch.setenv("GJS_BOTTOM_BUDGET", "8")
    code, _, err = run(["norm", "--input", element_file(tmp_path, "x.json", x, alg.delta), "--p-max", "8"], capsys)
    assert code == 2 and "budget" in err


def test_dims_and_nc(capsys):
    code, out, _ = run(["dims", "--max-n", "2"], capsys)
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and {"b": 2, "l": 1, "r": 1, "dim": 2} in rows
    code, out, _ = run(["nc", "--points", "8"], capsys)
    assert code == 0 and len(out.splitlines()) == 14
    code, _, _ = run(["nc", "--points", "4", "--bottom", "5"], capsys)
    assert code == 2
    code, _, _ = run(["nc", "--points", "3"], capsys)
    assert code == 2


def test_fock_command(alg, tmp_path, capsys):
    xi = GradedElement.diagram(1, 1, 0, planar.identity(1))
    sym = element_file(tmp_path, "xi.json", xi, alg.delta)
    code, out, _ = run(["fock", "--symbol", sym, "--op", "create"], capsys)
    assert code == 0 and serialize.fock_from_json(json.loads(out)).sector(1) == xi
    code, out, _ = run(["fock", "--symbol", sym, "--vector", sym, "--op", "annihilate"], capsys)
    assert code == 0
    code, _, err = run(["fock", "--symbol", element_file(tmp_path, "bad.json", alg.jones_projection(1), alg.delta)], capsys)
    assert code == 2


def test_module_entry_point():
    done = subprocess.run([sys.executable, "-m", "gjs", "dims", "--max-n", "1"], capture_output=True, text=True)
    assert done.returncode == 0 and len(done.stdout.splitlines()) == 10
    done = subprocess.run([sys.executable, "-m", "gjs"], capture_output=True, text=True)
    assert done.returncode == 2
