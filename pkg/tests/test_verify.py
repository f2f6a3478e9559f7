import json
from fractions import Fraction

import pytest

from gjs.verify import SUITES, SuiteConfig, check_names, dimension_table, run_suites


@pytest.fixture(scope="module")
def default_report():
    return run_suites(SuiteConfig())


def test_config_validation():
    with pytest.raises(ValueError, match="exceed 2"):
        SuiteConfig(delta=Fraction(3, 2))
    with pytest.raises(ValueError, match="unknown suite 'bogus'"):
        SuiteConfig(suites=("bogus",))
    with pytest.raises(ValueError):
        SuiteConfig(float_tol=0)
    with pytest.raises(ValueError):
        SuiteConfig(moment_p_max=48)
    assert SuiteConfig(delta="3").delta == 3


def test_default_run_passes(default_report):
    assert default_report.passed, [r.name for r in default_report.failures()]
    assert {r.suite for r in default_report.records} == set(SUITES)
    for record in default_report.records:
        assert record.anchor
        assert record.mode in {"exact", "float", "reported"}
        assert record.gating == (record.mode != "reported")
        if record.mode == "exact":
            assert record.residual == 0 and record.samples > 0


def test_report_is_deterministic(default_report):
    again = run_suites(SuiteConfig())
    assert again.to_jsonl(include_timing=False) == default_report.to_jsonl(include_timing=False)


def test_report_lines_are_json(default_report):
    lines = default_report.to_jsonl().splitlines()
    assert len(lines) == len(default_report.records)
    first = json.loads(lines[0])
    assert {"name", "suite", "anchor", "mode", "residual", "passed", "elapsed"} <= set(first)


def test_suite_filter():
    report = run_suites(SuiteConfig(suites=("fock",)))
    assert {r.suite for r in report.records} == {"fock"}
    assert [r.name for r in report.records] == check_names("fock")


def test_other_seed_and_delta_pass():
    report = run_suites(SuiteConfig(delta=3, seed=7, suites=("gjs-products", "fock")))
    assert report.passed


def test_dimension_table():
    table = {(row["b"], row["l"], row["r"]): row["dim"] for row in dimension_table(4)}
    assert table[(0, 1, 1)] == 1
    assert table[(2, 1, 1)] == 2
    assert table[(1, 0, 0)] == 0
    assert table[(4, 2, 2)] == 14
    assert max(sum(k) for k in table) == 8
    with pytest.raises(ValueError):
        dimension_table(11)
