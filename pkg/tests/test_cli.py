import json

import pytest
from click.testing import CliRunner

from polyptych.cli import main
from polyptych.posets import chain_poset


@pytest.fixture()
def runner():
    return CliRunner()


def run_json(runner, args):
    result = runner.invoke(main, args)
    assert result.output, result.exception
    return result.exit_code, json.loads(result.output)


def test_validate_family(runner):
    code, out = run_json(runner, ["validate", "--family", "gtC", "--n", "2",
                                  "--lambda", "2,4"])
    assert code == 0 and out["valid"] and out["spade"]


def test_classify_family(runner):
    code, out = run_json(runner, ["classify", "--family", "gtA", "--n", "2",
                                  "--lambda", "0,2,4"])
    assert code == 0 and out["ok"]
    assert any(c["shape"] == "ZIGZAG_MARKED_TOP" for c in out["components"])


def test_transfer_counts(runner):
    code, out = run_json(runner, ["transfer", "--family", "gtA", "--n", "2",
                                  "--lambda", "0,2,4", "--k", "1"])
    assert code == 0
    counts = {e["count"] for e in out["report"]["charts"].values()}
    assert counts == {27}


def test_polytope_count(runner):
    code, out = run_json(runner, ["polytope", "--family", "gtC", "--n", "2",
                                  "--lambda", "2,4", "--chart", "q11,q21"])
    assert code == 0 and out["lattice_points"] == 81


def test_mutate_empty_to_empty_is_identity(runner):
    code, out = run_json(runner, ["mutate", "--family", "gtC", "--n", "2",
                                  "--lambda", "2,4", "--vector", "1,-2,3,0",
                                  "--from-chart", "", "--to-chart", ""])
    assert code == 0 and out["image"] == [1, -2, 3, 0]


def test_hilbert_rows(runner):
    code, out = run_json(runner, ["hilbert", "--family", "gtA", "--n", "2",
                                  "--lambda", "0,2,4", "--kmax", "2"])
    assert code == 0
    assert [r["dimension"] for r in out["report"]["rows"]] == [1, 27, 125]


def test_cox_counts(runner):
    code, out = run_json(runner, ["cox", "--family", "gtC", "--n", "3",
                                  "--emit", "counts"])
    assert code == 0 and out["variables"] == 18


def test_cox_presentation(runner):
    code, out = run_json(runner, ["cox", "--family", "gtA", "--n", "2",
                                  "--lambda", "0,2,4",
                                  "--emit", "presentation"])
    assert code == 0 and out["free_count"] == 6


def test_poset_file_source(runner, tmp_path):
    path = tmp_path / "chain.json"
    path.write_text(json.dumps(chain_poset(1, 0, 2).to_json()))
    code, out = run_json(runner, ["transfer", "--poset", str(path)])
    assert code == 0 and out["report"]["ok"]


def test_missing_source_is_usage_error(runner):
    result = runner.invoke(main, ["transfer"])
    assert result.exit_code == 2


def test_bad_poset_file_is_usage_error(runner, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("not json")
    result = runner.invoke(main, ["validate", "--poset", str(path)])
    assert result.exit_code == 2


def test_bad_vector_is_usage_error(runner):
    result = runner.invoke(main, ["mutate", "--family", "gtC", "--n", "2",
                                  "--vector", "1,x"])
    assert result.exit_code == 2


def test_valcheck_small(runner):
    code, out = run_json(runner, ["valcheck", "--family", "gtC", "--n", "2",
                                  "--samples", "5"])
    assert code == 0 and out["report"]["ok"]


def test_dualcheck_small(runner):
    code, out = run_json(runner, ["dualcheck", "--family", "gtC", "--n", "2",
                                  "--pairs", "40", "--chart-samples", "8"])
    assert code == 0 and out["report"]["ok"]


def test_nobody_small(runner):
    code, out = run_json(runner, ["nobody", "--family", "gtA", "--n", "2",
                                  "--lambda", "0,2,4", "--chart", "q21",
                                  "--kmax", "1"])
    assert code == 0 and out["report"]["ok"]
