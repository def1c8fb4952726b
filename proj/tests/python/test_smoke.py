"""Smoke tests for the Python module; the heavy lifting lives in the C++ suites."""

import math
import os

import pytest

import monobn

MODEL_TEXT = """
network smoke
var x 3
var y 3
class y
edge x -> y q+
"""

CORPUS_DIR = os.environ.get("MONOBN_DATA", "data")


def test_parse_model_and_constraint_count():
    model = monobn.parse_model(MODEL_TEXT)
    assert model.class_variable == "y"
    assert ("x", "y", "q+") in model.edges
    # One 3-state isotone parent over a 3-state child: 2 pairs x 2 levels.
    assert len(monobn.constraints(model, 0.0)) == 4


def test_chain_length_and_margins():
    model = monobn.parse_model(
        "network t\nvar a 3\nvar b 3\nvar y 2\nclass y\n"
        "edge a -> y q+\nedge b -> y q+\n"
    )
    assert monobn.chain_length(model, "y") == 4
    margins = [c["epsilon"] for c in monobn.constraints(model, 0.2)]
    assert margins == pytest.approx([0.05] * len(margins))
    assert len(margins) == 12  # 2 parents x 2 adjacent pairs x 3 contexts x 1 level


def test_fit_pools_antitone_counts():
    model = monobn.parse_model(
        "network t\nvar x 2\nvar y 2\nclass y\nedge x -> y q+\n"
    )
    rows = [[0, 1]] * 3 + [[0, 0]] * 1 + [[1, 0]] * 3 + [[1, 1]] * 1
    data = monobn.DiscreteDataset.from_rows([("x", 2), ("y", 2)], "y", rows)
    cpts, report = monobn.fit_network(data, model, epsilon=0.0, alpha=0.0)
    assert report["all_converged"]
    for row in cpts["y"]["rows"]:
        assert row[0] == pytest.approx(0.5, abs=1e-3)


def test_posterior_normalizes_and_predicts():
    model = monobn.parse_model(
        "network t\nvar x 2\nvar y 2\nclass y\nedge x -> y q+\n"
    )
    rows = [[0, 0]] * 6 + [[0, 1]] * 2 + [[1, 0]] * 2 + [[1, 1]] * 6
    data = monobn.DiscreteDataset.from_rows([("x", 2), ("y", 2)], "y", rows)
    clf = monobn.train("KB", data, model)
    post = clf.posterior([1, 0])
    assert sum(post) == pytest.approx(1.0)
    assert clf.predict([1, 0]) == 1
    assert clf.accuracy(data) >= 0.5


def test_mcnemar_worked_case():
    truth = [0] * 13
    preds_a = [0] * 13
    preds_b = [1] * 10 + [0] * 3
    preds_a[10] = preds_a[11] = 1
    result = monobn.mcnemar(preds_a, preds_b, truth)
    assert result["b"] == 10
    assert result["c"] == 2
    assert result["statistic"] == pytest.approx(49 / 12)
    assert result["significant"]
    assert result["winner"] == "A"


def test_cutpoints_tie_rule():
    assert monobn.equal_frequency_cutpoints([1, 2, 3, 4, 5, 6], 3) == [2.5, 4.5]
    assert monobn.equal_frequency_cutpoints([1, 1, 1, 2, 3, 3], 2) == [1.5]


@pytest.mark.skipif(not os.path.isdir(CORPUS_DIR), reason="corpus directory not found")
def test_corpus_counts():
    data, model, info = monobn.load_corpus("haberman", 2, CORPUS_DIR)
    assert len(data) == 306
    class_idx = data.columns.index(data.class_column)
    assert sum(r[class_idx] for r in data.rows) == 225
    assert info["rows_dropped"] == 0
    assert model.class_variable == "class"


@pytest.mark.skipif(not os.path.isdir(CORPUS_DIR), reason="corpus directory not found")
def test_learning_curve_runs():
    data, model, _ = monobn.load_corpus("haberman", 2, CORPUS_DIR)
    curve = monobn.learning_curve(data, model, ["ZR", "KB"], sizes=[2, 4],
                                  replications=3, master_seed=5)
    assert set(curve.keys()) == {"ZR", "KB"}
    for per_m in curve.values():
        for acc in per_m.values():
            assert 0.0 <= acc <= 1.0
