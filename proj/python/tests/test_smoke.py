import json

import pytest

import _nfold


INSTANCE = json.dumps(
    {
        "objective": {"kind": "linear_max", "c": [1, 3]},
        "b_top": [6],
        "bricks": [
            {"A": [[1]], "B": [], "b_local": [], "lower": [0], "upper": [5]},
            {"A": [[1]], "B": [], "b_local": [], "lower": [0], "upper": [5]},
        ],
    }
)


def test_bounds():
    assert _nfold.lemma2_bound(1, 1) == 3
    assert _nfold.lemma2_bound(2, 1) == 25
    assert _nfold.nfold_graver_bound(2, 1, 1, 1) == 42


def test_partition():
    parts, p, s = _nfold.partition([[1, 0, 0], [0, 2, 0], [0, 0, 3]])
    assert parts == [[0], [1], [2]]
    assert (p, s) == (1, 3)


def test_graver_basis():
    elements = _nfold.graver_basis([[1, -1]])
    assert sorted(elements) == [[-1, -1], [1, 1]]
    assert _nfold.is_indecomposable([[1, -1]], [1, 1])
    assert not _nfold.is_indecomposable([[1, -1]], [2, 2])


def test_steinitz():
    vectors = [[2, 0], [0, 2], [-2, -2], [1, 1], [-1, -1]]
    order = _nfold.steinitz_reorder(vectors, 2)
    assert sorted(order) == list(range(5))
    assert _nfold.max_prefix_norm(vectors, order) <= 4


def test_assemble_and_feasibility():
    full = _nfold.assemble(INSTANCE)
    assert full == [[1, 1]]
    assert _nfold.check_feasible(INSTANCE, [1, 5])
    assert not _nfold.check_feasible(INSTANCE, [1, 4])


def test_solve():
    result = json.loads(_nfold.solve(INSTANCE))
    assert result["status"] == "optimal"
    assert result["objective"] == 16
    assert result["x"] == [1, 5]
    feasible, objective = _nfold.oracle_ip_solve(INSTANCE)
    assert feasible and objective == 16


def test_schedule():
    cmax = json.loads(
        _nfold.schedule("cmax", json.dumps({"speeds": [1, 2], "types": [{"p": 2, "n": 3}]}))
    )
    assert cmax["status"] == "optimal"
    assert cmax["objective"] == 2

    qswc = json.loads(
        _nfold.schedule(
            "qswc",
            json.dumps({"speeds": [1], "types": [{"p": 2, "n": 1, "w": 1}, {"p": 1, "n": 1, "w": 1}]}),
        )
    )
    assert qswc["objective"] == 4


def test_color():
    result = json.loads(_nfold.color_graph(json.dumps({"adj": [[1, 2], [0, 2], [0, 1]]})))
    assert result["sum"] == 6


def test_invalid_input_raises():
    with pytest.raises(Exception):
        _nfold.solve("{not json")
