import json

import _grquiver as gr


def test_version_and_presets():
    assert gr.__version__
    names = [p["name"] for p in gr.presets()]
    assert names == ["kronecker", "a21", "a22_sink_source", "d4_tilde"]
    kron = gr.presets()[0]
    assert kron["vertices"] == 2
    assert kron["arrows"] == [(0, 1), (0, 1)]
    assert kron["default_length_bound"] == 10


def test_measure_ordering():
    # proper prefix is smaller; smaller divergence element means larger measure
    assert gr.compare_measures([1], [1, 2]) == -1
    assert gr.compare_measures([1, 3], [1, 2]) == -1
    assert gr.compare_measures([1, 2, 4], [1, 2, 3]) == -1
    assert gr.compare_measures([1, 2], [1, 2]) == 0


def test_measure_of_module():
    # the homogeneous Kronecker module of dimension (1,1) with both maps nonzero
    out = gr.measure(2, [(0, 1), (0, 1)], 2, [1, 1], [[[1]], [[1]]])
    assert out["measure"] == [1, 2]
    assert out["measure_str"] == "{1,2}"
    assert out["indecomposable"] is True
    assert out["filtration_dims"] == [[0, 1], [1, 1]]
    assert out["gr_submodule_dims"] == [[0, 1]]

    # zero maps decompose into two simples; the measure is still defined
    dec = gr.measure(2, [(0, 1), (0, 1)], 2, [1, 1])
    assert dec["indecomposable"] is False
    assert dec["measure"] == [1]


def test_measure_rejects_bad_input():
    import pytest

    with pytest.raises(Exception):
        gr.measure(2, [(0, 1), (0, 1)], 2, [0, 0])  # zero module
    with pytest.raises(Exception):
        gr.measure(2, [(0, 1), (0, 1)], 2, [1, 1], [[[2]], [[0]]])  # entry not mod p


def test_catalog():
    entries = gr.catalog(2, [(0, 1), (0, 1)], 2, 6)
    assert len(entries) == 15
    positions = {e["position"] for e in entries}
    assert positions == {"preprojective", "regular", "preinjective"}
    regulars = [e for e in entries if e["position"] == "regular"]
    assert all(e["rank"] == 1 for e in regulars)
    assert {e["tube"] for e in regulars} == {0, 1, 2}
    # lengths ascend and every measure is a strictly increasing list
    lengths = [e["length"] for e in entries]
    assert lengths == sorted(lengths)
    for e in entries:
        m = e["measure"]
        assert all(m[i] < m[i + 1] for i in range(len(m) - 1))
        assert m[-1] == e["length"]

    doc = json.loads(gr.catalog_json(2, [(0, 1), (0, 1)], 2, 6))
    assert doc["format"] == "grquiver-catalog"
    assert len(doc["entries"]) == 15


def test_segments_and_bounds():
    out = gr.segments(2, [(0, 1), (0, 1)], 2, 8)
    assert out["b"] == 0
    assert out["a"] == 0
    types = [s["type"] for s in out["segments"]]
    assert "Z" not in types
    assert out["all_bounds_pass"] is True
    members = [m for s in out["segments"] for m in s["members"]]
    assert members == list(range(len(out["universe"])))
    assert {u["partition"] for u in out["universe"]} <= {
        "take-off",
        "central",
        "landing",
        "unstable",
    }


def test_verify():
    out = gr.verify(2, [(0, 1), (0, 1)], 2, 8)
    assert out["all_pass"] is True
    assert out["bounds_pass"] is True
    assert len(out["checks"]) == 6
    assert all(c["violations"] == 0 for c in out["checks"])


def test_odd_characteristic():
    # the triangle quiver at p=3: catalog builds and the rank-2 tube is present
    entries = gr.catalog(3, [(0, 1), (1, 2), (0, 2)], 3, 6)
    ranks = {e["rank"] for e in entries if e["position"] == "regular"}
    assert ranks == {1, 2}
