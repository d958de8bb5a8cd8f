import numpy as np
import pytest

from cvbench.src.curves import (CurvePlot, IDEAL, RANDOM, accumulation, build_curves,
                                default_max_select, ideal_curve, random_curve,
                                render_curve_series)
from cvbench.src.utils.errors import ArgumentError


def test_accumulation_hand_ordering():
    curve = accumulation([1, 0, 1], [0.9, 0.5, 0.8], 3)
    np.testing.assert_array_equal(curve.accumulated, [1, 2, 2])


def test_accumulation_continuous():
    curve = accumulation([2.0, 1.0], [0.1, 0.9], 2)
    np.testing.assert_array_equal(curve.accumulated, [1.0, 3.0])


def test_perfect_scores_follow_ideal():
    y = np.array([0, 1, 0, 0, 1, 1, 0, 0])
    np.testing.assert_array_equal(accumulation(y, y + 0.1, 6).accumulated,
                                  ideal_curve(y, 6).accumulated)


def test_ideal_curve():
    y = np.zeros(500)
    y[:50] = 1
    ideal = ideal_curve(y, 300)
    assert ideal.at(300) == 50
    assert ideal.at(25) == 25
    assert ideal.label == IDEAL
    assert ideal_curve([3.0, 1.0, 2.0], 2).at(2) == 5.0


def test_random_curve():
    y = np.zeros(500)
    y[:50] = 1
    assert random_curve(y, 125).at(100) == pytest.approx(10.0)
    assert random_curve(y, 500).at(500) == pytest.approx(50.0)
    assert random_curve([1.0, 3.0], 2).label == RANDOM
    assert random_curve([1.0, 3.0, 2.0, 2.0, 2.0], 5).at(5) == pytest.approx(10.0)


def test_reference_ordering():
    rng = np.random.default_rng(15)
    y = (rng.random(100) < 0.3).astype(float)
    scores = rng.normal(size=100)
    ideal, rand = ideal_curve(y, 25), random_curve(y, 25)
    model = accumulation(y, scores, 25)
    assert np.all(rand.accumulated <= ideal.accumulated + 1e-12)
    assert np.all((model.accumulated >= 0) & (model.accumulated <= ideal.accumulated))


@pytest.mark.parametrize("n, expected", [(3311, 300), (500, 125), (1200, 300), (3, 1)])
def test_default_max_select(n, expected):
    assert default_max_select(n) == expected


def test_max_select_above_n():
    with pytest.raises(ArgumentError):
        accumulation([1, 0], [0.2, 0.1], 3)


def test_build_curves_covers_store(toy_store):
    curve_set = build_curves(toy_store)
    assert curve_set.max_select == 1
    assert len(curve_set.curves) == 4
    assert curve_set.methods == ["KNN", "RF"]
    frame = build_curves(toy_store, max_select=6).to_frame()
    assert set(frame["method"]) == {"Ideal", "Random", "KNN", "RF"}
    assert (frame.loc[frame["method"] == "Ideal", "set"] == "").all()
    assert len(frame) == 2 * 4 * 6


def test_render_counts(toy_store, tmp_path):
    curve_set = build_curves(toy_store, max_select=6)
    methods = render_curve_series(curve_set, tmp_path / "m", series="methods")
    descriptors = render_curve_series(curve_set, tmp_path / "d", series="descriptors")
    one_split = render_curve_series(curve_set, tmp_path / "s", series="descriptors", splits=[1])
    both = render_curve_series(curve_set, tmp_path / "b", series="both", meths=["RF"])
    assert len(methods) == 2
    assert len(descriptors) == 4
    assert len(one_split) == 2
    assert len(both) == 4
    assert methods[0].name == "acc_methods_split1_A.svg"
    assert all(path.exists() for path in methods + descriptors)


def test_render_svg_content(toy_store, tmp_path):
    curve_set = build_curves(toy_store, max_select=6)
    path = render_curve_series(curve_set, tmp_path, series="methods", splits=[2])[0]
    svg = path.read_text(encoding="utf-8")
    assert svg.startswith("<svg")
    for label in ("Ideal", "Random", "KNN", "RF", "Split 2"):
        assert label in svg
    assert "stroke-dasharray" in svg


def test_render_is_deterministic(toy_store, tmp_path):
    curve_set = build_curves(toy_store, max_select=6)
    first = render_curve_series(curve_set, tmp_path / "one")[0].read_bytes()
    second = render_curve_series(curve_set, tmp_path / "two")[0].read_bytes()
    assert first == second


def test_unknown_filter_lists_available(toy_store, tmp_path):
    curve_set = build_curves(toy_store, max_select=6)
    with pytest.raises(ArgumentError, match="KNN"):
        render_curve_series(curve_set, tmp_path, meths=["SVM-like-missing"])
    with pytest.raises(ArgumentError):
        render_curve_series(curve_set, tmp_path, splits=[9])
    with pytest.raises(ArgumentError):
        render_curve_series(curve_set, tmp_path, series="sets")


def test_curve_plot_scales_axes():
    plot = CurvePlot("t", max_select=10, y_max=5.0)
    assert plot.sx(0) == plot.margin_left
    assert plot.sy(5.0) == plot.margin_top
