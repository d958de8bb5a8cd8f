import itertools
import json
from pathlib import Path
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from cvbench.src.inference import Bucket, PairwiseComparison, anova_blocked, tukey_kramer
from cvbench.src.mcs import (BUCKET_COLORS, STATUS_BEST, STATUS_EXCLUDED, STATUS_MARGINAL,
                             best_performers, build_mcs, render_mcs_svg, summary_table)
from cvbench.src.measures import Direction
from cvbench.src.utils.errors import IncompleteComparisonsError
from conftest import make_table


def _comparisons(means, p_of):
    out = []
    for a, b in itertools.combinations(sorted(means), 2):
        p = p_of(a, b)
        out.append(PairwiseComparison(combo_a=a, combo_b=b, mean_a=means[a], mean_b=means[b],
                                      diff=means[a] - means[b], se_diff=0.1, q_stat=1.0,
                                      p_adj=p, bucket=Bucket.from_p(p)))
    return out


MEANS = {"A-KNN": 0.70, "A-RF": 0.80, "B-KNN": 0.60, "B-RF": 0.75}


def test_all_not_significant():
    matrix = build_mcs(_comparisons(MEANS, lambda a, b: 1.0), MEANS, "auc")
    for i, j in itertools.product(range(4), repeat=2):
        expected = Bucket.SELF if i == j else Bucket.NOT_SIGNIFICANT
        assert matrix.cells[i, j] is expected


def test_ordering_follows_direction():
    matrix = build_mcs(_comparisons(MEANS, lambda a, b: 1.0), MEANS, "auc")
    assert matrix.ordering == ["A-RF", "B-RF", "A-KNN", "B-KNN"]
    assert matrix.direction is Direction.HIGHER_IS_BETTER

    errors = build_mcs(_comparisons(MEANS, lambda a, b: 1.0), MEANS, "error rate")
    assert errors.ordering[0] == "B-KNN"
    assert errors.direction is Direction.LOWER_IS_BETTER


def test_ties_order_by_label():
    means = {"Z-M": 1.0, "A-M": 1.0, "K-M": 2.0}
    matrix = build_mcs(_comparisons(means, lambda a, b: 0.5), means, "auc")
    assert matrix.ordering == ["K-M", "A-M", "Z-M"]


def test_matrix_is_symmetric():
    p_values = {("A-KNN", "A-RF"): 0.001, ("A-KNN", "B-KNN"): 0.03}
    matrix = build_mcs(_comparisons(MEANS, lambda a, b: p_values.get((a, b), 0.5)), MEANS, "auc")
    assert matrix.bucket("A-KNN", "A-RF") is Bucket.P01
    assert matrix.bucket("A-RF", "A-KNN") is Bucket.P01
    assert matrix.bucket("B-KNN", "A-KNN") is Bucket.P05
    assert np.array_equal(matrix.p_values, matrix.p_values.T)


def test_missing_pair():
    comparisons = _comparisons(MEANS, lambda a, b: 1.0)[1:]
    with pytest.raises(IncompleteComparisonsError):
        build_mcs(comparisons, MEANS, "auc")


def test_eighteen_combos():
    rng = np.random.default_rng(20)
    anova = anova_blocked(make_table(rng.normal(size=(3, 18))))
    means = dict(zip(anova.combo_labels, anova.combo_means))
    matrix = build_mcs(tukey_kramer(anova), means, "auc")
    assert matrix.cells.shape == (18, 18)
    upper = [matrix.cells[i, j] for i in range(18) for j in range(i + 1, 18)]
    assert len(upper) == 153 and Bucket.SELF not in upper


def test_best_performers_and_summary():
    p_values = {("A-KNN", "A-RF"): 0.03, ("A-RF", "B-KNN"): 0.001}
    auc_matrix = build_mcs(_comparisons(MEANS, lambda a, b: p_values.get((a, b), 0.5)),
                           MEANS, "auc")
    status = best_performers(auc_matrix)
    assert status == {"A-RF": STATUS_BEST, "B-RF": STATUS_BEST, "A-KNN": STATUS_MARGINAL,
                      "B-KNN": STATUS_EXCLUDED}

    ie_means = {"A-KNN": 3.0, "A-RF": 2.0, "B-KNN": 1.0, "B-RF": 1.5}
    ie_matrix = build_mcs(_comparisons(ie_means, lambda a, b: 0.001), ie_means,
                          "enhancement", subtitle="m = 300")
    table = summary_table([auc_matrix, ie_matrix])
    assert list(table.columns) == ["combo", "auc", "enhancement (m = 300)", "n_best"]
    assert list(table["combo"]) == ["A-KNN", "A-RF", "B-RF", "B-KNN"]
    assert list(table["n_best"]) == [1, 1, 1, 0]


def test_frame_layout():
    matrix = build_mcs(_comparisons(MEANS, lambda a, b: 1.0), MEANS, "auc")
    frame = matrix.to_frame()
    assert list(frame["combo"]) == matrix.ordering
    assert list(frame["rank"]) == [1, 2, 3, 4]
    assert frame.iloc[0]["A-RF"] == "Self"


def test_svg_is_well_formed_and_deterministic(tmp_path):
    p_values = {("A-KNN", "A-RF"): 0.001, ("A-KNN", "B-KNN"): 0.03}
    matrix = build_mcs(_comparisons(MEANS, lambda a, b: p_values.get((a, b), 0.5)),
                       MEANS, "enhancement", subtitle="m = 100")
    first = render_mcs_svg(matrix, tmp_path / "one.svg").read_bytes()
    second = render_mcs_svg(matrix, tmp_path / "two.svg").read_bytes()
    assert first == second

    root = ET.fromstring(first)
    svg = first.decode("utf-8")
    assert root.tag.endswith("svg")
    assert "enhancement (m = 100)" in svg
    for label in MEANS:
        assert label in svg
    for bucket in Bucket:
        assert BUCKET_COLORS[bucket] in svg
    assert "p &lt;= 0.01" in svg


def _local(tag):
    return tag.rsplit("}", 1)[-1]


def test_svg_matches_frozen_layout(tmp_path):
    golden = json.loads((Path(__file__).parent / "data" / "mcs_two_combos.json")
                        .read_text(encoding="utf-8"))
    means = {"A-KNN": 0.70, "A-RF": 0.80}
    matrix = build_mcs(_comparisons(means, lambda a, b: 0.001), means, "auc")
    root = ET.fromstring(render_mcs_svg(matrix, tmp_path / "mcs.svg").read_bytes())

    assert float(root.get("width")) == golden["width"]
    assert float(root.get("height")) == golden["height"]
    rects = []
    for el in root.iter():
        if _local(el.tag) != "rect":
            continue
        titles = [child.text for child in el if _local(child.tag) == "title"]
        rects.append([float(el.get("x")), float(el.get("y")), float(el.get("width")),
                      float(el.get("height")), el.get("fill"), titles[0] if titles else None])
    texts = [[el.text, float(el.get("x")), float(el.get("y"))]
             for el in root.iter() if _local(el.tag) == "text"]
    assert rects == golden["rects"]
    assert len(texts) == len(golden["texts"])
    for got, expected in zip(texts, golden["texts"]):
        assert got[0] == expected[0]
        assert got[1:] == pytest.approx(expected[1:], abs=1e-9)
