import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from imbalance_metrics.model.confusion import new_matrix
from imbalance_metrics.model.errors import DegenerateClassError, NegativeCountError
from imbalance_metrics.model.metrics import (
    METRIC_RANGES,
    METRICS,
    MetricId,
    accuracy,
    auc,
    bacc,
    evaluate_all,
    f1_score,
    g_mean,
    get_metric,
    harmonic_mean,
    hmnc,
    hmnc_harmonic_form,
    imbalance_ratio,
    kappa,
    mcc,
    normalize,
    precision,
    recall,
    selectivity,
)


@st.composite
def matrices(draw, max_total=10_000):
    p = draw(st.integers(1, max_total))
    n = draw(st.integers(1, max_total))
    tp = draw(st.integers(0, p))
    tn = draw(st.integers(0, n))
    return new_matrix(tp, tn, n - tn, p - tp)


@pytest.mark.parametrize(
    "counts, expected",
    [((500, 5, 5, 500), 0.5), ((10, 3, 7, 0), 1.0), ((0, 3, 7, 10), 0.0)],
)
def test_recall(counts, expected):
    assert recall(new_matrix(*counts)) == expected


@pytest.mark.parametrize(
    "counts, expected",
    [((700, 70, 30, 300), 700 / 730), ((0, 5, 0, 5), 0.0), ((5, 5, 5, 5), 0.5)],
)
def test_precision(counts, expected):
    assert precision(new_matrix(*counts)) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize(
    "counts, expected",
    [((500, 5, 5, 500), 0.5), ((3, 10, 0, 7), 1.0), ((3, 0, 10, 7), 0.0)],
)
def test_selectivity(counts, expected):
    assert selectivity(new_matrix(*counts)) == expected


def test_accuracy():
    assert accuracy(new_matrix(700, 5, 5, 300)) == pytest.approx(705 / 1010)
    assert round(accuracy(new_matrix(700, 5, 5, 300)), 1) == 0.7
    assert accuracy(new_matrix(10, 20, 0, 0)) == 1.0
    assert accuracy(new_matrix(500, 125, 125, 500)) == 0.5


def test_bacc_and_auc_alias():
    assert bacc(new_matrix(700, 5, 5, 300)) == pytest.approx(0.6)
    assert bacc(new_matrix(700, 125, 125, 300)) == pytest.approx(0.6)
    assert bacc(new_matrix(10, 20, 0, 0)) == 1.0
    cm = new_matrix(17, 4, 9, 3)
    assert auc(cm) == bacc(cm)
    assert MetricId.parse("auc") == MetricId.BACC


def test_f1_score():
    assert f1_score(new_matrix(500, 5, 5, 500)) == pytest.approx(0.6644, abs=1e-4)
    assert f1_score(new_matrix(700, 125, 125, 300)) == pytest.approx(0.7671, abs=1e-4)
    assert f1_score(new_matrix(0, 5, 5, 10)) == 0.0


def test_g_mean():
    assert g_mean(new_matrix(700, 5, 5, 300)) == pytest.approx(math.sqrt(0.35))
    assert round(g_mean(new_matrix(700, 5, 5, 300)), 2) == 0.59
    assert g_mean(new_matrix(700, 70, 30, 300)) == pytest.approx(0.7, abs=1e-15)
    assert g_mean(new_matrix(700, 0, 100, 300)) == 0.0


def test_mcc():
    assert mcc(new_matrix(700, 70, 30, 300)) == pytest.approx(0.2434, abs=1e-4)
    assert mcc(new_matrix(500, 5, 5, 500)) == 0.0
    assert mcc(new_matrix(10, 20, 0, 0)) == 1.0
    assert mcc(new_matrix(0, 0, 20, 10)) == -1.0


def test_kappa():
    assert kappa(new_matrix(700, 7, 3, 300)) == pytest.approx(0.0255, abs=1e-4)
    assert kappa(new_matrix(700, 70, 30, 300)) == pytest.approx(0.1806, abs=1e-4)
    assert kappa(new_matrix(500, 5, 5, 500)) == 0.0
    assert kappa(new_matrix(10, 20, 0, 0)) == 1.0


@pytest.mark.parametrize(
    "a, b, expected", [(0.5, 0.5, 0.5), (1, 0, 0.0), (0.2, 0.8, 0.32), (0, 0, 0.0)]
)
def test_harmonic_mean(a, b, expected):
    assert harmonic_mean(a, b) == pytest.approx(expected, abs=1e-15)


def test_harmonic_mean_negative():
    with pytest.raises(ValueError):
        harmonic_mean(-0.1, 0.5)


def test_hmnc():
    assert hmnc(new_matrix(500, 5, 5, 500)) == 0.5
    assert hmnc(new_matrix(700, 70, 30, 300)) == pytest.approx(0.7, abs=1e-15)
    assert hmnc(new_matrix(1000, 10, 0, 0)) == 1.0
    assert hmnc(new_matrix(0, 0, 10, 1000)) == 0.0


@pytest.mark.parametrize(
    "p, n, expected", [(1000, 10, 0.01), (1000, 250, 0.25), (7, 7, 1.0), (10, 1000, 0.01)]
)
def test_imbalance_ratio(p, n, expected):
    assert imbalance_ratio(p, n) == expected


def test_imbalance_ratio_invalid():
    with pytest.raises(DegenerateClassError):
        imbalance_ratio(0, 10)
    with pytest.raises(NegativeCountError):
        imbalance_ratio(-1, 10)


def test_evaluate_all_table_row():
    report = evaluate_all(new_matrix(500, 50, 50, 500))
    expected = {
        MetricId.HMNC: 0.5,
        MetricId.ACC: 0.5,
        MetricId.BACC: 0.5,
        MetricId.MCC: 0.0,
        MetricId.F1: 0.65,
        MetricId.GMEAN: 0.5,
        MetricId.KAPPA: 0.0,
    }
    for metric, value in expected.items():
        assert report[metric] == pytest.approx(value, abs=0.005)
    assert report.ir == 0.1


def test_evaluate_all_perfect():
    report = evaluate_all(new_matrix(40, 60, 0, 0))
    assert all(value == 1.0 for value in report.values.values())


def test_evaluate_all_all_wrong():
    report = evaluate_all(new_matrix(0, 0, 60, 40))
    for metric in (MetricId.HMNC, MetricId.ACC, MetricId.BACC, MetricId.GMEAN, MetricId.F1):
        assert report[metric] == 0.0


def test_evaluate_all_matches_scalar_metrics(random_counts):
    tp, tn, fp, fn = random_counts
    for i in range(0, len(tp), 997):
        cm = new_matrix(int(tp[i]), int(tn[i]), int(fp[i]), int(fn[i]))
        report = evaluate_all(cm)
        assert set(report.values) == set(MetricId)
        for metric in MetricId:
            assert report[metric] == get_metric(metric)(cm)


def test_ranges_on_random_matrices(random_counts):
    tp, tn, fp, fn = random_counts
    for i in range(len(tp)):
        cm = new_matrix(int(tp[i]), int(tn[i]), int(fp[i]), int(fn[i]))
        for metric, compute in METRICS.items():
            low, high = METRIC_RANGES[metric]
            value = compute(cm)
            assert low <= value <= high, (metric, cm, value)


def test_hmnc_forms_agree_on_random_matrices(random_counts):
    tp, tn, fp, fn = random_counts
    for i in range(len(tp)):
        cm = new_matrix(int(tp[i]), int(tn[i]), int(fp[i]), int(fn[i]))
        assert abs(hmnc(cm) - hmnc_harmonic_form(cm)) <= 1e-12


def test_zero_conventions():
    nothing_positive = new_matrix(0, 10, 0, 5)
    assert precision(nothing_positive) == 0.0
    assert f1_score(nothing_positive) == 0.0
    assert mcc(nothing_positive) == 0.0
    assert mcc(new_matrix(5, 0, 10, 0)) == 0.0
    assert hmnc(new_matrix(0, 0, 10, 5)) == 0.0


@given(matrices())
def test_hmnc_class_swap_symmetry(cm):
    swapped = new_matrix(cm.tn, cm.tp, cm.fn, cm.fp)
    assert hmnc(cm) == pytest.approx(hmnc(swapped), abs=1e-15)
    assert imbalance_ratio(cm.p(), cm.n()) == imbalance_ratio(cm.n(), cm.p())


@given(matrices(max_total=2000))
def test_hmnc_monotone(cm):
    if cm.tp > 0 and cm.fp > 0:
        better = new_matrix(cm.tp, cm.tn + 1, cm.fp - 1, cm.fn)
        assert hmnc(better) > hmnc(cm)
    if cm.tn > 0 and cm.fn > 0:
        better = new_matrix(cm.tp + 1, cm.tn, cm.fp, cm.fn - 1)
        assert hmnc(better) > hmnc(cm)


@given(matrices())
def test_normalize_maps_onto_unit_interval(cm):
    for metric, compute in METRICS.items():
        assert 0.0 <= normalize(metric, compute(cm)) <= 1.0


@pytest.mark.parametrize(
    "name, expected",
    [
        ("hmnc", MetricId.HMNC),
        ("G-mean", MetricId.GMEAN),
        ("gm", MetricId.GMEAN),
        ("g_mean", MetricId.GMEAN),
        ("f1-score", MetricId.F1),
        ("Kappa", MetricId.KAPPA),
        (" acc ", MetricId.ACC),
    ],
)
def test_metric_parse(name, expected):
    assert MetricId.parse(name) == expected


def test_metric_parse_unknown():
    with pytest.raises(ValueError):
        MetricId.parse("roc")
