import math

import pytest

from imbalance_metrics.model.confusion import from_totals, new_matrix
from imbalance_metrics.model.identity import IDENTITY_METRICS, identity_check
from imbalance_metrics.model.metrics import MetricId


@pytest.mark.parametrize(
    "counts, common",
    [((500, 5, 5, 500), 0.5), ((700, 7, 3, 300), 0.7)],
)
def test_identity_holds(counts, common):
    check = identity_check(new_matrix(*counts))
    assert check
    assert check.equal_rates
    assert check.common_value == pytest.approx(common, abs=1e-15)
    assert set(check.values) == set(IDENTITY_METRICS)


def test_identity_fails_off_the_diagonal():
    check = identity_check(new_matrix(700, 5, 5, 300))
    assert not check
    assert not check.equal_rates
    assert check.common_value is None
    assert check.values[MetricId.ACC] == pytest.approx(0.698, abs=1e-3)
    assert check.values[MetricId.HMNC] == pytest.approx(0.5, abs=2e-3)
    assert check.max_difference > 0.1


def test_identity_tolerance():
    cm = new_matrix(700, 5, 5, 300)
    assert identity_check(cm, tol=0.5).holds
    assert not identity_check(cm, tol=0.5).equal_rates


def test_identity_exhaustive_sweep():
    for p in range(1, 201):
        for n in range(1, 201):
            g = math.gcd(p, n)
            for k in range(g + 1):
                cm = from_totals(k * p // g, k * n // g, p, n)
                check = identity_check(cm)
                assert check.holds, (cm, check.values)
                assert check.equal_rates
                for value in check.values.values():
                    assert abs(value - cm.tn / n) <= 1e-12
