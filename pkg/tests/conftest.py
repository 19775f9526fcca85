import shutil
import sys
from pathlib import Path

import numpy as np
import pytest

from imbalance_metrics.config import Settings
from imbalance_metrics.model.confusion import from_totals

# (TP, TN) of the four methods of each reference table, P = 1000
TABLE_METHODS = {
    10: [(500, 5), (700, 5), (700, 7), (500, 7)],
    100: [(500, 50), (700, 50), (700, 70), (500, 70)],
    250: [(500, 125), (700, 125), (700, 175), (500, 175)],
}


def pytest_configure(config):
    config.addinivalue_line("markers", "linux: Test with linux")
    config.addinivalue_line("markers", "win32: Test with windows")
    config.addinivalue_line("markers", "darwin: Test with darwin")


@pytest.fixture(scope="module")
def test_output_dir(tmpdir_factory):
    test_path = Path(str(tmpdir_factory.mktemp("test")))
    yield test_path
    shutil.rmtree(str(test_path))


@pytest.fixture(scope="function")
def config():
    return Settings(progress_bar=False, pool_size=1)


@pytest.fixture(scope="session")
def table_matrices():
    """The four methods of each reference table, keyed by N."""
    return {
        n: [from_totals(tp, tn, 1000, n) for tp, tn in methods]
        for n, methods in TABLE_METHODS.items()
    }


@pytest.fixture(scope="session")
def random_counts():
    """10^5 random confusion matrices as (tp, tn, fp, fn) columns, both classes non-empty."""
    rng = np.random.default_rng(20240117)
    size = 100_000
    p = rng.integers(1, 5000, size=size)
    n = rng.integers(1, 5000, size=size)
    tp = rng.integers(0, p + 1)
    tn = rng.integers(0, n + 1)
    return tp, tn, n - tn, p - tp


@pytest.fixture(scope="function")
def write_predictions(tmp_path):
    def writer(rows, file_name="preds.csv", header="actual,predicted"):
        path = tmp_path / file_name
        lines = [header] + [f"{actual},{predicted}" for actual, predicted in rows]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return path

    return writer


def pytest_runtest_setup(item):
    platforms = {"darwin", "linux", "win32"}
    supported_platforms = platforms.intersection(
        mark.name for mark in item.iter_markers()
    )
    plat = sys.platform
    if supported_platforms and plat not in supported_platforms:
        pytest.skip(f"cannot run on platform {plat}")
