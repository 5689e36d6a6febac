from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from corresp import ContingencyTable, build_contingency, partition_from_labels
from corresp.synthetic import fig5_table

DATA = Path(__file__).parent / "data"

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def fig5() -> ContingencyTable:
    return fig5_table()


@pytest.fixture
def data_dir() -> Path:
    return DATA


@st.composite
def tables(draw, max_k=6, max_m=5, max_n=24, max_weight=4, min_k=2, min_m=1):
    """Contingency tables of two random weighted partitions with nonempty parts."""
    k = draw(st.integers(min_k, max_k))
    m = draw(st.integers(min_m, max_m))
    n = draw(st.integers(max(k, m), max(max_n, k, m)))
    a = draw(st.lists(st.integers(0, k - 1), min_size=n, max_size=n))
    b = draw(st.lists(st.integers(0, m - 1), min_size=n, max_size=n))
    # make every part nonempty
    a[:k] = range(k)
    b[:m] = range(m)
    w = draw(st.lists(st.integers(1, max_weight), min_size=n, max_size=n))
    pa = partition_from_labels(a, w)
    pb = partition_from_labels(b, w, elements=pa.ground.elements)
    return build_contingency(pa, pb)


def all_masks(k: int) -> np.ndarray:
    codes = np.arange(1 << k)
    return ((codes[:, None] >> np.arange(k)) & 1).astype(bool)


# one line per acceptance criterion, printed after the run
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
