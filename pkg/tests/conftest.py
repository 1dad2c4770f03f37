import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from cherrypick.grid import NEG, Grid

settings.register_profile(
    "default", deadline=None, max_examples=150,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

EXAMPLE = [[3, 1, 1], [2, 5, 1], [1, 5, 5], [2, 1, 1]]
SMALL = [[1, 2], [3, 4]]


@st.composite
def grids(draw, hmin=2, hmax=7, wmin=2, wmax=7, lo=0, hi=9, neg_inf=False):
    h = draw(st.integers(hmin, hmax))
    w = draw(st.integers(wmin, wmax))
    cells = draw(st.lists(st.lists(st.integers(lo, hi), min_size=w, max_size=w),
                          min_size=h, max_size=h))
    a = np.array(cells, dtype=np.int64)
    if neg_inf:
        mask = draw(st.lists(st.lists(st.booleans(), min_size=w, max_size=w),
                             min_size=h, max_size=h))
        a[np.array(mask) & (np.arange(h * w).reshape(h, w) % 5 == 0)] = NEG
    return Grid(a)


@pytest.fixture
def example_grid():
    return Grid(EXAMPLE)
