import numpy as np
import pytest
from hypothesis import strategies as st

from anisokin import Velocity3, FourVector
from anisokin.signs import combos_to_vector


def weights_strategy(floor=0.05):
    """Four positive weights; normalized inside the strategies that use it."""
    return st.tuples(*[st.floats(min_value=floor, max_value=1.0) for _ in range(4)])


@st.composite
def domain_velocities(draw, floor=0.05):
    w = np.array(draw(weights_strategy(floor)))
    g = 4.0 * w / w.sum()
    return Velocity3(
        0.25 * (g[0] - g[1] + g[2] - g[3]),
        0.25 * (g[0] + g[1] - g[2] - g[3]),
        0.25 * (g[0] - g[1] - g[2] + g[3]),
    )


@st.composite
def forward_vectors(draw, lo=0.05, hi=2.0):
    g = draw(st.tuples(*[st.floats(min_value=lo, max_value=hi) for _ in range(4)]))
    return FourVector(*combos_to_vector(g))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
