import numpy as np
import pytest
from hypothesis import strategies as st

from spin_ephase.phase_space import DirectionSet, random_directions


@pytest.fixture
def rng():
    return np.random.default_rng(20261014)


def random_dirs(rng, n):
    return random_directions(n, rng)


def as_tuples(dirs: DirectionSet):
    return [tuple(map(float, v)) for v in dirs.vectors]


coords = st.floats(-1.0, 1.0, allow_nan=False)


@st.composite
def unit_vectors(draw):
    v = np.array([draw(coords), draw(coords), draw(coords)])
    norm = np.linalg.norm(v)
    if norm < 1e-3:
        v = np.array([0.0, 0.0, 1.0])
        norm = 1.0
    return tuple(v / norm)


# magnitudes below 1e-100 underflow when squared; keep exact zero reachable
component = st.one_of(st.just(0.0), st.floats(1e-100, 10.0), st.floats(-10.0, -1e-100))
quaternions = st.tuples(component, component, component, component)
