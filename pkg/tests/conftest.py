import numpy as np
import pytest
from hypothesis import strategies as st

from copolar import canonicalize, copolar_of_body

EXAMPLE_P0 = [[1 / 3, 1.0]]
EXAMPLE_P1 = [[1.0, 1 / 3]]


@pytest.fixture
def cosimplex_pair():
    return canonicalize(2, EXAMPLE_P0), canonicalize(2, EXAMPLE_P1)


@pytest.fixture
def cosimplex_duals(cosimplex_pair):
    P0, P1 = cosimplex_pair
    return copolar_of_body(P0), copolar_of_body(P1)


@st.composite
def bodies(draw, dims=(2, 3, 4), max_normals=4, lo=0.2, hi=5.0):
    """Canonical random bodies; the data comes from a drawn seed."""
    n = draw(st.sampled_from(dims))
    k = draw(st.integers(1, max_normals))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    return canonicalize(n, rng.uniform(lo, hi, size=(k, n)))


def random_bodies(count, n, seed, max_normals=4):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        k = int(rng.integers(1, max_normals + 1))
        out.append(canonicalize(n, rng.uniform(0.2, 5.0, size=(k, n))))
    return out
