import os
import sys
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import settings, strategies as st

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


def small_fractions(limit=6, den=4):
    return st.builds(Fraction, st.integers(-limit, limit), st.integers(1, den))


def nonzero_fractions(limit=6, den=4):
    return small_fractions(limit, den).filter(lambda x: x != 0)


@st.composite
def symmetric_tensors(draw, n=3, limit=4):
    t = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(j, n):
                v = draw(small_fractions(limit, 3))
                t[i][j][k] = v
                t[i][k][j] = v
    return t


@st.composite
def invertible_matrices(draw, n=3, limit=3):
    from dhbkit import linalg

    rows = draw(
        st.lists(st.lists(st.integers(-limit, limit), min_size=n, max_size=n), min_size=n, max_size=n).filter(
            lambda m: linalg.det([[Fraction(x) for x in r] for r in m]) != 0
        )
    )
    return tuple(tuple(Fraction(x) for x in r) for r in rows)


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)
