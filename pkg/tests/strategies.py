"""Hypothesis strategies shared by the property tests."""
import random

from hypothesis import strategies as st

from binaryk.exactrings import Matrix, ring_from_string

FIELDS = [ring_from_string(n) for n in ("F2", "F5", "F7", "F4", "F9", "Q")]
RINGS = FIELDS + [ring_from_string("Z")]


def elements(ring):
    if ring.order:
        return st.integers(0, ring.order - 1).map(lambda n: ring.from_int(n) if ring.kind == "Fp" else n)
    if ring.kind == "Q":
        return st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return st.integers(-6, 6)


@st.composite
def matrices(draw, ring, rows=None, cols=None, max_dim=5):
    r = draw(st.integers(0, max_dim)) if rows is None else rows
    c = draw(st.integers(0, max_dim)) if cols is None else cols
    data = [[draw(elements(ring)) for _ in range(c)] for _ in range(r)]
    return Matrix(ring, r, c, data)


seeds = st.integers(0, 2**32 - 1)


def rng_from(seed):
    return random.Random(seed)
