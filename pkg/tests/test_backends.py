import os
import random
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from binaryk.exactrings import _kernels_py, kernels

compiled = pytest.importorskip("binaryk.exactrings._kernels")


@st.composite
def mod_p_rows(draw):
    p = draw(st.sampled_from([2, 3, 5, 7, 101]))
    r, c = draw(st.integers(0, 6)), draw(st.integers(0, 6))
    rows = [[draw(st.integers(0, p - 1)) for _ in range(c)] for _ in range(r)]
    return p, rows


@given(mod_p_rows())
def test_rref_agrees(case):
    p, rows = case
    assert compiled.rref_mod_p([r[:] for r in rows], p) == _kernels_py.rref_mod_p([r[:] for r in rows], p)


@given(st.data())
def test_det_and_matmul_agree(data):
    p = data.draw(st.sampled_from([2, 5, 7, 101]))
    n = data.draw(st.integers(0, 6))
    a = [[data.draw(st.integers(0, p - 1)) for _ in range(n)] for _ in range(n)]
    b = [[data.draw(st.integers(0, p - 1)) for _ in range(n)] for _ in range(n)]
    assert compiled.det_mod_p([r[:] for r in a], p) == _kernels_py.det_mod_p([r[:] for r in a], p)
    assert compiled.matmul_mod_p(a, b, p) == _kernels_py.matmul_mod_p(a, b, p)


def test_large_random_agreement():
    rng = random.Random(0)
    for _ in range(50):
        p = rng.choice([3, 7, 65521])
        n = rng.randint(10, 25)
        a = [[rng.randrange(p) for _ in range(n)] for _ in range(n)]
        assert compiled.det_mod_p([r[:] for r in a], p) == _kernels_py.det_mod_p([r[:] for r in a], p)


def test_compiled_selected_by_default():
    assert kernels.BACKEND == "compiled"


def test_pure_fallback_env():
    env = dict(os.environ, BINARYK_PURE="1")
    out = subprocess.run([sys.executable, "-c", "from binaryk.exactrings import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
