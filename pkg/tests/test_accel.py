"""The numba kernels and the pure-numpy fallbacks agree."""

import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from sextic_h0 import _accel
from sextic_h0.field import integral_basis

needs_numba = pytest.mark.skipif(not _accel.NUMBA_AVAILABLE, reason="numba not installed")


@st.composite
def grams(draw):
    n = draw(st.integers(2, 5))
    rows = draw(st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n))
    B = np.array(rows, dtype=np.int64)
    assume(abs(np.linalg.det(B)) > 0.5)
    return B @ B.T


def rows(a):
    return sorted(map(tuple, np.asarray(a).tolist()))


@needs_numba
@settings(max_examples=40)
@given(grams(), st.floats(0.5, 25.0))
def test_fp_enumerate_parity(g, bound):
    q = _accel.fincke_pohst_coefficients(g)
    a, na = _accel._fp_enum_numba(q, _accel.widen(bound))
    b, nb = _accel._fp_enum_python(q, _accel.widen(bound))
    assert rows(a) == rows(b)


@needs_numba
@settings(max_examples=20)
@given(st.integers(0, 2**32 - 1))
def test_theta_parity(seed):
    rng = np.random.default_rng(seed)
    u2 = np.exp(rng.uniform(-0.5, 0.5, size=(50, 3)))
    absq = rng.uniform(0.1, 10, size=(400, 3))
    s1, c1 = _accel._theta_numba(u2, absq, 25.0)
    s2, c2 = _accel._theta_python(u2, absq, 25.0)
    assert np.array_equal(c1, c2)
    assert np.allclose(s1, s2, rtol=1e-13, atol=0)


@needs_numba
@settings(max_examples=20)
@given(grams(), st.integers(1, 3), st.floats(1.0, 30.0))
def test_box_parity(g, radius, bound):
    assume(g.shape[0] <= 4)
    a, _ = _accel._box_numba(g.astype(np.float64), radius, bound)
    b, _ = _accel._box_python(g.astype(np.float64), radius, bound)
    assert rows(a) == rows(b)


def test_fp_enumerate_symmetric_and_complete():
    g = np.array(integral_basis(7, 7).gram, dtype=np.int64)
    coords, norms = _accel.fp_enumerate(g, 12.5)
    s = set(rows(coords))
    assert (0,) * 6 in s
    assert all(tuple(-c for c in v) in s for v in s)
    exact = np.einsum("ij,jk,ik->i", coords, g, coords)
    assert np.all(exact <= 12.5)
    # boundary vectors are kept
    assert len(_accel.fp_enumerate(g, 12)[0]) == len(coords)
    assert any(v == 12 for v in exact)


def test_boundary_vectors_on_both_paths():
    g = np.array([[5, 0, 2], [0, 1, 0], [2, 0, 1]])
    q = _accel.fincke_pohst_coefficients(g)
    want = {(0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1), (0, 0, 0)}
    assert want <= set(rows(_accel._fp_enum_python(q, _accel.widen(1.0))[0]))
    if _accel.NUMBA_AVAILABLE:
        assert want <= set(rows(_accel._fp_enum_numba(q, _accel.widen(1.0))[0]))


def test_env_flag_selects_fallback():
    code = "from sextic_h0 import _accel; print(_accel.USE_NUMBA)"
    env = dict(os.environ, SEXTIC_H0_DISABLE_NUMBA="1")
    res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert res.stdout.strip() == "False"


def test_fallback_end_to_end():
    """The same theta value and short-vector count with numba disabled."""
    code = (
        "from sextic_h0.field import integral_basis;"
        "from sextic_h0.theta import ArakelovPoint, k0;"
        "from sextic_h0.lattice import enumerate_short_real;"
        "o = integral_basis(9, 3);"
        "print(repr(k0(o, ArakelovPoint.from_w([0.1, -0.05, -0.05])).excess),"
        " len(enumerate_short_real(o.gram, 30, exact_gram=o.gram)))"
    )
    outs = []
    for flag in ("0", "1"):
        env = dict(os.environ, SEXTIC_H0_DISABLE_NUMBA=flag)
        res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        outs.append(res.stdout.split())
    assert outs[0][1] == outs[1][1]
    assert float(outs[0][0]) == pytest.approx(float(outs[1][0]), rel=1e-14)
