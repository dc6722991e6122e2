import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from sextic_h0.field import integral_basis
from sextic_h0.lattice import (
    ShortVectorSet,
    box_search_short,
    canonical_sign,
    enumerate_short,
    enumerate_short_real,
    gram_det,
    gram_schmidt,
    is_lll_reduced,
    lll_reduce,
    quadratic_form,
)


def gram_from_basis(B):
    B = np.asarray(B, dtype=np.int64)
    return (B @ B.T).tolist()


@st.composite
def integer_grams(draw, nmin=2, nmax=4, entry=3):
    n = draw(st.integers(nmin, nmax))
    rows = draw(st.lists(st.lists(st.integers(-entry, entry), min_size=n, max_size=n), min_size=n, max_size=n))
    B = np.array(rows, dtype=np.int64)
    g = gram_from_basis(B)
    assume(gram_det(g) != 0)
    return g


def box_radius(gram, bound):
    inv = np.linalg.inv(np.array(gram, dtype=float))
    return int(math.floor(math.sqrt(bound * inv.diagonal().max()))) + 1


def test_gram_det_exact():
    assert gram_det([[2, 1], [1, 2]]) == 3
    assert gram_det([[Fraction(1, 2), 0], [0, 4]]) == 2
    assert gram_det([]) == 1


@given(integer_grams())
def test_gram_det_matches_sympy(g):
    import sympy

    assert gram_det(g) == int(sympy.Matrix(g).det())


@given(integer_grams())
def test_lll_properties(g):
    U, g2 = lll_reduce(g)
    assert abs(round(np.linalg.det(np.array(U, dtype=float)))) == 1
    assert gram_det(g2) == gram_det(g)
    assert is_lll_reduced(g2)
    U = np.array(U, dtype=object)
    assert (U.dot(np.array(g, dtype=object)).dot(U.T) == np.array(g2, dtype=object)).all()


def test_lll_rejects_non_positive():
    with pytest.raises(ValueError):
        lll_reduce([[1, 2], [2, 1]])
    with pytest.raises(ValueError):
        lll_reduce([[1, 0], [1, 1]])


def test_gram_schmidt_diagonal():
    mu, B = gram_schmidt([[Fraction(4), Fraction(0)], [Fraction(0), Fraction(9)]])
    assert B == [4, 9] and mu[1][0] == 0


@given(integer_grams(), st.integers(1, 30))
def test_enumerate_matches_box(g, bound):
    fp = enumerate_short(g, bound)
    box = box_search_short(g, bound, box_radius(g, bound))
    assert fp.vectors == box.vectors


@given(integer_grams(), st.integers(1, 30))
def test_enumerate_real_matches_exact(g, bound):
    exact = enumerate_short(g, bound)
    real = enumerate_short_real(np.array(g, dtype=float), bound, exact_gram=g)
    assert real.vectors == exact.vectors


@given(integer_grams(), st.integers(1, 30))
def test_short_vectors_are_canonical_and_sorted(g, bound):
    vs = enumerate_short(g, bound)
    for v, nrm in vs:
        assert canonical_sign(v) == v
        assert quadratic_form(g, v) == nrm <= bound
    keys = [(n, v) for v, n in vs]
    assert keys == sorted(keys)


def test_boundary_vectors_included():
    g = [[2, 1], [1, 2]]  # A2, six vectors of norm 2
    vs = enumerate_short(g, 2)
    assert vs.norm_counts() == {2: 3}
    assert len(enumerate_short(g, Fraction(19, 10))) == 0
    assert len(enumerate_short(g, 0)) == 0


def test_box_oracle_on_sextic_field():
    """Naive [-8, 8]^6 box against Fincke-Pohst on (7,7) at norm 30."""
    gram = integral_basis(7, 7).gram
    assert box_radius(gram, 30) <= 8
    assert enumerate_short(gram, 30).vectors == box_search_short(gram, 30, 8).vectors


def test_csv_roundtrip():
    vs = enumerate_short([[2, 1], [1, 2]], 6)
    text = vs.to_csv()
    assert text.splitlines()[0] == "norm,coord1,coord2"
    back = ShortVectorSet.from_csv(text, vs.bound)
    assert back.vectors == vs.vectors


def test_rational_gram():
    g = [[Fraction(1, 2), 0], [0, Fraction(3, 2)]]
    vs = enumerate_short(g, 2)
    assert ((1, 0), Fraction(1, 2)) in vs.vectors
    assert ((1, 1), 2) in vs.vectors


def test_non_symmetric_rejected():
    with pytest.raises(ValueError):
        enumerate_short([[2, 1], [0, 2]], 4)
