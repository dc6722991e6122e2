import json
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sextic_h0 import tables
from sextic_h0.cyclotomic import CycElement, galois_apply
from sextic_h0.field import (
    FieldError,
    build_tower,
    check_cubic_conductor_polynomial,
    decompose,
    descriptor_json,
    element_coords,
    field_descriptor,
    gram_from_descriptor,
    integral_basis,
    kronecker,
    quadratic_discriminant,
    roots_of_unity,
    subfield_embedding,
    subfield_order,
    tower,
)
from sextic_h0.lattice import gram_det, is_lll_reduced

FIELDS = tables.field_universe()
SMALL = [(7, 1), (7, 3), (9, 2), (13, 13), (7, 7), (9, 3)]


def coords6(lo=-3, hi=3):
    return st.lists(st.integers(lo, hi), min_size=6, max_size=6).map(tuple)


def test_quadratic_discriminant():
    assert [quadratic_discriminant(d) for d in (1, 2, 3, 7, 13, 14)] == [-4, -8, -3, -7, -52, -56]


def test_kronecker_oracle():
    import sympy

    for D in (-3, -4, -7, -8, -52):
        for a in range(1, 60):
            if gcd(a, D) == 1:
                if a % 2:
                    assert kronecker(D, a) == sympy.jacobi_symbol(D % a, a)
                # multiplicativity on the odd part
                assert kronecker(D, a) in (1, -1)


@pytest.mark.parametrize("p,d", [(8, 1), (3, 1), (11, 1), (7, 4), (7, 0), (27, 1)])
def test_unsupported_fields(p, d):
    with pytest.raises(FieldError):
        build_tower(p, d)


def test_tower_values():
    tw = tower(7, 7)
    assert (tw.t, tw.delta_k, tw.n, tw.delta_F) == (7, -7, 7, -16807)
    tw = tower(13, 13)
    assert (tw.delta_k, tw.n, abs(tw.delta_F)) == (-52, 52, 23762752)
    tw = tower(9, 3)
    assert (tw.t, tw.n) == (3, 9)


@pytest.mark.parametrize("p,d", FIELDS)
def test_tower_group_structure(p, d):
    tw = tower(p, d)
    units = [a for a in range(1, tw.n) if gcd(a, tw.n) == 1]
    assert len(tw.H_F) * 6 == len(units)
    assert tw.tau.order() % 6 == 0 or pow(tw.tau.a, 6, tw.n) in tw.H_F
    # tau^3 acts as complex conjugation on F
    assert (pow(tw.tau.a, 3, tw.n) * -1) % tw.n in tw.H_F


@pytest.mark.parametrize("p,d", FIELDS)
def test_discriminant_identity(p, d):
    tw = tower(p, d)
    order = integral_basis(tw)
    assert gram_det(order.gram) == abs(tw.delta_F) == p**4 * abs(tw.delta_k) ** 3 // tw.t**2


@pytest.mark.parametrize("p,d", SMALL)
def test_basis_is_reduced_and_integral(p, d):
    order = integral_basis(p, d)
    assert is_lll_reduced(order.gram)
    pf = order._period_field
    for b in order.basis:
        assert pf.is_integral(pf.coords(b))
    assert order.one == element_coords(order, CycElement.rational(order.modulus, 1))


@pytest.mark.parametrize("p,d", SMALL)
def test_gram_is_trace_form(p, d):
    order = integral_basis(p, d)
    e = order.embeddings
    numeric = 2 * np.real(e.T @ np.conj(e))
    assert np.allclose(numeric, np.array(order.gram, dtype=float), atol=1e-9)


@pytest.mark.parametrize("p,d", [(7, 1), (9, 3), (13, 7)])
@settings(max_examples=30)
@given(x=coords6(), y=coords6())
def test_order_arithmetic(p, d, x, y):
    order = integral_basis(p, d)
    xy = order.mul(x, y)
    assert np.allclose(order.embed(xy), order.embed(x) * order.embed(y), atol=1e-6)
    assert order.mul(x, y) == order.mul(y, x)
    assert np.allclose(order.embed(order.conj(x)), np.conj(order.embed(x)), atol=1e-8)
    assert order.conj(order.conj(x)) == x
    t = x
    for _ in range(6):
        t = order.tau(t)
    assert t == x
    # tau shifts the embeddings; tau^3 is complex conjugation
    e = order.embed(x)
    assert np.allclose(order.embed(order.tau(x)), [e[1], e[2], np.conj(e[0])], atol=1e-8)
    nrm = order.field_norm(x)
    assert abs(nrm - np.prod(np.abs(order.embed(x)) ** 2)) <= 1e-6 * max(1, abs(nrm))
    assert order.norm2(x) >= 0


@pytest.mark.parametrize("f,count", sorted(tables.ROOTS_OF_UNITY.items()))
def test_roots_of_unity(f, count):
    mu = roots_of_unity(integral_basis(*f))
    assert len(mu) == count
    order = integral_basis(*f)
    for z in mu:
        assert order.norm2(z) == 6


@pytest.mark.parametrize("p,d", [(7, 1), (7, 3), (9, 3), (13, 13)])
def test_subfields(p, d):
    tw = tower(p, d)
    OK, Ok = subfield_order(tw, "K"), subfield_order(tw, "k")
    assert gram_det(OK.gram) == (p * p if p != 9 else 81)
    assert gram_det(Ok.gram) == 9 * abs(tw.delta_k)
    OF = integral_basis(tw)
    for v in subfield_embedding(tw, "K"):
        assert OF.tau(OF.tau(OF.tau(v))) == v  # fixed by conjugation
        assert OF.conj(v) == v
    for v in subfield_embedding(tw, "k"):
        assert OF.tau(OF.tau(v)) == v


@pytest.mark.parametrize("p,d", [(7, 1), (9, 2), (7, 3), (13, 13)])
def test_decompose_reconstructs(p, d):
    tw = tower(p, d)
    OF = integral_basis(tw)
    K = subfield_embedding(tw, "K")
    delta = element_coords(OF, tw.delta_element())
    for f in [OF.one, delta, (1, -1, 0, 2, 0, 1), (0, 0, 3, 0, -1, 0)]:
        gamma, beta, t = decompose(f, tw)
        g = tuple(sum(c * k[i] for c, k in zip(gamma, K)) for i in range(6))
        b = tuple(sum(c * k[i] for c, k in zip(beta, K)) for i in range(6))
        lhs = tuple(t * c for c in f)
        rhs = tuple(a + c for a, c in zip(g, OF.mul(b, delta)))
        assert lhs == rhs


def test_descriptor_roundtrip():
    tw = tower(7, 7)
    doc = json.loads(descriptor_json(tw))
    assert doc == field_descriptor(tw)
    assert gram_from_descriptor(doc) == [list(r) for r in integral_basis(tw).gram]


@pytest.mark.parametrize("p", [7, 13, 19])
def test_period_polynomial(p):
    # Gaussian period polynomial of the cubic field of prime conductor p
    poly = check_cubic_conductor_polynomial(p)
    assert poly[:2] == [1, 1]
    assert poly[2] == -(p - 1) // 3


def test_galois_action_on_basis_matches_tau():
    tw = tower(7, 3)
    OF = integral_basis(tw)
    pf = OF._period_field
    for i, b in enumerate(OF.basis):
        e = [0] * 6
        e[i] = 1
        assert element_coords(OF, galois_apply(b, tw.tau)) == OF.tau(tuple(e))
