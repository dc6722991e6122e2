import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sextic_h0 import tables
from sextic_h0.field import integral_basis, roots_of_unity
from sextic_h0.theta import (
    S1_LIMIT,
    S2_LIMIT,
    SQRT6,
    W_SMALL,
    ArakelovPoint,
    G_value,
    G_values,
    T2_bound,
    T3_upper_bound,
    ThetaBudgetError,
    ThetaScanner,
    amplified_sums,
    census_rows,
    constant_5_15519_check,
    gat1_ratio,
    h0,
    k0,
    radius_for,
    script_G,
    short_census,
    sum_split,
    tail_bound,
    taylor_bound,
    upper_gamma_half,
)
from sextic_h0.verify import _w_at


def plane_points(max_norm=0.6):
    return st.tuples(st.floats(0.0, max_norm), st.floats(0.0, 2 * math.pi)).map(
        lambda rt: ArakelovPoint.from_w(_w_at(*rt)))


@pytest.mark.parametrize("s2", range(1, 10))
@pytest.mark.parametrize("x", [0.1, 1.0, 7.5, 40.0])
def test_upper_gamma_half_oracle(s2, x):
    assert upper_gamma_half(s2, x) == pytest.approx(float(mpmath.gammainc(s2 / 2, x)), rel=1e-12)


@pytest.mark.parametrize("M,xi", [(6 * 3 ** (1 / 3), math.pi), (22, math.pi - 2 / 7), (30, math.pi), (12, 2.0)])
def test_tail_bound_matches_quadrature(M, xi):
    a = SQRT6
    c = (2 * math.sqrt(M) / a - 1) ** 6
    with mpmath.workdps(40):
        f = lambda t: ((2 * mpmath.sqrt(t) / a + 1) ** 6 - c) * mpmath.exp(-xi * t)  # noqa: E731
        ref = xi * mpmath.quad(f, [M, M + 10, mpmath.inf])
    assert tail_bound(M, a, xi) == pytest.approx(float(ref), rel=1e-9)


@given(st.floats(6.0, 60.0), st.floats(0.5, 5.0))
def test_tail_bound_decreasing_in_M(M, dm):
    assert tail_bound(M + dm, SQRT6, math.pi) <= tail_bound(M, SQRT6, math.pi)


@given(st.floats(6.0, 60.0), st.floats(1.0, 3.0))
def test_tail_bound_decreasing_in_xi(M, xi):
    assert tail_bound(M, SQRT6, xi + 0.1) <= tail_bound(M, SQRT6, xi)


def test_tail_bound_domain():
    with pytest.raises(ValueError):
        tail_bound(5.0, SQRT6, math.pi)
    with pytest.raises(ValueError):
        tail_bound(10.0, SQRT6, 0.0)


@pytest.mark.parametrize("eps", [1e-6, 1e-10, 1e-14])
def test_radius_for(eps):
    M = radius_for(eps)
    assert tail_bound(M * (1 - 1e-12), SQRT6, math.pi) < eps
    assert tail_bound(M * (1 - 1e-7), SQRT6, math.pi) >= eps * 0.999
    with pytest.raises(ValueError):
        radius_for(0.0)


def test_tail_constants():
    assert tail_bound(6 * 3 ** (1 / 3), SQRT6, math.pi) <= 2.6049e-9
    assert tail_bound(22, SQRT6, math.pi - 2 / 7) <= 1e-23


def test_point_validation():
    with pytest.raises(ValueError):
        ArakelovPoint.from_w([0.1, 0.0, 0.0])
    with pytest.raises(ValueError):
        ArakelovPoint.from_u([1.0, 2.0, 1.0])
    pt = ArakelovPoint.from_u([2.0, 0.5, 1.0])
    assert pt.w_norm == pytest.approx(math.sqrt(4) * math.log(2))


def test_k0_origin_and_bracket():
    order = integral_basis(7, 7)
    val = k0(order, ArakelovPoint.origin())
    # 14 roots of unity of length 6 dominate the excess
    assert val.excess == pytest.approx(14 * math.exp(-6 * math.pi), rel=1e-3)
    assert val.partial_sum <= val.upper
    assert val.tail_bound < 1e-14
    assert math.log(val.partial_sum) <= val.h0 <= math.log(val.upper)


@pytest.mark.parametrize("p,d", [(7, 7), (9, 3), (7, 1)])
@settings(max_examples=20)
@given(pt=plane_points())
def test_k0_tau_invariant(p, d, pt):
    order = integral_basis(p, d)
    a = k0(order, pt).excess
    for k in (1, 2):
        assert k0(order, pt.rotate(k)).excess == pytest.approx(a, rel=1e-12, abs=1e-300)


@settings(max_examples=15)
@given(pt=plane_points())
def test_scanner_agrees_with_direct(pt):
    order = integral_basis(9, 3)
    sc = ThetaScanner(order, 1e-14, u2_floor=float(np.min(pt.u ** 2)) * 0.999)
    fast = sc.evaluate([pt])[0]
    slow = k0(order, pt)
    assert fast.excess == pytest.approx(slow.excess, rel=1e-13)
    assert fast.terms_used == slow.terms_used


def test_scanner_range_guard():
    order = integral_basis(7, 7)
    sc = ThetaScanner(order, 1e-10, u2_floor=0.9)
    with pytest.raises(ValueError):
        sc.evaluate([ArakelovPoint.from_w(_w_at(1.0, 0.3))])
    assert sc.evaluate([]) == []


def test_budget_error():
    order = integral_basis(7, 7)
    with pytest.raises(ThetaBudgetError):
        k0(order, ArakelovPoint.from_w(_w_at(1.0, 0.0)), eps=1e-14, budget=10)


@settings(max_examples=15)
@given(pt=plane_points(0.8))
def test_sum_split_recombines(pt):
    order = integral_basis(7, 3)
    sp = sum_split(order, pt)
    val = k0(order, pt)
    total = sp.sigma1 + sp.sigma2 + (sp.sigma3 - sp.tail)
    assert total == pytest.approx(val.excess, rel=1e-12)
    assert (sp.sigma2 > 0) == (sp.s21_count + sp.s22_count > 0)
    assert (sp.sigma1 > 0) == (sp.s1_count > 0)


def test_sum_split_origin_counts():
    order = integral_basis(7, 7)
    sp = sum_split(order, ArakelovPoint.origin())
    # at u = 1 the short vectors are the 14 roots of unity (norm 6), below 6 * 2^(1/3)
    assert sp.s1_count == 14
    assert 6 < S1_LIMIT < S2_LIMIT


@pytest.mark.parametrize("p,d", [(7, 7), (9, 3), (7, 1)])
def test_amplification_identity(p, d):
    """sum of G over all nonzero f equals 3 (k0(u) - k0(1)) / ||w||^2."""
    order = integral_basis(p, d)
    base = k0(order, ArakelovPoint.origin()).excess
    from sextic_h0.lattice import enumerate_short

    vs = enumerate_short(order.gram, 60)
    coords = np.array([v for v, _ in vs] + [tuple(-c for c in v) for v, _ in vs], dtype=float)
    norms = [n for _, n in vs] * 2
    for r, th in ((0.05, 0.3), (0.2, 2.0), (0.24, 4.1)):
        pt = ArakelovPoint.from_w(_w_at(r, th))
        lhs = math.fsum(G_values(order, pt, coords, norms).tolist())
        rhs = 3 * (k0(order, pt).excess - base) / pt.w_norm ** 2
        assert lhs == pytest.approx(rhs, rel=1e-7)


def test_G_undefined_at_origin():
    order = integral_basis(7, 7)
    with pytest.raises(ValueError):
        G_value(order, ArakelovPoint.origin(), order.one)


@settings(max_examples=200)
@given(st.integers(0, 10**6), st.floats(1e-4, W_SMALL * (1 - 1e-12)), st.floats(0, 2 * math.pi))
def test_G_bounded_by_taylor(seed, r, th):
    f = tables.table1_fields()[seed % len(tables.table1_fields())]
    order = integral_basis(*f)
    census = _census(f)
    e = census[seed % len(census)]
    pt = ArakelovPoint.from_w(_w_at(r, th))
    g = G_value(order, pt, e.coords)
    assert abs(g) <= taylor_bound(e.norm, e.square_norm, pt.w_norm) <= script_G(e.norm, e.square_norm)


_CENSUS = {}


def _census(f):
    if f not in _CENSUS:
        _CENSUS[f] = short_census(integral_basis(*f))
    return _CENSUS[f]


def test_census_symmetric_and_excludes_mu():
    order = integral_basis(7, 7)
    census = _census((7, 7))
    coords = {e.coords for e in census}
    assert all(tuple(-c for c in v) in coords for v in coords)
    assert not any(order.is_root_of_unity(v) for v in coords)
    assert all(e.norm < 22 for e in census)


def test_census_rows_table_entry():
    assert tuple(census_rows(_census((19, 3)))) == ((18, 54, 6),)
    assert T3_upper_bound([(18, 54, 6)]) == pytest.approx(1.2367e-16, rel=1e-3)


def test_script_G_domain():
    with pytest.raises(ValueError):
        script_G(0, 1)


@given(st.floats(1e-6, W_SMALL))
def test_gat1_ratio_below_constant(r):
    assert gat1_ratio(r) < -15.1198 + 5e-4


def test_T2_bound_monotone():
    assert T2_bound(0.1) < T2_bound(0.2) < T2_bound(W_SMALL)
    assert T2_bound(W_SMALL) < 1e-7


@pytest.mark.parametrize("p,d", [(7, 7), (9, 3), (13, 13)])
def test_amplified_sums_negative(p, d):
    order = integral_basis(p, d)
    mu = len(roots_of_unity(order))
    for r, th in ((0.01, 0.0), (0.12, 1.0), (0.24, 5.0)):
        s = amplified_sums(order, ArakelovPoint.from_w(_w_at(r, th)), mu)
        assert s.T1 < 0 and s.total < 0
    with pytest.raises(ValueError):
        amplified_sums(order, ArakelovPoint.from_w(_w_at(0.3, 0.0)), mu)


def test_h0_wrapper():
    order = integral_basis(9, 3)
    pt = ArakelovPoint.from_w(_w_at(0.3, 0.7))
    assert h0(order, pt) == k0(order, pt).h0


def test_constant_5_15519():
    res = constant_5_15519_check()
    assert res["maximum"] < 5.15519
    assert res["upper_active"]
    assert res["constraint_value"] == pytest.approx(S2_LIMIT, rel=1e-9)
