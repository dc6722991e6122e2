"""Hot numeric kernels with a numba path and a pure-numpy fallback.

Set ``SEXTIC_H0_DISABLE_NUMBA=1`` to force the numpy path (or when numba is
missing).  Both paths return identical vector sets; float sums agree to a few
ulps since the numpy path uses pairwise rather than compensated summation.
"""

import itertools
import math
import os

import numpy as np

try:
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    NUMBA_AVAILABLE = False

USE_NUMBA = NUMBA_AVAILABLE and os.environ.get("SEXTIC_H0_DISABLE_NUMBA", "") not in ("1", "true", "yes")


def fincke_pohst_coefficients(gram):
    """Quadratic-form decomposition Q(x) = sum_i q[i,i] (x_i + sum_{j>i} q[i,j] x_j)^2."""
    g = np.array(gram, dtype=np.float64)
    n = g.shape[0]
    q = g.copy()
    for i in range(n):
        if q[i, i] <= 0:
            raise np.linalg.LinAlgError("Gram matrix is not positive definite")
        for j in range(i + 1, n):
            q[j, i] = q[i, j]
            q[i, j] = q[i, j] / q[i, i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k, l] -= q[k, i] * q[i, l]
    return np.triu(q)


# ---------------------------------------------------------------- enumeration

def _fp_enum_python(q, bound):
    n = q.shape[0]
    rows = []
    norms = []
    x = np.zeros(n, dtype=np.int64)

    def level(i, t):
        u = 0.0
        for j in range(i + 1, n):
            u += q[i, j] * x[j]
        z = math.sqrt(max(t, 0.0) / q[i, i])
        lo = math.ceil(-z - u)
        hi = math.floor(z - u)
        if i == 0:
            if hi < lo:
                return
            xs = np.arange(lo, hi + 1, dtype=np.int64)
            rem = t - q[0, 0] * (xs + u) ** 2
            keep = rem >= 0
            if not keep.any():
                return
            block = np.repeat(x[None, :], int(keep.sum()), axis=0)
            block[:, 0] = xs[keep]
            rows.append(block)
            norms.append(bound - rem[keep])
            return
        for v in range(lo, hi + 1):
            x[i] = v
            level(i - 1, t - q[i, i] * (v + u) ** 2)
        x[i] = 0

    level(n - 1, float(bound))
    if not rows:
        return np.zeros((0, n), dtype=np.int64), np.zeros(0)
    return np.concatenate(rows), np.concatenate(norms)


if NUMBA_AVAILABLE:

    @njit(cache=True)
    def _fp_enum_numba(q, bound):  # pragma: no cover - compiled
        n = q.shape[0]
        cap = 1024
        out = np.empty((cap, n), dtype=np.int64)
        norms = np.empty(cap)
        count = 0
        x = np.zeros(n, dtype=np.int64)
        t = np.zeros(n)
        u = np.zeros(n)
        ub = np.zeros(n, dtype=np.int64)
        i = n - 1
        t[i] = bound
        u[i] = 0.0
        z = math.sqrt(max(t[i], 0.0) / q[i, i])
        ub[i] = math.floor(z - u[i])
        x[i] = math.ceil(-z - u[i]) - 1
        while True:
            x[i] += 1
            if x[i] > ub[i]:
                i += 1
                if i == n:
                    break
                continue
            if i > 0:
                d = x[i] + u[i]
                t[i - 1] = t[i] - q[i, i] * d * d
                i -= 1
                s = 0.0
                for j in range(i + 1, n):
                    s += q[i, j] * x[j]
                u[i] = s
                z = math.sqrt(max(t[i], 0.0) / q[i, i])
                ub[i] = math.floor(z - u[i])
                x[i] = math.ceil(-z - u[i]) - 1
            else:
                d = x[0] + u[0]
                rem = t[0] - q[0, 0] * d * d
                if rem >= 0.0:
                    if count == cap:
                        cap *= 2
                        bigger = np.empty((cap, n), dtype=np.int64)
                        bigger[:count] = out[:count]
                        out = bigger
                        nb = np.empty(cap)
                        nb[:count] = norms[:count]
                        norms = nb
                    out[count] = x
                    norms[count] = bound - rem
                    count += 1
        return out[:count].copy(), norms[:count].copy()


BOUND_SLACK = 1e-12


def widen(bound):
    """bound (1 + 1e-12) + 1e-12: vectors on the boundary then sit well inside the search on
    every code path, so rounding differences (e.g. fused multiply-add) cannot drop them."""
    return float(bound) * (1.0 + BOUND_SLACK) + BOUND_SLACK


def fp_enumerate(gram, bound):
    """All integer x (both signs, including 0) with x^T G x <= bound, float arithmetic.

    Returns (coords, approximate norms).  The bound is widened slightly, so
    the result may contain vectors just above it; callers re-verify.
    """
    q = fincke_pohst_coefficients(gram)
    if USE_NUMBA:
        return _fp_enum_numba(q, widen(bound))
    return _fp_enum_python(q, widen(bound))


# ---------------------------------------------------------------- theta sums

def _theta_python(u2, absq, radius):
    out = np.empty(u2.shape[0])
    counts = np.empty(u2.shape[0], dtype=np.int64)
    step = max(1, 2_000_000 // max(absq.shape[0], 1))
    for start in range(0, u2.shape[0], step):
        block = u2[start:start + step]
        norms = 2.0 * (absq @ block.T)
        mask = norms < radius
        terms = np.where(mask, np.exp(-np.pi * norms), 0.0)
        out[start:start + step] = terms.sum(axis=0)
        counts[start:start + step] = mask.sum(axis=0)
    return out, counts


if NUMBA_AVAILABLE:

    @njit(cache=True)
    def _theta_numba(u2, absq, radius):  # pragma: no cover - compiled
        npts = u2.shape[0]
        nv = absq.shape[0]
        out = np.empty(npts)
        counts = np.empty(npts, dtype=np.int64)
        for p in range(npts):
            s = 0.0
            c = 0.0
            k = 0
            a0 = u2[p, 0]
            a1 = u2[p, 1]
            a2 = u2[p, 2]
            for v in range(nv):
                nrm = 2.0 * (a0 * absq[v, 0] + a1 * absq[v, 1] + a2 * absq[v, 2])
                if nrm < radius:
                    term = math.exp(-math.pi * nrm)
                    tsum = s + term
                    if abs(s) >= abs(term):
                        c += (s - tsum) + term
                    else:
                        c += (term - tsum) + s
                    s = tsum
                    k += 1
            out[p] = s + c
            counts[p] = k
        return out, counts


def theta_excess(u2, absq, radius):
    """For each row of u2 = (u_1^2, u_2^2, u_3^2): sum over rows a of absq with
    2 <u2, a> < radius of exp(-2 pi <u2, a>), plus the count of such rows."""
    u2 = np.ascontiguousarray(u2, dtype=np.float64)
    absq = np.ascontiguousarray(absq, dtype=np.float64)
    if USE_NUMBA:
        return _theta_numba(u2, absq, float(radius))
    return _theta_python(u2, absq, float(radius))


# ---------------------------------------------------------------- box search

def _box_python(gram, radius, bound):
    g = np.asarray(gram, dtype=np.float64)
    n = g.shape[0]
    side = np.arange(-radius, radius + 1, dtype=np.int64)
    tail = np.array(list(itertools.product(side, repeat=n - 1)), dtype=np.int64).reshape(-1, n - 1)
    rows = []
    for first in side:
        block = np.concatenate([np.full((tail.shape[0], 1), first), tail], axis=1)
        norms = np.einsum("ij,jk,ik->i", block, g, block, optimize=True)
        keep = (norms <= bound) & np.any(block != 0, axis=1)
        rows.append(block[keep])
    coords = np.concatenate(rows) if rows else np.zeros((0, n), dtype=np.int64)
    return coords, np.einsum("ij,jk,ik->i", coords, g, coords)


if NUMBA_AVAILABLE:

    @njit(cache=True)
    def _box_numba(g, radius, bound):  # pragma: no cover - compiled
        n = g.shape[0]
        cap = 1024
        out = np.empty((cap, n), dtype=np.int64)
        norms = np.empty(cap)
        count = 0
        x = np.full(n, -radius, dtype=np.int64)
        while True:
            nrm = 0.0
            nz = False
            for i in range(n):
                if x[i] != 0:
                    nz = True
                for j in range(n):
                    nrm += x[i] * g[i, j] * x[j]
            if nz and nrm <= bound:
                if count == cap:
                    cap *= 2
                    bigger = np.empty((cap, n), dtype=np.int64)
                    bigger[:count] = out[:count]
                    out = bigger
                    nb = np.empty(cap)
                    nb[:count] = norms[:count]
                    norms = nb
                out[count] = x
                norms[count] = nrm
                count += 1
            k = n - 1
            while k >= 0 and x[k] == radius:
                x[k] = -radius
                k -= 1
            if k < 0:
                break
            x[k] += 1
        return out[:count].copy(), norms[:count].copy()


def box_search(gram, radius, bound):
    """Brute force: every nonzero x in [-radius, radius]^n with x^T G x <= bound."""
    g = np.ascontiguousarray(gram, dtype=np.float64)
    if USE_NUMBA:
        return _box_numba(g, int(radius), float(bound))
    return _box_python(g, int(radius), float(bound))
