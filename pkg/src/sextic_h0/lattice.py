"""Lattice algorithms on Gram matrices: LLL, Fincke-Pohst enumeration, determinants.

Exact Gram matrices are nested sequences of int/Fraction; float Gram matrices
are numpy arrays.  Short-vector sets keep one representative per +-pair, the
one whose first nonzero coordinate is positive.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _accel

LLL_DELTA = Fraction(99, 100)


def _is_exact(gram) -> bool:
    if isinstance(gram, np.ndarray):
        return gram.dtype == object or np.issubdtype(gram.dtype, np.integer)
    return all(isinstance(v, (int, Fraction)) for row in gram for v in row)


def _as_exact(gram) -> list[list[Fraction]]:
    return [[Fraction(v) for v in row] for row in gram]


def _check_symmetric(g) -> None:
    n = len(g)
    for i in range(n):
        if len(g[i]) != n:
            raise ValueError("Gram matrix must be square")
        for j in range(i):
            if g[i][j] != g[j][i]:
                raise ValueError("Gram matrix must be symmetric")


def gram_schmidt(g):
    """(mu, B) of the Gram matrix g; B[i] are the squared GSO lengths."""
    n = len(g)
    mu = [[0] * n for _ in range(n)]
    B = [0] * n
    for i in range(n):
        for j in range(i):
            s = g[i][j]
            for l in range(j):
                s -= mu[j][l] * mu[i][l] * B[l]
            mu[i][j] = s / B[j]
        s = g[i][i]
        for l in range(i):
            s -= mu[i][l] ** 2 * B[l]
        if s <= 0:
            raise ValueError("Gram matrix is not positive definite")
        B[i] = s
    return mu, B


def _transform(g0, U):
    n = len(U)
    return [[sum(U[i][a] * g0[a][b] * U[j][b] for a in range(n) for b in range(n) if U[i][a] and U[j][b])
             for j in range(n)] for i in range(n)]


def lll_reduce(gram, delta=LLL_DELTA):
    """LLL-reduce a positive definite Gram matrix.

    Returns (U, G') with U unimodular (rows give the new basis in terms of the
    old one) and G' = U G U^T.
    """
    exact = _is_exact(gram)
    g0 = _as_exact(gram) if exact else [[float(v) for v in row] for row in np.asarray(gram)]
    if not exact:
        delta = float(delta)
    _check_symmetric(g0)
    n = len(g0)
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    g = [row[:] for row in g0]
    gram_schmidt(g)  # raises when not positive definite
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            mu, _ = gram_schmidt(g)
            r = math.floor(mu[k][j] + Fraction(1, 2)) if exact else int(round(mu[k][j]))
            if r:
                U[k] = [a - r * b for a, b in zip(U[k], U[j])]
                g = _transform(g0, U)
        mu, B = gram_schmidt(g)
        if B[k] >= (delta - mu[k][k - 1] ** 2) * B[k - 1]:
            k += 1
        else:
            U[k], U[k - 1] = U[k - 1], U[k]
            g = _transform(g0, U)
            k = max(k - 1, 1)
    if exact:
        g = [[int(v) if v.denominator == 1 else v for v in row] for row in g]
    return U, g


def is_lll_reduced(gram, delta=LLL_DELTA) -> bool:
    g = _as_exact(gram) if _is_exact(gram) else np.asarray(gram, dtype=float).tolist()
    mu, B = gram_schmidt(g)
    n = len(g)
    half = Fraction(1, 2) if _is_exact(gram) else 0.5 + 1e-12
    for i in range(n):
        for j in range(i):
            if abs(mu[i][j]) > half:
                return False
    for k in range(1, n):
        if B[k] < (delta - mu[k][k - 1] ** 2) * B[k - 1] * (1 if _is_exact(gram) else 1 - 1e-12):
            return False
    return True


def gram_det(gram):
    """Determinant: Bareiss for integers, exact elimination for rationals, LAPACK for floats."""
    if not _is_exact(gram):
        return float(np.linalg.det(np.asarray(gram, dtype=float)))
    m = [list(row) for row in gram]
    n = len(m)
    if n == 0:
        return 1
    if all(isinstance(v, int) for row in m for v in row):
        sign, prev = 1, 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for r in range(k + 1, n):
                    if m[r][k]:
                        m[k], m[r] = m[r], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1]
    m = _as_exact(m)
    det = Fraction(1)
    for k in range(n):
        piv = next((r for r in range(k, n) if m[r][k]), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det *= m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            if f:
                for j in range(k, n):
                    m[i][j] -= f * m[k][j]
    return det


def canonical_sign(v: Sequence[int]) -> tuple[int, ...]:
    for c in v:
        if c:
            return tuple(v) if c > 0 else tuple(-x for x in v)
    return tuple(v)


def quadratic_form(gram, v):
    n = len(v)
    return sum(v[i] * gram[i][j] * v[j] for i in range(n) for j in range(n) if v[i] and v[j])


@dataclass
class ShortVectorSet:
    """Nonzero lattice vectors with norm <= bound, one per +- pair, sorted by (norm, coords)."""

    bound: object
    vectors: list = field(default_factory=list)  # [(coords tuple, norm)]

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def coords(self) -> list[tuple[int, ...]]:
        return [v for v, _ in self.vectors]

    def norms(self) -> list:
        return [nrm for _, nrm in self.vectors]

    def norm_counts(self) -> dict:
        counts: dict = {}
        for _, nrm in self.vectors:
            counts[nrm] = counts.get(nrm, 0) + 1
        return counts

    def to_csv(self, fp=None) -> str:
        """Rows: norm, coord_1, ..., coord_n.  Writes to fp if given; returns the text."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        dim = len(self.vectors[0][0]) if self.vectors else 0
        writer.writerow(["norm"] + [f"coord{i + 1}" for i in range(dim)])
        for v, nrm in self.vectors:
            writer.writerow([_fmt_norm(nrm)] + list(v))
        text = buf.getvalue()
        if fp is not None:
            fp.write(text)
        return text

    @classmethod
    def from_csv(cls, text: str, bound=None) -> ShortVectorSet:
        rows = list(csv.reader(io.StringIO(text)))
        vectors = []
        for row in rows[1:]:
            norm = Fraction(row[0]) if "." not in row[0] and "e" not in row[0] else float(row[0])
            if isinstance(norm, Fraction) and norm.denominator == 1:
                norm = int(norm)
            vectors.append((tuple(int(c) for c in row[1:]), norm))
        return cls(bound, vectors)


def _fmt_norm(nrm) -> str:
    if isinstance(nrm, float):
        return repr(nrm)
    return str(nrm)


def _cholesky_exact(g):
    n = len(g)
    q = [row[:] for row in g]
    for i in range(n):
        if q[i][i] <= 0:
            raise ValueError("Gram matrix is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def enumerate_short(gram, bound) -> ShortVectorSet:
    """Exact Fincke-Pohst: every nonzero v with v^T G v <= bound.

    All pivots and pruning comparisons are exact rationals, so no vector on
    the boundary is lost or gained through rounding.
    """
    g = _as_exact(gram)
    _check_symmetric(g)
    bound = Fraction(bound)
    if bound <= 0:
        return ShortVectorSet(bound, [])
    q = _cholesky_exact(g)
    n = len(g)
    x = [0] * n
    found = []

    def level(i: int, t: Fraction) -> None:
        u = sum((q[i][j] * x[j] for j in range(i + 1, n) if x[j]), Fraction(0))
        qi = q[i][i]
        centre = -u
        start = math.floor(centre + Fraction(1, 2))
        # walk outwards from the nearest integer while the exact budget allows
        for direction in (1, -1):
            v = start if direction == 1 else start - 1
            while True:
                rest = t - qi * (v + u) ** 2
                if rest < 0:
                    if (direction == 1 and v + u >= 0) or (direction == -1 and v + u <= 0):
                        break
                    v += direction
                    continue
                x[i] = v
                if i == 0:
                    if any(x):
                        found.append(tuple(x))
                else:
                    level(i - 1, rest)
                v += direction
        x[i] = 0

    level(n - 1, bound)
    gi = [[int(v) if v.denominator == 1 else v for v in row] for row in g]
    out = {}
    for v in found:
        c = canonical_sign(v)
        if c not in out:
            nrm = quadratic_form(gi, c)
            if isinstance(nrm, Fraction) and nrm.denominator == 1:
                nrm = int(nrm)
            out[c] = nrm
    vectors = sorted(out.items(), key=lambda kv: (kv[1], kv[0]))
    return ShortVectorSet(bound, vectors)


def enumerate_short_real(gram, bound, safety=1.01, exact_gram=None) -> ShortVectorSet:
    """Floating Fincke-Pohst returning every vector with norm <= bound * safety.

    With ``exact_gram`` the candidates are re-verified exactly and only those
    with exact norm <= bound are kept, with exact norms reported.
    """
    if safety < 1:
        raise ValueError("safety factor must be >= 1")
    g = np.asarray(gram, dtype=np.float64)
    if not np.allclose(g, g.T, rtol=1e-12, atol=1e-12):
        raise ValueError("Gram matrix must be symmetric")
    try:
        coords, _ = _accel.fp_enumerate(g, float(bound) * safety)
    except np.linalg.LinAlgError as exc:
        raise ValueError(str(exc)) from exc
    if coords.shape[0] == 0:
        return ShortVectorSet(bound, [])
    nz = np.any(coords != 0, axis=1)
    coords = coords[nz]
    first = np.argmax(coords != 0, axis=1)
    sign = np.sign(coords[np.arange(coords.shape[0]), first])
    coords = coords[sign > 0]
    if exact_gram is not None:
        gi = np.array(exact_gram, dtype=object)
        exact_norms = np.einsum("ij,jk,ik->i", coords.astype(object), gi, coords.astype(object))
        keep = np.array([nrm <= bound for nrm in exact_norms], dtype=bool)
        coords = coords[keep]
        norms = [int(v) if isinstance(v, int) or getattr(v, "denominator", 1) == 1 else v
                 for v in exact_norms[keep]]
    else:
        norms = np.einsum("ij,jk,ik->i", coords, g, coords).tolist()
    vectors = sorted(((tuple(int(c) for c in row), nrm) for row, nrm in zip(coords, norms)),
                     key=lambda kv: (kv[1], kv[0]))
    return ShortVectorSet(bound, vectors)


def box_search_short(gram, bound, radius) -> ShortVectorSet:
    """Exhaustive box search oracle over [-radius, radius]^n (canonical sign)."""
    coords, _ = _accel.box_search(np.asarray(gram, dtype=np.float64), radius, float(bound) * (1 + 1e-9))
    exact = _is_exact(gram)
    gi = [[int(v) if isinstance(v, (int, np.integer)) else v for v in row] for row in np.asarray(gram).tolist()]
    out = {}
    for row in coords:
        c = canonical_sign(tuple(int(v) for v in row))
        if c in out:
            continue
        nrm = quadratic_form(gi, c)
        if exact and nrm > bound:
            continue
        if not exact and nrm > bound:
            continue
        out[c] = nrm
    return ShortVectorSet(bound, sorted(out.items(), key=lambda kv: (kv[1], kv[0])))
