"""The tower Q < k, K < F of an imaginary cyclic sextic field and its orders.

F = K(sqrt(-d)) where K is the cyclic cubic field of conductor p.  Everything
lives inside Q(zeta_n), n = lcm(p, |disc k|), and subfields are cut out as
fixed fields of subgroups of (Z/n)^x.  Integral bases come from Gaussian
periods, enlarged until the Gram determinant equals the field discriminant.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from math import gcd, lcm, isqrt
from typing import Sequence

import numpy as np
import sympy

from .cyclotomic import CycElement, GaloisUnit, cyclotomic_coeffs, embed, galois_apply, ramanujan_sum
from .lattice import gram_det, lll_reduce


class FieldError(ValueError):
    """Unsupported or inconsistent field data."""


# ------------------------------------------------------------------ the tower

def validate_conductor(p: int) -> None:
    if p == 9:
        return
    if p > 3 and sympy.isprime(p) and p % 3 == 1:
        return
    raise FieldError(f"unsupported conductor p={p}: need 9 or a prime congruent to 1 mod 3")


def is_squarefree(d: int) -> bool:
    return d >= 1 and all(e == 1 for e in sympy.factorint(d).values())


def quadratic_discriminant(d: int) -> int:
    return -4 * d if d % 4 in (1, 2) else -d


def kronecker(D: int, a: int) -> int:
    """Kronecker symbol (D/a) for a > 0 coprime to D."""
    result = 1
    while a % 2 == 0:
        a //= 2
        if D % 2 == 0:
            return 0
        result *= 1 if D % 8 in (1, 7) else -1
    if a == 1:
        return result
    return result * int(sympy.jacobi_symbol(D % a, a))


def _units(n: int) -> list[int]:
    return [a for a in range(1, n) if gcd(a, n) == 1] if n > 1 else [0]


def _cubes_mod(p: int) -> set[int]:
    return {pow(a, 3, p) for a in range(1, p) if gcd(a, p) == 1}


@dataclass(frozen=True)
class FieldTower:
    p: int
    d: int
    t: int
    delta_k: int
    delta_F: int
    n: int
    tau: GaloisUnit
    H_F: frozenset
    H_K: frozenset
    H_k: frozenset

    @property
    def conj(self) -> GaloisUnit:
        return GaloisUnit(-1, self.n)

    @property
    def key(self) -> tuple[int, int]:
        return (self.p, self.d)

    def embedding_residues(self) -> tuple[int, int, int]:
        """Residues a with tau_i = (zeta -> zeta^a), i = 1, 2, 3."""
        a = self.tau.a
        return (1, a, a * a % self.n)

    def delta_element(self) -> CycElement:
        """delta with O_k = Z[delta], as an element of Q(zeta_n)."""
        return _delta(self.d).lift(self.n)


def build_tower(p: int, d: int) -> FieldTower:
    validate_conductor(p)
    if not is_squarefree(d):
        raise FieldError(f"d={d} must be a squarefree positive integer")
    t = gcd(p, d)
    dk = quadratic_discriminant(d)
    n = lcm(p, -dk)
    delta_F = p**4 * dk**3 // t**2
    cubes = _cubes_mod(p)
    units = _units(n)
    H_K = frozenset(a for a in units if a % p in cubes)
    H_k = frozenset(a for a in units if kronecker(dk, a) == 1)
    H_F = H_K & H_k
    if len(H_F) * 6 != len(units):
        raise FieldError("subgroup indices are inconsistent")
    tau = None
    for a in units:
        if pow(a, 2, n) not in H_F and pow(a, 3, n) not in H_F:
            tau = GaloisUnit(a, n)
            break
    if tau is None:
        raise FieldError("quotient group is not cyclic of order 6")
    return FieldTower(p, d, t, dk, delta_F, n, tau, H_F, H_K, H_k)


@lru_cache(maxsize=None)
def tower(p: int, d: int) -> FieldTower:
    return build_tower(p, d)


def _gauss_sum(D: int) -> CycElement:
    """sum chi(a) zeta_D^a for the quadratic character of discriminant -D; squares to -D."""
    dk = -D
    coeffs = [Fraction(0)] * D
    for a in _units(D):
        coeffs[a] += kronecker(dk, a)
    return CycElement(D, tuple(coeffs))


@lru_cache(maxsize=None)
def _delta(d: int) -> CycElement:
    dk = quadratic_discriminant(d)
    g = _gauss_sum(-dk)
    if d % 4 in (1, 2):
        return g * Fraction(1, 2)
    return (g + 1) * Fraction(1, 2)


# ------------------------------------------------------------ rational algebra

def _mat_inv(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    a = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        piv = next(r for r in range(c, n) if a[r][c])
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [v * inv for v in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def _rank_pivots(rows: list[list]) -> list[int]:
    """Pivot columns of the row space (exact Gaussian elimination)."""
    a = [list(map(Fraction, r)) for r in rows]
    pivots = []
    r = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, len(a)):
            if a[i][c]:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return pivots


def _zspan_basis(rows: list[list[int]]) -> list[list[int]]:
    """A basis of the Z-span of integer rows (echelon form by Euclidean steps)."""
    a = [list(r) for r in rows if any(r)]
    if not a:
        return []
    ncols = len(a[0])
    top = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(top, len(a)) if a[i][c]]
            if not nz:
                break
            i_min = min(nz, key=lambda i: (abs(a[i][c]), i))
            a[top], a[i_min] = a[i_min], a[top]
            clean = True
            for i in range(top + 1, len(a)):
                if a[i][c]:
                    q = a[i][c] // a[top][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[top])]
                    if a[i][c]:
                        clean = False
            if clean:
                top += 1
                break
        a = a[:top] + [r for r in a[top:] if any(r)]
        if top == len(a):
            break
    return a[:top]


def _charpoly(m: list[list[Fraction]]) -> list[Fraction]:
    """Faddeev-LeVerrier: characteristic polynomial, highest degree first."""
    n = len(m)
    coeffs = [Fraction(1)]
    acc = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # acc <- m @ (acc + c_{k-1} I)
        prev = [row[:] for row in acc]
        for i in range(n):
            prev[i][i] += coeffs[-1]
        acc = [[sum(m[i][l] * prev[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        coeffs.append(-sum(acc[i][i] for i in range(n)) / k)
    return coeffs


# ------------------------------------------------------------- period fields

class PeriodField:
    """Fixed field of a subgroup H of (Z/n)^x with exact coordinates over a period basis."""

    def __init__(self, n: int, H: Sequence[int]):
        self.n = n
        self.H = tuple(sorted(H))
        self.degree = len(_units(n)) // len(self.H)
        self._rep = {}
        reps = []
        for j in range(n):
            if j in self._rep:
                continue
            orbit = {h * j % n for h in self.H}
            r = min(orbit)
            for o in orbit:
                self._rep[o] = r
            reps.append(r)
        self.orbit_reps = sorted(reps)
        chosen, nfs = [], []
        for r in self.orbit_reps:
            nf = self.period(r).normal_form()
            if len(_rank_pivots(nfs + [list(nf)])) > len(nfs):
                chosen.append(r)
                nfs.append(list(nf))
            if len(chosen) == self.degree:
                break
        if len(chosen) != self.degree:
            raise FieldError("periods do not span the fixed field")
        self.basis_reps = tuple(chosen)
        self._nf = nfs
        self._pivots = _rank_pivots(nfs)
        self._piv_inv = _mat_inv([[row[c] for c in self._pivots] for row in nfs])
        self._coords_cache: dict[int, tuple[Fraction, ...]] = {}

    def period(self, j: int) -> CycElement:
        return CycElement.from_exponents(self.n, (h * j for h in self.H))

    def coords(self, x: CycElement) -> tuple[Fraction, ...]:
        """Coordinates of x over the period basis; raises if x is not in the field."""
        if x.n != self.n:
            raise ValueError("modulus mismatch")
        nf = x.normal_form()
        y = [nf[c] for c in self._pivots]
        m = self.degree
        c = tuple(sum(y[i] * self._piv_inv[i][k] for i in range(m)) for k in range(m))
        for col in range(len(nf)):
            if sum(c[k] * self._nf[k][col] for k in range(m)) != nf[col]:
                raise FieldError("element does not lie in the subfield")
        return c

    def period_coords(self, j: int) -> tuple[Fraction, ...]:
        r = self._rep[j % self.n]
        if r not in self._coords_cache:
            self._coords_cache[r] = self.coords(self.period(r))
        return self._coords_cache[r]

    @cached_property
    def mult_table(self) -> list[list[list[Fraction]]]:
        """T[a][b] = coords of eta_a * eta_b, using eta_a eta_b = sum_{g in H} eta_{g a + b}."""
        m = self.degree
        table = [[None] * m for _ in range(m)]
        for a, ra in enumerate(self.basis_reps):
            for b, rb in enumerate(self.basis_reps):
                if b < a:
                    table[a][b] = table[b][a]
                    continue
                acc = [Fraction(0)] * m
                for g in self.H:
                    pc = self.period_coords(g * ra + rb)
                    for k in range(m):
                        acc[k] += pc[k]
                table[a][b] = acc
        return table

    def mul(self, x, y) -> list[Fraction]:
        m = self.degree
        out = [Fraction(0)] * m
        T = self.mult_table
        for i in range(m):
            if x[i]:
                for j in range(m):
                    if y[j]:
                        f = x[i] * y[j]
                        for k in range(m):
                            if T[i][j][k]:
                                out[k] += f * T[i][j][k]
        return out

    def mult_matrix(self, x) -> list[list[Fraction]]:
        m = self.degree
        T = self.mult_table
        return [[sum(x[i] * T[i][j][k] for i in range(m) if x[i]) for j in range(m)] for k in range(m)]

    def galois(self, x, s: int) -> list[Fraction]:
        m = self.degree
        out = [Fraction(0)] * m
        for i, r in enumerate(self.basis_reps):
            if x[i]:
                pc = self.period_coords(s * r)
                for k in range(m):
                    out[k] += x[i] * pc[k]
        return out

    def trace(self, x) -> Fraction:
        """Tr_{field/Q}; Tr(eta_j) equals the Ramanujan sum c_n(j)."""
        return sum(x[i] * ramanujan_sum(self.n, r) for i, r in enumerate(self.basis_reps))

    def element(self, x) -> CycElement:
        acc = [Fraction(0)] * self.n
        for i, r in enumerate(self.basis_reps):
            if x[i]:
                for h in self.H:
                    acc[h * r % self.n] += x[i]
        return CycElement(self.n, tuple(acc))

    def is_integral(self, x) -> bool:
        return all(c.denominator == 1 for c in _charpoly(self.mult_matrix(x)))


# --------------------------------------------------------------------- orders

@dataclass(frozen=True, eq=False)
class OrderLattice:
    """A Z-order with exact Gram matrix Tr(b_i conj(b_j)) and structure constants.

    Coordinates are column vectors: (x*y) = mult_matrix(x) @ y, conj(x) =
    conj_action @ x, tau(x) = tau_action @ x.
    """

    name: str
    rank: int
    basis: tuple
    gram: tuple
    mult_table: tuple  # [i][j][k]: b_i b_j = sum_k T[i][j][k] b_k
    conj_action: tuple
    tau_action: tuple
    one: tuple
    residues: tuple  # embedding residues tau_1, tau_2, tau_3
    modulus: int
    embeddings: np.ndarray = field(repr=False)  # [i, k] = tau_i(b_k), complex

    def norm2(self, x) -> int:
        g = self.gram
        return sum(x[i] * g[i][j] * x[j] for i in range(self.rank) for j in range(self.rank) if x[i] and x[j])

    def mult_matrix(self, x) -> list[list[int]]:
        T = self.mult_table
        r = self.rank
        return [[sum(x[i] * T[i][j][k] for i in range(r) if x[i]) for j in range(r)] for k in range(r)]

    def mul(self, x, y) -> tuple[int, ...]:
        m = self.mult_matrix(x)
        return tuple(sum(m[k][j] * y[j] for j in range(self.rank)) for k in range(self.rank))

    def _apply(self, mat, x) -> tuple[int, ...]:
        return tuple(sum(mat[k][j] * x[j] for j in range(self.rank)) for k in range(self.rank))

    def conj(self, x) -> tuple[int, ...]:
        return self._apply(self.conj_action, x)

    def tau(self, x) -> tuple[int, ...]:
        return self._apply(self.tau_action, x)

    def field_norm(self, x) -> int:
        """Exact N(x) = det of multiplication by x."""
        return gram_det(self.mult_matrix(x))

    def embed(self, x) -> np.ndarray:
        """(tau_1(x), tau_2(x), tau_3(x)) in double precision."""
        return self.embeddings @ np.asarray(x, dtype=np.float64)

    def abs2(self, coords) -> np.ndarray:
        """|tau_i(x)|^2 for each row of coords, shape (m, 3)."""
        c = np.atleast_2d(np.asarray(coords, dtype=np.float64))
        return np.abs(c @ self.embeddings.T) ** 2

    def scaled_gram(self, u) -> np.ndarray:
        """Gram matrix of the lattice u*O: ||u x||^2 = 2 sum u_i^2 |tau_i(x)|^2 (|tau_i|^2 for real K)."""
        u2 = np.asarray(u, dtype=np.float64) ** 2
        weight = 2.0 if self.name in ("F", "k") else 1.0
        e = self.embeddings
        g = weight * np.real(np.einsum("i,ia,ib->ab", u2, e, np.conj(e)))
        return (g + g.T) / 2

    def is_root_of_unity(self, x) -> bool:
        return self.mul(x, self.conj(x)) == tuple(self.one)


def _build_order(name: str, pf: PeriodField, target_det: int, residues: Sequence[int], tau_residue: int,
                 reduce: bool = True) -> OrderLattice:
    m = pf.degree
    gens = [pf.period_coords(r) for r in pf.orbit_reps]
    den = lcm(*(c.denominator for g in gens for c in g))
    basis = [[Fraction(v, den) for v in row] for row in _zspan_basis([[int(c * den) for c in g] for g in gens])]

    def gram_of(rows):
        conj = [pf.galois(b, -1) for b in rows]
        return [[pf.trace(pf.mul(bi, cj)) for cj in conj] for bi in rows]

    while True:
        g = gram_of(basis)
        det = gram_det(g)
        if det == target_det:
            break
        ratio = det / target_det
        if ratio.denominator != 1 or isqrt(int(ratio)) ** 2 != int(ratio) or ratio < 1:
            raise FieldError(f"Gram determinant {det} is not a square multiple of {target_det}")
        index = isqrt(int(ratio))
        found = None
        for q in sorted(sympy.factorint(index)):
            for digits in product(range(q), repeat=m):
                if not any(digits):
                    continue
                cand = [sum(Fraction(digits[i], q) * basis[i][k] for i in range(m)) for k in range(m)]
                if pf.is_integral(cand):
                    found = cand
                    break
            if found:
                break
        if found is None:
            raise FieldError("enlargement exhausted all candidates before reaching the discriminant")
        rows = basis + [found]
        den = lcm(*(c.denominator for row in rows for c in row))
        basis = [[Fraction(v, den) for v in row] for row in _zspan_basis([[int(c * den) for c in row] for row in rows])]

    if reduce:
        U, _ = lll_reduce(gram_of(basis))
        basis = [[sum(U[i][a] * basis[a][k] for a in range(m)) for k in range(m)] for i in range(m)]
    # deterministic signs: nonnegative trace, so 1 rather than -1 appears
    basis = [[-c for c in b] if pf.trace(b) < 0 else b for b in basis]
    gram = gram_of(basis)
    inv = _mat_inv([list(r) for r in basis])

    def to_basis(v) -> tuple[int, ...]:
        c = [sum(v[k] * inv[k][i] for k in range(m)) for i in range(m)]
        if any(x.denominator != 1 for x in c):
            raise FieldError("element is not in the order")
        return tuple(int(x) for x in c)

    table = tuple(tuple(to_basis(pf.mul(basis[i], basis[j])) for j in range(m)) for i in range(m))
    conj_cols = [to_basis(pf.galois(b, -1)) for b in basis]
    tau_cols = [to_basis(pf.galois(b, tau_residue)) for b in basis]
    one = to_basis(pf.coords(CycElement.rational(pf.n, 1)))
    elements = tuple(pf.element(b) for b in basis)
    emb = np.array([[complex(embed(e, r, 80)) for e in elements] for r in residues])
    order = OrderLattice(
        name=name,
        rank=m,
        basis=elements,
        gram=tuple(tuple(int(v) for v in row) for row in gram),
        mult_table=table,
        conj_action=tuple(tuple(col[k] for col in conj_cols) for k in range(m)),
        tau_action=tuple(tuple(col[k] for col in tau_cols) for k in range(m)),
        one=one,
        residues=tuple(residues),
        modulus=pf.n,
        embeddings=emb,
    )
    object.__setattr__(order, "_period_field", pf)
    object.__setattr__(order, "_basis_rows", basis)
    object.__setattr__(order, "_to_basis", to_basis)
    return order


def element_coords(order: OrderLattice, x: CycElement) -> tuple[int, ...]:
    """Integer coordinates of x over the order's basis."""
    pf = order._period_field
    if x.n != pf.n:
        x = x.lift(pf.n) if pf.n % x.n == 0 else x
    return order._to_basis(pf.coords(x))


def integral_basis(tw: FieldTower | int, d: int | None = None) -> OrderLattice:
    """LLL-reduced Z-basis of O_F, certified by det(gram) = |disc F|.

    Accepts a FieldTower or the pair (p, d); results are cached per field.
    """
    if isinstance(tw, FieldTower):
        return _integral_basis(tw.p, tw.d)
    return _integral_basis(tw, d)


@lru_cache(maxsize=None)
def _integral_basis(p: int, d: int) -> OrderLattice:
    tw = tower(p, d)
    pf = PeriodField(tw.n, tw.H_F)
    return _build_order("F", pf, abs(tw.delta_F), tw.embedding_residues(), tw.tau.a)


@lru_cache(maxsize=None)
def _cubic_order(p: int, tau_mod_p: int) -> OrderLattice:
    units = _units(p)
    cubes = _cubes_mod(p)
    pf = PeriodField(p, [a for a in units if a in cubes])
    residues = (1, tau_mod_p, tau_mod_p * tau_mod_p % p)
    return _build_order("K", pf, p * p, residues, tau_mod_p)


@lru_cache(maxsize=None)
def _quadratic_order(d: int, tau_mod_D: int) -> OrderLattice:
    dk = quadratic_discriminant(d)
    D = -dk
    delta = _delta(d)
    one = CycElement.rational(D, 1)
    conj = lambda x: galois_apply(x, -1)  # noqa: E731
    elems = (one, delta)
    from .cyclotomic import cyc_mul  # local: avoids a name clash with OrderLattice.mul

    def tr(x: CycElement) -> Fraction:
        return sum(c * ramanujan_sum(D, j) for j, c in enumerate(x.coeffs) if c) / (len(_units(D)) // 2)

    gram = tuple(tuple(int(3 * tr(cyc_mul(a, conj(b)))) for b in elems) for a in elems)
    if d % 4 in (1, 2):
        sq = (-d, 0)  # delta^2 = -d
        cdelta = (0, -1)
    else:
        sq = (-(1 + d) // 4, 1)  # delta^2 = delta - (1 + d)/4
        cdelta = (1, -1)
    table = (((1, 0), (0, 1)), ((0, 1), sq))
    residues = (1, tau_mod_D % D, tau_mod_D * tau_mod_D % D)
    emb = np.array([[complex(embed(e, r, 80)) for e in elems] for r in residues])
    conj_action = ((1, cdelta[0]), (0, cdelta[1]))
    # tau restricts to the nontrivial automorphism of k
    order = OrderLattice("k", 2, elems, gram, table, conj_action, conj_action, (1, 0), residues, D, emb)
    return order


def subfield_order(tw: FieldTower, which: str) -> OrderLattice:
    """O_K (rank 3, gram Tr_K(b_i b_j)) or O_k = Z[delta] (rank 2, gram in the F-length)."""
    if which == "K":
        return _cubic_order(tw.p, tw.tau.a % tw.p)
    if which == "k":
        return _quadratic_order(tw.d, tw.tau.a % (-tw.delta_k))
    raise ValueError("which must be 'K' or 'k'")


def roots_of_unity(order: OrderLattice) -> list[tuple[int, ...]]:
    """All roots of unity (both signs): the norm-6 vectors with x * conj(x) = 1."""
    from .lattice import enumerate_short

    out = []
    for v, nrm in enumerate_short(order.gram, 6):
        if nrm == 6 and order.is_root_of_unity(v):
            out.append(v)
            out.append(tuple(-c for c in v))
    return sorted(out)


def subfield_embedding(tw: FieldTower, which: str = "K") -> list[tuple[int, ...]]:
    """O_F-coordinates of the basis of O_K (or O_k), one tuple per basis element."""
    OF = integral_basis(tw.p, tw.d)
    sub = subfield_order(tw, which)
    return [element_coords(OF, b.lift(tw.n)) for b in sub.basis]


def decompose(f: Sequence[int], tw: FieldTower):
    """(gamma, beta, t) with t*f = gamma + beta*delta, gamma and beta over the O_K basis."""
    OF = integral_basis(tw.p, tw.d)
    OK = subfield_order(tw, "K")
    pf = OF._period_field
    rows = OF._basis_rows
    m = OF.rank
    x = [sum(f[i] * rows[i][k] for i in range(m)) for k in range(m)]
    xc = pf.galois(x, -1)
    delta = pf.coords(tw.delta_element())
    t, d = tw.t, tw.d
    diff = [t * (a - b) for a, b in zip(x, xc)]
    if d % 4 in (1, 2):
        # 1/delta = -delta/d
        inv = [-c / d for c in delta]
        beta = [c / 2 for c in pf.mul(diff, inv)]
    else:
        # (2 delta - 1)^2 = -d
        s = [2 * c for c in delta]
        s = [c - o for c, o in zip(s, pf.coords(CycElement.rational(pf.n, 1)))]
        beta = pf.mul(diff, [-c / d for c in s])
    bd = pf.mul(beta, delta)
    gamma = [t * a - b for a, b in zip(x, bd)]
    K_in_F = [pf.coords(b.lift(tw.n)) for b in OK.basis]
    # solve sum_j c_j K_in_F[j] = v over the pivot coordinates, then verify
    piv = _rank_pivots([list(v) for v in K_in_F])
    Ainv = _mat_inv([[K_in_F[j][r] for j in range(3)] for r in piv])

    def solve(v):
        c = [sum(Ainv[i][r] * v[piv[r]] for r in range(3)) for i in range(3)]
        back = [sum(c[j] * K_in_F[j][k] for j in range(3)) for k in range(m)]
        if back != list(v) or any(x.denominator != 1 for x in c):
            raise FieldError("component is not in O_K")
        return tuple(int(v) for v in c)

    return solve(gamma), solve(beta), t


# ------------------------------------------------------------------- records

def field_descriptor(tw: FieldTower, order: OrderLattice | None = None) -> dict:
    order = order or integral_basis(tw.p, tw.d)
    return {
        "p": tw.p,
        "d": tw.d,
        "t": tw.t,
        "delta_k": tw.delta_k,
        "delta_F": tw.delta_F,
        "n": tw.n,
        "tau": tw.tau.a,
        "basis": [[str(c) for c in b.coeffs] for b in order.basis],
        "gram": [[str(v) for v in row] for row in order.gram],
    }


def descriptor_json(tw: FieldTower) -> str:
    return json.dumps(field_descriptor(tw), indent=2)


def gram_from_descriptor(doc: dict) -> list[list[int]]:
    return [[int(v) for v in row] for row in doc["gram"]]


def check_cubic_conductor_polynomial(p: int) -> list[int]:
    """Minimal polynomial of the period generator of K (integers, highest first); diagnostic."""
    OK = _cubic_order(p, 1)
    pf = OK._period_field
    x = pf.coords(pf.period(1))
    return [int(c) for c in _charpoly(pf.mult_matrix(x))]


__all__ = [
    "FieldError",
    "FieldTower",
    "OrderLattice",
    "PeriodField",
    "build_tower",
    "tower",
    "integral_basis",
    "subfield_order",
    "roots_of_unity",
    "decompose",
    "element_coords",
    "field_descriptor",
    "descriptor_json",
    "cyclotomic_coeffs",
]
