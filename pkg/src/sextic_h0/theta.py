"""k^0 and h^0 of degree-zero divisors (O_F, u) with certified truncation,
the S_1/S_2/S_3 split, and the amplified quantities G, T_1, T_2, T_3 near u = 1.

Points are u = (u_1, u_2, u_3) with u_1 u_2 u_3 = 1 and w = -log u.  The
lattice uO_F has ||uf||^2 = 2 sum u_i^2 |tau_i f|^2 and shortest length at
least sqrt 6, which is what makes the tail estimate uniform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import _accel
from .field import OrderLattice
from .lattice import enumerate_short

SQRT6 = math.sqrt(6.0)
S1_LIMIT = 6.0 * 2.0 ** (1.0 / 3.0)
S2_LIMIT = 6.0 * 3.0 ** (1.0 / 3.0)
W_SMALL = 0.24163
CENSUS_BOUND = 22
ENUM_BUDGET = 5_000_000
_EDGE = 1e-12  # tails are taken from M (1 - _EDGE) to absorb rounding at the cut


class ThetaBudgetError(RuntimeError):
    """The requested accuracy needs more lattice points than the configured budget."""


# ---------------------------------------------------------------- tail bound

def upper_gamma_half(s2: int, x: float) -> float:
    """Gamma(s2/2, x) for a positive integer s2, by upward recurrence."""
    if s2 < 1:
        raise ValueError("s2 must be a positive integer")
    if s2 % 2:
        g, s = math.sqrt(math.pi) * math.erfc(math.sqrt(x)), 0.5
    else:
        g, s = math.exp(-x), 1.0
    while 2 * s < s2:
        g = s * g + x**s * math.exp(-x)
        s += 1.0
    return g


def tail_bound(M: float, a: float, xi: float) -> float:
    """Upper bound on sum_{||x||^2 >= M} exp(-xi ||x||^2) over a rank-6 lattice with minimum >= a.

    Closed form of xi int_M^oo ((2 sqrt t / a + 1)^6 - (2 sqrt M / a - 1)^6) e^{-xi t} dt.
    """
    if not (a > 0 and xi > 0 and M >= a * a):
        raise ValueError("need M >= a^2 > 0 and xi > 0")
    total = 0.0
    for k in range(7):
        total += math.comb(6, k) * (2.0 / a) ** k * xi ** (-k / 2.0) * upper_gamma_half(k + 2, xi * M)
    total -= (2.0 * math.sqrt(M) / a - 1.0) ** 6 * math.exp(-xi * M)
    return max(total, 0.0)


@lru_cache(maxsize=256)
def radius_for(eps: float, a: float = SQRT6, xi: float = math.pi) -> float:
    """Smallest M (to 1e-9) with tail_bound(M (1 - 1e-12), a, xi) < eps."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    lo = a * a
    if tail_bound(lo, a, xi) < eps:
        return lo
    hi = 2 * lo
    while tail_bound(hi * (1 - _EDGE), a, xi) >= eps:
        hi *= 2
        if hi > 1e6:
            raise ThetaBudgetError("eps is below the representable tail range")
    while hi - lo > 1e-9 * hi:
        mid = (lo + hi) / 2
        if tail_bound(mid * (1 - _EDGE), a, xi) < eps:
            hi = mid
        else:
            lo = mid
    return hi


# -------------------------------------------------------------------- points

@dataclass(frozen=True, eq=False)
class ArakelovPoint:
    u: np.ndarray
    w: np.ndarray

    def __post_init__(self):
        if abs(float(np.sum(self.w))) > 1e-12 * max(1.0, float(np.abs(self.w).max())):
            raise ValueError("N(u) must equal 1")

    @classmethod
    def from_w(cls, w: Sequence[float]) -> ArakelovPoint:
        w = np.asarray(w, dtype=np.float64)
        return cls(np.exp(-w), w)

    @classmethod
    def from_u(cls, u: Sequence[float]) -> ArakelovPoint:
        u = np.asarray(u, dtype=np.float64)
        if np.any(u <= 0) or abs(float(np.prod(u)) - 1.0) > 1e-12:
            raise ValueError("u must be positive with u_1 u_2 u_3 = 1")
        return cls(u, -np.log(u))

    @classmethod
    def origin(cls) -> ArakelovPoint:
        return cls.from_w((0.0, 0.0, 0.0))

    @property
    def x(self) -> np.ndarray:
        """log u, i.e. (x, y, z)."""
        return -self.w

    @property
    def w_norm(self) -> float:
        return math.sqrt(2.0 * float(np.dot(self.w, self.w)))

    def rotate(self, k: int = 1) -> ArakelovPoint:
        """Image under tau^k: cyclic shift of the coordinates."""
        return ArakelovPoint(np.roll(self.u, k), np.roll(self.w, k))


@dataclass(frozen=True)
class ThetaValue:
    partial_sum: float
    tail_bound: float
    radius: float
    terms_used: int
    excess: float  # partial_sum - 1, summed on its own to keep digits

    @property
    def upper(self) -> float:
        return self.partial_sum + self.tail_bound

    @property
    def h0(self) -> float:
        return math.log1p(self.excess + self.tail_bound / 2)

    @property
    def h0_error(self) -> float:
        """Half-width of the h0 bracket (bounded by width / partial_sum)."""
        return self.tail_bound / self.partial_sum


@dataclass(frozen=True)
class SumSplit:
    sigma1: float
    sigma2: float
    sigma3: float
    tail: float
    s1_count: int
    s21_count: int
    s22_count: int
    s3_terms: int


# ---------------------------------------------------------------- evaluation

def _scaled_norms(order: OrderLattice, coords: np.ndarray, u2: np.ndarray) -> np.ndarray:
    return 2.0 * (order.abs2(coords) @ u2)


def _short_in_scaled(order: OrderLattice, point: ArakelovPoint, M: float, budget: int = ENUM_BUDGET):
    """Nonzero f (both signs) with ||uf||^2 < M, ascending by norm."""
    u2 = point.u ** 2
    g = order.scaled_gram(point.u)
    # crude size estimate before enumerating: ball volume over covolume
    vol = math.pi**3 / 6 * M**3 / math.sqrt(abs(np.linalg.det(g)))
    if vol > budget:
        raise ThetaBudgetError(f"about {vol:.3g} lattice points needed, budget {budget}")
    coords, _ = _accel.fp_enumerate(g, M * 1.01 + 1e-9)
    coords = coords[np.any(coords != 0, axis=1)]
    norms = _scaled_norms(order, coords, u2)
    keep = norms < M
    coords, norms = coords[keep], norms[keep]
    idx = np.lexsort((*coords.T[::-1], norms))
    return coords[idx], norms[idx]


def k0(order: OrderLattice, point: ArakelovPoint, eps: float = 1e-14, budget: int = ENUM_BUDGET) -> ThetaValue:
    """Certified bracket [partial, partial + tail] for k^0(O_F, u)."""
    M = radius_for(eps)
    _, norms = _short_in_scaled(order, point, M, budget)
    excess = math.fsum(np.exp(-math.pi * norms).tolist())
    tail = tail_bound(M * (1 - _EDGE), SQRT6, math.pi)
    return ThetaValue(1.0 + excess, tail, M, len(norms) + 1, excess)


def h0(order: OrderLattice, point: ArakelovPoint, eps: float = 1e-14) -> float:
    return k0(order, point, eps).h0


def sum_split(order: OrderLattice, point: ArakelovPoint, eps: float = 1e-14) -> SumSplit:
    """k^0 = 1 + sigma1 + sigma2 + sigma3 by ||uf||^2 thresholds 6*2^(1/3) and 6*3^(1/3)."""
    M = max(radius_for(eps), S2_LIMIT)
    coords, norms = _short_in_scaled(order, point, M)
    terms = np.exp(-math.pi * norms)
    in1 = norms < S1_LIMIT
    in2 = (norms >= S1_LIMIT) & (norms < S2_LIMIT)
    in3 = norms >= S2_LIMIT
    s21 = s22 = 0
    for v in coords[in2]:
        n = abs(order.field_norm(tuple(int(c) for c in v)))
        if n == 1:
            s21 += 1
        elif n == 2:
            s22 += 1
        else:
            raise AssertionError(f"norm {n} contradicts the AM-GM floor")
    tail = tail_bound(M * (1 - _EDGE), SQRT6, math.pi)
    return SumSplit(
        sigma1=math.fsum(terms[in1].tolist()),
        sigma2=math.fsum(terms[in2].tolist()),
        sigma3=math.fsum(terms[in3].tolist()) + tail,
        tail=tail,
        s1_count=int(in1.sum()),
        s21_count=s21,
        s22_count=s22,
        s3_terms=int(in3.sum()),
    )


class ThetaScanner:
    """Evaluates k^0 at many points of one field by reusing one superset of short vectors.

    Every point must satisfy min_i u_i^2 >= u2_floor; vectors with
    ||f||^2 <= M / u2_floor are enumerated once.
    """

    def __init__(self, order: OrderLattice, eps: float = 1e-14, u2_floor: float = 0.1,
                 budget: int = ENUM_BUDGET):
        self.order = order
        self.radius = radius_for(eps)
        self.u2_floor = u2_floor
        self.tail = tail_bound(self.radius * (1 - _EDGE), SQRT6, math.pi)
        bound = self.radius / u2_floor
        vol = math.pi**3 / 6 * bound**3 / math.sqrt(float(np.linalg.det(np.array(order.gram, dtype=float))))
        if vol > budget:
            raise ThetaBudgetError(f"about {vol:.3g} lattice points needed, budget {budget}")
        coords, _ = _accel.fp_enumerate(np.array(order.gram, dtype=np.float64), bound * (1 + 1e-9) + 1e-9)
        coords = coords[np.any(coords != 0, axis=1)]
        absq = order.abs2(coords)
        order_idx = np.argsort(absq.sum(axis=1), kind="stable")
        self.absq = np.ascontiguousarray(absq[order_idx])

    def evaluate(self, points: Iterable[ArakelovPoint]) -> list[ThetaValue]:
        pts = list(points)
        if not pts:
            return []
        u2 = np.array([p.u ** 2 for p in pts])
        if float(u2.min()) < self.u2_floor * (1 - 1e-12):
            raise ValueError("point outside the scanner's precomputed range")
        sums, counts = _accel.theta_excess(u2, self.absq, self.radius)
        return [ThetaValue(1.0 + float(s), self.tail, self.radius, int(c) + 1, float(s))
                for s, c in zip(sums, counts)]


# ------------------------------------------------------ amplified quantities

def _G1_all(point: ArakelovPoint, fsq: np.ndarray) -> np.ndarray:
    """G_2(u, f) for rows fsq = (|tau_1 f|^2, |tau_2 f|^2, |tau_3 f|^2)."""
    d = np.expm1(2.0 * point.x)  # u_i^2 - 1
    total = np.zeros(fsq.shape[0])
    for j in range(3):
        total += np.expm1(-2.0 * math.pi * (np.roll(fsq, -j, axis=1) @ d))
    return total


def G_value(order: OrderLattice, point: ArakelovPoint, f: Sequence[int]) -> float:
    """G(u, f) = exp(-pi ||f||^2) G_2(u, f) / ||w||^2."""
    wn2 = point.w_norm ** 2
    if wn2 == 0:
        raise ValueError("G is undefined at w = 0")
    fsq = order.abs2([f])
    return float(math.exp(-math.pi * order.norm2(f)) * _G1_all(point, fsq)[0] / wn2)


def G_values(order: OrderLattice, point: ArakelovPoint, coords, norms) -> np.ndarray:
    wn2 = point.w_norm ** 2
    if wn2 == 0:
        raise ValueError("G is undefined at w = 0")
    fsq = order.abs2(coords)
    return np.exp(-math.pi * np.asarray(norms, dtype=np.float64)) * _G1_all(point, fsq) / wn2


def script_G(l1: float, l2: float) -> float:
    """4 pi^2 l2 exp(-pi l1) (1 + exp(2 pi 0.24163 sqrt l2) / 2)."""
    if l1 <= 0 or l2 <= 0:
        raise ValueError("l1 and l2 must be positive")
    return 4 * math.pi**2 * l2 * math.exp(-math.pi * l1) * (1 + 0.5 * math.exp(2 * math.pi * W_SMALL * math.sqrt(l2)))


def taylor_bound(l1: float, l2: float, w_norm: float) -> float:
    """4 pi^2 ||f^2||^2 exp(-pi ||f||^2) (1 + exp(2 pi ||w|| ||f^2||) / 2)."""
    return 4 * math.pi**2 * l2 * math.exp(-math.pi * l1) * (1 + 0.5 * math.exp(2 * math.pi * w_norm * math.sqrt(l2)))


@dataclass(frozen=True)
class CensusEntry:
    coords: tuple
    norm: int  # ||f||^2
    square_norm: int  # ||f^2||^2


def short_census(order: OrderLattice, bound: int = CENSUS_BOUND) -> list[CensusEntry]:
    """All f in O_F minus roots of unity with ||f||^2 < bound, both signs."""
    out = []
    for v, nrm in enumerate_short(order.gram, bound - 1):
        if nrm == 6 and order.is_root_of_unity(v):
            continue
        sq = order.norm2(order.mul(v, v))
        for s in (1, -1):
            out.append(CensusEntry(tuple(s * c for c in v), int(nrm), int(sq)))
    return out


def census_rows(census: Sequence[CensusEntry]) -> list[tuple[int, int, int]]:
    """(||f||^2, ||f^2||^2, count) grouped and sorted."""
    counts: dict = {}
    for e in census:
        key = (e.norm, e.square_norm)
        counts[key] = counts.get(key, 0) + 1
    return [(a, b, c) for (a, b), c in sorted(counts.items())]


def T3_upper_bound(rows: Iterable[tuple[int, int, int]]) -> float:
    """sum count * script_G(l1, l2) over census rows."""
    return math.fsum(c * script_G(a, b) for a, b, c in rows)


def T2_bound(w_norm: float) -> float:
    """Bound on T_2 at ||w||: 2 pi^2 S(pi - 2/7) + pi^2 S(pi - 2 pi ||w|| - 2/7), S the tail sums beyond 22."""
    xi1 = math.pi - 2.0 / 7.0
    xi2 = math.pi - 2.0 * math.pi * w_norm - 2.0 / 7.0
    return 2 * math.pi**2 * tail_bound(CENSUS_BOUND, SQRT6, xi1) + math.pi**2 * tail_bound(CENSUS_BOUND, SQRT6, xi2)


@dataclass(frozen=True)
class AmplifiedSums:
    T1: float
    T3: float
    T2_bound: float

    @property
    def total(self) -> float:
        return self.T1 + self.T2_bound + self.T3


def amplified_sums(order: OrderLattice, point: ArakelovPoint, roots_count: int,
                   census: Sequence[CensusEntry] | None = None) -> AmplifiedSums:
    """T_1 exactly, T_3 over the census of short non-torsion elements, and a bound on T_2."""
    wn = point.w_norm
    if not 0 < wn < W_SMALL:
        raise ValueError("need 0 < ||w|| < 0.24163")
    census = short_census(order) if census is None else census
    T1 = roots_count * G_value(order, point, order.one)
    if census:
        coords = np.array([e.coords for e in census], dtype=np.float64)
        T3 = math.fsum(G_values(order, point, coords, [e.norm for e in census]).tolist())
    else:
        T3 = 0.0
    return AmplifiedSums(T1, T3, T2_bound(wn))


def gat1_ratio(w_norm: float) -> float:
    """3 (exp(-1.9 pi ||w||^2) - 1) / ||w||^2."""
    return 3.0 * math.expm1(-1.9 * math.pi * w_norm**2) / w_norm**2


# ------------------------------------------------------ the 5.15519 constant

def _inv_sq_sum(s1: float, s2: float) -> tuple[float, float]:
    x = np.exp([s1, s2, -s1 - s2])
    return float(np.sum(x**-2)), float(2 * np.sum(x**2))


def _on_level(theta: float, level: float) -> tuple[float, float]:
    """Point of the log-plane in direction theta where 2 sum x_i^2 equals level."""
    e1 = np.array([1.0, -1.0, 0.0]) / math.sqrt(2)
    e2 = np.array([1.0, 1.0, -2.0]) / math.sqrt(6)
    d = math.cos(theta) * e1 + math.sin(theta) * e2
    lo, hi = 0.0, 1.0
    while 2 * np.sum(np.exp(2 * hi * d)) < level:
        hi *= 2
    for _ in range(200):
        mid = (lo + hi) / 2
        if 2 * np.sum(np.exp(2 * mid * d)) < level:
            lo = mid
        else:
            hi = mid
    s = lo * d
    return float(s[0]), float(s[1])


def constant_5_15519_check(grid: int = 801) -> dict:
    """Maximise 1/x1^2 + 1/x2^2 + 1/x3^2 on x1 x2 x3 = 1, 6 2^(1/3) <= 2 sum x_i^2 <= 6 3^(1/3).

    A grid over the feasible annulus (in log coordinates) locates the maximum;
    it is then refined along the outer boundary, where a convex function of
    the log coordinates must peak.  Reports whether the refined boundary value
    dominates the grid value.
    """
    from scipy.optimize import minimize_scalar

    span = 1.2
    s = np.linspace(-span, span, grid)
    S1, S2 = np.meshgrid(s, s, indexing="ij")
    X = np.exp(np.stack([S1, S2, -S1 - S2]))
    obj = np.sum(X**-2, axis=0)
    lim = np.sum(2 * X**2, axis=0)
    feas = (lim >= S1_LIMIT) & (lim <= S2_LIMIT)
    obj = np.where(feas, obj, -np.inf)
    grid_max = float(obj.max())

    thetas = np.linspace(0, 2 * math.pi, 721)
    vals = [_inv_sq_sum(*_on_level(t, S2_LIMIT))[0] for t in thetas]
    k = int(np.argmax(vals))
    h = thetas[1] - thetas[0]
    res = minimize_scalar(lambda t: -_inv_sq_sum(*_on_level(t, S2_LIMIT))[0],
                          bounds=(thetas[k] - h, thetas[k] + h), method="bounded",
                          options={"xatol": 1e-12})
    s1, s2 = _on_level(float(res.x), S2_LIMIT)
    boundary_max, level = _inv_sq_sum(s1, s2)
    return {
        "maximum": max(grid_max, boundary_max),
        "grid_maximum": grid_max,
        "location": [float(t) for t in np.exp([s1, s2, -s1 - s2])],
        "upper_active": boundary_max >= grid_max,
        "constraint_value": level,
    }


__all__ = [
    "ArakelovPoint",
    "ThetaValue",
    "SumSplit",
    "ThetaScanner",
    "ThetaBudgetError",
    "CensusEntry",
    "AmplifiedSums",
    "tail_bound",
    "upper_gamma_half",
    "radius_for",
    "k0",
    "h0",
    "sum_split",
    "G_value",
    "G_values",
    "script_G",
    "taylor_bound",
    "short_census",
    "census_rows",
    "T3_upper_bound",
    "T2_bound",
    "amplified_sums",
    "gat1_ratio",
    "constant_5_15519_check",
]
