"""Units of O_K, the log-unit lattice in the trace-zero plane, and its fundamental domain.

Since O_F^x = mu_F O_K^x, the log lattice of F is that of the cyclic cubic
subfield.  Log vectors live in the plane v1 + v2 + v3 = 0 and are measured
with ||v||^2 = 2 sum v_i^2, the length induced by the complex places of F.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import mpmath
import numpy as np

from . import _accel
from .cyclotomic import CycElement, embed
from .field import OrderLattice, tower
from .lattice import canonical_sign

LOG_PREC = 96
INDEPENDENCE_TOL = 1e-6
MAX_SEARCH_BOUND = 1e7


class UnitSearchError(RuntimeError):
    """The unit search hit its hard cap before certifying a basis."""


def log_norm(v) -> float:
    """Length on the plane H: sqrt(2 sum v_i^2)."""
    v = np.asarray(v, dtype=np.float64)
    return float(math.sqrt(2.0 * np.dot(v, v)))


# ----------------------------------------------------------------- unit search

def _element(order: OrderLattice, coords: Sequence[int]) -> CycElement:
    acc = CycElement.zero(order.modulus)
    for c, b in zip(coords, order.basis):
        if c:
            acc = acc + b * c
    return acc


def unit_log(order: OrderLattice, coords: Sequence[int], prec: int = LOG_PREC) -> np.ndarray:
    """(log|tau_1 g|, log|tau_2 g|, log|tau_3 g|) computed at prec bits, returned as doubles."""
    x = _element(order, coords)
    with mpmath.workprec(prec):
        return np.array([float(mpmath.log(abs(embed(x, r, prec)))) for r in order.residues])


def find_units(orderK: OrderLattice, length_bound) -> list[tuple[int, ...]]:
    """All g in O_K, up to sign and excluding +-1, with ||g||_K^2 <= length_bound and |N(g)| = 1.

    Float Fincke-Pohst with a widened bound gives a superset; norms are then
    re-checked in integers and the field norm by an exact determinant.
    """
    bound = Fraction(str(length_bound)) if isinstance(length_bound, float) else Fraction(length_bound)
    gram = np.array(orderK.gram, dtype=np.int64)
    coords, _ = _accel.fp_enumerate(gram, float(bound) * (1 + 1e-9) + 1e-9)
    if len(coords) == 0:
        return []
    exact = np.einsum("ij,jk,ik->i", coords, gram, coords)
    keep = np.array([Fraction(int(v)) <= bound for v in exact], dtype=bool)
    coords, exact = coords[keep], exact[keep]
    # one per +- pair: first nonzero coordinate positive
    nz = coords != 0
    first = coords[np.arange(len(coords)), np.argmax(nz, axis=1)]
    keep = nz.any(axis=1) & (first > 0)
    coords, exact = coords[keep], exact[keep]
    approx = np.prod(coords @ orderK.embeddings.T.real, axis=1)
    cand = np.abs(np.abs(approx) - 1.0) < 0.5
    one = tuple(orderK.one)
    out = []
    for v, nrm in zip(coords[cand], exact[cand]):
        t = tuple(int(c) for c in v)
        if t == one:
            continue
        if abs(orderK.field_norm(t)) == 1:
            out.append((int(nrm), t))
    out.sort()
    return [t for _, t in out]


def _certified_radius(bound: float) -> float:
    """Largest Euclidean log length L with exp(2L sqrt(2/3)) + 2 exp(-L sqrt(2/3)) <= bound.

    A unit whose log vector has Euclidean length L has ||g||_K^2 at most that
    expression, so every such unit is found by a search up to ``bound``.
    """
    c = math.sqrt(2.0 / 3.0)
    f = lambda L: math.exp(2 * c * L) + 2 * math.exp(-c * L) - bound  # noqa: E731
    if f(0.0) > 0:
        return 0.0
    lo, hi = 0.0, 1.0
    while f(hi) <= 0:
        hi *= 2
    for _ in range(200):
        mid = (lo + hi) / 2
        if f(mid) <= 0:
            lo = mid
        else:
            hi = mid
    return lo


# --------------------------------------------------------------- log lattice

@dataclass(frozen=True, eq=False)
class LogUnitLattice:
    p: int
    b1: np.ndarray
    b2: np.ndarray
    units_b1: tuple
    units_b2: tuple
    lam: float
    regulator: float
    search_bound: float

    @property
    def basis_matrix(self) -> np.ndarray:
        return np.vstack([self.b1, self.b2])

    def point(self, alpha1: float, alpha2: float) -> np.ndarray:
        return alpha1 * self.b1 + alpha2 * self.b2

    def coordinates(self, w) -> tuple[float, float]:
        """(alpha1, alpha2) with w = alpha1 b1 + alpha2 b2 (least squares on the plane)."""
        sol, *_ = np.linalg.lstsq(self.basis_matrix.T, np.asarray(w, dtype=np.float64), rcond=None)
        return float(sol[0]), float(sol[1])

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "lambda": self.lam,
            "regulator": self.regulator,
            "b1": [float(x) for x in self.b1],
            "b2": [float(x) for x in self.b2],
            "fundamental_units": [list(self.units_b1), list(self.units_b2)],
        }


def _unit_inverse_conjugate(order: OrderLattice, eps: tuple[int, ...]) -> tuple[int, ...]:
    """sigma(eps)^{-1} = N(eps) * eps * sigma^2(eps) for a unit of a cyclic cubic field."""
    n = order.field_norm(eps)
    s2 = order.tau(order.tau(eps))
    prod = order.mul(eps, s2)
    return canonical_sign(tuple(n * c for c in prod))


def _reduce_2d(v1: np.ndarray, v2: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Lagrange-Gauss reduction under the Euclidean inner product."""
    if np.dot(v1, v1) > np.dot(v2, v2):
        v1, v2 = v2, v1
    while True:
        mu = round(float(np.dot(v1, v2) / np.dot(v1, v1)))
        v2 = v2 - mu * v1
        if np.dot(v2, v2) >= np.dot(v1, v1):
            return v1, v2
        v1, v2 = v2, v1


def log_unit_lattice(orderK: OrderLattice, start_bound: float = 16.0) -> LogUnitLattice:
    """Certified hexagonal basis of log(O_K^x).

    The search bound grows geometrically until the two successive minima among
    the units found lie within the radius the bound certifies; then b1 is a
    shortest vector and b2 = -log sigma(eps_1).
    """
    if orderK.rank != 3:
        raise ValueError("expected the order of the cubic subfield")
    bound = start_bound
    while bound <= MAX_SEARCH_BOUND:
        units = find_units(orderK, bound)
        logs = [(u, unit_log(orderK, u)) for u in units]
        radius = _certified_radius(bound)
        logs.sort(key=lambda t: np.linalg.norm(t[1]))
        if logs:
            u1, l1 = logs[0]
            second = next((t for t in logs[1:] if abs(np.cross(l1, t[1])).max() > INDEPENDENCE_TOL), None)
            if second is not None and np.linalg.norm(l1) <= radius and np.linalg.norm(second[1]) <= radius:
                v1, v2 = _reduce_2d(l1, second[1])
                covol = np.linalg.norm(np.cross(v1, v2))
                u2 = _unit_inverse_conjugate(orderK, u1)
                b1 = l1
                b2 = unit_log(orderK, u2)
                if abs(np.linalg.norm(np.cross(b1, b2)) - covol) > 1e-8 * max(covol, 1.0):
                    raise UnitSearchError("eps and sigma(eps) do not generate the unit lattice")
                reg = abs(b1[0] * b2[1] - b1[1] * b2[0])
                return LogUnitLattice(orderK.modulus, b1, b2, tuple(u1), tuple(u2),
                                      log_norm(b1), float(reg), bound)
        bound *= 4
    raise UnitSearchError("no certified unit basis below the search cap")


def unit_lattice(p: int, d: int = 1) -> LogUnitLattice:
    """Log-unit lattice of the field (p, d), in the embedding order of that field's tau."""
    tw = tower(p, d)
    return _unit_lattice(p, tw.tau.a % p)


@lru_cache(maxsize=None)
def _unit_lattice(p: int, tau_mod_p: int) -> LogUnitLattice:
    from .field import _cubic_order

    return log_unit_lattice(_cubic_order(p, tau_mod_p))


# ------------------------------------------------------------ torus geometry

def _half_open(a: float) -> float:
    """Representative of a mod 1 in (-1/2, 1/2]; values within 1e-12 of a half snap to +1/2."""
    r = a - math.ceil(a - 0.5)
    if abs(r + 0.5) < 1e-12:
        r = 0.5
    if abs(r) < 1e-15:
        r = 0.0
    return r


@dataclass(frozen=True, eq=False)
class TorusPoint:
    alpha1: float
    alpha2: float
    w: np.ndarray
    u: np.ndarray

    @classmethod
    def from_alphas(cls, lattice: LogUnitLattice, alpha1: float, alpha2: float) -> TorusPoint:
        w = lattice.point(alpha1, alpha2)
        w = w - w.sum() / 3.0
        return cls(alpha1, alpha2, w, np.exp(-w))

    @property
    def norm(self) -> float:
        return log_norm(self.w)


def reduce_to_domain(w, lattice: LogUnitLattice) -> TorusPoint:
    """Translate w by a lattice vector into the half-open parallelogram of b1, b2."""
    w = np.asarray(w, dtype=np.float64)
    if abs(w.sum()) > 1e-9 * max(1.0, float(np.abs(w).max())):
        raise ValueError("w must lie on the trace-zero plane")
    a1, a2 = lattice.coordinates(w)
    return TorusPoint.from_alphas(lattice, _half_open(a1), _half_open(a2))


@dataclass(frozen=True)
class BallVector:
    i: int
    j: int
    vector: tuple
    distance: float


def ball_units(point: TorusPoint, lattice: LogUnitLattice) -> list[BallVector]:
    """Lattice vectors v = i b1 + j b2 with ||v - w|| < lambda, closest first."""
    out = []
    for i in range(-3, 4):
        for j in range(-3, 4):
            v = i * lattice.b1 + j * lattice.b2
            dist = log_norm(v - point.w)
            if dist < lattice.lam:
                out.append(BallVector(i, j, tuple(float(x) for x in v), dist))
    out.sort(key=lambda b: (b.distance, b.i, b.j))
    return out


def splits_two(p: int) -> bool:
    """True iff 2 splits completely in the cyclic cubic field of conductor p."""
    if p == 9:
        return False
    return ((p - 1) // 3) % _mult_order(2, p) == 0


def _mult_order(a: int, n: int) -> int:
    k, b = 1, a % n
    while b != 1:
        b = b * a % n
        k += 1
    return k


__all__ = [
    "LogUnitLattice",
    "TorusPoint",
    "BallVector",
    "UnitSearchError",
    "find_units",
    "log_unit_lattice",
    "unit_lattice",
    "unit_log",
    "reduce_to_domain",
    "ball_units",
    "splits_two",
    "log_norm",
]
