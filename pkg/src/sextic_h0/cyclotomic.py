"""Exact arithmetic in Q(zeta_n), presented as the group algebra Q[x]/(x^n - 1).

Galois automorphisms act as index permutations in this presentation, which
keeps traces and conjugates cheap.  Equality goes through a canonical normal
form: the remainder modulo the cyclotomic polynomial Phi_n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Sequence

import mpmath
import numpy as np
import sympy


@lru_cache(maxsize=None)
def cyclotomic_coeffs(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n in ascending degree."""
    x = sympy.Symbol("x")
    coeffs = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()
    return tuple(int(c) for c in reversed(coeffs))


@lru_cache(maxsize=None)
def ramanujan_sum(n: int, k: int) -> int:
    """Sum of zeta_n^(a k) over units a mod n, i.e. Tr_{Q(zeta_n)/Q}(zeta_n^k)."""
    g = gcd(k % n, n) if k % n else n
    m = n // g
    return int(sympy.mobius(m)) * int(sympy.totient(n)) // int(sympy.totient(m))


def _to_fraction(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


@dataclass(frozen=True)
class GaloisUnit:
    """The automorphism zeta_n -> zeta_n^a of Q(zeta_n)."""

    a: int
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("modulus must be positive")
        if gcd(self.a, self.n) != 1:
            raise ValueError(f"{self.a} is not a unit modulo {self.n}")
        object.__setattr__(self, "a", self.a % self.n)

    def __mul__(self, other: GaloisUnit) -> GaloisUnit:
        if other.n != self.n:
            raise ValueError("modulus mismatch")
        return GaloisUnit(self.a * other.a, self.n)

    def __pow__(self, k: int) -> GaloisUnit:
        return GaloisUnit(pow(self.a, k, self.n), self.n)

    def order(self) -> int:
        k, b = 1, self.a
        while b != 1 % self.n:
            b = b * self.a % self.n
            k += 1
        return k


def _unit_residue(s, n: int) -> int:
    if isinstance(s, GaloisUnit):
        if s.n != n:
            raise ValueError("modulus mismatch")
        return s.a
    s = int(s)
    if gcd(s, n) != 1:
        raise ValueError(f"{s} is not a unit modulo {n}")
    return s % n


@dataclass(frozen=True, eq=False)
class CycElement:
    """sum_j coeffs[j] * zeta_n^j with rational coefficients."""

    n: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("modulus must be positive")
        if len(self.coeffs) != self.n:
            raise ValueError(f"expected {self.n} coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, "coeffs", tuple(_to_fraction(c) for c in self.coeffs))

    @classmethod
    def zero(cls, n: int) -> CycElement:
        return cls(n, (Fraction(0),) * n)

    @classmethod
    def rational(cls, n: int, c) -> CycElement:
        coeffs = [Fraction(0)] * n
        coeffs[0] = _to_fraction(c)
        return cls(n, tuple(coeffs))

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> CycElement:
        coeffs = [Fraction(0)] * n
        coeffs[k % n] = Fraction(1)
        return cls(n, tuple(coeffs))

    @classmethod
    def from_exponents(cls, n: int, exponents: Iterable[int], weight=1) -> CycElement:
        coeffs = [Fraction(0)] * n
        for k in exponents:
            coeffs[k % n] += weight
        return cls(n, tuple(coeffs))

    def lift(self, m: int) -> CycElement:
        """Same element viewed inside Q(zeta_m), for n | m."""
        if m % self.n:
            raise ValueError(f"{self.n} does not divide {m}")
        step = m // self.n
        coeffs = [Fraction(0)] * m
        for j, c in enumerate(self.coeffs):
            coeffs[j * step] = c
        return CycElement(m, tuple(coeffs))

    def _scaled(self) -> tuple[list[int], int]:
        den = lcm(*(c.denominator for c in self.coeffs))
        return [int(c * den) for c in self.coeffs], den

    def normal_form(self) -> tuple[Fraction, ...]:
        """Remainder modulo Phi_n, as phi(n) rational coefficients."""
        ints, den = self._scaled()
        phi = cyclotomic_coeffs(self.n)
        m = len(phi) - 1
        r = ints[:]
        for k in range(self.n - 1, m - 1, -1):
            c = r[k]
            if c:
                base = k - m
                for i in range(m):
                    if phi[i]:
                        r[base + i] -= c * phi[i]
                r[k] = 0
        return tuple(Fraction(v, den) for v in r[:m])

    def normalized(self) -> CycElement:
        nf = self.normal_form()
        return CycElement(self.n, nf + (Fraction(0),) * (self.n - len(nf)))

    def is_rational(self) -> bool:
        return not any(self.normal_form()[1:])

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CycElement.rational(self.n, other)
        if not isinstance(other, CycElement):
            return NotImplemented
        return self.n == other.n and self.normal_form() == other.normal_form()

    def __hash__(self) -> int:
        return hash((self.n, self.normal_form()))

    def __add__(self, other: CycElement) -> CycElement:
        if isinstance(other, (int, Fraction)):
            other = CycElement.rational(self.n, other)
        _check_modulus(self, other)
        return CycElement(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> CycElement:
        return CycElement(self.n, tuple(-c for c in self.coeffs))

    def __sub__(self, other: CycElement) -> CycElement:
        return self + (-other)

    def __mul__(self, other) -> CycElement:
        if isinstance(other, (int, Fraction)):
            return CycElement(self.n, tuple(c * other for c in self.coeffs))
        return cyc_mul(self, other)

    def __rmul__(self, other) -> CycElement:
        return self * other

    def __repr__(self) -> str:
        terms = [f"{c}*z^{j}" for j, c in enumerate(self.coeffs) if c]
        return f"CycElement(n={self.n}, {' + '.join(terms) or '0'})"


def _check_modulus(x: CycElement, y: CycElement) -> None:
    if x.n != y.n:
        raise ValueError(f"modulus mismatch: {x.n} vs {y.n}")


def cyc_mul(x: CycElement, y: CycElement) -> CycElement:
    """Exact product in Q[x]/(x^n - 1) (cyclic convolution)."""
    _check_modulus(x, y)
    n = x.n
    a, da = x._scaled()
    b, db = y._scaled()
    full = np.convolve(np.array(a, dtype=object), np.array(b, dtype=object))
    out = [0] * n
    for k, c in enumerate(full):
        out[k % n] += c
    den = da * db
    return CycElement(n, tuple(Fraction(int(c), den) for c in out))


def galois_apply(x: CycElement, s) -> CycElement:
    """Apply zeta -> zeta^a, i.e. move coefficient j to index a*j mod n."""
    a = _unit_residue(s, x.n)
    coeffs = [Fraction(0)] * x.n
    for j, c in enumerate(x.coeffs):
        if c:
            coeffs[a * j % x.n] += c
    return CycElement(x.n, tuple(coeffs))


def _check_subgroup(H: set[int], n: int) -> None:
    if 1 % n not in H:
        raise ValueError("subgroup must contain the identity")
    for a in H:
        for b in H:
            if a * b % n not in H:
                raise ValueError(f"not closed under multiplication: {a}*{b} mod {n}")


def trace_to_fixed(x: CycElement, H: Iterable) -> CycElement:
    """Sum of the conjugates of x under the subgroup H of (Z/n)^x."""
    residues = {_unit_residue(s, x.n) for s in H}
    _check_subgroup(residues, x.n)
    coeffs = [Fraction(0)] * x.n
    for a in sorted(residues):
        for j, c in enumerate(x.coeffs):
            if c:
                coeffs[a * j % x.n] += c
    return CycElement(x.n, tuple(coeffs))


def embed(x: CycElement, j: int, prec: int = 53):
    """Value of x under zeta_n -> exp(2 pi i j / n).

    Returns a Python complex for prec == 53 and an mpmath mpc otherwise.
    """
    if prec < 53:
        raise ValueError("prec must be at least 53 bits")
    with mpmath.workprec(prec + 20):
        total = mpmath.mpc(0)
        for k, c in enumerate(x.coeffs):
            if c:
                root = mpmath.expjpi(mpmath.mpf(2 * (j * k % x.n)) / x.n)
                total += mpmath.mpf(c.numerator) / c.denominator * root
    if prec == 53:
        return complex(total)
    with mpmath.workprec(prec):
        return +total


def embedding_values(x: CycElement, residues: Sequence[int]) -> np.ndarray:
    """Double-precision embeddings at several residues, as a complex array."""
    k = np.arange(x.n)
    c = np.array([float(v) for v in x.coeffs])
    return np.array([np.sum(c * np.exp(2j * np.pi * ((r * k) % x.n) / x.n)) for r in residues])


def char_poly_exact(x: CycElement, coset_reps: Sequence) -> list[Fraction]:
    """prod (X - s(x)) over the given automorphisms, coefficients highest first.

    Raises ValueError when a coefficient is not rational, which is how an
    incomplete or redundant transversal shows up.
    """
    conjugates = [galois_apply(x, s) for s in coset_reps]
    poly = [CycElement.rational(x.n, 1)]
    for c in conjugates:
        shifted = poly + [CycElement.zero(x.n)]
        for i in range(1, len(shifted)):
            shifted[i] = shifted[i] - cyc_mul(c, poly[i - 1])
        poly = shifted
    out = []
    for coeff in poly:
        nf = coeff.normal_form()
        if any(nf[1:]):
            raise ValueError("coset representatives do not give a rational characteristic polynomial")
        out.append(nf[0])
    return out
