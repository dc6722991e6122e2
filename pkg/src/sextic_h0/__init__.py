"""Exact arithmetic and certified numerics for h^0 of Arakelov divisors on
imaginary cyclic sextic fields."""

__version__ = "0.1.0"

from .cyclotomic import CycElement, GaloisUnit  # noqa: E402
from .field import FieldError, integral_basis, roots_of_unity, subfield_order, tower  # noqa: E402
from .lattice import enumerate_short, gram_det, lll_reduce  # noqa: E402
from .theta import ArakelovPoint, h0, k0, tail_bound  # noqa: E402
from .units import unit_lattice  # noqa: E402

__all__ = [
    "CycElement",
    "GaloisUnit",
    "FieldError",
    "tower",
    "integral_basis",
    "subfield_order",
    "roots_of_unity",
    "enumerate_short",
    "gram_det",
    "lll_reduce",
    "unit_lattice",
    "ArakelovPoint",
    "k0",
    "h0",
    "tail_bound",
]
