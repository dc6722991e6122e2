"""Reference data reproduced by the verification suite."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

# fields with short non-torsion elements (||f||^2 < 22), two families
L1 = ((7, 1), (9, 1), (13, 1), (19, 1), (7, 2), (9, 2), (9, 6), (13, 13), (7, 14), (7, 21), (9, 21))
L2 = ((7, 3), (9, 3), (13, 3), (19, 3), (31, 3), (37, 3), (43, 3), (7, 7), (9, 7), (13, 7), (19, 7),
      (31, 7), (7, 11), (9, 11), (13, 11), (9, 15), (19, 19), (31, 31), (7, 35), (9, 39), (13, 39),
      (43, 43), (9, 51))
EXTRA = ((7, 7), (9, 3))


def field_universe() -> list[tuple[int, int]]:
    seen = []
    for f in L1 + L2 + EXTRA:
        if f not in seen:
            seen.append(f)
    return seen


@dataclass(frozen=True)
class CensusGroup:
    fields: tuple  # fields sharing the same rows
    rows: tuple  # (||f||^2, ||f^2||^2, count including both signs)
    t3_bound: float


TABLE1 = (
    CensusGroup(((7, 1),), ((10, 26, 12), (12, 24, 4), (12, 52, 12), (16, 52, 24), (18, 82, 24),
                            (20, 76, 24), (20, 104, 12), (20, 132, 12)), 3.5200e-7),
    CensusGroup(((7, 3),), ((10, 26, 18), (12, 52, 18), (14, 42, 36), (16, 52, 36), (18, 54, 6),
                            (18, 82, 36), (20, 132, 18)), 5.2784e-7),
    CensusGroup(((9, 1),), ((12, 24, 4), (12, 36, 12), (18, 66, 24), (18, 90, 12), (18, 138, 12)), 3.4064e-9),
    CensusGroup(((9, 3),), ((12, 36, 108), (18, 54, 18), (18, 66, 108), (18, 90, 54), (18, 138, 54)), 2.9425e-8),
    CensusGroup(((13, 1),), ((12, 24, 4), (18, 106, 12), (20, 84, 12)), 1.3672e-9),
    CensusGroup(((13, 3),), ((18, 54, 6), (18, 106, 18), (20, 84, 18)), 6.4034e-14),
    CensusGroup(((19, 1),), ((12, 24, 4),), 1.3668e-10),
    CensusGroup(((19, 3), (31, 3), (37, 3), (43, 3)), ((18, 54, 6),), 1.2367e-16),
    CensusGroup(((7, 2),), ((10, 26, 6), (12, 24, 2), (12, 52, 6), (18, 54, 4), (20, 104, 6), (20, 132, 6)), 1.7600e-7),
    CensusGroup(((7, 7),), ((10, 26, 42), (12, 24, 28), (12, 52, 42), (14, 42, 42), (20, 76, 84), (20, 104, 84),
                            (20, 132, 42)), 1.2326e-6),
    CensusGroup(((9, 2),), ((12, 24, 2), (12, 36, 6), (18, 54, 4), (18, 90, 6), (18, 138, 6)), 1.7032e-9),
    CensusGroup(((9, 7),), ((12, 24, 4), (12, 36, 6), (18, 90, 6), (18, 138, 6)), 1.7716e-9),
    CensusGroup(((9, 6), (9, 21)), ((12, 36, 6), (18, 90, 6), (18, 138, 6)), 1.6349e-9),
    CensusGroup(((13, 7),), ((12, 24, 4), (18, 106, 6), (20, 84, 6)), 1.3670e-10),
    CensusGroup(((13, 13),), ((18, 106, 6), (20, 84, 6)), 2.1304e-14),
    CensusGroup(((7, 14), (7, 21)), ((10, 26, 6), (12, 52, 6), (20, 132, 6)), 1.7593e-7),
)


def table1_fields() -> list[tuple[int, int]]:
    return [f for g in TABLE1 for f in g.fields]


# unit counts m1' (up to sign, excluding +-1) at two bounds on ||eps||_K^2
UNIT_BOUND_WIDE = Fraction("44.61") / 2
UNIT_BOUND_NARROW = Fraction("33.33") / 2
UNIT_COUNTS_WIDE = {7: 18, 9: 12, 13: 6, 19: 6, 31: 0}
UNIT_COUNTS_NARROW = {7: 12, 9: 6, 13: 6, 19: 3}

ROOTS_OF_UNITY = {(7, 7): 14, (7, 3): 6, (7, 1): 4}

LAMBDA_P7 = 1.44975
LAMBDA_FLOOR = 1.83336
LAMBDA_FLOOR_PRIMES = (9, 13, 19, 31, 37, 43, 61)
REGULATORS = {31: 12.196, 43: 18.9218}
SPLIT_PRIMES = (7, 9, 13, 19, 31, 37, 43)
SPLITS_TWO = (31, 43)

TAIL_CONSTANTS = {
    "tail.s3": 2.6049e-9,
    "tail.far": 1e-23,
    "tail.far_shifted": 2.19277e-9,
}
GAT1_RATIO = -15.1198
GAT1_CONSTANT = -98.4664e-9
T2_PRINTED = 2.19278e-9
CONSTANT_5_15519 = 5.15519
SCRIPT_G_CASE2 = 1.4e-10
SCRIPT_G_CASE3 = 1.76e-7

# short elements claimed per subfield family, and d / p values claimed to have them
QUADRATIC_SHORT_D = (1, 2, 3, 7, 11)
CUBIC_SHORT_P = (7, 9, 13)
EXCLUDED_SAMPLES = ((7, 22), (13, 17), (19, 23), (37, 5), (61, 6))
