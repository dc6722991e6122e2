"""Time the numba kernels against the pure-numpy fallbacks.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]

Both paths are called directly, so SEXTIC_H0_DISABLE_NUMBA has no effect here.
Results of the two paths are compared before any timing is reported.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from sextic_h0 import _accel
from sextic_h0.field import integral_basis


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def _rows(coords):
    return sorted(map(tuple, np.asarray(coords).tolist()))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if not _accel.NUMBA_AVAILABLE:
        print("numba is not installed; nothing to compare")
        return 1

    gram = np.array(integral_basis(7, 7).gram, dtype=np.int64)
    q = _accel.fincke_pohst_coefficients(gram)
    rng = np.random.default_rng(20240611)
    u2 = np.exp(rng.uniform(-0.6, 0.6, size=(4096, 3)))
    u2 /= np.cbrt(u2.prod(axis=1))[:, None]
    absq = rng.uniform(0.5, 20.0, size=(3000, 3))

    cases = [
        ("fp_enumerate (7,7), bound 60",
         lambda: _accel._fp_enum_numba(q, _accel.widen(60)), lambda: _accel._fp_enum_python(q, _accel.widen(60)), "rows"),
        ("theta_excess 4096 pts x 3000 vecs",
         lambda: _accel._theta_numba(u2, absq, 30.0), lambda: _accel._theta_python(u2, absq, 30.0), "sums"),
        ("box_search (7,7), radius 3",
         lambda: _accel._box_numba(gram.astype(np.float64), 3, 30.0),
         lambda: _accel._box_python(gram.astype(np.float64), 3, 30.0), "rows"),
    ]
    print(f"{'kernel':38s} {'numba s':>10s} {'numpy s':>10s} {'speedup':>8s}")
    for name, fast, slow, kind in cases:
        fast()  # compile outside the timed region
        t_fast, r_fast = _best(fast, args.repeat)
        t_slow, r_slow = _best(slow, args.repeat)
        if kind == "rows":
            same = _rows(r_fast[0]) == _rows(r_slow[0])
        else:
            same = np.allclose(r_fast[0], r_slow[0], rtol=1e-13) and np.array_equal(r_fast[1], r_slow[1])
        if not same:
            print(f"{name}: numba and numpy results differ")
            return 1
        print(f"{name:38s} {t_fast:10.4f} {t_slow:10.4f} {t_slow / t_fast:8.1f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
