"""Command line interface: ``sextic-h0 <command> [options]``.

Exit codes: 0 success (all checks pass), 1 a check or scan failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_CONFIG_KEYS = {"threads": int, "precision": int, "eps": float, "grid": int, "format": str, "out": str,
                "json": lambda v: v.strip().lower() in ("1", "true", "yes", "on"), "reproducible":
                lambda v: v.strip().lower() in ("1", "true", "yes", "on")}
_DEFAULTS = {"threads": 1, "precision": 80, "json": False, "out": None, "reproducible": False}


class UsageError(Exception):
    pass


def read_config(path: str) -> dict:
    """key=value lines; '#' starts a comment."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _CONFIG_KEYS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            out[key] = _CONFIG_KEYS[key](value)
        except ValueError as exc:
            raise UsageError(f"{path}:{lineno}: {exc}") from exc
    return out


def _common(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--json", action="store_true", default=d(None), help="machine-readable output")
    parser.add_argument("--out", metavar="PATH", default=d(None), help="write output to PATH instead of stdout")
    parser.add_argument("--threads", type=int, metavar="N", default=d(None), help="worker processes")
    parser.add_argument("--precision", type=int, metavar="BITS", default=d(None),
                        help="working precision for embeddings and logs (>= 53)")
    parser.add_argument("--config", metavar="FILE", default=d(None), help="key=value configuration file")
    parser.add_argument("--reproducible", action="store_true", default=d(None),
                        help="zero timings and timestamps so reports are byte-identical")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sextic-h0", description="Imaginary cyclic sextic fields and h^0.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _common(ap, suppress=False)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, help_):
        p = sub.add_parser(name, help=help_)
        _common(p, suppress=True)
        return p

    p = add("field", "field tower, integral basis and Gram matrix")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--d", type=int, required=True)

    p = add("units", "log-unit lattice of the cubic subfield")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--d", type=int, default=1, help="field whose embedding order is used")

    p = add("short-vectors", "short elements of O_F, O_K or O_k as CSV")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--bound", type=str, required=True, help="norm bound (rational)")
    p.add_argument("--order", choices=("F", "K", "k"), default="F")

    p = add("theta", "k^0 and h^0 at a point of the torus")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--alpha1", type=float, default=0.0)
    p.add_argument("--alpha2", type=float, default=0.0)
    p.add_argument("--eps", type=float, default=None)

    p = add("scan-torus", "h^0 on a grid of the fundamental domain")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--grid", type=int, default=None, help="points per axis (default 64)")
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--csv", metavar="PATH", help="also write alpha1, alpha2, h0 values")

    p = add("verify", "reproduce every tabulated value")
    p.add_argument("--only", metavar="GLOB", help="check-id glob, e.g. 'table1.*'")
    p.add_argument("--format", choices=("json", "csv"), default=None)
    p.add_argument("--no-scans", action="store_true")
    p.add_argument("--grid", type=int, default=None)
    p.add_argument("--eps", type=float, default=None)
    return ap


def _settings(args: argparse.Namespace) -> dict:
    cfg = dict(_DEFAULTS)
    if getattr(args, "config", None):
        cfg.update(read_config(args.config))
    for key in ("json", "out", "threads", "precision", "reproducible", "eps", "grid", "format"):
        val = getattr(args, key, None)
        if val is not None and val is not False:
            cfg[key] = val
    if cfg["precision"] < 53:
        raise UsageError("--precision must be at least 53")
    if cfg["threads"] < 1:
        raise UsageError("--threads must be positive")
    return cfg


def _emit(text: str, out) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _cmd_field(args, cfg) -> int:
    from .field import field_descriptor, integral_basis, roots_of_unity, tower
    from .lattice import gram_det

    tw = tower(args.p, args.d)
    order = integral_basis(tw)
    doc = field_descriptor(tw, order)
    if cfg["json"]:
        _emit(_dump(doc), cfg["out"])
        return EXIT_OK
    lines = [
        f"F = K(sqrt(-{tw.d})), conductor of K p = {tw.p}",
        f"t = {tw.t}, disc k = {tw.delta_k}, disc F = {tw.delta_F}, n = {tw.n}, tau = zeta -> zeta^{tw.tau.a}",
        f"det Gram(O_F) = {gram_det(order.gram)}",
        f"roots of unity: {len(roots_of_unity(order))}",
        "Gram matrix:",
        *("  " + " ".join(f"{v:4d}" for v in row) for row in order.gram),
    ]
    _emit("\n".join(lines) + "\n", cfg["out"])
    return EXIT_OK


def _cmd_units(args, cfg) -> int:
    from .units import unit_lattice, unit_log
    from .field import subfield_order, tower

    lat = unit_lattice(args.p, args.d)
    doc = lat.to_dict()
    if cfg["precision"] != 80:
        OK = subfield_order(tower(args.p, args.d), "K")
        doc["b1"] = [float(x) for x in unit_log(OK, lat.units_b1, cfg["precision"])]
        doc["b2"] = [float(x) for x in unit_log(OK, lat.units_b2, cfg["precision"])]
    if cfg["json"]:
        _emit(_dump(doc), cfg["out"])
    else:
        _emit(f"p = {args.p}\nlambda = {lat.lam:.10f}\nregulator = {lat.regulator:.10f}\n"
              f"b1 = {doc['b1']}\nb2 = {doc['b2']}\nunits = {doc['fundamental_units']}\n", cfg["out"])
    return EXIT_OK


def _cmd_short(args, cfg) -> int:
    from fractions import Fraction

    from .field import integral_basis, subfield_order, tower
    from .lattice import enumerate_short

    try:
        bound = Fraction(args.bound)
    except ValueError as exc:
        raise UsageError(f"bad bound {args.bound!r}") from exc
    tw = tower(args.p, args.d)
    order = integral_basis(tw) if args.order == "F" else subfield_order(tw, args.order)
    vs = enumerate_short(order.gram, bound)
    if cfg["json"]:
        _emit(_dump({"bound": str(bound), "vectors": [{"norm": int(n), "coords": list(v)} for v, n in vs]}),
              cfg["out"])
    else:
        _emit(vs.to_csv(), cfg["out"])
    return EXIT_OK


def _cmd_theta(args, cfg) -> int:
    from .field import integral_basis
    from .theta import ArakelovPoint, k0, sum_split
    from .units import TorusPoint, unit_lattice

    eps = cfg.get("eps") or 1e-14
    order = integral_basis(args.p, args.d)
    tp = TorusPoint.from_alphas(unit_lattice(args.p, args.d), args.alpha1, args.alpha2)
    pt = ArakelovPoint(tp.u, tp.w)
    val = k0(order, pt, eps)
    split = sum_split(order, pt, eps)
    doc = {
        "u": [float(x) for x in pt.u],
        "w": [float(x) for x in pt.w],
        "k0": val.partial_sum,
        "k0_excess": val.excess,
        "tail": val.tail_bound,
        "h0": val.h0,
        "h0_error": val.h0_error,
        "sigma1": split.sigma1,
        "sigma2": split.sigma2,
        "sigma3": split.sigma3,
        "counts": {"s1": split.s1_count, "s21": split.s21_count, "s22": split.s22_count, "terms": val.terms_used},
    }
    if cfg["json"]:
        _emit(_dump(doc), cfg["out"])
    else:
        _emit("".join(f"{k} = {v}\n" for k, v in doc.items()), cfg["out"])
    return EXIT_OK


def _cmd_scan(args, cfg) -> int:
    from .verify import scan_torus

    grid = cfg.get("grid") or 64
    rep = scan_torus(args.p, args.d, grid, grid, cfg.get("eps") or 1e-14)
    if args.csv:
        Path(args.csv).write_text(rep.values_csv(), encoding="utf-8")
    doc = rep.to_dict()
    if cfg["json"]:
        _emit(_dump(doc), cfg["out"])
    else:
        _emit("".join(f"{k} = {v}\n" for k, v in doc.items()), cfg["out"])
    return EXIT_OK if rep.passed else EXIT_FAIL


def _cmd_verify(args, cfg) -> int:
    from .verify import emit_report, verify_all

    fmt = cfg.get("format") or "json"
    grid = cfg.get("grid") or 64
    eps = cfg.get("eps") or 1e-14
    results, scans = verify_all(args.only, cfg["threads"], not args.no_scans, grid, eps)
    config = {"threads": cfg["threads"], "grid": grid, "eps": eps, "only": args.only or "*"}
    code = emit_report(results, fmt, cfg["out"], scans, config, cfg["reproducible"])
    if not cfg["json"] and cfg["out"] not in (None, "-"):
        failed = [r.check_id for r in results if not r.passed]
        print(f"{len(results)} checks, {len(results) - len(failed)} passed" +
              (f"; failed: {', '.join(failed)}" if failed else ""), file=sys.stderr)
    return code


_COMMANDS = {"field": _cmd_field, "units": _cmd_units, "short-vectors": _cmd_short, "theta": _cmd_theta,
             "scan-torus": _cmd_scan, "verify": _cmd_verify}


def main(argv=None) -> int:
    from .field import FieldError

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        cfg = _settings(args)
        return _COMMANDS[args.command](args, cfg)
    except (UsageError, FieldError) as exc:
        print(f"sextic-h0: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"sextic-h0: I/O error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())


__all__ = ["main", "build_parser", "read_config"]
_ = np  # numpy is imported for its side effect of failing fast when missing
