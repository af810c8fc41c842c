"""
Command-line front end.

Exit codes: 0 success, 1 I/O or parse failure, 2 rejected parameters.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import constructions as con
from .constructions import DualPair
from .gabor import duality_residual, painless_frame_bounds, reconstruction_error
from .pou import Window, sampled_pou_check, smoothness_order

DEFAULT_TOL = 1e-9
DEFAULT_GRID = 1000


class _IOFailure(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise _IOFailure(f"cannot write {path}: {exc}") from exc


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise _IOFailure(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise _IOFailure(f"{path} is not valid JSON: {exc}") from exc


def _load(path, kind):
    data = _read_json(path)
    try:
        return Window.from_dict(data) if kind == "window" else DualPair.from_dict(data)
    except ValueError as exc:
        raise _IOFailure(f"{path}: {exc}") from exc


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise ValueError(f"family {args.family!r} requires {', '.join(missing)}")


# -- construct ---------------------------------------------------------------


def build_window(args) -> Window:
    fam = args.family
    if fam == "n2":
        _need(args, "L")
        if args.N not in (None, 2):
            raise ValueError("family 'n2' has support length N = 2")
        return Window(con.build_n2(con.sine_squared_base(2), args.L), 2)
    if fam == "p1":
        _need(args, "N")
        return Window(con.build_p1(args.N), args.N)
    if fam == "inductive":
        _need(args, "N", "L")
        return Window(con.inductive_family(args.N, args.L)[-1], args.N)
    if fam == "sine-power":
        _need(args, "N", "L")
        return con.sine_power(args.N, args.L, args.amplitude)
    if fam == "tight":
        _need(args, "N", "L", "b")
        return con.tight_window(args.N, args.L, args.b)
    raise ValueError(f"unknown family {fam!r}")


def cmd_construct(args) -> int:
    w = build_window(args)
    report = {
        "pou_residual": sampled_pou_check(w, args.grid),
        "smoothness": smoothness_order(w).to_dict(),
    }
    _write(args.output, w.to_json() + "\n")
    print(_dump(report), file=sys.stderr)
    return 0


# -- check -------------------------------------------------------------------


def _window_report(w: Window, b, grid):
    out = {"pou_residual": sampled_pou_check(w, grid)}
    out["smoothness"] = smoothness_order(w).to_dict() if w.is_simple else None
    out["frame_bounds"] = None
    if b is not None:
        lo, hi = w.support
        if b <= 1 / (hi - lo) + 1e-15:
            out["frame_bounds"] = painless_frame_bounds(w, b, grid).to_dict()
    return out


def check_report(window=None, pair=None, b=None, grid=DEFAULT_GRID, tol=DEFAULT_TOL) -> dict:
    if pair is not None:
        g = _window_report(pair.g, pair.b, grid)
        h = _window_report(pair.h, pair.b, grid)
        duality = duality_residual(pair, grid)
        return {
            "pou_residual": {"g": g["pou_residual"], "h": h["pou_residual"]},
            "smoothness": {"g": g["smoothness"], "h": h["smoothness"]},
            "frame_bounds": {"g": g["frame_bounds"], "h": h["frame_bounds"]},
            "duality": duality.to_dict(),
            "dual": duality.is_dual(tol),
            "tol": tol,
        }
    rep = _window_report(window, b, grid)
    rep["partition_of_unity"] = rep["pou_residual"] <= tol
    rep["tol"] = tol
    return rep


def cmd_check(args) -> int:
    if (args.window is None) == (args.pair is None):
        raise ValueError("give exactly one of --window or --pair")
    if args.window is not None:
        rep = check_report(window=_load(args.window, "window"), b=args.b, grid=args.grid, tol=args.tol)
    else:
        rep = check_report(pair=_load(args.pair, "pair"), grid=args.grid, tol=args.tol)
    _write(args.output, _dump(rep) + "\n")
    return 0


# -- dualize -----------------------------------------------------------------


def build_pair(args) -> DualPair:
    fam = args.family
    if fam == "coeffs":
        _need(args, "b")
        if args.window is not None:
            g = _load(args.window, "window")
        else:
            g = Window(con.build_n2(con.sine_squared_base(2), args.L or 2), 2)
        N = g.support_len
        a = args.a if args.a is not None else [args.b] * (2 * N - 1)
        return DualPair(g, con.dual_coeffs_window(g, args.b, a), args.b)
    if fam == "same-support":
        _need(args, "L1", "L2", "b")
        return con.same_support_dual_pair(args.L1, args.L2, args.b)
    if fam == "sine-power":
        _need(args, "N", "L1", "L2", "b")
        return con.sine_power_dual_pair(args.N, args.L1, args.L2, args.b)
    raise ValueError(f"unknown family {fam!r}")


def cmd_dualize(args) -> int:
    pair = build_pair(args)
    _write(args.output, json.dumps(pair.to_dict()) + "\n")
    print(_dump({"max_duality_residual": duality_residual(pair, args.grid).max_residual}), file=sys.stderr)
    return 0


# -- frame-demo --------------------------------------------------------------


def cmd_frame_demo(args) -> int:
    pair = _load(args.pair, "pair") if args.pair else con.example_dual_pair()
    rows = []
    tables = []
    for m in args.m_max:
        err = reconstruction_error(pair, m, args.lo, args.hi, args.center, coeffs_out=tables)
        rows.append({"m_max": m, "relative_l2_error": err})
    if args.coeffs_csv:
        _write(args.coeffs_csv, tables[-1].to_csv())
    _write(args.output, _dump({"b": pair.b, "signal": "exp(-(x-c)^2)", "center": args.center,
                               "interval": [args.lo, args.hi], "results": rows}) + "\n")
    return 0


# -- export ------------------------------------------------------------------


def export_grid(start, stop, step=None, points=None) -> np.ndarray:
    if points is not None:
        if points < 0:
            raise ValueError("--points must be nonnegative")
        return np.linspace(start, stop, points) if points != 1 else np.array([start])
    if step is None or step <= 0:
        raise ValueError("give --points or a positive --step")
    if stop < start:
        return np.empty(0)
    n = int(math.floor((stop - start) / step + 0.5)) + 1
    return start + step * np.arange(n)


def export_csv(x, g: Window, h: Window | None = None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    cols = [g.evaluate(x).real] + ([h.evaluate(x).real] if h is not None else [])
    w.writerow(["x", "g", "h"] if h is not None else ["x", "g"])
    for i, xi in enumerate(x):
        w.writerow([f"{xi:.17g}"] + [f"{c[i]:.17g}" for c in cols])
    return buf.getvalue()


def cmd_export(args) -> int:
    if (args.window is None) == (args.pair is None):
        raise ValueError("give exactly one of --window or --pair")
    if args.pair is not None:
        pair = _load(args.pair, "pair")
        g, h = pair.g, pair.h
    else:
        g, h = _load(args.window, "window"), None
    if args.start is None or args.stop is None:
        sup = [g.support] + ([h.support] if h is not None else [])
        start = min(s[0] for s in sup) if args.start is None else args.start
        stop = max(s[1] for s in sup) if args.stop is None else args.stop
    else:
        start, stop = args.start, args.stop
    step = args.step if args.step is not None else 0.01
    x = export_grid(start, stop, step, args.points)
    _write(args.output, export_csv(x, g, h))
    return 0


# -- parser ------------------------------------------------------------------


def _floats(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _ints(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="pouframes",
        description="Smooth partition-of-unity windows and dual Gabor frame pairs.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("-o", "--output", help="output file (default: stdout)")
        sp.add_argument("--grid", type=int, default=DEFAULT_GRID, help="sample points per unit length")

    c = sub.add_parser("construct", help="build a partition-of-unity or sine-power window")
    c.add_argument("--family", required=True, choices=["n2", "p1", "inductive", "sine-power", "tight"])
    c.add_argument("--N", type=int)
    c.add_argument("--L", type=int, help="order (levels for 'inductive')")
    c.add_argument("--b", type=float)
    c.add_argument("--amplitude", type=float, default=1.0)
    common(c)
    c.set_defaults(func=cmd_construct)

    k = sub.add_parser("check", help="partition of unity, smoothness, duality and frame bounds")
    k.add_argument("--window")
    k.add_argument("--pair")
    k.add_argument("--b", type=float, help="modulation step for frame bounds of a single window")
    k.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common(k)
    k.set_defaults(func=cmd_check)

    d = sub.add_parser("dualize", help="build a dual window pair")
    d.add_argument("--family", required=True, choices=["coeffs", "same-support", "sine-power"])
    d.add_argument("--window", help="window JSON for g (family 'coeffs'; default: n2 with --L)")
    d.add_argument("--N", type=int)
    d.add_argument("--L", type=int)
    d.add_argument("--L1", type=int)
    d.add_argument("--L2", type=int)
    d.add_argument("--b", type=float)
    d.add_argument("--a", type=_floats, help="a_(-N+1),...,a_(N-1), comma separated")
    common(d)
    d.set_defaults(func=cmd_dualize)

    f = sub.add_parser("frame-demo", help="analysis/synthesis reconstruction of a Gaussian")
    f.add_argument("--pair", help="pair JSON (default: support-2 C^3 pair, b = 1/3)")
    f.add_argument("--m-max", type=_ints, default=[8, 16, 32, 50, 64])
    f.add_argument("--lo", type=float, default=-3.0)
    f.add_argument("--hi", type=float, default=5.0)
    f.add_argument("--center", type=float, default=1.0)
    f.add_argument("--coeffs-csv", help="write the coefficient table of the last m_max here")
    f.add_argument("-o", "--output")
    f.set_defaults(func=cmd_frame_demo)

    e = sub.add_parser("export", help="CSV samples of a window or pair for plotting")
    e.add_argument("--window")
    e.add_argument("--pair")
    e.add_argument("--start", type=float)
    e.add_argument("--stop", type=float)
    e.add_argument("--step", type=float)
    e.add_argument("--points", type=int)
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except _IOFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
