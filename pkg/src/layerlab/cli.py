"""Batch command-line front end.

Subcommands: synth, spectrum, oracle-check, poly, wavefield, geodesic.
Exit codes: 0 success, 1 failed consistency check, 2 validation failure,
3 I/O failure.  Outputs are written atomically; identical configuration
and seed give byte-identical data files.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from . import io as lio
from . import plots
from .diskgeom import GeodesicParams, geodesic_polyline
from .errors import LayerlabError
from .forward import backward_recurrence, greens_function, pushforward_check, spectrum
from .oracle import compare_trains, oracle_train, random_medium
from .spoly import hybrid_laplacian_apply, scattering_poly

DEFAULT_SIGMA_MAX = 62.83185307179586  # 20*pi
DEFAULT_SIGMA_N = 512
POLY_LIMIT = 12
ORACLE_TOL = 1e-9


def _parse_T(text) -> Fraction:
    T = Fraction(str(text))
    if T < 0:
        raise LayerlabError(f"T = {T} must be nonnegative")
    return T


def _png_path(out_path) -> str:
    return os.path.splitext(out_path)[0] + ".png"


def cmd_synth(args) -> int:
    params = lio.load_medium(args.inp, renormalize=args.renormalize)
    T = _parse_T(args.T)
    train = greens_function(params, T)
    text = lio.train_json(train) if args.json else lio.train_csv(train)
    lio.atomic_write_text(args.out, text)
    print(f"arrivals: {len(train)}")
    print(f"sum|a|^2: {train.power()!r}")
    if args.plot:
        plots.plot_train(train, _png_path(args.out))
    return 0


def cmd_spectrum(args) -> int:
    params = lio.load_medium(args.inp, renormalize=args.renormalize)
    T = _parse_T(args.T)
    if args.sigma_n < 1:
        raise LayerlabError("sigma-n must be at least 1")
    if args.sigma_max <= 0:
        raise LayerlabError("sigma-max must be positive")
    if args.sigma_n == 1:
        grid = [0.0]
    else:
        step = args.sigma_max / (args.sigma_n - 1)
        grid = [i * step for i in range(args.sigma_n)]
    train = greens_function(params, T)
    trace = spectrum(train, grid)
    rec = [backward_recurrence(params, s) for s in grid]
    lio.atomic_write_text(args.out, lio.spectrum_comparison_csv(trace, rec))
    err = max(abs(v - r) for v, r in zip(trace.values, rec))
    print(f"arrivals: {len(train)}")
    print(f"max|sum - recurrence|: {err!r}")
    if args.tail_check:
        train2 = greens_function(params, 2 * T)
        trace2 = spectrum(train2, grid)
        err2 = max(abs(v - r) for v, r in zip(trace2.values, rec))
        ratio = err / err2 if err2 > 0 else float("inf")
        print(f"tail check: error at 2T = {err2!r}, decrement x{ratio:.3g}")
    if args.plot:
        plots.plot_spectrum(trace, rec, _png_path(args.out))
    return 0


def cmd_oracle_check(args) -> int:
    if args.inp:
        params = lio.load_medium(args.inp)
    else:
        rng = random.Random(args.seed)
        params = random_medium(rng, args.n)
    T = _parse_T(args.T) if args.T else 20 * max(params.tau)
    reference = greens_function(params, T)
    probe = oracle_train(params, T)
    if args.inject_bug and probe.arrivals:
        # checker self-test: corrupt one oracle amplitude
        t0, a0 = probe.arrivals[0]
        broken = ((t0, a0 + 1e-3),) + probe.arrivals[1:]
        probe = type(probe)(broken, probe.horizon)
    mismatched, max_diff = compare_trains(reference, probe)
    ok = not mismatched and max_diff <= args.tol
    lines = [
        f"medium: n={params.n} tau={[str(t) for t in params.tau]}",
        f"horizon: {T}",
        f"arrivals: engine={len(reference)} oracle={len(probe)}",
        f"time-set mismatches: {len(mismatched)}",
        f"max amplitude discrepancy: {max_diff!r}",
        f"{'PASS' if ok else 'FAIL'} (tolerance {args.tol!r})",
    ]
    report = "\n".join(lines) + "\n"
    sys.stdout.write(report)
    if args.out:
        lio.atomic_write_text(args.out, report)
    return 0 if ok else 1


def cmd_poly(args) -> int:
    if not (1 <= args.p_max <= args.limit and 1 <= args.q_max <= args.limit):
        raise LayerlabError(
            f"p/q bounds must lie in [1, {args.limit}], got {args.p_max}, {args.q_max}"
        )
    lines = []
    all_exact = True
    for p in range(1, args.p_max + 1):
        for q in range(1, args.q_max + 1):
            poly = scattering_poly(p, q)
            residual = hybrid_laplacian_apply(poly) + (p * q) * poly
            exact = residual.is_zero
            all_exact = all_exact and exact
            lines.append(f"phi^({p},{q})  eigenvalue {p * q}  "
                         f"eigencheck {'exact' if exact else 'FAILED'}")
            for (i, j) in sorted(poly.terms):
                lines.append(f"  zeta^{i} zetabar^{j}: {poly.terms[(i, j)]}")
    lines.append("")
    kmax = min(args.p_max, args.q_max)
    lines.append(f"eigenspace dimensions (k <= {kmax}):")
    for k in range(1, kmax + 1):
        count = sum(
            1
            for p in range(1, args.p_max + 1)
            for q in range(1, args.q_max + 1)
            if p * q == k and not scattering_poly(p, q).is_zero
        )
        divisors = sum(1 for d in range(1, k + 1) if k % d == 0)
        tag = "ok" if count == divisors else "MISMATCH"
        lines.append(f"  k={k}: dimension {count}, divisor count {divisors} [{tag}]")
    lines.append("")
    lines.append(f"eigencheck verdict: {'exact' if all_exact else 'FAILED'}")
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if args.out:
        lio.atomic_write_text(args.out, text)
    return 0 if all_exact else 1


def cmd_wavefield(args) -> int:
    params = lio.load_medium(args.inp)
    T = _parse_T(args.T)
    rebuilt = pushforward_check(params, T)
    reference = greens_function(params, T)
    mismatched, max_diff = compare_trains(reference, rebuilt)
    ok = not mismatched and max_diff <= args.tol
    lio.atomic_write_text(args.out, lio.train_csv(rebuilt))
    print(f"arrivals: {len(rebuilt)}")
    print(f"time-set mismatches: {len(mismatched)}")
    print(f"max |wavefield - direct| amplitude: {max_diff!r}")
    print(f"{'PASS' if ok else 'FAIL'} (tolerance {args.tol!r})")
    if args.plot:
        plots.plot_train(rebuilt, _png_path(args.out), title="wavefield rebuild")
    return 0 if ok else 1


def cmd_geodesic(args) -> int:
    gp = GeodesicParams(args.r0, args.theta0, args.c0, args.sign)
    pts = geodesic_polyline(gp, args.samples)
    lio.atomic_write_text(args.out, lio.geodesic_csv(pts))
    print(f"samples: {len(pts)}  turning radius: {gp.turning_radius!r}")
    if args.plot:
        plots.plot_geodesic(pts, _png_path(args.out))
    return 0


def _add_medium_opts(sp):
    sp.add_argument("--in", dest="inp", required=True, help="medium JSON file")
    sp.add_argument(
        "--renormalize",
        action="store_true",
        help="rescale profile increments to sum to 1 before validation",
    )


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="layerlab",
        description="Forward scattering for piecewise-constant layered media.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("synth", help="synthesize the time-limited delta train")
    _add_medium_opts(sp)
    sp.add_argument("--out", required=True)
    sp.add_argument("--T", required=True, help="horizon, NUM/DEN or decimal string")
    sp.add_argument("--json", action="store_true", help="write JSON instead of CSV")
    sp.add_argument("--plot", action="store_true", help="render a PNG next to --out")
    sp.set_defaults(func=cmd_synth)

    sp = sub.add_parser("spectrum", help="sampled spectrum vs backward recurrence")
    _add_medium_opts(sp)
    sp.add_argument("--out", required=True)
    sp.add_argument("--T", required=True)
    sp.add_argument("--sigma-max", type=float, default=DEFAULT_SIGMA_MAX)
    sp.add_argument("--sigma-n", type=int, default=DEFAULT_SIGMA_N)
    sp.add_argument(
        "--tail-check",
        action="store_true",
        help="report the error decrement when the horizon doubles",
    )
    sp.add_argument("--plot", action="store_true")
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("oracle-check", help="dual-path delta-train comparison")
    sp.add_argument("--in", dest="inp", help="medium JSON file (else random)")
    sp.add_argument("--seed", type=int, default=0, help="seed for the random medium")
    sp.add_argument("--n", type=int, default=3, help="layer count for random media")
    sp.add_argument("--T", help="horizon (default 20*max tau)")
    sp.add_argument("--tol", type=float, default=ORACLE_TOL)
    sp.add_argument("--out", help="optional report file")
    sp.add_argument("--inject-bug", action="store_true", help=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_oracle_check)

    sp = sub.add_parser("poly", help="exact polynomial tables and eigen checks")
    sp.add_argument("--p-max", type=int, default=4)
    sp.add_argument("--q-max", type=int, default=4)
    sp.add_argument("--limit", type=int, default=POLY_LIMIT)
    sp.add_argument("--out", help="optional report file")
    sp.set_defaults(func=cmd_poly)

    sp = sub.add_parser("wavefield", help="rebuild the train from wavefield samples")
    sp.add_argument("--in", dest="inp", required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--T", required=True)
    sp.add_argument("--tol", type=float, default=1e-12)
    sp.add_argument("--plot", action="store_true")
    sp.set_defaults(func=cmd_wavefield)

    sp = sub.add_parser("geodesic", help="export a geodesic polyline")
    sp.add_argument("--r0", type=float, required=True)
    sp.add_argument("--theta0", type=float, default=0.0)
    sp.add_argument("--c0", type=float, required=True)
    sp.add_argument("--sign", type=int, choices=(1, -1), default=1)
    sp.add_argument("--samples", type=int, default=256)
    sp.add_argument("--out", required=True)
    sp.add_argument("--plot", action="store_true")
    sp.set_defaults(func=cmd_geodesic)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (LayerlabError, ValueError, ZeroDivisionError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
