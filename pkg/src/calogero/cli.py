"""Command-line front end.

Subcommands: spectrum, sweep, factorize-check, nonexistence, verify.
Data goes to stdout (or --out) as JSON or CSV; diagnostics go to stderr.
Exit codes: 0 success, 2 invalid arguments or guarded region, 3 no
representation exists for the couplings, 4 numerical failure or a check
over threshold.

JSON output is deterministic byte for byte for identical inputs: fixed
key order, floats at 17 significant digits, no timestamps. The JSON
schema is always {inputs, reduced_params, results, checks, version};
CSV carries the results table with a header row. CALOGERO_THREADS caps
the worker pool of `verify` (everything else is sequential).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

from . import __version__
from .acceptance import _SUITE, _XS, run_acceptance
from .errors import ConvergenceError, DomainError
from .factorization import RepresentationParams, apply_a, factorization_residual, make_phi
from .nonexistence import count_zeros
from .params import Couplings, RegionClass, classify, reduce
from .spectral import extension_for, set_gamma_perturbation, spectrum
from .oracle import shoot_spectrum

__all__ = ["main"]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NO_REPRESENTATION = 3
EXIT_NUMERICAL = 4


# ---------------------------------------------------------------------------
# deterministic rendering


def _fmt(x: float) -> str:
    if not math.isfinite(x):
        raise ConvergenceError(f"non-finite value reached the output layer: {x!r}")
    return f"{x:.17g}"


def _render_json(obj, indent: int = 0) -> str:
    pad = "  " * indent
    pad_in = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad_in}{json.dumps(k)}: {_render_json(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{pad_in}{_render_json(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt(obj)
    if obj is None:
        return "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"unrenderable type {type(obj)!r}")


def _render_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(
            [
                ("true" if v else "false") if isinstance(v, bool)
                else _fmt(v) if isinstance(v, float)
                else v
                for v in row
            ]
        )
    return buf.getvalue()


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _report(inputs: dict, reduced, results, checks: list) -> dict:
    return {
        "inputs": inputs,
        "reduced_params": reduced,
        "results": results,
        "checks": checks,
        "version": __version__,
    }


def _reduced_dict(rp) -> dict:
    return {"kappa": rp.kappa, "upsilon": rp.upsilon, "w0": rp.w0, "u0": rp.u0}


# ---------------------------------------------------------------------------
# guards


def _region_guard(g1: float, g2: float) -> None:
    """Exit 3 with the taxonomy message when no representation exists."""
    region = classify(g1, g2)
    reasons = {
        RegionClass.NoRepresentation_FallToCenter: "g1 < -1/4",
        RegionClass.NoRepresentation_FallToInfinity: "g2 < 0",
        RegionClass.CalogeroOnly: "g2 = 0 (no confining term)",
    }
    if region in reasons:
        print(
            f"no generalized oscillator representation: {reasons[region]}",
            file=sys.stderr,
        )
        raise SystemExit(EXIT_NO_REPRESENTATION)


def _pick_extension(rp, args, parser) -> tuple:
    """(Extension, label string). Extension flags are mutually exclusive
    by parser construction; here only region compatibility is checked."""
    if args.unique:
        if rp.kappa < 1.0:
            parser.error("--unique needs kappa >= 1; this coupling has a family, pass --nu or --friedrichs")
        ext = extension_for(rp, nu=None)
    elif args.friedrichs:
        ext = extension_for(rp, nu=None, friedrichs=True)
    elif args.nu is not None:
        ext = extension_for(rp, nu=args.nu)
    elif rp.kappa >= 1.0:
        ext = extension_for(rp, nu=None)
    else:
        parser.error("kappa < 1: the extension is not unique, pass --nu RADIANS or --friedrichs")
    return ext, ext.label.value


def _threads_from_env() -> int:
    raw = os.environ.get("CALOGERO_THREADS")
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n < 1:
        print(f"CALOGERO_THREADS must be a positive integer, got {raw!r}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)
    return n


# ---------------------------------------------------------------------------
# subcommands


def _cmd_spectrum(args, parser) -> int:
    _region_guard(args.g1, args.g2)
    rp = reduce(args.g1, args.g2)
    ext, label = _pick_extension(rp, args, parser)
    result = spectrum(rp, ext, args.n)
    ups2 = rp.energy_scale()

    results = {
        "method": result.method,
        "energies": list(result.energies),
        "scaled_energies": [e / ups2 for e in result.energies],
        "residuals": list(result.residuals),
        "oracle": None,
    }
    checks: list = []
    oracle_energies = None
    if args.oracle == "on":
        oracle_energies = list(shoot_spectrum(rp, ext, args.n).energies)
        gap = max(
            abs(o - f) / abs(f) for o, f in zip(oracle_energies, result.energies)
        )
        results["oracle"] = {"energies": oracle_energies, "max_rel_gap": gap}
        checks.append(
            {"name": "oracle-agreement", "passed": gap <= 1e-3, "value": gap, "threshold": 1e-3}
        )

    inputs = {
        "command": "spectrum",
        "g1": args.g1,
        "g2": args.g2,
        "extension": label,
        "nu": ext.nu,
        "n": args.n,
        "oracle": args.oracle,
    }
    if args.format == "json":
        _emit(_render_json(_report(inputs, _reduced_dict(rp), results, checks)), args.out)
    else:
        header = ["n", "energy", "scaled_energy", "residual"]
        rows = [
            [i, e, e / ups2, r]
            for i, (e, r) in enumerate(zip(result.energies, result.residuals))
        ]
        if oracle_energies is not None:
            header.append("oracle_energy")
            for row, oe in zip(rows, oracle_energies):
                row.append(oe)
        _emit(_render_csv(header, rows), args.out)
    if any(not c["passed"] for c in checks):
        print("oracle disagrees with the spectral equations beyond 1e-3", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


def _cmd_sweep(args, parser) -> int:
    _region_guard(args.g1, args.g2)
    rp = reduce(args.g1, args.g2)
    if rp.kappa >= 1.0:
        parser.error(f"sweep needs a one-parameter family (kappa < 1), got kappa = {rp.kappa:.6g}")
    lo, hi, count = args.sweep
    count = int(count)
    if count < 2 or not (lo < hi):
        parser.error("--sweep wants LO < HI and COUNT >= 2")
    if abs(lo) > 0.5 * math.pi + 1e-12 or abs(hi) > 0.5 * math.pi + 1e-12:
        parser.error("sweep endpoints must lie in [-pi/2, pi/2]")

    nus = [lo + (hi - lo) * i / (count - 1) for i in range(count)]
    table = []
    interior_e0 = []
    for nu in nus:
        ext = extension_for(rp, nu=nu)
        energies = list(spectrum(rp, ext, args.n).energies)
        table.append((nu, energies))
        if not ext.is_ladder:
            interior_e0.append(energies[0])

    # the flow statement lives on the open interval; rows snapped to the
    # Friedrichs endpoint (nu = -pi/2 is the same extension as +pi/2)
    # carry the closed-form value and sit outside the monotone family
    diffs = [b - a for a, b in zip(interior_e0, interior_e0[1:])]
    if not diffs:
        direction = "single-point"
    elif all(d > 0.0 for d in diffs):
        direction = "increasing"
    elif all(d < 0.0 for d in diffs):
        direction = "decreasing"
    else:
        direction = "not-monotone"
    expected = "decreasing" if rp.kappa == 0.0 else "increasing"
    if direction == "single-point":
        expected = "single-point"
    checks = [
        {
            "name": "e0-monotone",
            "passed": direction == expected,
            "value": direction,
            "threshold": expected,
        }
    ]

    inputs = {
        "command": "sweep",
        "g1": args.g1,
        "g2": args.g2,
        "nu_lo": lo,
        "nu_hi": hi,
        "count": count,
        "n": args.n,
    }
    if args.format == "json":
        results = {
            "rows": [{"nu": nu, "energies": es} for nu, es in table],
            "e0_direction": direction,
        }
        _emit(_render_json(_report(inputs, _reduced_dict(rp), results, checks)), args.out)
    else:
        header = ["nu"] + [f"E{i}" for i in range(args.n)]
        _emit(_render_csv(header, [[nu] + es for nu, es in table]), args.out)
    if not checks[0]["passed"]:
        print(f"ground-state flow is {direction}, expected {expected}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


def _cmd_factorize_check(args, parser) -> int:
    _region_guard(args.g1, args.g2)
    rp = reduce(args.g1, args.g2)
    rep = RepresentationParams(args.mu, args.w, rp)
    phi = make_phi(rep)

    worst = (0.0, 0.0)  # (relative residual, x)
    for f, fp, fpp in _SUITE:
        for x in _XS:
            resid = factorization_residual(rep, (f, fp, fpp), x, h_shift=args.h_shift)
            rhs = -fpp(x) + (args.g1 / (x * x) + args.g2 * x * x + rep.u) * f(x)
            rel = abs(resid) / max(1.0, abs(rhs))
            if rel > worst[0]:
                worst = (rel, x)
    checks = [
        {
            "name": "factorization-residual",
            "passed": worst[0] <= 1e-6,
            "value": worst[0],
            "threshold": 1e-6,
            "at_x": worst[1],
        }
    ]

    kernel_max = None
    if rep.at_floor:
        kernel_max = max(abs(apply_a(rep, phi, x)) for x in (0.4, 1.0, 1.7))
        checks.append(
            {
                "name": "kernel-nontrivial",
                "passed": kernel_max <= 1e-10,
                "value": kernel_max,
                "threshold": 1e-10,
            }
        )

    grid = [0.05 + (6.0 / rp.upsilon - 0.05) * i / 59.0 for i in range(60)]
    min_phi = min(phi.value_at(x) for x in grid)
    checks.append(
        {"name": "phi-positive", "passed": min_phi > 0.0, "value": min_phi, "threshold": 0.0}
    )

    inputs = {
        "command": "factorize-check",
        "g1": args.g1,
        "g2": args.g2,
        "mu": args.mu,
        "w": args.w,
    }
    results = {
        "u": rep.u,
        "at_floor": rep.at_floor,
        "max_relative_residual": worst[0],
        "worst_x": worst[1],
        "kernel_max": kernel_max,
        "min_phi_on_grid": min_phi,
    }
    if args.format == "json":
        _emit(_render_json(_report(inputs, _reduced_dict(rp), results, checks)), args.out)
    else:
        rows = [[c["name"], c["value"], c["threshold"], c["passed"]] for c in checks]
        _emit(_render_csv(["check", "value", "threshold", "passed"], rows), args.out)
    for c in checks:
        if not c["passed"]:
            where = f" at x = {_fmt(c['at_x'])}" if "at_x" in c else ""
            print(f"check {c['name']} failed{where}", file=sys.stderr)
            return EXIT_NUMERICAL
    return EXIT_OK


def _cmd_nonexistence(args, parser) -> int:
    g1, g2 = args.g1, args.g2
    in_cone = g1 >= -0.25 and g2 >= 0.0
    if in_cone and not args.force:
        print(
            "existence region (g1 >= -1/4, g2 >= 0): a positive solution exists, "
            "nothing to demonstrate; pass --force to count zeros anyway",
            file=sys.stderr,
        )
        return EXIT_USAGE

    if args.interval is not None:
        interval = (args.interval[0], args.interval[1])
    elif g1 < -0.25:
        interval = (1e-8, 1e-2)
    elif g2 < 0.0:
        interval = (10.0, 20.0)
    else:
        interval = (1e-4, 5.0)

    report = count_zeros(Couplings(g1, g2), args.u, interval)
    gap = abs(report.observed_zeros - report.predicted_zeros)
    tol = 1.0 + 0.1 * report.predicted_zeros
    checks = [
        {
            "name": "zero-count-within-tolerance",
            "passed": gap <= tol,
            "value": gap,
            "threshold": tol,
        }
    ]
    inputs = {
        "command": "nonexistence",
        "g1": g1,
        "g2": g2,
        "u": args.u,
        "x_lo": interval[0],
        "x_hi": interval[1],
        "force": bool(args.force),
    }
    results = {
        "mode": report.mode,
        "observed_zeros": report.observed_zeros,
        "predicted_zeros": report.predicted_zeros,
        "sigma_or_omega": report.sigma_or_omega,
    }
    if args.format == "json":
        _emit(_render_json(_report(inputs, None, results, checks)), args.out)
    else:
        _emit(
            _render_csv(
                ["x_lo", "x_hi", "mode", "observed", "predicted", "sigma_or_omega", "u"],
                [[interval[0], interval[1], report.mode, report.observed_zeros,
                  report.predicted_zeros, report.sigma_or_omega, args.u]],
            ),
            args.out,
        )
    if not checks[0]["passed"]:
        print(
            f"observed {report.observed_zeros} zeros vs predicted "
            f"{report.predicted_zeros:.2f} (allowed slack {tol:.2f})",
            file=sys.stderr,
        )
        return EXIT_NUMERICAL
    return EXIT_OK


def _cmd_verify(args, parser) -> int:
    threads = _threads_from_env()
    if args.inject_gamma_bug:
        set_gamma_perturbation(0.01)
    try:
        rows = run_acceptance(quick=args.quick, threads=threads)
    finally:
        if args.inject_gamma_bug:
            set_gamma_perturbation(0.0)

    inputs = {
        "command": "verify",
        "quick": bool(args.quick),
        "inject_gamma_bug": bool(args.inject_gamma_bug),
    }
    n_failed = sum(1 for r in rows if not r.passed)
    results = {
        "rows": [
            {
                "name": r.name,
                "passed": r.passed,
                "value": r.value,
                "threshold": r.threshold,
                "detail": r.detail,
            }
            for r in rows
        ]
    }
    checks = [
        {"name": "all-rows-pass", "passed": n_failed == 0, "value": n_failed, "threshold": 0}
    ]
    if args.format == "json":
        _emit(_render_json(_report(inputs, None, results, checks)), args.out)
    else:
        table = [
            ["PASS" if r.passed else "FAIL", r.name, r.value, r.threshold, r.detail]
            for r in rows
        ]
        _emit(_render_csv(["status", "name", "value", "threshold", "detail"], table), args.out)
    if n_failed:
        first = next(r for r in rows if not r.passed)
        print(f"first failing row: {first.name} ({first.value:.3e} > {first.threshold:.0e})", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _add_io_flags(sp) -> None:
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--out", metavar="PATH", default=None, help="write to a file instead of stdout")


def _add_extension_flags(sp) -> None:
    group = sp.add_mutually_exclusive_group()
    group.add_argument("--nu", type=float, default=None, help="extension parameter, radians in [-pi/2, pi/2]")
    group.add_argument("--unique", action="store_true", help="the single extension of kappa >= 1")
    group.add_argument("--friedrichs", action="store_true", help="alias for nu = +-pi/2")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="calogero",
        description="Spectra and factorizations of -d^2/dx^2 + g1/x^2 + g2 x^2 on the half-line.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="discrete spectrum of one self-adjoint extension")
    sp.add_argument("--g1", type=float, required=True)
    sp.add_argument("--g2", type=float, required=True)
    _add_extension_flags(sp)
    sp.add_argument("--n", type=int, default=5, help="number of levels (default 5)")
    sp.add_argument("--oracle", choices=("on", "off"), default="off",
                    help="cross-check against the shooting solver")
    _add_io_flags(sp)
    sp.set_defaults(func=_cmd_spectrum)

    sw = sub.add_parser("sweep", help="ground-state flow E_n(nu) over an extension range")
    sw.add_argument("--g1", type=float, required=True)
    sw.add_argument("--g2", type=float, required=True)
    sw.add_argument("--sweep", type=float, nargs=3, metavar=("LO", "HI", "COUNT"), required=True)
    sw.add_argument("--n", type=int, default=1, help="levels per nu (default 1)")
    _add_io_flags(sw)
    sw.set_defaults(func=_cmd_sweep)

    fc = sub.add_parser("factorize-check", help="verify b a f = (H - u) f for one representation")
    fc.add_argument("--g1", type=float, default=0.0)
    fc.add_argument("--g2", type=float, default=1.0)
    fc.add_argument("--mu", type=float, default=0.5 * math.pi)
    fc.add_argument("--w", type=float, default=0.0)
    fc.add_argument("--h-shift", type=float, default=0.0, help=argparse.SUPPRESS)
    _add_io_flags(fc)
    fc.set_defaults(func=_cmd_factorize_check)

    ne = sub.add_parser("nonexistence", help="count oscillations where no representation exists")
    ne.add_argument("--g1", type=float, required=True)
    ne.add_argument("--g2", type=float, required=True)
    ne.add_argument("--u", type=float, default=0.0, help="energy shift in the ODE (default 0)")
    ne.add_argument("--interval", type=float, nargs=2, metavar=("LO", "HI"), default=None)
    ne.add_argument("--force", action="store_true", help="run inside the existence region")
    _add_io_flags(ne)
    ne.set_defaults(func=_cmd_nonexistence)

    vf = sub.add_parser("verify", help="run the cross-validation table")
    vf.add_argument("--quick", action="store_true", help="fast subset (a few seconds)")
    vf.add_argument("--inject-gamma-bug", action="store_true", help=argparse.SUPPRESS)
    _add_io_flags(vf)
    vf.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except DomainError as exc:
        print(f"invalid request: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    raise SystemExit(main())
