"""Command-line front end: spectra, invariants, recovery studies, polygons.

Outputs are deterministic: identical configurations produce byte-identical
CSV/JSON/SVG.  Option precedence is flags > config file > built-in defaults;
the config file is a flat ``key = value`` text file whose keys are the long
option names (dashes or underscores).  The environment variable
``SEMITORIC_THREADS`` caps the worker count used for per-column eigensolves.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from contextlib import contextmanager

import numpy as np

from . import classical, inverse, polygon as poly, quantum, taylor
from .errors import SpinOscError
from .svg import SvgPlot


@contextmanager
def _open_out(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as stream:
            yield stream


def _coerce(text: str):
    low = text.strip()
    if low.lower() in ("true", "yes", "on"):
        return True
    if low.lower() in ("false", "no", "off"):
        return False
    for caster in (int, float):
        try:
            return caster(low)
        except ValueError:
            pass
    return low


def load_config(path: str) -> dict:
    """Parse a flat ``key = value`` config file ('#' starts a comment)."""
    values = {}
    with open(path, encoding="utf-8") as stream:
        for lineno, raw in enumerate(stream, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise SpinOscError(f"{path}:{lineno}: expected 'key = value'")
            key, value = line.split("=", 1)
            values[key.strip().replace("-", "_")] = _coerce(value)
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinosc",
        description="Coupled spin-oscillator: classical invariants, joint spectra, inverse recovery.",
    )
    parser.add_argument("--config", help="flat key=value config file (flags override it)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="joint spectrum of (J-hat, H-hat)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lambda-min", type=float, default=None, help="default: lowest J-hat eigenvalue")
    p.add_argument("--lambda-max", type=float, default=3.0)
    p.add_argument("--tol", type=float, default=1e-14)
    p.add_argument("--format", choices=("csv", "json", "svg"), default="csv")
    p.add_argument("--out", default="-")

    p = sub.add_parser("sigma", help="spectrum of H-hat on ker(J-hat - 1)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-14)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default="-")

    p = sub.add_parser("invariants", help="first-order singularity invariants a1, a2")
    p.add_argument("--tolerance", type=float, default=1e-10)
    p.add_argument("--out", default="-")

    p = sub.add_parser("recover", help="inverse recovery of B22 and a2 over n = 2^k + 1")
    p.add_argument("--k-min", type=int, default=1)
    p.add_argument("--k-max", type=int, default=9)
    p.add_argument("--use-true-b22", action="store_true")
    p.add_argument("--blind", action="store_true", help="suppress ground-truth error columns")
    p.add_argument("--tol", type=float, default=1e-14)
    p.add_argument("--format", choices=("csv", "svg"), default="csv")
    p.add_argument("--out", default="-")

    p = sub.add_parser("polygon", help="polygon invariant, lattice development, height")
    p.add_argument("--action", choices=("reference", "develop", "height"), default="reference")
    p.add_argument("--epsilon", type=int, choices=(-1, 1), default=-1)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--cut", type=float, default=1.0)
    p.add_argument("--lambda-min", type=float, default=None)
    p.add_argument("--lambda-max", type=float, default=3.0)
    p.add_argument("--tol", type=float, default=1e-14)
    p.add_argument("--out", default="-")

    p = sub.add_parser("classical-verify", help="check the classical-mechanics invariants")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=20250801)
    p.add_argument("--grid", type=int, default=100)
    p.add_argument("--duration", type=float, default=1.0)
    p.add_argument("--step", type=float, default=1e-3)
    p.add_argument("--out", default="-")

    return parser


def _lowest_lambda(params: quantum.QuantumParams) -> float:
    return float(quantum.j_eigenvalues(params, 1)[0])


def cmd_spectrum(args) -> int:
    params = quantum.QuantumParams(args.n)
    lo = args.lambda_min if args.lambda_min is not None else _lowest_lambda(params)
    js = quantum.joint_spectrum(params, lo, args.lambda_max, args.tol)
    with _open_out(args.out) as stream:
        if args.format == "csv":
            js.write_csv(stream)
        elif args.format == "json":
            json.dump(js.to_json_dict(), stream, indent=2)
            stream.write("\n")
        else:
            lams = [p[0] for p in js.points()]
            nus = [p[1] for p in js.points()]
            plot = SvgPlot(
                title=f"Joint spectrum, n = {args.n}",
                xlabel="lambda (J-hat eigenvalue)",
                ylabel="nu (H-hat eigenvalue)",
            )
            s_max = max(args.lambda_max + math.sqrt(args.lambda_max**2 + 3.0), 1.5)
            s = np.linspace(1.0, s_max, 256)
            upper = [classical.boundary_curve(v)[0] for v in s]
            lower = [classical.boundary_curve(v)[1] for v in s]
            plot.add_polyline([m.j for m in upper], [m.h for m in upper])
            plot.add_polyline([m.j for m in lower], [m.h for m in lower])
            plot.add_points(lams, nus)
            stream.write(plot.render())
    return 0


def cmd_sigma(args) -> int:
    values = quantum.sigma_n(quantum.QuantumParams(args.n), args.tol)
    with _open_out(args.out) as stream:
        if args.format == "csv":
            stream.write("nu\n")
            for nu in values:
                stream.write(f"{nu:.17g}\n")
        else:
            json.dump({"n": args.n, "nus": [float(v) for v in values]}, stream, indent=2)
            stream.write("\n")
    return 0


def cmd_invariants(args) -> int:
    result = taylor.compute_invariants(args.tolerance)
    with _open_out(args.out) as stream:
        json.dump(result.to_json_dict(), stream, indent=2)
        stream.write("\n")
    return 0


def cmd_recover(args) -> int:
    series = inverse.convergence_study(args.k_min, args.k_max, args.use_true_b22, args.tol)
    if args.format == "csv":
        with _open_out(args.out) as stream:
            series.write_csv(stream, blind=args.blind)
        return 0
    if args.out in (None, "-"):
        raise SpinOscError("svg output needs --out PREFIX (two files are written)")
    ks = [r.k for r in series.rows]
    b22_plot = SvgPlot(
        title="Recovered B22 (true value 2)", xlabel="k  (n = 2^k + 1)", ylabel="B22 estimate"
    )
    b22_plot.add_polyline(ks, [2.0] * len(ks), width=1.0, color="#999999")
    b22_plot.add_points(ks, [r.b22_simple for r in series.rows], color="#1f77b4")
    b22_plot.add_points(ks, [r.b22_accel for r in series.rows], color="#2ca02c")
    a2_plot = SvgPlot(
        title="Recovered a2 / ln 2 (true value 5)", xlabel="k  (n = 2^k + 1)", ylabel="a2 / ln 2"
    )
    a2_plot.add_polyline(ks, [5.0] * len(ks), width=1.0, color="#999999")
    a2_plot.add_points(ks, [r.a2_over_ln2 for r in series.rows], color="#2ca02c")
    for suffix, plot in (("_b22.svg", b22_plot), ("_a2.svg", a2_plot)):
        path = args.out + suffix
        with open(path, "w", encoding="utf-8", newline="\n") as stream:
            stream.write(plot.render())
        print(path)
    return 0


def cmd_polygon(args) -> int:
    with _open_out(args.out) as stream:
        if args.action == "reference":
            json.dump(poly.reference_polygon(args.epsilon, args.cut).to_json_dict(), stream, indent=2)
            stream.write("\n")
            return 0
        if args.n is None:
            raise SpinOscError(f"--n is required for action {args.action!r}")
        params = quantum.QuantumParams(args.n)
        lo = args.lambda_min if args.lambda_min is not None else _lowest_lambda(params)
        js = quantum.joint_spectrum(params, lo, args.lambda_max, args.tol)
        if args.action == "develop":
            poly.develop_spectrum(js, args.cut, args.epsilon).write_csv(stream)
        else:
            height = poly.height_estimate(js, params)
            json.dump({"n": args.n, "height": height, "classical_height": 1.0}, stream, indent=2)
            stream.write("\n")
    return 0


def cmd_classical_verify(args) -> int:
    rng = np.random.default_rng(args.seed)
    sphere = rng.normal(size=(args.samples, 3))
    sphere /= np.linalg.norm(sphere, axis=1)[:, None]
    plane = rng.uniform(-2.0, 2.0, size=(args.samples, 2))
    worst_bracket = 0.0
    for (x, y, z), (u, v) in zip(sphere, plane):
        p = classical.PhasePoint(x, y, z, u, v)
        worst_bracket = max(worst_bracket, abs(classical.poisson_bracket_jh(p)))

    worst_fiber = 0.0
    for zt in np.linspace(-1.0, 1.0, args.grid):
        for tt in np.linspace(0.0, 2.0 * math.pi, args.grid, endpoint=False):
            for sheet in (1, -1):
                f = classical.momentum_map(
                    classical.singular_fiber(classical.FiberParam(zt, tt, sheet))
                )
                worst_fiber = max(worst_fiber, math.hypot(f.j - 1.0, f.h))

    start = classical.PhasePoint.from_cylindrical(0.7, 0.2, 0.9, -0.3)
    f0 = classical.momentum_map(start)
    flow = classical.flow_h(start, args.duration, args.step)
    drift = max(
        max(abs(m.j - f0.j), abs(m.h - f0.h)) for m in flow.momentum_values()
    )

    checks = [
        ("poisson_bracket |{J,H}|", worst_bracket, 1e-10),
        ("fiber image |F - (1,0)|", worst_fiber, 1e-10),
        ("flow (J,H) drift", drift, 1e-8),
    ]
    status = 0
    with _open_out(args.out) as stream:
        for name, value, bound in checks:
            ok = value < bound
            status |= 0 if ok else 1
            stream.write(f"{'PASS' if ok else 'FAIL'} {name}: {value:.3e} (bound {bound:.1e})\n")
        if flow.truncated:
            status = 1
            stream.write("FAIL flow left the chart before the requested duration\n")
    return status


COMMANDS = {
    "spectrum": cmd_spectrum,
    "sigma": cmd_sigma,
    "invariants": cmd_invariants,
    "recover": cmd_recover,
    "polygon": cmd_polygon,
    "classical-verify": cmd_classical_verify,
}


def _apply_config(parser: argparse.ArgumentParser, defaults: dict):
    """Install config values as defaults, relaxing flags they satisfy.

    Subparsers parse into a fresh namespace, so the values must be installed
    on every subparser that knows the key, not only on the root parser.
    """
    stack = [parser]
    while stack:
        current = stack.pop()
        known = {a.dest for a in current._actions}
        current.set_defaults(**{k: v for k, v in defaults.items() if k in known})
        for action in current._actions:
            if isinstance(action, argparse._SubParsersAction):
                stack.extend(action.choices.values())
            elif action.dest in defaults and action.required:
                action.required = False


def main(argv=None) -> int:
    prescan = argparse.ArgumentParser(add_help=False)
    prescan.add_argument("--config")
    known, _ = prescan.parse_known_args(argv)
    parser = build_parser()
    try:
        if known.config:
            _apply_config(parser, load_config(known.config))
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except SpinOscError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
