"""``np-config`` command-line front end.

Exit codes: 0 success, 2 usage or invalid input (bad flags, unreadable files,
non-convex domains, degenerate matrices), 3 numerical failure (no convergence,
overflow), 4 bound violation (``verify`` only).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

import numpy as np

from . import aconfig, bounds, mindisk, npkernel, numrange, threemeasures
from .domain import build
from .errors import NPConfigError, UnknownSuite
from .jsonio import csv_text, dumps
from .linalg import matrix_from_json

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_VIOLATION = 0, 2, 3, 4

SUITES = ("ellipse-table", "bound-sweep", "polytope-census")
ELLIPSE_TABLE_A = (1.0, 1.5, 2.0, 3.0, 5.0, 10.0, 20.0)
ELLIPSE_K_ONLY_A = (100.0, 1e3, 1e6)


class UsageError(Exception):
    pass


# ------------------------------------------------------------------ parsing


def _positive_int(s: str) -> int:
    v = int(s)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _positive_float(s: str) -> float:
    v = float(s)
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError("must be a positive number")
    return v


def _complex_list(s: str) -> list[complex]:
    try:
        return [complex(tok.strip().replace(" ", "")) for tok in s.split(",") if tok.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad complex list: {exc}") from None


def _load_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _domain(path: str):
    return build(_load_json(path))


def _parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--out", help="write the result here instead of stdout")
    shared.add_argument("--format", choices=("json", "csv"), default="json")
    shared.add_argument("--seed", type=int, default=0)
    shared.add_argument("--samples", type=_positive_int, default=None,
                        help="sampling resolution (meaning depends on the command)")
    shared.add_argument("--quiet", action="store_true", help="no diagnostics on stderr")

    p = argparse.ArgumentParser(prog="np-config", description="Neumann-Poincare kernels and configuration constants.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("kernel", parents=[shared], help="kernel measure at a boundary point")
    s.add_argument("--domain", required=True)
    s.add_argument("--zeta-index", type=int, required=True,
                   help="node index, or n_nodes + k for corner k")

    s = sub.add_parser("cconst", parents=[shared], help="configuration constant")
    s.add_argument("--domain", required=True)

    s = sub.add_parser("curvature", parents=[shared], help="curvature upper bound")
    s.add_argument("--domain", required=True)

    s = sub.add_parser("ellipse", parents=[shared], help="ellipse closed forms")
    s.add_argument("--a", type=_positive_float, required=True)
    s.add_argument("--b", type=_positive_float, required=True)

    s = sub.add_parser("aconst", parents=[shared], help="analytic configuration constant, lower bound")
    s.add_argument("--domain", required=True)
    s.add_argument("--degree", type=_positive_int, default=8)
    s.add_argument("--restarts", type=_positive_int, default=8)
    s.add_argument("--iters", type=_positive_int, default=2000)

    s = sub.add_parser("numrange", parents=[shared], help="numerical range of a matrix")
    s.add_argument("--matrix", required=True)
    s.add_argument("--angles", type=_positive_int, default=256)

    s = sub.add_parser("verify", parents=[shared], help="check ||p(T)|| against k ||p||_W")
    s.add_argument("--matrix", required=True)
    s.add_argument("--poly", type=_complex_list, required=True, help='coefficients "c0,c1,..."')
    s.add_argument("--angles", type=_positive_int, default=128)

    s = sub.add_parser("polytope", parents=[shared], help="extreme-point census of C_n")
    s.add_argument("--n", type=_positive_int, default=3)

    s = sub.add_parser("check-3m", parents=[shared], help="random finite measure sets")
    s.add_argument("--k", type=_positive_int, default=3)
    s.add_argument("--m", type=_positive_int, default=20)
    s.add_argument("--trials", type=_positive_int, default=1000)

    s = sub.add_parser("mindisk", parents=[shared], help="smallest enclosing disk")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--points", type=_complex_list, help='e.g. "1,-1,0.5j"')
    g.add_argument("--points-file", help="JSON list of [x, y] pairs")

    s = sub.add_parser("suite", parents=[shared], help="batch experiments (CSV)")
    s.add_argument("name")
    s.add_argument("--trials", type=_positive_int, default=500)
    return p


# ----------------------------------------------------------------- commands


def _cmd_kernel(a):
    d = _domain(a.domain)
    n = d.n_nodes
    k = a.zeta_index
    if 0 <= k < n:
        zeta = d.node_point(k)
    elif n <= k < n + len(d.corners):
        zeta = d.corner_point(k - n)
    else:
        raise UsageError(f"--zeta-index must lie in [0, {n + len(d.corners)})")
    m = npkernel.measure(d, zeta)
    result = {
        "base": zeta.z,
        "atom_mass": m.atom_mass,
        "total_mass": m.total_mass,
        "nodes": d.nodes,
        "density": m.density,
        "weights": m.weights,
    }
    table = (["index", "x", "y", "density", "weight"],
             [[i, z.real, z.imag, r, w] for i, (z, r, w) in enumerate(zip(d.nodes, m.density, m.weights))])
    return result, table, EXIT_OK


def _cmd_cconst(a):
    d = _domain(a.domain)
    r = npkernel.config_constant(d, a.samples or 64)
    result = {"c": r.value, "witness": [r.witness[0].z, r.witness[1].z],
              "samples": r.sample_count, "base_points": r.base_count}
    return result, None, EXIT_OK


def _cmd_curvature(a):
    d = _domain(a.domain)
    r = bounds.curvature_bound(d, a.samples or 64)
    result = {"bound": r.bound, "mass": r.mass, "samples": r.sample_count,
              "kind": "upper-bound estimate", "r_omega": r.r_omega}
    table = (["index", "x", "y", "r_omega"],
             [[i, z.real, z.imag, v] for i, (z, v) in enumerate(zip(d.nodes, r.r_omega))])
    return result, table, EXIT_OK


def _cmd_ellipse(a):
    result = {"c": bounds.ellipse_config_constant(a.a, a.b), "K": bounds.spectral_constant_ellipse(a.a, a.b)}
    return result, None, EXIT_OK


def _cmd_aconst(a):
    d = _domain(a.domain)
    r = aconfig.a_lower_bound(d, a.degree, a.restarts, a.iters, a.seed, a.samples or 64)
    best = r["best"]
    result = {"value": r["value"], "coeffs": list(best.coeffs),
              "basis": {"center": best.center, "radius": best.radius, "frame": best.frame},
              "config": r["config"]}
    return result, None, EXIT_OK


def _cmd_numrange(a):
    t = matrix_from_json(_load_json(a.matrix))
    nr = numrange.numerical_range(t, a.angles)
    result = {"boundary_points": nr.boundary_points, "vertices": list(nr.vertices),
              "area": nr.area, "empty_interior": nr.empty_interior}
    table = (["k", "theta", "x", "y"],
             [[k, 2 * math.pi * k / a.angles, z.real, z.imag] for k, z in enumerate(nr.boundary_points)])
    return result, table, EXIT_OK


def _cmd_verify(a):
    t = matrix_from_json(_load_json(a.matrix))
    r = numrange.verify_bound(t, a.poly, angles=a.angles, samples=a.samples or 512)
    return r, None, EXIT_OK if r.pass_cp else EXIT_VIOLATION


def _cmd_polytope(a):
    census = threemeasures.polytope_census(a.n)
    table = (["n", "class", "x", "y", "orbit_size"],
             [[a.n, i, c["x"], c["y"], c["orbit_size"]] for i, c in enumerate(census["classes"])])
    return census, table, EXIT_OK


def _cmd_check3m(a):
    if a.k < 2:
        raise UsageError("--k must be at least 2")
    rng = np.random.default_rng(a.seed)
    ms = threemeasures.FiniteMeasureSet(rng.normal(size=(a.k, a.m)))
    r = threemeasures.verify_image_radius(ms, a.trials, a.seed)
    r.update(k=a.k, m=a.m, trials=a.trials, seed=a.seed)
    return r, None, EXIT_OK


def _cmd_mindisk(a):
    if a.points is not None:
        pts = a.points
    else:
        raw = _load_json(a.points_file)
        pts = [complex(float(x), float(y)) for x, y in raw]
    if not pts:
        raise UsageError("no points given")
    disk = mindisk.min_enclosing_disk(pts)
    result = {"center": disk.center, "radius": disk.radius}
    if len(set(pts)) >= 2:
        result["support"] = mindisk.support_set(pts)
    return result, None, EXIT_OK


def experiment_suite(name: str, seed: int = 0, trials: int = 500) -> tuple[list, list]:
    """Run a named batch experiment; returns ``(header, rows)``."""
    if name == "ellipse-table":
        header = ["a", "b", "c_closed", "c_numeric", "abs_delta", "K"]
        rows = []
        for av in ELLIPSE_TABLE_A:
            cc = bounds.ellipse_config_constant(av, 1.0)
            cn = npkernel.config_constant(build({"type": "ellipse", "a": av, "b": 1.0})).value
            rows.append([av, 1.0, cc, cn, abs(cn - cc), bounds.spectral_constant_ellipse(av, 1.0)])
        for av in ELLIPSE_K_ONLY_A:
            rows.append([av, 1.0, bounds.ellipse_config_constant(av, 1.0), None, None,
                         bounds.spectral_constant_ellipse(av, 1.0)])
        return header, rows
    if name == "bound-sweep":
        header = ["trial", "n", "degree", "lhs", "sup_norm", "c_of_W", "k_improved", "ratio",
                  "slack_improved", "slack_cp", "pass_improved", "pass_cp"]
        rng = np.random.default_rng(seed)
        rows = []
        for i in range(trials):
            n = int(rng.integers(2, 7))
            deg = int(rng.integers(1, 7))
            t = numrange.random_matrix(n, rng)
            p = numrange.random_poly(deg, rng)
            r = numrange.verify_bound(t, p, angles=64)
            rows.append([i, n, deg, r.lhs, r.sup_norm, r.c_of_W, r.k_improved, r.ratio,
                         r.slack_improved, r.slack_cp, r.pass_improved, r.pass_cp])
        return header, rows
    if name == "polytope-census":
        header = ["n", "vertex_count", "class", "x", "y", "orbit_size"]
        rows = []
        for n in (1, 2, 3):
            c = threemeasures.polytope_census(n)
            for i, cl in enumerate(c["classes"]):
                rows.append([n, c["vertex_count"], i, cl["x"], cl["y"], cl["orbit_size"]])
        return header, rows
    raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")


def _cmd_suite(a):
    header, rows = experiment_suite(a.name, a.seed, a.trials)
    code = EXIT_OK
    if a.name == "bound-sweep" and not all(r[-1] for r in rows):
        code = EXIT_VIOLATION
    return None, (header, rows), code


COMMANDS = {
    "kernel": _cmd_kernel,
    "cconst": _cmd_cconst,
    "curvature": _cmd_curvature,
    "ellipse": _cmd_ellipse,
    "aconst": _cmd_aconst,
    "numrange": _cmd_numrange,
    "verify": _cmd_verify,
    "polytope": _cmd_polytope,
    "check-3m": _cmd_check3m,
    "mindisk": _cmd_mindisk,
    "suite": _cmd_suite,
}


def _render(result, table, fmt: str, force_csv: bool) -> str:
    if fmt == "csv" or force_csv:
        if table is None:
            flat = [[k, v] for k, v in (result.items() if isinstance(result, dict) else vars(result).items())]
            return csv_text(["key", "value"], flat)
        return csv_text(*table)
    return dumps(result) + "\n"


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE

    def err(msg: str) -> None:
        if not args.quiet:
            print(f"np-config: {msg}", file=sys.stderr)

    try:
        result, table, code = COMMANDS[args.command](args)
        text = _render(result, table, args.format, force_csv=args.command == "suite")
    except UsageError as exc:
        err(str(exc))
        return EXIT_USAGE
    except UnknownSuite as exc:
        err(str(exc))
        return EXIT_USAGE
    except ArithmeticError as exc:
        err(f"{type(exc).__name__}: {exc}")
        return EXIT_NUMERIC
    except NPConfigError as exc:
        err(f"{type(exc).__name__}: {exc}")
        return EXIT_USAGE
    except (KeyError, TypeError, ValueError) as exc:
        err(f"invalid input: {exc}")
        return EXIT_USAGE
    if args.out:
        try:
            Path(args.out).write_text(text)
        except OSError as exc:
            err(f"cannot write {args.out}: {exc}")
            return EXIT_USAGE
    else:
        sys.stdout.write(text)
    if code == EXIT_VIOLATION:
        err("bound violated")
    return code


def main() -> None:
    try:
        code = run()
        sys.stdout.flush()
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head); not an error
        sys.stderr.close()
        code = EXIT_OK
    sys.exit(code)


if __name__ == "__main__":
    main()
