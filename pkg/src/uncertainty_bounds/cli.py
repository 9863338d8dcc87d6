"""Command-line front end.

Exit codes: 0 success, 1 a verification suite failed, 2 bad input,
3 internal invariant violated.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import bounds, instance_io, linalg, search, verify
from .errors import InvariantViolation, NoConvergence, ParseError, ValidationError

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3
CSV_COLUMNS = ["instance_id", "k", "d", "product", "w_id", "w_perm", "t22", "chain", "norm", "ratio"]


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else None
    if isinstance(obj, (complex, np.complexfloating)):
        return instance_io.encode_complex(obj)
    return obj


def dump_json(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True)


def _radius_options(args) -> linalg.RadiusOptions:
    return linalg.RadiusOptions(coarse_grid=args.grid, refine_tolerance=args.refine)


# --------------------------------------------------------------------------
# commands


def _report_row(inst, rep: bounds.BoundReport) -> dict:
    product = rep.deviation_product
    return {
        "instance_id": inst.instance_id,
        "k": rep.k,
        "d": rep.dim,
        "product": product,
        "w_id": rep.radius_exact_id,
        "w_perm": rep.radius_permuted,
        "t22": rep.bound_theorem22,
        "chain": rep.bound_robertson_chain,
        "norm": rep.norm_based,
        "ratio": rep.bound_theorem22 / product if product > search.DEGENERATE_PRODUCT else None,
    }


def _format_text(inst, rep: bounds.BoundReport) -> str:
    lines = [
        f"instance: {inst.instance_id}  k={rep.k}  d={rep.dim}  lifted={rep.lifted}",
        f"observables: {', '.join(rep.names)}",
        f"deviations: {', '.join(f'{v:.12g}' for v in rep.deviations)}",
        f"product of deviations     {rep.deviation_product:.12g}",
    ]
    if rep.radius_permuted is not None:
        lines.append(f"max radius over orderings {rep.radius_permuted:.12g}  order={list(rep.permutation)}")
    lines.append(f"radius (list order)       {rep.radius_exact_id:.12g}")
    if rep.radius_sweep_id is not None:
        lines.append(f"radius (sweep oracle)     {rep.radius_sweep_id:.12g}")
    lines += [
        f"norm of chain operator    {rep.norm_based:.12g}  ({rep.norm_branch})",
        f"correlation bound         {rep.bound_theorem22:.12g}",
        f"Robertson chain           {rep.bound_robertson_chain:.12g}",
    ]
    if rep.bound_schrodinger is not None:
        lines.append(f"Schroedinger              {rep.bound_schrodinger:.12g}")
        lines.append(f"Robertson                 {rep.bound_robertson:.12g}")
    f = rep.flags
    lines.append(
        f"equality: bound==product={f.bound_equals_product} tight={f.tight} "
        f"product==norm={f.product_equals_norm} norm==radius={f.norm_equals_radius}"
    )
    return "\n".join(lines)


def cmd_bounds(args) -> int:
    opts = _radius_options(args)
    rows = []
    for path in args.input:
        inst = instance_io.load(path)
        rep = bounds.bound_report(inst.observables, inst.state, permute=args.permute, opts=opts)
        rows.append((inst, rep))
    if args.format == "json":
        out = [dict(rep.to_dict(), instance_id=inst.instance_id) for inst, rep in rows]
        print(dump_json(out[0] if len(out) == 1 else out))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, CSV_COLUMNS, lineterminator="\n")
        w.writeheader()
        for inst, rep in rows:
            w.writerow({k: ("" if v is None else repr(v) if isinstance(v, float) else v)
                        for k, v in _report_row(inst, rep).items()})
        sys.stdout.write(buf.getvalue())
    else:
        print("\n\n".join(_format_text(inst, rep) for inst, rep in rows))
    return EXIT_OK


def _load_matrix(path) -> np.ndarray:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if isinstance(data, dict):
        if "matrix" not in data:
            raise ParseError(f"{path}: expected a 'matrix' field")
        data = data["matrix"]
    try:
        return instance_io.parse_matrix(data, "matrix")
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


def cmd_radius(args) -> int:
    m = _load_matrix(args.file)
    w = linalg.numerical_radius_sweep(m, _radius_options(args))
    print(f"{w:.15g}")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite == "pauli":
        result = search.pauli_suite(samples=args.samples, seed=args.seed)
    else:
        result = verify.property_suite(args.samples, args.seed, args.tolerance_scale)
    if args.format == "json":
        print(dump_json(result.to_dict()))
    else:
        for c in result.checks:
            print(c.line())
        print(f"{result.suite}: {'all checks passed' if result.passed else 'FAILED'}")
    return EXIT_OK if result.passed else EXIT_FAILED


def cmd_search(args) -> int:
    inst = instance_io.load(args.input, require_state=False)
    cfg = search.SearchConfig(samples=args.samples, seed=args.seed, refine_steps=args.refine, target=args.target)
    result = search.tightness_search(inst.observables, cfg)
    out = dict(result.to_dict(), instance_id=inst.instance_id)
    print(dump_json(out))
    return EXIT_OK


# --------------------------------------------------------------------------
# parser


def _add_radius_flags(p):
    p.add_argument("--grid", type=int, default=linalg.DEFAULT_OPTIONS.coarse_grid,
                   help="coarse angle grid size for the radius sweep (default %(default)s)")
    p.add_argument("--refine", type=float, default=linalg.DEFAULT_OPTIONS.refine_tolerance,
                   help="angle tolerance of the golden-section refinement (default %(default)s)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="uncertainty-bounds",
                                     description="Product-form uncertainty bounds for several observables.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="report every bound for one or more instance files")
    p.add_argument("input", nargs="+", help="instance JSON file(s)")
    p.add_argument("--permute", action="store_true", help="maximise the radius over observable orderings")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    _add_radius_flags(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("radius", help="numerical radius of a square matrix")
    p.add_argument("file", help="JSON matrix, either a nested list or {\"matrix\": ...}")
    _add_radius_flags(p)
    p.set_defaults(func=cmd_radius)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=("pauli", "properties"), default="pauli")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--tolerance-scale", type=float, default=1.0, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="random search for the tightest state")
    p.add_argument("input", help="instance JSON file (state is ignored)")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--refine", type=int, default=0, help="number of refinement steps")
    p.add_argument("--target", choices=search.TARGETS, default="theorem22")
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InvariantViolation, NoConvergence) as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
