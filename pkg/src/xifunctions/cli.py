"""Command-line interface: ``xifunctions <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or input-schema error,
3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

import numpy as np

from .algebra import AlgebraKind, Basis, change_basis, root_data
from .domains import Family, Region, domain_membership, grid_points
from .orbitfn import xi, xi_array
from .products import decompose, normalize, verify_decomposition
from .tables import format_report, regenerate
from .transform import (
    CoeffVector,
    IncompleteVectorError,
    MismatchError,
    SampleVector,
    SchemaError,
    family_triangles,
    forward_discrete,
    inverse_discrete,
    vector_from_json,
    vector_to_json,
)
from .verify import SUITES, VerifyConfig, run

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _weight(text: str):
    try:
        a, b = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"weight must look like 'a,b' with integers, got {text!r}") from None
    return (a, b)


def _algebra(text: str):
    try:
        return AlgebraKind.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _family(text: str):
    try:
        return Family.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


# sample -------------------------------------------------------------------------


def _bounding_box(kind, family):
    pts = [p for tri in family_triangles(kind, family) for p in tri]
    xs, ys = [p[0] for p in pts], [p[1] for p in pts]
    return (min(xs), max(xs)), (min(ys), max(ys))


def _sample_rows(args) -> List[tuple]:
    kind, family, lam = args.algebra, args.family, args.weight
    if args.M is not None:
        rows = []
        for p in grid_points(kind, family, args.M):
            x = p.alpha_vee
            z = xi(kind, family, lam, x)
            rows.append((float(x[0]), float(x[1]), z.real, z.imag, 1))
        return rows
    if args.resolution < 2:
        raise UsageError("--resolution must be at least 2")
    (x0, x1), (y0, y1) = _bounding_box(kind, family)
    n = args.resolution
    xs = [x0 + (x1 - x0) * Fraction(i, n - 1) for i in range(n)]
    ys = [y0 + (y1 - y0) * Fraction(j, n - 1) for j in range(n)]
    rows = []
    for y in ys:
        for x in xs:
            z = complex(xi_array(kind, family, lam, float(x), float(y)))
            inside = domain_membership((x, y), kind, family) is not Region.OUTSIDE
            rows.append((float(x), float(y), z.real, z.imag, int(inside)))
    return rows


def cmd_sample(args) -> int:
    header = f"# algebra={args.algebra.value} family={args.family.value} weight={args.weight[0]},{args.weight[1]}"
    header += f" M={args.M}" if args.M is not None else f" resolution={args.resolution}"
    header += " coordinates=alpha_vee\n"
    if args.format == "json" and args.M is not None:
        vec = SampleVector.from_function(args.algebra, args.family, args.M, lambda x: xi(args.algebra, args.family, args.weight, x))
        _emit(json.dumps(vector_to_json(vec), indent=1) + "\n", args.out)
        return EXIT_OK
    rows = _sample_rows(args)
    if args.format == "json":
        doc = {
            "algebra": args.algebra.value,
            "family": args.family.value,
            "weight": list(args.weight),
            "resolution": args.resolution,
            "coordinates": "alpha_vee",
            "rows": [dict(zip(("x", "y", "re", "im", "mask"), r)) for r in rows],
        }
        _emit(json.dumps(doc, indent=1) + "\n", args.out)
        return EXIT_OK
    buf = io.StringIO()
    buf.write(header)
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "y", "re", "im", "mask"])
    for x, y, re, im, mask in rows:
        writer.writerow([repr(x), repr(y), repr(re), repr(im), mask])
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


# tables -------------------------------------------------------------------------


def cmd_tables(args) -> int:
    kinds = [args.algebra] if args.algebra else list(AlgebraKind)
    chunks, ok, doc = [], True, []
    for kind in kinds:
        rows = regenerate(kind, [args.M])
        ok &= all(r.passed for r in rows)
        chunks.append(format_report(kind, args.M, rows))
        doc.append(
            {
                "algebra": kind.value,
                "M": args.M,
                "rows": [
                    {
                        "table": r.table,
                        "pattern": r.pattern,
                        "computed": {k: sorted(set(v)) for k, v in r.computed.items()},
                        "reference": r.expected,
                        "instances": len(r.instances),
                        "status": "PASS" if r.passed else "FAIL",
                    }
                    for r in rows
                ],
            }
        )
    text = json.dumps(doc, indent=1) + "\n" if args.format == "json" else "\n".join(chunks)
    _emit(text, args.out)
    return EXIT_OK if ok else EXIT_FAIL


# transform ----------------------------------------------------------------------


def cmd_transform(args) -> int:
    expect = "samples" if args.direction == "forward" else "coefficients"
    doc = json.loads(Path(args.input).read_text())
    vec = vector_from_json(
        doc,
        expect,
        algebra=args.algebra,
        family=args.family,
        M=args.M,
    )
    step = forward_discrete if args.direction == "forward" else inverse_discrete
    result = step(vec)
    if args.roundtrip:
        back = (inverse_discrete if args.direction == "forward" else forward_discrete)(result)
        err = float(np.max(np.abs(back.as_array() - vec.as_array())))
        print(f"roundtrip max error {err:.3e} (tolerance {args.tol_identity:.1e})")
        if args.out:
            Path(args.out).write_text(json.dumps(vector_to_json(back), indent=1) + "\n")
        return EXIT_OK if err <= args.tol_identity else EXIT_FAIL
    _emit(json.dumps(vector_to_json(result), indent=1) + "\n", args.out)
    return EXIT_OK


# verify -------------------------------------------------------------------------


def cmd_verify(args) -> int:
    kinds = [args.algebra] if args.algebra else list(AlgebraKind)
    suites = []
    for item in args.suite or []:
        suites += [s.strip() for s in item.split(",") if s.strip()]
    suites = suites or list(SUITES)
    unknown = [s for s in suites if s not in SUITES]
    if unknown:
        raise UsageError(f"unknown suite(s) {', '.join(unknown)}; choose from {', '.join(SUITES)}")
    cfg = VerifyConfig(seed=args.seed, max_M=args.M or 8, tol_identity=args.tol_identity, tol_gram=args.tol_gram)
    results = run(kinds, suites, cfg)
    lines = [f"# seed={cfg.seed} M<={cfg.max_M} tol-identity={cfg.tol_identity:g} tol-gram={cfg.tol_gram:g}"]
    for r in results:
        lines += r.lines()
    ok = all(r.passed for r in results)
    lines.append("OVERALL " + ("PASS" if ok else "FAIL"))
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if ok else EXIT_FAIL


# decompose ----------------------------------------------------------------------


def cmd_decompose(args) -> int:
    right = args.family2 or args.family
    lam2 = args.weight2 or args.weight
    try:
        d = decompose(args.family, right, args.weight, lam2, args.algebra)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.normalize:
        d = normalize(d)
    err = verify_decomposition(d, args.family, right, args.weight, lam2, args.algebra, trials=100, rng=np.random.default_rng(args.seed))
    lhs = f"Xi^{args.family.value}_({args.weight[0]},{args.weight[1]}) * Xi^{right.value}_({lam2[0]},{lam2[1]})"
    if args.format == "json":
        doc = {"left": {"family": args.family.value, "weight": list(args.weight)}, "right": {"family": right.value, "weight": list(lam2)}}
        doc.update(d.to_json())
        doc["max_error"] = err
        text = json.dumps(doc, indent=1) + "\n"
    else:
        text = f"{lhs} = {d}\n# algebra={args.algebra.value} numeric check max error {err:.3e}\n"
    _emit(text, args.out)
    return EXIT_OK if err <= args.tol_identity else EXIT_FAIL


# parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="xifunctions", description="Xi-functions of C2 and G2")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, algebra_required=True, family=True):
        p.add_argument("--algebra", type=_algebra, required=algebra_required, help="c2 or g2")
        if family:
            p.add_argument("--family", type=_family, required=True, help="e+, e-, s+, s-, l+ or l-")
        p.add_argument("--out", help="output path (default: stdout)")

    p = sub.add_parser("sample", help="sample one function for plotting")
    common(p)
    p.add_argument("--weight", type=_weight, required=True, help="a,b in the omega basis (use --weight=-1,2 for negatives)")
    p.add_argument("--resolution", type=int, default=64, help="points per axis of the bounding box")
    p.add_argument("--M", type=_positive, help="sample on the grid F_M instead of the bounding box")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("tables", help="regenerate the stabilizer and orbit tables")
    common(p, algebra_required=False, family=False)
    p.add_argument("--M", type=_positive, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("transform", help="discrete forward or inverse transform of a JSON vector")
    p.add_argument("input", help="JSON sample or coefficient vector")
    p.add_argument("--algebra", type=_algebra, help="must match the file when given")
    p.add_argument("--family", type=_family, help="must match the file when given")
    p.add_argument("--M", type=_positive, help="must match the file when given")
    p.add_argument("--direction", choices=("forward", "inverse"), default="forward")
    p.add_argument("--roundtrip", action="store_true", help="apply the transform and its inverse, report the error")
    p.add_argument("--tol-identity", type=float, default=1e-10)
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("verify", help="run the property suites")
    common(p, algebra_required=False, family=False)
    p.add_argument("--suite", action="append", help=f"one or more of {', '.join(SUITES)} (comma separated or repeated)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--M", type=_positive, help="largest grid level checked (default 8)")
    p.add_argument("--tol-identity", type=float, default=1e-10)
    p.add_argument("--tol-gram", type=float, default=1e-8)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decompose", help="decompose a product of two functions of one kernel")
    common(p)
    p.add_argument("--weight", type=_weight, required=True)
    p.add_argument("--family2", type=_family, help="family of the second factor (default: --family)")
    p.add_argument("--weight2", type=_weight, help="weight of the second factor (default: --weight)")
    p.add_argument("--normalize", action="store_true", help="fold terms into the target family's weight cone")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol-identity", type=float, default=1e-10)
    p.set_defaults(func=cmd_decompose)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IncompleteVectorError as exc:
        print(f"error: incomplete input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MismatchError as exc:
        print(f"error: input does not match the requested configuration: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SchemaError as exc:
        print(f"error: schema violation: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except json.JSONDecodeError as exc:
        print(f"error: {args.input} is not valid JSON: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        where = getattr(exc, "filename", None) or ""
        print(f"error: I/O failure {where}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
