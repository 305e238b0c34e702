"""Command line front end.

One structured result per invocation on stdout, diagnostics on
stderr.  ``--json`` renders every result as strict JSON; the default
``--text`` mode uses compact canonical forms (object literals for
objects, ``c,a,d,b`` for matrices, ``{degree:dim}`` maps for Ext
profiles) and the same JSON document for record-shaped reports.

Exit codes: 0 success, 1 domain error (an invariant rejected the
input), 2 parse error (the input never reached the mathematics).
"""

from __future__ import annotations

import argparse
import json
import sys

from .curve import (
    fm_transform,
    hom_ext_objects,
    parseval_check,
    wit_index,
)
from .lattice import DomainError, SurfaceClass, euler_surface
from .formats import (
    GEOMETRY_PRESETS,
    GeometryFileError,
    LiteralParseError,
    load_geometry,
    parse_atom,
    parse_matrix,
    parse_object,
    parse_surface_class,
    parse_vector,
    render_matrix,
    render_object,
    render_profile,
)
from .surface import (
    ModuliProblem,
    ModuliReport,
    classify_wit_surface,
    complete_matrix,
    elementary_modification,
    generate_example,
    moduli_correspondence,
)


def _compact_json(doc) -> str:
    return json.dumps(doc, separators=(",", ":"))


def _emit(args, text: str, doc) -> int:
    print(_compact_json(doc) if args.json else text)
    return 0


def _report_doc(report: ModuliReport) -> dict:
    return {
        "a": report.a,
        "b": report.b,
        "t": report.t,
        "dim": report.dim,
        "is_empty": report.is_empty,
        "iso_extends": report.iso_extends,
        "target_class": list(report.target_class),
        "jx": {
            "a": report.jx.a,
            "b": report.jx.b,
            "lambda_y": report.jx.lambda_y,
        },
        "pic0_dim_assumed_q": report.pic0_dim_assumed_q,
    }


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_find_ab(args) -> int:
    from .lattice import find_ab

    a, b = find_ab(args.r, args.d)
    doc = {"a": a, "b": b}
    return _emit(args, _compact_json(doc), doc)


def _cmd_curve_transform(args) -> int:
    m = parse_matrix(args.matrix)
    obj = parse_object(args.object)
    out = render_object(fm_transform(m, obj))
    return _emit(args, out, {"object": out})


def _cmd_curve_hom(args) -> int:
    profile = hom_ext_objects(parse_object(args.a), parse_object(args.b))
    entries = profile.as_dict()
    doc = {str(i): v for i, v in sorted(entries.items())}
    return _emit(args, render_profile(entries), doc)


def _cmd_curve_wit(args) -> int:
    m = parse_matrix(args.matrix)
    index = wit_index(m, parse_atom(args.atom))
    return _emit(args, str(index), {"wit": index})


def _cmd_curve_parseval(args) -> int:
    m = parse_matrix(args.matrix)
    ok = parseval_check(m, parse_object(args.a), parse_object(args.b))
    return _emit(args, "true" if ok else "false", {"parseval": ok})


def _cmd_moduli(args) -> int:
    g = load_geometry(args.geometry)
    cls = SurfaceClass(
        r=args.r, c1=parse_vector(args.c1, g.rank, "c1"), c2=args.c2
    )
    report = moduli_correspondence(ModuliProblem(geometry=g, cls=cls))
    doc = _report_doc(report)
    return _emit(args, _compact_json(doc), doc)


def _cmd_matrix_complete(args) -> int:
    m = complete_matrix(args.a, args.b, args.lam)
    doc = {"c": m.c, "a": m.a, "d": m.d, "b": m.b}
    return _emit(args, render_matrix(m), doc)


def _cmd_wit_surface(args) -> int:
    g = load_geometry(args.geometry)
    m = parse_matrix(args.matrix, lam=g.lambda_x)
    cls = parse_surface_class(args.cls, g.rank)
    flags = [f for f in (s.strip() for s in args.flags.split(",")) if f] if args.flags else []
    verdict = classify_wit_surface(m, g, cls, flags)
    doc = {"verdict": verdict.kind.value, "reason": verdict.reason}
    return _emit(args, _compact_json(doc), doc)


def _cmd_elemmod(args) -> int:
    g = load_geometry(args.geometry)
    cls = SurfaceClass(
        r=args.r, c1=parse_vector(args.c1, g.rank, "c1"), c2=args.c2
    )
    result = elementary_modification(ModuliProblem(geometry=g, cls=cls), args.n)
    twisted = result.twisted_problem.cls
    doc = {
        "r": twisted.r,
        "c1": list(twisted.c1),
        "c2": twisted.c2,
        "consistency": result.consistency,
    }
    return _emit(args, _compact_json(doc), doc)


def _cmd_example(args) -> int:
    witness = generate_example(args.a, args.b, args.lam, args.t, args.chiO)
    doc = {
        "r": witness.r,
        "d": witness.d,
        "c1_sq": witness.c1_sq,
        "c2": witness.c2,
    }
    return _emit(args, _compact_json(doc), doc)


def _cmd_euler(args) -> int:
    g = load_geometry(args.geometry)
    x = parse_surface_class(args.x, g.rank)
    y = parse_surface_class(args.y, g.rank)
    value = euler_surface(g, x, y)
    return _emit(args, str(value), {"euler": value})


# ---------------------------------------------------------------------------
# parser assembly
# ---------------------------------------------------------------------------


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    mode = p.add_mutually_exclusive_group()
    mode.add_argument(
        "--json", action="store_true", help="emit strict JSON"
    )
    mode.add_argument(
        "--text",
        dest="json",
        action="store_false",
        help="emit compact text forms (default)",
    )


def _add_geometry_flag(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--geometry",
        required=True,
        help=f"geometry TOML file, or a preset name ({', '.join(GEOMETRY_PRESETS)})",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ellfm",
        description="Exact arithmetic for fibrewise Fourier-Mukai transforms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("find-ab", help="solve b*r - a*d = 1 with 0 < a < r")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_find_ab)

    curve = sub.add_parser("curve", help="operations on curve objects")
    curve_sub = curve.add_subparsers(dest="curve_command", required=True)

    p = curve_sub.add_parser("transform", help="apply a transform to an object")
    p.add_argument("--matrix", required=True, help="row-major c,a,d,b")
    p.add_argument("--object", required=True, help="object literal")
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_curve_transform)

    p = curve_sub.add_parser("hom", help="graded Hom profile of two objects")
    p.add_argument("--a", required=True, help="source object literal")
    p.add_argument("--b", required=True, help="target object literal")
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_curve_hom)

    p = curve_sub.add_parser("wit", help="transform index (0 or 1) of one atom")
    p.add_argument("--matrix", required=True, help="row-major c,a,d,b")
    p.add_argument("--atom", required=True, help="single atom literal (r,d[,label])")
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_curve_wit)

    p = curve_sub.add_parser("parseval", help="check profile preservation on a pair")
    p.add_argument("--matrix", required=True, help="row-major c,a,d,b")
    p.add_argument("--a", required=True, help="first object literal")
    p.add_argument("--b", required=True, help="second object literal")
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_curve_parseval)

    p = sub.add_parser("moduli", help="run the moduli correspondence")
    _add_geometry_flag(p)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--c1", required=True, help="comma-separated c1 coordinates")
    p.add_argument("--c2", type=int, required=True)
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_moduli)

    p = sub.add_parser(
        "matrix-complete", help="extend (a, b) to a transform matrix"
    )
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=int, required=True)
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_matrix_complete)

    p = sub.add_parser("wit-surface", help="slope rules for the transform index")
    _add_geometry_flag(p)
    p.add_argument("--matrix", required=True, help="row-major c,a,d,b")
    p.add_argument("--cls", required=True, help="surface class r,c1...,c2")
    p.add_argument(
        "--flags",
        default="",
        help="comma-separated: torsion_free, generically_stable, torsion",
    )
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_wit_surface)

    p = sub.add_parser("elemmod", help="elementary modification numerology")
    _add_geometry_flag(p)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--c1", required=True, help="comma-separated c1 coordinates")
    p.add_argument("--c2", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_elemmod)

    p = sub.add_parser("example", help="search moduli data for given (a,b,lambda,t,chiO)")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--chiO", type=int, required=True)
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_example)

    p = sub.add_parser("euler", help="surface Euler pairing of two classes")
    _add_geometry_flag(p)
    p.add_argument("--x", required=True, help="surface class r,c1...,c2")
    p.add_argument("--y", required=True, help="surface class r,c1...,c2")
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_euler)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (LiteralParseError, GeometryFileError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
