"""Command-line entry point for every verification pipeline.

Human-readable output is the default and includes timings; --json emits a
canonical machine-readable report (schema 1, keys sorted, no timings) that
is byte-identical for any --threads value.  Exit status is 0 exactly when
every asserted check in the invoked pipeline passed.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .complexes import (
    associahedron,
    complex_to_json,
    format_complex,
    join,
    kn_complex,
    parse_complex,
    parse_label_list,
    stellar_subdivision,
    parse_label,
)
from .cotangent import normal_form_factorization_report, t1_slice, t1_window
from .grammar import format_ideal
from .grassmann import (
    IdealSpec,
    degree_check,
    generator_names,
    verify_initial_ideal,
)
from .hull import (
    common_face_check,
    complexes_isomorphic,
    k6_polytope_points,
    lower_facet_records,
    parse_points_text,
    points_from_json,
    reflexivity_check,
    triangulation_complex,
)
from .syzygies import identity_report, verify_generation

SCHEMA = 1


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return 2
    started = time.perf_counter()
    try:
        report, passed, human = args.handler(args)
    except (ValueError, OSError, RuntimeError, AssertionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    elapsed_ms = int((time.perf_counter() - started) * 1000)
    if args.json:
        report = dict(report)
        report["schema"] = SCHEMA
        text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    else:
        text = human if human.endswith("\n") else human + "\n"
        # status and timing go to stderr so reports stay machine-parseable
        print(f"[{elapsed_ms} ms] {'ok' if passed else 'FAILED'}", file=sys.stderr)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0 if passed else 1


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    kw = {"default": argparse.SUPPRESS} if suppress else {}
    parser.add_argument(
        "--json", action="store_true", help="machine-readable output", **kw
    )
    parser.add_argument("--out", metavar="FILE", help="write the report to a file", **kw)
    parser.add_argument(
        "--threads",
        type=int,
        help="worker cap (results identical for any value)",
        **({"default": argparse.SUPPRESS} if suppress else {"default": 1}),
    )
    parser.add_argument(
        "--seed",
        type=int,
        help="seed for randomized checks",
        **({"default": argparse.SUPPRESS} if suppress else {"default": 0}),
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quotbundle",
        description=(
            "Exact verification workbench for the quotient-bundle ideal on "
            "G(2,n): Groebner, Stanley-Reisner, syzygy, rigidity, and hull checks."
        ),
    )
    parser.add_argument("--version", action="version", version=f"quotbundle {__version__}")
    _global_flags(parser, suppress=False)
    parser.set_defaults(command=None, json=False, out=None, threads=1, seed=0)
    sub = parser.add_subparsers(dest="command")
    # the same flags are accepted after any subcommand (SUPPRESS keeps the
    # leaf parser from clobbering values given up front)
    leaf = argparse.ArgumentParser(add_help=False)
    _global_flags(leaf, suppress=True)

    px = sub.add_parser("complex", help="build and print simplicial complexes")
    pxsub = px.add_subparsers(dest="complex_command", required=True)
    p = pxsub.add_parser("build", help="build a named complex")
    bsub = p.add_subparsers(dest="builder", required=True)
    b = bsub.add_parser("assoc", parents=[leaf], help="polygon diagonal complex")
    b.add_argument("--n", type=int, required=True)
    b.set_defaults(handler=_cmd_complex_assoc)
    b = bsub.add_parser("kn", parents=[leaf], help="subdivided suspension complex")
    b.add_argument("--n", type=int, required=True)
    b.set_defaults(handler=_cmd_complex_kn)
    b = bsub.add_parser("join", parents=[leaf], help="join of two complex files")
    b.add_argument("left")
    b.add_argument("right")
    b.set_defaults(handler=_cmd_complex_join)
    b = bsub.add_parser("stellar", parents=[leaf], help="stellar subdivision of a complex file")
    b.add_argument("path")
    b.add_argument("--face", required=True, help="labels of the face, e.g. 'd[1,4],w1'")
    b.add_argument("--label", required=True, help="label for the new vertex, e.g. 'v'")
    b.set_defaults(handler=_cmd_complex_stellar)

    p = sub.add_parser("ideal", help="emit ideal generators")
    isub = p.add_subparsers(dest="ideal_command", required=True)
    e = isub.add_parser("emit", parents=[leaf], help="print generators in the text grammar")
    e.add_argument("kind", choices=["i2n", "jn"])
    e.add_argument("--n", type=int, required=True)
    e.set_defaults(handler=_cmd_ideal_emit)

    p = sub.add_parser("groebner", help="Groebner-basis verification")
    gsub = p.add_subparsers(dest="groebner_command", required=True)
    v = gsub.add_parser("verify", parents=[leaf], help="criterion plus initial-ideal match")
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--order", choices=["layered", "circular"], default="layered")
    v.add_argument(
        "--complete-crosscheck",
        action="store_true",
        help="also run full completion and confirm no new leading monomials",
    )
    v.set_defaults(handler=_cmd_groebner_verify)

    p = sub.add_parser("degree", parents=[leaf], help="three-way degree comparison")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=_cmd_degree)

    p = sub.add_parser("syzygy", help="syzygy family checks")
    ssub = p.add_subparsers(dest="syzygy_command", required=True)
    v = ssub.add_parser("verify", parents=[leaf], help="identities and trace-module membership")
    v.add_argument("--n", type=int, required=True)
    v.add_argument(
        "--membership",
        choices=["auto", "on", "off"],
        default="auto",
        help="module membership/generation check (auto: on for n <= 6)",
    )
    v.set_defaults(handler=_cmd_syzygy_verify)
    e = ssub.add_parser("emit", parents=[leaf], help="export the explicit families as JSON")
    e.add_argument("--n", type=int, required=True)
    e.set_defaults(handler=_cmd_syzygy_emit)

    p = sub.add_parser("t1", help="cotangent cohomology slices")
    tsub = p.add_subparsers(dest="t1_command", required=True)
    s = tsub.add_parser("slice", parents=[leaf], help="one bidegree shift")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--delta", required=True, help="shift DX,DY (may be negative)")
    s.set_defaults(handler=_cmd_t1_slice)
    w = tsub.add_parser("window", parents=[leaf], help="all shifts under a target bound")
    w.add_argument("--n", type=int, required=True)
    w.add_argument("--max", default="3,3", help="componentwise target bound DX,DY")
    w.set_defaults(handler=_cmd_t1_window)

    p = sub.add_parser("lemma", help="normal-form factorization trials")
    lsub = p.add_subparsers(dest="lemma_command", required=True)
    nf = lsub.add_parser("normalform", parents=[leaf], help="seeded random factorization trials")
    nf.add_argument("--n", type=int, required=True)
    nf.add_argument("--trials", type=int, default=200)
    nf.set_defaults(handler=_cmd_lemma)

    p = sub.add_parser("hull", help="lower-hull pipelines")
    hsub = p.add_subparsers(dest="hull_command", required=True)
    k = hsub.add_parser("k6-polytope", parents=[leaf], help="built-in 13-point dataset replay")
    k.set_defaults(handler=_cmd_hull_k6)
    f = hsub.add_parser("file", parents=[leaf], help="lower facets of a polytope file")
    f.add_argument("path")
    f.add_argument("--height", type=int, default=None, help="height coordinate index")
    f.set_defaults(handler=_cmd_hull_file)

    p = sub.add_parser("oracle", parents=[leaf], help="vanishing oracle on random bundle points")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(handler=_cmd_oracle)

    return parser


# -- handlers -----------------------------------------------------------------


def _complex_report(K, name: str):
    info = complex_to_json(K)
    report = {
        "name": name,
        "vertices": info["vertices"],
        "facets": info["facets"],
        "f_vector": info["f_vector"],
        "dim": K.dim(),
        "pure": K.is_pure(),
        "euler_characteristic": K.euler_characteristic(),
    }
    human = (
        f"# {name}: {len(K.vertices)} vertices, {len(K.facets)} facets, "
        f"dim {K.dim()}, euler {K.euler_characteristic()}\n" + format_complex(K)
    )
    return report, True, human


def _cmd_complex_assoc(args):
    return _complex_report(associahedron(args.n), f"assoc(n={args.n})")


def _cmd_complex_kn(args):
    return _complex_report(kn_complex(args.n), f"kn(n={args.n})")


def _cmd_complex_join(args):
    left = parse_complex(Path(args.left).read_text(encoding="utf-8"))
    right = parse_complex(Path(args.right).read_text(encoding="utf-8"))
    return _complex_report(join(left, right), "join")


def _cmd_complex_stellar(args):
    K = parse_complex(Path(args.path).read_text(encoding="utf-8"))
    face = parse_label_list(args.face)
    label = parse_label(args.label)
    return _complex_report(stellar_subdivision(K, face, label), "stellar")


def _cmd_ideal_emit(args):
    spec = IdealSpec(args.n, args.kind)
    names = spec.names
    from .grammar import format_polynomial

    body = format_ideal(
        spec.generators,
        header=f"{args.kind} generators for n={args.n} (canonical order)",
    )
    report = {
        "kind": args.kind,
        "n": args.n,
        "names": names,
        "generators": [format_polynomial(g) for g in spec.generators],
    }
    return report, True, body


def _cmd_groebner_verify(args):
    rep = verify_initial_ideal(
        args.n,
        order_kind=args.order,
        threads=args.threads,
        complete_crosscheck=args.complete_crosscheck,
    )
    ok = rep.gb_holds and rep.match and (not rep.crosscheck_ran or rep.crosscheck_added == 0)
    lines = [
        f"n={rep.n} order={rep.order}",
        f"criterion holds: {rep.gb_holds} ({rep.pair_count} pairs, {rep.reduction_steps} steps)",
        f"initial ideal == Stanley-Reisner ideal: {rep.match} "
        f"({len(rep.initial_generators)} generators)",
    ]
    if rep.crosscheck_ran:
        lines.append(f"completion added {rep.crosscheck_added} new leading monomials")
    return rep.to_dict(), ok, "\n".join(lines)


def _cmd_degree(args):
    rep = degree_check(args.n)
    human = (
        f"n={rep.n}: formula {rep.formula_value} | facets {rep.facet_count} | "
        f"Hilbert {rep.standard_monomial_degree} -> "
        f"{'equal' if rep.all_equal else 'MISMATCH'}"
    )
    return rep.to_dict(), rep.all_equal, human


def _cmd_syzygy_verify(args):
    ident = identity_report(args.n)
    report = {"identities": ident}
    ok = ident["passed"]
    run_membership = args.membership == "on" or (
        args.membership == "auto" and args.n <= 6
    )
    lines = [
        f"n={args.n}: {ident['rijk_count']} three-index identities, euler, "
        + (f"{ident.get('r5_count', 0)} five-index identities" if args.n >= 5 else "no five-index family"),
        f"identity failures: {len(ident['rijk_failures']) + len(ident.get('r5_failures', []))}",
    ]
    if run_membership:
        gen = verify_generation(args.n, threads=args.threads)
        report["generation"] = gen.to_dict()
        members_ok = all(gen.family_membership.values())
        ok = ok and members_ok and gen.generates_full_module
        lines.append(
            f"membership in trace module: {'all pass' if members_ok else 'FAILURES'}; "
            f"generates full module: {gen.generates_full_module}"
        )
    return report, ok, "\n".join(lines)


def _parse_pair(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"expected DX,DY, got {text!r}")
    return int(parts[0]), int(parts[1])


def _cmd_t1_slice(args):
    delta = _parse_pair(args.delta)
    s = t1_slice(args.n, delta, threads=args.threads)
    human = (
        f"n={s.n} delta=({s.delta[0]},{s.delta[1]}): hom {s.hom_space_dim}, "
        f"derivations {s.derivation_image_dim}, t1 {s.t1_dim}"
    )
    if s.basis:
        names = generator_names(s.n)
        from .grammar import format_polynomial

        for images in s.basis:
            parts = [
                f"{names[a]} -> {format_polynomial(p)}"
                for a, p in enumerate(images)
                if not p.is_zero()
            ]
            human += "\n  basis: " + "; ".join(parts)
    return s.to_dict(), True, human


def _cmd_t1_window(args):
    max_target = _parse_pair(args.max)
    w = t1_window(args.n, max_target, threads=args.threads)
    ok = w.all_zero if args.n >= 6 else True
    lines = [
        f"n={w.n} window under target {max_target} (partial verification: "
        "finite window only)",
        "delta      hom   der    t1",
    ]
    for s in w.slices:
        lines.append(
            f"({s.delta[0]:+d},{s.delta[1]:+d})   {s.hom_space_dim:5d} {s.derivation_image_dim:5d} {s.t1_dim:5d}"
        )
    lines.append(f"all slices zero: {w.all_zero}")
    return w.to_dict(), ok, "\n".join(lines)


def _cmd_lemma(args):
    rep = normal_form_factorization_report(args.n, args.trials, args.seed)
    human = (
        f"n={rep.n}: {rep.trials} trials, {len(rep.failures)} failures, "
        f"{rep.resamples} hypothesis resamples"
    )
    return rep.to_dict(), rep.passed, human


def _hull_pipeline(points, height, expect_k6: bool):
    records = lower_facet_records(points, height)
    facets = [r["facet"] for r in records]
    K, projected, unimodular = triangulation_complex(points, facets, height)
    covering = all(any(k in f for f in facets) for k in range(len(points)))
    faces_ok = common_face_check(points, records)
    report = {
        "points": len(points),
        "lower_facets": len(facets),
        "facet_indices": [sorted(f) for f in facets],
        "unimodular": unimodular,
        "facets_cover_points": covering,
        "facets_meet_in_common_faces": faces_ok,
    }
    ok = unimodular and covering and faces_ok
    lines = [
        f"{len(points)} points, {len(facets)} lower facets, unimodular: {unimodular}",
    ]
    if expect_k6:
        from .complexes import free_vertex, simplex

        target = join(kn_complex(6), simplex([free_vertex(0)]))
        witness = complexes_isomorphic(K, target)
        report["isomorphic_to_k6_join_point"] = witness is not None
        if witness is not None:
            report["witness"] = {
                str(k): v.text() for k, v in sorted(witness.items())
            }
            origin_index = points.index(tuple([0] * len(points[0])))
            cone = [v for v in target.vertices if all(v in f for f in target.facets)]
            report["origin_maps_to_cone_vertex"] = bool(cone) and witness[origin_index] == cone[0]
        h = len(points[0]) - 1 if height is None else height
        proj = [tuple(c for a, c in enumerate(p) if a != h) for p in points]
        reflexive = reflexivity_check(proj)
        report["projection_reflexive"] = reflexive
        ok = (
            ok
            and witness is not None
            and reflexive
            and report.get("origin_maps_to_cone_vertex", False)
        )
        lines.append(
            f"isomorphic to the n=6 complex joined with a point: {witness is not None}"
        )
        lines.append(f"projected polytope reflexive: {reflexive}")
    return report, ok, "\n".join(lines)


def _cmd_hull_k6(args):
    return _hull_pipeline(k6_polytope_points(), None, expect_k6=True)


def _cmd_hull_file(args):
    text = Path(args.path).read_text(encoding="utf-8")
    if args.path.endswith(".json"):
        points = points_from_json(json.loads(text))
    else:
        points = parse_points_text(text)
    return _hull_pipeline(points, args.height, expect_k6=False)


def _cmd_oracle(args):
    from .grassmann import vanishing_report

    rep = vanishing_report(args.n, args.trials, args.seed)
    human = (
        f"n={rep['n']}: {rep['trials']} random bundle points, "
        f"{rep['failures']} nonzero evaluations"
    )
    return rep, rep["passed"], human


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
