"""Command line interface: ``cubioid lam ...`` and ``cubioid dyn ...``.

Exit codes: 0 success, 1 usage or input error, 2 negative verdict,
3 undetermined or inconclusive, 4 numerical failure.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from math import gcd

from . import __version__
from .angles import format_angle, parse_angle
from .classify import (
    CASE_NEITHER,
    CASE_UNDETERMINED,
    CUBIOIDAL,
    NOT_CUBIOIDAL,
    classify_tuning,
    is_cubioidal,
)
from .gaps import Gap, classified_gaps, gap_report, rotation_number
from .lamination import (
    Chord,
    LaminationError,
    LeafSystem,
    check_class_covering,
    check_forward_invariant,
    format_lamination,
    pullback,
    read_lamination,
)
from .quadgap import (
    InvalidMajor,
    build_quadratic_gap,
    build_vassal,
    canonical_lamination,
    validate_major,
)
from .render import RenderSpec, render_svg

EXIT_OK, EXIT_USAGE, EXIT_NEGATIVE, EXIT_UNDETERMINED, EXIT_NUMERIC = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(fmt: str, text_lines: list[str], kv_records: list[dict]) -> None:
    if fmt == "kv":
        for rec in kv_records:
            print(" ".join(f"{k}={v}" for k, v in rec.items()))
    else:
        for line in text_lines:
            print(line)


def _load(args) -> LeafSystem:
    L = read_lamination(args.file)
    depth = getattr(args, "depth", None)
    if depth is not None and depth > L.depth:
        L = pullback(L, depth)
    return L


def _major(args):
    return validate_major(Chord.parse(args.major), flip_symmetric=getattr(args, "flip", False))


def _rational(text: str) -> str:
    return format_angle(parse_angle(text))


def _complex(text: str) -> complex:
    from .dynamics.cubic import parse_complex
    try:
        return parse_complex(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r} (use RE,IM)") from None


def _fmt_c(z: complex) -> str:
    z = complex(0.0 if abs(z.real) < 1e-12 else z.real, 0.0 if abs(z.imag) < 1e-12 else z.imag)
    return f"{z.real:.12g}{z.imag:+.12g}i"


# ---------------------------------------------------------------- lam commands

def cmd_check(args) -> int:
    L = _load(args)
    rep = check_forward_invariant(L)
    covering = []
    for c in L.classes:
        cov = check_class_covering(c, L.degree)
        covering.append((c, cov))
    bad_cov = [(c, r) for c, r in covering if not r.ok]
    ok = rep.ok and not bad_cov
    text = [f"degree {L.degree}, {len(L.classes)} classes, {len(L.leaves)} leaves",
            f"forward invariant: {'yes' if rep.ok else 'no (' + rep.reason + ')'}",
            f"covering: {'ok' if not bad_cov else str(len(bad_cov)) + ' classes fail'}"]
    for c, r in bad_cov:
        text.append(f"  {c}: {r.reason}")
    kv = [dict(degree=L.degree, classes=len(L.classes), leaves=len(L.leaves),
               forward_invariant="yes" if rep.ok else "no",
               covering="ok" if not bad_cov else "fail")]
    _emit(args.format, text, kv)
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_pullback(args) -> int:
    L = read_lamination(args.file)
    L = pullback(L, args.depth)
    text = format_lamination(L)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    if args.format == "kv":
        print(f"degree={L.degree} depth={L.depth} classes={len(L.classes)} leaves={len(L.leaves)}")
        if not args.output:
            for c in L.classes:
                print("class=" + ",".join(format_angle(v) for v in c.vertices))
    elif not args.output:
        sys.stdout.write(text)
    else:
        print(f"wrote {len(L.classes)} classes to {args.output}")
    return EXIT_OK


def cmd_gaps(args) -> int:
    L = _load(args)
    gaps = classified_gaps(L)
    sys.stdout.write(gap_report(gaps, args.format))
    return EXIT_OK


def cmd_quadgap(args) -> int:
    M = _major(args)
    U = build_quadratic_gap(M, args.depth)
    h0, h1 = M.hole
    head = dict(major=str(M.leaf), type=M.type, hole=f"{format_angle(h0)},{format_angle(h1)}",
                hole_length=format_angle(M.hole_length), period=M.period or "-",
                quadratic="yes" if M.is_quadratic else "no", depth=args.depth, edges=len(U.edges))
    kv = [head]
    text = [f"major {M.leaf}: {M.type}, hole ({format_angle(h0)}, {format_angle(h1)}) "
            f"of length {format_angle(M.hole_length)}"]
    if M.degenerate:
        text.append(f"warning: {M.degenerate}")
    text.append(f"{len(U.edges)} edges to depth {args.depth}:")
    for e in sorted(U.gap_edges, key=lambda g: (g.level, g.chord)):
        kv.append(dict(edge=str(e.chord), level=e.level))
        text.append(f"  level {e.level}: {e.chord}")
    if args.vassal:
        V = build_vassal(M, args.vassal_depth)
        kv.append(dict(vassal_sibling=str(V.sibling), vassal_period=V.period,
                       vassal_degree=V.return_degree, vassal_edges=len(V.edges)))
        text.append(f"vassal: sibling {V.sibling}, period {V.period}, "
                    f"return degree {V.return_degree}, {len(V.edges)} edges")
    _emit(args.format, text, kv)
    return EXIT_OK


def cmd_canonical(args) -> int:
    M = _major(args)
    L = canonical_lamination(M, args.depth)
    text = format_lamination(L)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    if args.format == "kv":
        print(f"major={M.leaf} depth={L.depth} classes={len(L.classes)} leaves={len(L.leaves)}")
    elif args.output:
        print(f"wrote {len(L.leaves)} leaves to {args.output}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _describe_rot(obj) -> str:
    if isinstance(obj, Gap):
        return "siegel-type gap " + " ".join(str(e) for e in obj.edges)
    return "class {" + ", ".join(format_angle(v) for v in obj.vertices) + \
        "} rotation " + format_angle(rotation_number(obj, 3))


def cmd_cubioid(args) -> int:
    L = _load(args)
    rep = is_cubioidal(L)
    kv = dict(verdict=rep.verdict, rotational_sets=len(rep.rotational_sets_found))
    text = [f"verdict: {rep.verdict}"]
    for obj in rep.rotational_sets_found:
        text.append("  rotational set: " + _describe_rot(obj))
    if rep.violating_leaf is not None:
        kv["witness"] = str(rep.violating_leaf)
    if rep.reason:
        text.append(f"  reason: {rep.reason}")
    _emit(args.format, text, [kv])
    return {CUBIOIDAL: EXIT_OK, NOT_CUBIOIDAL: EXIT_NEGATIVE}.get(rep.verdict, EXIT_UNDETERMINED)


def cmd_classify(args) -> int:
    L = _load(args)
    M = _major(args)
    U = build_quadratic_gap(M, L.depth)
    rep = classify_tuning(L, U)
    kv = dict(case=rep.case.replace(" ", "_"), major=str(M.leaf), depth=L.depth)
    text = [f"case: {rep.case}"]
    if rep.induced_quadratic is not None:
        kv["induced_classes"] = len(rep.induced_quadratic.classes)
        kv["cardioid_member"] = "yes" if rep.cardioid_member else "no"
        text.append(f"induced quadratic lamination: {len(rep.induced_quadratic.classes)} classes")
        text.append(f"main cardioid member: {'yes' if rep.cardioid_member else 'no'}")
    if rep.witness is not None and rep.case in (CASE_NEITHER, CASE_UNDETERMINED):
        w = rep.witness
        kv["witness"] = ",".join(map(str, w)) if isinstance(w, tuple) else str(w)
    if rep.reason:
        text.append(f"reason: {rep.reason}")
    _emit(args.format, text, [kv])
    if rep.case == CASE_NEITHER:
        return EXIT_NEGATIVE
    if rep.case == CASE_UNDETERMINED:
        return EXIT_UNDETERMINED
    return EXIT_OK


def cmd_render(args) -> int:
    if args.file:
        L = _load(args)
    elif args.major:
        L = build_quadratic_gap(_major(args), args.depth or 0).leaf_system()
    else:
        raise UsageError("give a lamination file or --major")
    spec = RenderSpec(size=args.size, geodesic_style=args.style, labels=args.labels,
                      highlight=frozenset(Chord.parse(h) for h in args.highlight))
    svg = render_svg(L, spec)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(svg)
        _emit(args.format, [f"wrote {args.output} ({len(L.leaves)} leaves)"],
              [dict(output=args.output, leaves=len(L.leaves))])
    else:
        sys.stdout.write(svg)
    return EXIT_OK


# ---------------------------------------------------------------- dyn commands

def cmd_tpq(args) -> int:
    from .dynamics.series import tpq
    if args.q < 1 or gcd(args.p, args.q) != 1:
        raise UsageError("need q >= 1 and gcd(p, q) = 1")
    res = tpq(args.p, args.q)
    coeffs = [str(c) for c in res.poly.coeffs]
    kv = [dict(p=args.p, q=args.q, T=str(res.poly).replace(" ", ""), coefficients="[" + ";".join(coeffs) + "]")]
    text = [f"T_{args.p}/{args.q}(b) = {res.poly}",
            "coefficients (b^0 first, z = exp(2 pi i/q)): [" + ", ".join(coeffs) + "]"]
    if args.roots:
        roots = sorted(res.roots, key=lambda z: (round(z.real, 9), round(z.imag, 9)))
        kv[0]["roots"] = ";".join(_fmt_c(complex(z)) for z in roots)
        text.append("roots: " + ", ".join(_fmt_c(complex(z)) for z in roots))
    _emit(args.format, text, kv)
    return EXIT_OK


def cmd_ray(args) -> int:
    from .dynamics.cubic import CubicMap, trace_ray
    f = CubicMap(args.lam, args.b)
    tr = trace_ray(f, parse_angle(args.theta), samples_per_level=args.samples)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(tr.to_csv())
    if args.plot:
        from .plotting import plot_rays
        plot_rays([tr], args.plot, title=f"lambda={_fmt_c(f.lam)}, b={_fmt_c(f.b)}",
                  critical=f.critical_points())
    land = _fmt_c(tr.landing_estimate) if tr.landed else "inconclusive"
    kv = [dict(theta=format_angle(tr.theta), samples=len(tr.points), status=tr.status, landing=land)]
    text = [f"ray {format_angle(tr.theta)}: {len(tr.points)} samples, {tr.status}",
            f"landing estimate: {land}"]
    if tr.reason:
        text.append(f"note: {tr.reason}")
    if args.csv:
        text.append(f"wrote {args.csv}")
    _emit(args.format, text, kv)
    if tr.reason.startswith("Newton"):
        return EXIT_NUMERIC
    return EXIT_OK if tr.landed else EXIT_UNDETERMINED


def cmd_petal(args) -> int:
    from .dynamics.petals import PetalError, repelling_petal
    q, a = args.q, args.a
    tail = args.tail if args.tail is not None else [1 + 0j]
    coeffs = [1] + [0] * (q - 1) + [a] + list(tail)
    try:
        P = repelling_petal(coeffs, q, args.r, sector=args.sector)
    except PetalError as exc:
        print(f"petal certification failed: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    kv = [dict(q=q, a=_fmt_c(P.a), r=P.r, sector=P.sector, direction=_fmt_c(P.direction),
               samples=P.samples, max_remainder=f"{P.max_remainder:.6g}",
               max_shift=f"{P.max_shift:.6g}", certified="yes")]
    text = [f"repelling petal: q={q}, a={_fmt_c(P.a)}, half-plane Re(w/a) > {P.r:g}",
            f"sector {P.sector}, repelling direction {_fmt_c(P.direction)}",
            f"certified on {P.samples} samples: max |F(w)-w+qa| = {P.max_remainder:.6g} "
            f"< |a|/2, max Re((F(w)-w)/a) = {P.max_shift:.6g}"]
    _emit(args.format, text, kv)
    return EXIT_OK


def cmd_stability(args) -> int:
    from .dynamics.petals import ray_stability_experiment
    if args.q < 1 or gcd(args.p, args.q) != 1:
        raise UsageError("need q >= 1 and gcd(p, q) = 1")
    rep = ray_stability_experiment(args.p, args.q, args.b, parse_angle(args.theta), args.delta,
                                   n_directions=args.directions)
    if args.plot and rep.directions:
        from .plotting import plot_stability
        plot_stability(rep, args.plot)
    lands = sum(d["result"] == "lands" for d in rep.directions)
    kv = [dict(p=args.p, q=args.q, b=_fmt_c(rep.b_star), theta=format_angle(rep.theta),
               delta=rep.delta, status=rep.status.replace(" ", "_"),
               directions=len(rep.directions), lands=lands, untested=len(rep.untested))]
    text = [f"stability of ray {format_angle(rep.theta)} at b* = {_fmt_c(rep.b_star)}: {rep.status}"]
    if rep.directions:
        text.append(f"{lands}/{len(rep.directions)} perturbed rays certified to land at 0")
        for d in rep.directions:
            text.append(f"  phi={d['phi']:.4f} b={_fmt_c(d['b'])}: {d['result']}")
    if rep.reason:
        text.append(f"note: {rep.reason}")
    _emit(args.format, text, kv)
    return {"stable": EXIT_OK, "unstable": EXIT_NEGATIVE}.get(rep.status, EXIT_UNDETERMINED)


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    fmt = _Parser(add_help=False)
    fmt.add_argument("--format", choices=("text", "kv"), default="text",
                     help="human readable text or key=value records")
    p = _Parser(prog="cubioid", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    top = p.add_subparsers(dest="group", metavar="{lam,dyn}", parser_class=_Parser)
    top.required = True

    lam = top.add_parser("lam", help="laminations, gaps and the cubioidal predicate")
    ls = lam.add_subparsers(dest="command", parser_class=_Parser)
    ls.required = True

    def with_file(sp, depth=True):
        sp.add_argument("file", help="lamination text file")
        if depth:
            sp.add_argument("--depth", type=int, help="pull back to this depth first")
        return sp

    def with_major(sp):
        sp.add_argument("--major", required=True, help="major leaf as a,b (e.g. 1/3,2/3)")
        sp.add_argument("--flip", action="store_true", help="use the other hole of a diameter")
        return sp

    sp = with_file(ls.add_parser("check", parents=[fmt], help="invariance and covering checks"))
    sp.set_defaults(func=cmd_check)
    sp = ls.add_parser("pullback", parents=[fmt], help="pull back to a given depth")
    sp.add_argument("file")
    sp.add_argument("--depth", type=int, required=True)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_pullback)
    sp = with_file(ls.add_parser("gaps", parents=[fmt], help="enumerate and classify gaps"))
    sp.set_defaults(func=cmd_gaps)
    sp = with_major(ls.add_parser("quadgap", parents=[fmt], help="edges of the quadratic gap U_M"))
    sp.add_argument("--depth", type=int, default=2)
    sp.add_argument("--vassal", action="store_true", help="also build the vassal gap")
    sp.add_argument("--vassal-depth", type=int, default=2)
    sp.set_defaults(func=cmd_quadgap)
    sp = with_major(ls.add_parser("canonical", parents=[fmt], help="canonical lamination of U_M"))
    sp.add_argument("--depth", type=int, default=2)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_canonical)
    sp = with_file(ls.add_parser("cubioid", parents=[fmt], help="is the lamination cubioidal?"))
    sp.set_defaults(func=cmd_cubioid)
    sp = with_major(with_file(ls.add_parser("classify", parents=[fmt],
                                            help="tuning / coexistence with U_M")))
    sp.set_defaults(func=cmd_classify)
    sp = ls.add_parser("render", parents=[fmt], help="SVG picture")
    sp.add_argument("file", nargs="?")
    sp.add_argument("--major", help="render the edges of U_M instead of a file")
    sp.add_argument("--flip", action="store_true")
    sp.add_argument("--depth", type=int)
    sp.add_argument("--size", type=int, default=512)
    sp.add_argument("--style", choices=("hyperbolic-arc", "straight-chord"), default="hyperbolic-arc")
    sp.add_argument("--labels", action="store_true")
    sp.add_argument("--highlight", action="append", default=[], metavar="A,B")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_render)

    dyn = top.add_parser("dyn", help="numerics for lambda*z + b*z^2 + z^3")
    ds = dyn.add_subparsers(dest="command", parser_class=_Parser)
    ds.required = True
    sp = ds.add_parser("tpq", parents=[fmt], help="exact T_{p/q}(b)")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--roots", action="store_true")
    sp.set_defaults(func=cmd_tpq)
    sp = ds.add_parser("ray", parents=[fmt], help="trace a dynamic ray")
    sp.add_argument("--lambda", dest="lam", type=_complex, default=0j, metavar="RE,IM")
    sp.add_argument("--b", type=_complex, default=0j, metavar="RE,IM")
    sp.add_argument("--theta", required=True, help="rational angle a/b")
    sp.add_argument("--samples", type=int, default=8, help="samples per potential level")
    sp.add_argument("--csv", help="write the polyline as CSV")
    sp.add_argument("--plot", help="write a PNG figure")
    sp.set_defaults(func=cmd_ray)
    sp = ds.add_parser("petal", parents=[fmt], help="certify a repelling petal")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--a", type=_complex, required=True, metavar="RE,IM")
    sp.add_argument("--r", type=float, default=10.0)
    sp.add_argument("--sector", type=int, default=0)
    sp.add_argument("--tail", type=_complex, nargs="*", metavar="RE,IM",
                    help="coefficients of z^(q+2), ... (default 1)")
    sp.set_defaults(func=cmd_petal)
    sp = ds.add_parser("stability", parents=[fmt], help="ray stability under perturbation of b")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--b", type=_complex, required=True, metavar="RE,IM")
    sp.add_argument("--theta", required=True)
    sp.add_argument("--delta", type=float, required=True)
    sp.add_argument("--directions", type=int, default=8)
    sp.add_argument("--plot", help="write a PNG figure")
    sp.set_defaults(func=cmd_stability)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvalidMajor as exc:
        print(f"invalid major: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except LaminationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
