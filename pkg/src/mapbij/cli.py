r"""
Command-line interface: ``mapbij phi|psi|verify|count|series|schemes|polygon``.

Exit status is 0 on success, 1 when the input is a well-formed file whose
content is invalid (not a map, not well labeled, a failed check) and 2 for
malformed files or arguments.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .enumerate import CLASSES, GenSpec, SizeCapExceeded, check_cap, count_class, gen_rooted_maps
from .flags import SURFACES, distance_labels, polygon_representation, validate
from .general import phi_general, psi_general
from .loops import OrientationPolicy
from .mapio import ParseError, format_map, format_mobile, parse_map, parse_mobile
from .psi import NotWellLabeled
from .triangulations import METHODS, enumerate_normalized_schemes, scheme_gf_contribution, surface_triangulation_gf
from .verify import SURFACE_NAMES, global_suite, surface_suite


class Failure(Exception):
    """Invalid content; reported on stderr with exit status 1."""


def _policy(text: str) -> OrientationPolicy:
    try:
        return OrientationPolicy.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if k < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return k


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(0, f"cannot read {path}: {exc.strerror}") from None


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _checked(fs):
    rep = validate(fs)
    if not rep.valid:
        raise Failure(f"invalid map: {rep}")
    return fs


# commands ------------------------------------------------------------------------

def cmd_phi(args) -> int:
    fs, point = parse_map(_read(args.map))
    _checked(fs)
    if args.point is not None:
        if not 1 <= args.point <= fs.nflags:
            raise Failure(f"--point: flag {args.point} outside 1..{fs.nflags}")
        point = fs.vertex_ids()[args.point - 1]
    if point is None:
        point = fs.vertex_ids()[fs.root]
    mob, eps = phi_general(distance_labels(fs, point), args.policy)
    _write(format_mobile(mob, eps), args.output)
    return 0


def cmd_psi(args) -> int:
    mob, file_eps = parse_mobile(_read(args.mobile))
    _checked(mob.map)
    eps = args.epsilon or file_eps or "+"
    try:
        pm = psi_general(mob, eps, args.policy)
    except NotWellLabeled as exc:
        raise Failure(f"not well labeled: {exc}") from None
    _write(format_map(pm.map, pm.point), args.output)
    return 0


def cmd_verify(args) -> int:
    names = SURFACE_NAMES if args.surface == "all" else (args.surface,)
    rows = []
    for name in names:
        rows += [(name, r) for r in surface_suite(SURFACES[name], args.max_edges, args.policy)]
    if args.surface == "all" or args.global_checks:
        rows += [("global", r) for r in global_suite()]
    print("scope\tstatus\tcheck\tdetails")
    for scope, r in rows:
        print(f"{scope}\t{r.line()}")
    failed = sum(1 for _, r in rows if not r.passed)
    print(f"# {len(rows) - failed} passed, {failed} failed")
    return 1 if failed else 0


def cmd_count(args) -> int:
    surface = SURFACES[args.surface]
    keys = None
    for n in range(1, args.max_edges + 1):
        spec = GenSpec(surface, n, args.cls)
        if args.cls in ("all", "bipartite", "triangulation"):
            table = count_class(spec, args.policy)
        else:
            maps = gen_rooted_maps(spec)
            table = {"rooted_maps": len(maps),
                     "pointed_maps": sum(len(set(fs.vertex_ids())) for fs in maps)}
        if keys is None:
            keys = list(table)
            print("n\t" + "\t".join(keys))
        print(f"{n}\t" + "\t".join(str(table[k]).lower() if isinstance(table[k], bool) else str(table[k])
                                   for k in keys))
    return 0


def series_tsv(surface: str, order: int, pointed: bool, method: str) -> str:
    g = surface_triangulation_gf(SURFACES[surface], order, pointed, method)
    return "n\tcoefficient\n" + "".join(f"{k}\t{c}\n" for k, c in enumerate(g.coeffs))


def cmd_series(args) -> int:
    try:
        sys.stdout.write(series_tsv(args.surface, args.order, args.pointed, args.method))
    except ValueError as exc:
        raise Failure(str(exc)) from None
    return 0


def cmd_schemes(args) -> int:
    try:
        schemes = enumerate_normalized_schemes(SURFACES[args.surface])
    except ValueError as exc:
        raise Failure(str(exc)) from None
    print("index\tedges\tlabels\tgaps\tcubic\tinjective\tcontribution")
    for k, ns in enumerate(schemes, 1):
        labels = ",".join(str(v) for v in sorted(ns.labels.values()))
        gaps = ",".join(map(str, ns.d())) or "-"
        contrib = ",".join(str(c) for c in scheme_gf_contribution(ns, args.order).coeffs)
        print(f"{k}\t{ns.n_edges}\t{labels}\t{gaps}\t{str(ns.is_cubic()).lower()}\t"
              f"{str(ns.is_injective()).lower()}\t{contrib}")
    return 0


def cmd_polygon(args) -> int:
    fs, _ = parse_map(_read(args.map))
    _checked(fs)
    try:
        _write(polygon_representation(fs).to_text(), args.output)
    except ValueError as exc:
        raise Failure(str(exc)) from None
    return 0


# parser ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mapbij", description="Bijections between pointed maps and mobiles.")
    sub = p.add_subparsers(dest="command", required=True)
    pol = dict(type=_policy, default=OrientationPolicy(), metavar="SIGNS",
               help="orientation signs for the loops, e.g. '+' or '+-' (default '+')")

    s = sub.add_parser("phi", help="encode a pointed map as a mobile")
    s.add_argument("map", help="map file, or - for stdin")
    s.add_argument("--point", type=_positive, help="a flag of the pointed vertex (overrides the file)")
    s.add_argument("--policy", **pol)
    s.add_argument("-o", "--output")
    s.set_defaults(run=cmd_phi)

    s = sub.add_parser("psi", help="rebuild the pointed map of a mobile")
    s.add_argument("mobile", help="mobile file, or - for stdin")
    s.add_argument("--epsilon", choices=("+", "-"), help="sign (default: the file's, else +)")
    s.add_argument("--policy", **pol)
    s.add_argument("-o", "--output")
    s.set_defaults(run=cmd_psi)

    s = sub.add_parser("verify", help="exhaustive checks, printed as a pass/fail table")
    s.add_argument("--surface", choices=SURFACE_NAMES + ("all",), default="all")
    s.add_argument("--max-edges", type=_positive, default=3)
    s.add_argument("--policy", **pol)
    s.add_argument("--global", dest="global_checks", action="store_true",
                   help="also run the surface-independent checks (always on with --surface all)")
    s.set_defaults(run=cmd_verify)

    s = sub.add_parser("count", help="counts on both sides of the bijection, as TSV")
    s.add_argument("--surface", choices=SURFACE_NAMES, required=True)
    s.add_argument("--max-edges", type=_positive, default=3)
    s.add_argument("--class", dest="cls", choices=[c for c in CLASSES if c != "mobile"], default="all")
    s.add_argument("--policy", **pol)
    s.set_defaults(run=cmd_count)

    s = sub.add_parser("series", help="triangulation generating function coefficients, as TSV")
    s.add_argument("--surface", choices=SURFACE_NAMES, required=True)
    s.add_argument("--order", type=_positive, default=8)
    kind = s.add_mutually_exclusive_group()
    kind.add_argument("--pointed", action="store_true", help="count pointed triangulations")
    kind.add_argument("--per-vertex", dest="pointed", action="store_false",
                      help="weight x per vertex (default)")
    s.add_argument("--method", choices=METHODS, default="auto")
    s.set_defaults(run=cmd_series)

    s = sub.add_parser("schemes", help="normalized schemes of a surface, as TSV")
    s.add_argument("--surface", choices=SURFACE_NAMES, required=True)
    s.add_argument("--order", type=_positive, default=6, help="order of the contribution in U")
    s.set_defaults(run=cmd_schemes)

    s = sub.add_parser("polygon", help="the polygon gluing of a one-face map")
    s.add_argument("map")
    s.add_argument("-o", "--output")
    s.set_defaults(run=cmd_polygon)
    return p


def _check_caps(args) -> None:
    if args.command == "verify":
        check_cap("all", args.max_edges)
        check_cap("quadrangulation", 2 * args.max_edges)
    elif args.command == "count":
        check_cap(args.cls, args.max_edges)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _check_caps(args)
    except SizeCapExceeded as exc:
        parser.error(str(exc))
    try:
        return args.run(args)
    except ParseError as exc:
        print(f"mapbij: parse error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2
    except Failure as exc:
        print(f"mapbij: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
