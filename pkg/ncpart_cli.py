"""Command-line entry for the non-crossing partition toolkit.

Subcommands: ``count``, ``dist``, ``hull``, ``check``, ``draw``, ``aut``,
``enumerate``, ``hurwitz`` and ``metric``. Records print as ``key=value``
lines in a fixed order, or as one JSON object under ``--json``. Library
errors end the run with a one-line message and exit status 2; a failing
check exits with status 1.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd

from backend import autos
from backend.checks import list_checks, run_all, run_check
from backend.complex import SubcomplexTag, as_tag, convex_hull, distance, hurwitz_stats, in_subcomplex_chamber
from backend.metric import edge_cos_squared, edge_length, edge_table, exact_cos_total, opposite_link_path_length, path_length
from backend.ncp import nc_enumerate, perm_to_partition
from backend.perm import COX_TYPES, format_element
from backend.trees import Forest
from utils.config import set_max_n
from utils.errors import DomainError, NcpartError
from utils.notation import format_chamber, format_partition, parse_chamber, parse_object
from utils.svg import draw_hasse, draw_partition
from utils.tables import TABLE_KINDS, count_table

logger = logging.getLogger("ncpart")

TAGS = tuple(tag.value for tag in SubcomplexTag)
GROUPS = ("dihedral", "star", "skew", "full", "zeta", "bipartition")


# --------------------------------------------------------------------------
# output


def _text(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, (list, tuple)):
        return ",".join(_text(v) for v in value)
    if isinstance(value, float):
        return f"{value:.15g}"
    return str(value)


def emit(args: argparse.Namespace, record: Dict[str, Any]) -> None:
    if args.json:
        print(json.dumps(record, sort_keys=True, default=str))
        return
    for key, value in record.items():
        print(f"{key}={_text(value)}")


def emit_table(args: argparse.Namespace, frame: pd.DataFrame) -> None:
    if args.json:
        print(frame.to_json(orient="records"))
    elif getattr(args, "csv", False):
        print(frame.to_csv(index=False), end="")
    else:
        print(frame.to_string(index=False))


# --------------------------------------------------------------------------
# commands


def cmd_count(args: argparse.Namespace) -> int:
    emit_table(args, count_table(args.kind, args.n, args.type))
    return 0


def _tags_holding(*chambers) -> List[SubcomplexTag]:
    return [tag for tag in SubcomplexTag if all(in_subcomplex_chamber(tag, C) for C in chambers)]


def _hull_tag(args: argparse.Namespace, C, D) -> SubcomplexTag:
    if args.tag is not None:
        return as_tag(args.tag)
    return _tags_holding(C, D)[-1]


def cmd_dist(args: argparse.Namespace) -> int:
    C = parse_chamber(args.first)
    D = parse_chamber(args.second, C.n)
    holding = _tags_holding(C, D)
    record: Dict[str, Any] = {
        f"d_{tag.value.lower()}": distance(tag, C, D) if tag in holding else None for tag in SubcomplexTag
    }
    if args.hull:
        tag = _hull_tag(args, C, D)
        record["hull_tag"] = tag.value
        record["hull"] = len(convex_hull(tag, C, D))
    emit(args, record)
    return 0


def cmd_hull(args: argparse.Namespace) -> int:
    C = parse_chamber(args.first)
    D = parse_chamber(args.second, C.n)
    tag = _hull_tag(args, C, D)
    hull = convex_hull(tag, C, D)
    emit(
        args,
        {
            "tag": tag.value,
            "distance": distance(tag, C, D),
            "chambers": len(hull),
            "hull": [format_chamber(E) for E in hull] if args.json else None,
        },
    )
    if not args.json:
        for E in hull:
            print(format_chamber(E))
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    if args.name == "list":
        for name, summary in list_checks():
            print(f"{name}: {summary}")
        return 0
    if args.name == "all":
        reports = run_all(small=not args.full)
    else:
        reports = (
            run_check(args.name, cox_type=args.type, n=args.n, p=args.p, tag=args.tag, r_max=args.r_max),
        )
    if args.json:
        print(json.dumps([r.as_record() for r in reports], sort_keys=True, default=str))
    else:
        for report in reports:
            print(report)
    failed = [r for r in reports if not r.ok]
    if failed:
        logger.warning("%d of %d checks failed", len(failed), len(reports))
    return 1 if failed else 0


def cmd_draw(args: argparse.Namespace) -> int:
    if args.object == "hasse":
        if args.n is None:
            raise DomainError("draw hasse needs --n")
        svg = draw_hasse(args.type, args.n, args.out)
    else:
        obj = parse_object(args.object, args.type)
        if isinstance(obj, Forest):
            obj = obj.partition()
        elif not hasattr(obj, "blocks"):
            obj = perm_to_partition(args.type, obj)
        svg = draw_partition(obj, args.out)
    if args.out is None:
        sys.stdout.write(svg)
    return 0


def cmd_aut(args: argparse.Namespace) -> int:
    kind, n = args.type, args.n
    record: Dict[str, Any] = {"type": kind, "n": n, "group": args.group}
    if args.group == "dihedral":
        elements = autos.classify_dihedral(kind, n)
        record["order"] = len(elements)
        record["elements"] = [f"{e.kind} {e.k}" for e in elements]
    elif args.group == "star":
        record["order"] = len(autos.dihedral_group(kind, n, star=True))
    elif args.group == "skew":
        record["order"] = len(autos.skew_group(kind, n))
    elif args.group == "full":
        record["order"] = len(autos.full_aut_group(kind, n))
        record["dihedral_order"] = autos.dihedral_order(kind, n, star=kind.upper() == "D")
    elif args.group == "zeta":
        zeta = autos.exotic_zeta()
        record["moved"] = [f"{a}->{b}" for a, b in zeta.as_pairs() if a != b]
    else:
        record["bipartitions"] = [str(b) for b in autos.all_bipartitions_cyclic(kind, n)]
    emit(args, record)
    return 0


def cmd_enumerate(args: argparse.Namespace) -> int:
    levels = nc_enumerate(args.type, args.n)
    rows = [
        {"rank": r, "element": format_element(w), "partition": format_partition(perm_to_partition(args.type, w))}
        for r, level in levels.items()
        if args.rank is None or r == args.rank
        for w in level
    ]
    if args.json:
        print(json.dumps(rows, sort_keys=True))
    else:
        for row in rows:
            print(f"{row['rank']} {row['element']} {row['partition']}")
    return 0


def cmd_hurwitz(args: argparse.Namespace) -> int:
    stats = hurwitz_stats(args.type, args.n)
    emit(
        args,
        {
            "type": stats.cox_type,
            "n": stats.n,
            "chains": stats.chambers,
            "radius": stats.radius,
            "diameter": stats.diameter,
            "lower_bound": stats.lower_bound,
        },
    )
    if not args.json:
        print(stats.eccentricity.to_string(index=False))
    return 0


def _need(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{name}" for name in names if getattr(args, name) is None]
    if missing:
        raise DomainError(f"metric {args.what} needs {' '.join(missing)}")


def cmd_metric(args: argparse.Namespace) -> int:
    if args.what == "edge":
        _need(args, "i", "j")
        emit(
            args,
            {
                "i": args.i,
                "j": args.j,
                "r": args.r,
                "cos_squared": str(edge_cos_squared(args.i, args.j, args.r)),
                "length": edge_length(args.i, args.j, args.r),
            },
        )
    elif args.what == "holes":
        _need(args, "x", "y")
        path = opposite_link_path_length(args.x, args.y, args.r)
        emit(
            args,
            {
                "x": path.x,
                "y": path.y,
                "r": path.r,
                "A": path.a,
                "B": path.b,
                "C": path.c,
                "total": path.total,
                "error": abs(path.total - math.pi),
                "cos_total": str(exact_cos_total(args.x, args.y, args.r)),
            },
        )
    elif args.what == "path":
        ranks = [int(x) for x in args.ranks.split(",") if x.strip()]
        length = path_length(ranks, args.r)
        emit(args, {"ranks": ranks, "r": args.r, "length": length, "length_over_pi": length / math.pi})
    else:
        frame = pd.DataFrame([{"i": e.i, "j": e.j, "length": e.value} for e in edge_table(args.r)])
        emit_table(args, frame)
    return 0


# --------------------------------------------------------------------------
# parser


def _add_type(parser: argparse.ArgumentParser, default: str = "A") -> None:
    parser.add_argument("--type", default=default, choices=COX_TYPES + tuple(t.lower() for t in COX_TYPES))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ncpart", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug logging")
    parser.add_argument("--json", action="store_true", help="emit JSON instead of key=value lines")
    parser.add_argument("--max-n", type=int, default=None, help="raise every size guard to at least this n")
    sub = parser.add_subparsers(dest="command", required=True)

    count = sub.add_parser("count", help="closed-form and enumerated counting tables")
    count.add_argument("kind", choices=TABLE_KINDS)
    _add_type(count)
    count.add_argument("--n", type=int, required=True)
    count.add_argument("--csv", action="store_true")
    count.set_defaults(func=cmd_count)

    for name, func, text in (("dist", cmd_dist, "gallery distances"), ("hull", cmd_hull, "convex hull of two chambers")):
        p = sub.add_parser(name, help=text)
        p.add_argument("first", help="chamber literal: a reduced word of (1 ... n) or 'flag: v1; v2; ...'")
        p.add_argument("second")
        p.add_argument("--tag", choices=TAGS, default=None)
        if name == "dist":
            p.add_argument("--hull", action="store_true")
        p.set_defaults(func=func)

    check = sub.add_parser("check", help="run a named property check ('list' names them, 'all' runs every one)")
    check.add_argument("name")
    check.add_argument("--type", default=None)
    check.add_argument("--n", type=int, default=None)
    check.add_argument("--p", type=int, default=None)
    check.add_argument("--tag", choices=TAGS, default=None)
    check.add_argument("--r-max", type=int, default=None)
    scope = check.add_mutually_exclusive_group()
    scope.add_argument("--small", dest="full", action="store_false")
    scope.add_argument("--full", dest="full", action="store_true")
    check.set_defaults(func=cmd_check, full=False)

    draw = sub.add_parser("draw", help="SVG of a partition, element or forest; 'hasse' draws NC")
    draw.add_argument("object")
    _add_type(draw)
    draw.add_argument("--n", type=int, default=None)
    draw.add_argument("--out", default=None)
    draw.set_defaults(func=cmd_draw)

    aut = sub.add_parser("aut", help="automorphism groups of NC")
    _add_type(aut)
    aut.add_argument("--n", type=int, default=4)
    aut.add_argument("--group", choices=GROUPS, default="dihedral")
    aut.set_defaults(func=cmd_aut)

    enum = sub.add_parser("enumerate", help="elements of NC by rank")
    _add_type(enum)
    enum.add_argument("--n", type=int, default=4)
    enum.add_argument("--rank", type=int, default=None)
    enum.set_defaults(func=cmd_enumerate)

    hurwitz = sub.add_parser("hurwitz", help="radius and diameter of the Hurwitz graph")
    _add_type(hurwitz)
    hurwitz.add_argument("--n", type=int, default=4)
    hurwitz.set_defaults(func=cmd_hurwitz)

    metric = sub.add_parser("metric", help="spherical edge lengths")
    metric.add_argument("what", choices=("edge", "holes", "path", "table"))
    for flag in ("i", "j", "x", "y"):
        metric.add_argument(f"--{flag}", type=int, default=None)
    metric.add_argument("--r", type=int, default=3)
    metric.add_argument("--ranks", default="")
    metric.set_defaults(func=cmd_metric)
    return parser


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    try:
        if args.max_n is not None:
            set_max_n(args.max_n)
        return args.func(args)
    except NcpartError as exc:
        print(f"ncpart: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
