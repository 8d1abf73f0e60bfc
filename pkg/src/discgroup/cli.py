"""Command-line front end.

Exit codes, shared by every subcommand: 0 success (discrete where a
verdict is involved), 1 not discrete, 2 bad flags or values, 3 sampler
gave up, 4 unreadable or invalid document, 5 degenerate deformation,
6 coordinate ordering violation.

The default tolerance of the geometric kernel can be overridden through
the DISCGROUP_TOL environment variable before start-up.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

from . import hyperelliptic as hyp
from . import sampling
from . import serialize
from . import surface as surf
from . import svg as _svg
from .errors import (
    BadOrdering,
    DegeneratePair,
    DiscGroupError,
    DocumentError,
    NotDiscrete,
    NotHyperbolic,
    RetryBudgetExhausted,
)

__all__ = ["main"]

EXIT_OK = 0
EXIT_NOT_DISCRETE = 1
EXIT_USAGE = 2
EXIT_SAMPLER = 3
EXIT_BAD_FILE = 4
EXIT_DEGENERATE = 5
EXIT_ORDERING = 6


def _err(msg) -> None:
    print(f"error: {msg}", file=sys.stderr)


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def _load(path):
    doc = serialize.load(path)
    return doc, serialize.to_rep(doc)


def _emit_document(doc, out_path) -> None:
    if out_path:
        serialize.dump(doc, out_path)
    else:
        sys.stdout.write(serialize.dumps(doc))


# -- subcommands ---------------------------------------------------------


def cmd_sample(args) -> int:
    try:
        cfg = sampling.SampleConfig(n=args.n, seed=args.seed,
                                    sign=args.sign)
    except ValueError as exc:
        _err(exc)
        return EXIT_USAGE
    draw = sampling.sample_generic if args.generic \
        else sampling.sample_discrete
    try:
        rep = draw(cfg, index=args.index)
    except RetryBudgetExhausted as exc:
        _err(exc)
        return EXIT_SAMPLER
    report = rep.is_discrete()
    doc = serialize.document_from(rep, metadata={
        "seed": args.seed,
        "provenance": "generic" if args.generic else "discrete",
    })
    summary = (f"n {rep.n}  verdict {report.verdict}  "
               f"area {_fmt(report.area)}")
    # keep stdout clean for the document when no --out is given
    print(summary, file=sys.stdout if args.out else sys.stderr)
    _emit_document(doc, args.out)
    return EXIT_OK


def _verdict_of(doc, rep, i=None):
    """Uniform (verdict, area, orientation, extras) across both kinds."""
    if doc.kind == serialize.KIND_HALF_TURN:
        report = rep.is_discrete(i)
        return (report.verdict, report.area, report.cycle.orientation,
                {"base_index": report.base_index,
                 "closure_error": report.cycle.closure_error,
                 "max_area": report.max_area})
    report = surf.is_discrete_goldman(rep)
    cert = report.certificate
    orientation = cert.orientation if cert else "neither"
    extras = {"max_area": report.max_area}
    if cert:
        extras["endpoint_match_error"] = cert.endpoint_match_error
    return report.verdict, report.area, orientation, extras


def cmd_check(args) -> int:
    doc, rep = _load(args.file)
    verdict, area, orientation, extras = _verdict_of(doc, rep, args.i)
    payload = {
        "kind": doc.kind,
        "n": doc.n,
        "verdict": verdict,
        "area": area,
        "area_over_pi": area / math.pi,
        "orientation": orientation,
        **extras,
    }
    if args.probe_depth > 0:
        probe = sampling.orbit_probe(rep, args.probe_depth,
                                     args.probe_floor)
        payload["probe"] = {
            "verdict": probe.verdict,
            "length_bound": probe.length_bound,
            "min_displacement": probe.min_displacement,
        }
    print(json.dumps(payload, indent=2))
    discrete = verdict in (hyp.DISCRETE_POS, hyp.DISCRETE_NEG)
    return EXIT_OK if discrete else EXIT_NOT_DISCRETE


def _parse_moves(text: str):
    moves = []
    for tok in text.split(","):
        i_str, _, t_str = tok.partition(":")
        moves.append((int(i_str), float(t_str)))
    return moves


def cmd_quake(args) -> int:
    try:
        moves = _parse_moves(args.moves)
    except ValueError as exc:
        _err(f"bad --moves value: {exc}")
        return EXIT_USAGE
    doc, rep = _load(args.file)
    is_hyp = doc.kind == serialize.KIND_HALF_TURN
    area_before = rep.area() if is_hyp else surf.area_surface(rep)
    for k, (i, t) in enumerate(moves, start=1):
        try:
            rep = rep.earthquake(i, t) if is_hyp \
                else surf.earthquake_gn(rep, i, t)
        except (DegeneratePair, NotHyperbolic) as exc:
            raise type(exc)(f"move {k} ({i}:{t}): {exc}") from exc
    area_after = rep.area() if is_hyp else surf.area_surface(rep)
    meta = dict(doc.metadata)
    meta["moves"] = args.moves
    if not is_hyp:
        meta["sign"] = doc.sign
    out_doc = serialize.document_from(rep, metadata=meta)
    stream = sys.stdout if args.out else sys.stderr
    print(f"area before {_fmt(area_before)}", file=stream)
    print(f"area after  {_fmt(area_after)}", file=stream)
    print(f"area delta  {_fmt(area_after - area_before)}", file=stream)
    _emit_document(out_doc, args.out)
    return EXIT_OK


def cmd_coords(args) -> int:
    if args.to == args.from_:
        _err("choose exactly one of --to / --from")
        return EXIT_USAGE
    if args.to:
        if not args.file:
            _err("--to reads a document file")
            return EXIT_USAGE
        doc, rep = _load(args.file)
        if doc.kind != serialize.KIND_HALF_TURN:
            raise DocumentError(
                "boundary coordinates apply to half-turn documents")
        tup = rep.to_boundary_tuple(args.i)
        print(f"sign {tup.sign:+d}")
        print(",".join(_fmt(a) for a in tup.angles))
        return EXIT_OK
    if not args.tuple:
        _err("--from needs --tuple \"a1,a2,...\"")
        return EXIT_USAGE
    try:
        angles = [float(tok) for tok in args.tuple.split(",")]
    except ValueError as exc:
        _err(f"bad --tuple value: {exc}")
        return EXIT_USAGE
    tup = hyp.BoundaryTuple(angles, sign=args.sign)
    rep = hyp.from_boundary_tuple(tup)
    doc = serialize.document_from(rep, metadata={
        "provenance": "boundary_tuple"})
    _emit_document(doc, args.out)
    return EXIT_OK


def _pair(z: complex):
    return [float(z.real), float(z.imag)]


def cmd_polygon(args) -> int:
    doc, rep = _load(args.file)
    is_hyp = doc.kind == serialize.KIND_HALF_TURN
    if is_hyp:
        poly = rep.fundamental_polygon()
        pairings = [rep.generator(i) for i in range(1, rep.n + 1)]
        midpoints = poly.midpoints
    else:
        poly = surf.fundamental_polygon_surface(rep)
        pairings = list(poly.pairings)
        midpoints = ()

    if args.format == "svg":
        text = _svg.polygon_svg(poly, pairings, args.tiling_depth,
                                midpoints=midpoints)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return EXIT_OK

    payload = {
        "kind": doc.kind,
        "n": doc.n,
        "vertices": [_pair(complex(v.disc)) for v in poly.vertices],
        "angle_sum": poly.angle_sum,
        "angle_sum_over_pi": poly.angle_sum / math.pi,
        "area": poly.area,
    }
    if is_hyp:
        payload["midpoints"] = [_pair(complex(p.disc))
                                for p in poly.midpoints]
        payload["convex"] = poly.convex
    else:
        payload["pairings"] = [
            [[_pair(complex(g.mat[r, c])) for c in (0, 1)]
             for r in (0, 1)] for g in poly.pairings]
        payload["relation_residual"] = poly.relation_residual
        payload["vertex_cycle_error"] = poly.vertex_cycle_error
        payload["pairing_endpoint_error"] = poly.pairing_endpoint_error
    text = json.dumps(payload, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return EXIT_OK


# -- parser --------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="discgroup",
        description="Half-turn and pair-product representations on the "
                    "disc: sampling, discreteness checks, coordinates, "
                    "earthquakes, polygons.")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="draw a representation")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sign", type=int, default=1, choices=(1, -1))
    p.add_argument("--index", type=int, default=0)
    p.add_argument("--generic", action="store_true",
                   help="draw from the ambient space instead of the "
                        "discrete locus")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("check", help="discreteness report for a file")
    p.add_argument("file")
    p.add_argument("--i", type=int, default=None,
                   help="base index for the certificate")
    p.add_argument("--probe-depth", type=int, default=0,
                   help="corroborate with an orbit scan to this length")
    p.add_argument("--probe-floor", type=float, default=1e-3)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("quake", help="apply earthquake moves")
    p.add_argument("file")
    p.add_argument("--moves", required=True,
                   help='comma list "i:t,i:t,..." applied left to right')
    p.add_argument("--out")
    p.set_defaults(func=cmd_quake)

    p = sub.add_parser("coords", help="boundary-angle coordinates")
    p.add_argument("file", nargs="?")
    p.add_argument("--to", action="store_true",
                   help="file -> angle tuple")
    p.add_argument("--from", dest="from_", action="store_true",
                   help="angle tuple -> document")
    p.add_argument("--tuple", help='angles "a1,a2,..." in radians')
    p.add_argument("--sign", type=int, default=1, choices=(1, -1))
    p.add_argument("--i", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_coords)

    p = sub.add_parser("polygon", help="fundamental polygon report")
    p.add_argument("file")
    p.add_argument("--format", choices=("json", "svg"), default="json")
    p.add_argument("--tiling-depth", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_polygon)

    p = sub.add_parser("serve", help="run the JSON service")
    p.add_argument("--port", type=int, default=8787)
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(func=cmd_serve)

    return top


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except DocumentError as exc:
        _err(exc)
        return EXIT_BAD_FILE
    except (DegeneratePair, NotHyperbolic) as exc:
        _err(exc)
        return EXIT_DEGENERATE
    except BadOrdering as exc:
        _err(exc)
        return EXIT_ORDERING
    except NotDiscrete as exc:
        _err(exc)
        return EXIT_NOT_DISCRETE
    except RetryBudgetExhausted as exc:
        _err(exc)
        return EXIT_SAMPLER
    except DiscGroupError as exc:
        _err(exc)
        return EXIT_BAD_FILE


if __name__ == "__main__":
    sys.exit(main())
