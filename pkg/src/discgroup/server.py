"""Stateless JSON-over-HTTP service.

Every endpoint is a pure function of its request body; responses all
carry the same state block — document, verdict, area, certificate cycle
and fundamental polygon — so a client can render any result without a
follow-up call.  Malformed bodies get 400, domain errors get 422 with
the raising error's class name, everything else 200.
"""
from __future__ import annotations

import math
import os

from fastapi import FastAPI, HTTPException, Request
from fastapi.responses import JSONResponse

from . import hyperelliptic as hyp
from . import sampling
from . import serialize
from . import surface as surf
from . import svg as _svg
from .errors import DiscGroupError, DocumentError, NotDiscrete

__all__ = ["create_app"]


def _pair(z: complex):
    return [float(z.real), float(z.imag)]


async def _body(request: Request) -> dict:
    try:
        data = await request.json()
    except Exception:
        raise HTTPException(status_code=400,
                            detail="body is not valid JSON")
    if not isinstance(data, dict):
        raise HTTPException(status_code=400,
                            detail="body must be a JSON object")
    return data


def _polygon_block(doc, rep):
    try:
        if doc.kind == serialize.KIND_HALF_TURN:
            poly = rep.fundamental_polygon()
            block = {
                "vertices": [_pair(complex(v.disc))
                             for v in poly.vertices],
                "angle_sum": poly.angle_sum,
                "area": poly.area,
                "midpoints": [_pair(complex(p.disc))
                              for p in poly.midpoints],
            }
        else:
            poly = surf.fundamental_polygon_surface(rep)
            block = {
                "vertices": [_pair(complex(v.disc))
                             for v in poly.vertices],
                "angle_sum": poly.angle_sum,
                "area": poly.area,
                "pairings": [[[_pair(complex(g.mat[r, c]))
                               for c in (0, 1)] for r in (0, 1)]
                             for g in poly.pairings],
            }
        return poly, block
    except DiscGroupError:
        return None, None


def _state(doc, rep) -> dict:
    if doc.kind == serialize.KIND_HALF_TURN:
        report = rep.is_discrete()
        orientation = report.cycle.orientation
        cycle = [_pair(complex(p.disc)) for p in report.cycle.points]
    else:
        report = surf.is_discrete_goldman(rep)
        cert = report.certificate
        orientation = cert.orientation if cert else "neither"
        cycle = ([_pair(complex(p.disc))
                  for p in cert.cycle_from_attractor] if cert else None)
    _, polygon = _polygon_block(doc, rep)
    return {
        "document": serialize.to_json_obj(doc),
        "verdict": report.verdict,
        "area": report.area,
        "area_over_pi": report.area / math.pi,
        "max_area": report.max_area,
        "orientation": orientation,
        "cycle": cycle,
        "polygon": polygon,
    }


def create_app() -> FastAPI:
    app = FastAPI(title="discgroup service")

    @app.exception_handler(DiscGroupError)
    async def _domain_error(request: Request, exc: DiscGroupError):
        return JSONResponse(status_code=422, content={
            "error": type(exc).__name__, "detail": str(exc)})

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError):
        return JSONResponse(status_code=422, content={
            "error": "ValueError", "detail": str(exc)})

    @app.post("/api/sample")
    async def api_sample(request: Request):
        data = await _body(request)
        cfg = sampling.SampleConfig(
            n=int(data.get("n", 0)),
            seed=int(data.get("seed", 0)),
            sign=int(data.get("sign", 1)))
        draw = sampling.sample_generic if data.get("generic") \
            else sampling.sample_discrete
        rep = draw(cfg, index=int(data.get("index", 0)))
        doc = serialize.document_from(rep, metadata={
            "seed": cfg.seed,
            "provenance": "generic" if data.get("generic")
            else "discrete"})
        return _state(doc, rep)

    @app.post("/api/check")
    async def api_check(request: Request):
        doc = serialize.from_json_obj(await _body(request))
        return _state(doc, serialize.to_rep(doc))

    @app.post("/api/quake")
    async def api_quake(request: Request):
        data = await _body(request)
        doc = serialize.from_json_obj(data.get("document"))
        rep = serialize.to_rep(doc)
        moves = data.get("moves")
        if not isinstance(moves, list):
            raise DocumentError('quake needs "moves": [{"i":..,"t":..}]')
        is_hyp = doc.kind == serialize.KIND_HALF_TURN
        for mv in moves:
            i, t = int(mv["i"]), float(mv["t"])
            rep = rep.earthquake(i, t) if is_hyp \
                else surf.earthquake_gn(rep, i, t)
        meta = dict(doc.metadata)
        if not is_hyp:
            meta["sign"] = doc.sign
        out = serialize.document_from(rep, metadata=meta)
        return _state(out, rep)

    @app.post("/api/coords/from")
    async def api_coords_from(request: Request):
        data = await _body(request)
        angles = data.get("angles")
        if not isinstance(angles, list):
            raise DocumentError('coords/from needs "angles": [..]')
        tup = hyp.BoundaryTuple([float(a) for a in angles],
                                sign=int(data.get("sign", 1)))
        rep = hyp.from_boundary_tuple(tup)
        doc = serialize.document_from(rep, metadata={
            "provenance": "boundary_tuple"})
        return _state(doc, rep)

    @app.post("/api/coords/to")
    async def api_coords_to(request: Request):
        doc = serialize.from_json_obj(await _body(request))
        if doc.kind != serialize.KIND_HALF_TURN:
            raise DocumentError(
                "boundary coordinates apply to half-turn documents")
        rep = serialize.to_rep(doc)
        tup = rep.to_boundary_tuple()
        state = _state(doc, rep)
        state["angles"] = list(tup.angles)
        state["sign"] = tup.sign
        return state

    @app.post("/api/polygon")
    async def api_polygon(request: Request):
        data = await _body(request)
        doc = serialize.from_json_obj(data.get("document", data))
        rep = serialize.to_rep(doc)
        state = _state(doc, rep)
        if state["polygon"] is None:
            raise NotDiscrete("no fundamental polygon: not discrete")
        if data.get("svg"):
            depth = int(data.get("tiling_depth", 0))
            poly, _ = _polygon_block(doc, rep)
            if doc.kind == serialize.KIND_HALF_TURN:
                pairings = [rep.generator(i)
                            for i in range(1, rep.n + 1)]
                mids = poly.midpoints
            else:
                pairings = list(poly.pairings)
                mids = ()
            state["svg"] = _svg.polygon_svg(poly, pairings, depth,
                                            midpoints=mids)
        return state

    ui_dir = os.environ.get("DISCGROUP_UI_DIR")
    if ui_dir and os.path.isdir(ui_dir):
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True),
                  name="ui")

    return app
