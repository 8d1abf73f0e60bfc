"""Versioned JSON documents for representations.

One document format covers both kinds of system: half-turn systems store
their fixed points, pair-product systems store their generator matrices.
Numbers are written with 17 significant digits so the decimal form pins
down the underlying double exactly; reading a document back yields the
same floats, and rewriting yields the same text.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import hyperelliptic as hyp
from . import surface as surf
from .errors import DocumentError

__all__ = [
    "SCHEMA_VERSION", "RepDocument",
    "document_from", "to_rep",
    "to_json_obj", "from_json_obj",
    "dumps", "loads", "dump", "load",
]

SCHEMA_VERSION = "discgroup.rep/1"

KIND_HALF_TURN = "hyp"
KIND_PAIR_PRODUCT = "surf"


@dataclass(frozen=True)
class RepDocument:
    """Parsed form of a representation file."""

    kind: str
    n: int
    sign: int
    centers: tuple = ()          # complex fixed points, half-turn kind
    matrices: tuple = ()         # 2x2 complex arrays, pair-product kind
    metadata: dict = field(default_factory=dict)
    version: str = SCHEMA_VERSION


def document_from(rep, metadata=None) -> RepDocument:
    """Wrap a validated representation in a document."""
    meta = dict(metadata or {})
    if isinstance(rep, hyp.HypRep):
        return RepDocument(
            kind=KIND_HALF_TURN, n=rep.n, sign=rep.sign,
            centers=tuple(complex(q.disc) for q in rep.centers),
            metadata=meta)
    if isinstance(rep, surf.SurfRep):
        sign = int(meta.pop("sign", 1))
        return RepDocument(
            kind=KIND_PAIR_PRODUCT, n=rep.n, sign=sign,
            matrices=tuple(np.array(g.mat, dtype=complex) for g in rep.gens),
            metadata=meta)
    raise DocumentError(f"cannot serialize a {type(rep).__name__}")


def to_rep(doc: RepDocument):
    """Rebuild and re-validate the representation a document describes."""
    if doc.kind == KIND_HALF_TURN:
        return hyp.validate(doc.centers, doc.n)
    return surf.validate_relations(list(doc.matrices), doc.n)


# -- rendering -----------------------------------------------------------


def _fmt(x: float) -> str:
    if not np.isfinite(x):
        raise DocumentError("documents hold finite numbers only")
    return f"{float(x):.17g}"


def _emit(obj, out) -> None:
    # a hand-rolled emitter so floats keep their 17-digit rendering;
    # the document grammar is small enough that this stays trivial
    if isinstance(obj, dict):
        out.append("{")
        for k, v in obj.items():
            if out[-1] != "{":
                out.append(", ")
            out.append(json.dumps(k) + ": ")
            _emit(v, out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for v in obj:
            if out[-1] != "[":
                out.append(", ")
            _emit(v, out)
        out.append("]")
    elif isinstance(obj, bool) or obj is None:
        out.append(json.dumps(obj))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(_fmt(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    else:
        raise DocumentError(f"cannot serialize a {type(obj).__name__}")


def _pair(z: complex) -> list:
    return [float(z.real), float(z.imag)]


def to_json_obj(doc: RepDocument) -> dict:
    """The document as a plain JSON-ready object tree."""
    body = {"version": doc.version, "kind": doc.kind,
            "n": doc.n, "sign": doc.sign}
    if doc.kind == KIND_HALF_TURN:
        body["centers"] = [_pair(complex(z)) for z in doc.centers]
    else:
        body["matrices"] = [[[_pair(complex(m[r, c])) for c in (0, 1)]
                             for r in (0, 1)] for m in doc.matrices]
    if doc.metadata:
        body["metadata"] = doc.metadata
    return body


def dumps(doc: RepDocument) -> str:
    out: list[str] = []
    _emit(to_json_obj(doc), out)
    return "".join(out) + "\n"


# -- parsing -------------------------------------------------------------


def _want(cond, msg):
    if not cond:
        raise DocumentError(msg)


def _complex_pair(v, what):
    _want(isinstance(v, list) and len(v) == 2
          and all(isinstance(c, (int, float)) and not isinstance(c, bool)
                  for c in v),
          f"{what} must be a [re, im] pair")
    return complex(float(v[0]), float(v[1]))


def _parse_int(tok: str):
    # the one integer literal whose float meaning differs from its int
    # meaning: keep the sign of zero so documents round-trip bitwise
    return -0.0 if tok == "-0" else int(tok)


def loads(text: str) -> RepDocument:
    try:
        raw = json.loads(text, parse_int=_parse_int)
    except json.JSONDecodeError as exc:
        raise DocumentError(
            f"line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return from_json_obj(raw)


def from_json_obj(raw) -> RepDocument:
    """Validate an already-parsed object tree into a document."""
    _want(isinstance(raw, dict), "document must be a JSON object")
    _want(raw.get("version") == SCHEMA_VERSION,
          f"unsupported version {raw.get('version')!r}; "
          f"expected {SCHEMA_VERSION!r}")
    kind = raw.get("kind")
    _want(kind in (KIND_HALF_TURN, KIND_PAIR_PRODUCT),
          f"kind must be 'hyp' or 'surf', got {kind!r}")
    n = raw.get("n")
    _want(isinstance(n, int) and not isinstance(n, bool) and n >= 1,
          "n must be a positive integer")
    sign = raw.get("sign", 1)
    _want(sign in (1, -1), "sign must be 1 or -1")
    meta = raw.get("metadata", {})
    _want(isinstance(meta, dict), "metadata must be an object")

    if kind == KIND_HALF_TURN:
        pts = raw.get("centers")
        _want(isinstance(pts, list) and len(pts) == n,
              f"centers must list exactly n = {n} points")
        centers = tuple(_complex_pair(p, f"centers[{j}]")
                        for j, p in enumerate(pts))
        return RepDocument(kind=kind, n=n, sign=sign, centers=centers,
                           metadata=meta)

    mats = raw.get("matrices")
    _want(isinstance(mats, list) and len(mats) == n,
          f"matrices must list exactly n = {n} entries")
    parsed = []
    for j, m in enumerate(mats):
        _want(isinstance(m, list) and len(m) == 2
              and all(isinstance(r, list) and len(r) == 2 for r in m),
              f"matrices[{j}] must be a 2x2 array")
        parsed.append(np.array(
            [[_complex_pair(m[r][c], f"matrices[{j}][{r}][{c}]")
              for c in (0, 1)] for r in (0, 1)], dtype=complex))
    return RepDocument(kind=kind, n=n, sign=sign, matrices=tuple(parsed),
                       metadata=meta)


def dump(doc: RepDocument, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(doc))


def load(path) -> RepDocument:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from exc
