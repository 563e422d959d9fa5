"""Quiver description files (JSON).

Schema (unknown keys are rejected):

    {
      "vertices": 2,
      "ordinary": [],
      "pairs": [[1, 2]],
      "arrows": [{"id": "b", "from": 1, "to": 2}, ...],
      "dims": [{"size": 2, "starred": false}, {"size": 2, "starred": true}],
      "supermixed": {                      # optional
        "factors": [{"vertex": 1, "group": "Sp"} | {"pair": 0, "group": "O"}],
        "shapes":  [{"arrow": "a", "shape": "symmetric"}]
      }
    }

Pairs list the plain member first and the starred member second; "pair"
indices in the supermixed block are 0-based positions into "pairs".
"""

from __future__ import annotations

import json

from .errors import ParseError
from .quiver import validate
from .supermixed import make_spec

_TOP_KEYS = {"vertices", "ordinary", "pairs", "arrows", "dims", "supermixed"}
_ARROW_KEYS = {"id", "from", "to"}
_DIM_KEYS = {"size", "starred"}
_SUPER_KEYS = {"factors", "shapes"}
_FACTOR_KEYS = {"vertex", "pair", "group"}
_SHAPE_KEYS = {"arrow", "shape"}


def parse_spec_text(text: str, source: str = "<string>"):
    """Parse a quiver spec; returns (quiver, dims, supermixed spec or None)."""
    if not text.strip():
        raise ParseError(f"{source}: empty specification file")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{source}:{e.lineno}:{e.colno}: {e.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError(f"{source}: top level must be an object")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise ParseError(f"{source}: unknown keys {sorted(unknown)}")
    for key in ("vertices", "arrows", "dims"):
        if key not in doc:
            raise ParseError(f"{source}: missing key {key!r}")

    arrows = []
    for k, rec in enumerate(doc["arrows"]):
        if not isinstance(rec, dict) or set(rec) - _ARROW_KEYS:
            raise ParseError(f"{source}: arrows[{k}] must be an object with id/from/to")
        try:
            arrows.append((str(rec["id"]), int(rec["from"]), int(rec["to"])))
        except (KeyError, TypeError, ValueError):
            raise ParseError(f"{source}: arrows[{k}] is malformed") from None
    dims = []
    for k, rec in enumerate(doc["dims"]):
        if not isinstance(rec, dict) or set(rec) - _DIM_KEYS:
            raise ParseError(f"{source}: dims[{k}] must be an object with size/starred")
        try:
            dims.append((int(rec["size"]), bool(rec.get("starred", False))))
        except (TypeError, ValueError):
            raise ParseError(f"{source}: dims[{k}] is malformed") from None

    quiver, t = validate(int(doc["vertices"]), doc.get("ordinary", []),
                         doc.get("pairs", []), arrows, dims)

    sm = None
    if "supermixed" in doc:
        block = doc["supermixed"]
        if not isinstance(block, dict) or set(block) - _SUPER_KEYS:
            raise ParseError(f"{source}: malformed supermixed block")
        factors = {}
        for k, rec in enumerate(block.get("factors", [])):
            if not isinstance(rec, dict) or set(rec) - _FACTOR_KEYS or "group" not in rec:
                raise ParseError(f"{source}: supermixed.factors[{k}] is malformed")
            if ("vertex" in rec) == ("pair" in rec):
                raise ParseError(
                    f"{source}: supermixed.factors[{k}] needs exactly one of vertex/pair")
            key = ("v", int(rec["vertex"])) if "vertex" in rec else ("q", int(rec["pair"]))
            factors[key] = str(rec["group"])
        shapes = {}
        for k, rec in enumerate(block.get("shapes", [])):
            if not isinstance(rec, dict) or set(rec) - _SHAPE_KEYS:
                raise ParseError(f"{source}: supermixed.shapes[{k}] is malformed")
            shapes[str(rec["arrow"])] = str(rec["shape"])
        sm = make_spec(quiver, t, factors, shapes)
    return quiver, t, sm


def parse_spec(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ParseError(f"{path}: {e.strerror}") from None
    return parse_spec_text(text, source=path)


def quiver_to_dict(quiver, t) -> dict:
    return {
        "vertices": quiver.nvertices,
        "ordinary": sorted(quiver.ordinary),
        "pairs": [list(p) for p in quiver.pairs],
        "arrows": [{"id": a.id, "from": a.origin, "to": a.end} for a in quiver.arrows],
        "dims": [{"size": t.size(v), "starred": t.is_starred(v)} for v in quiver.vertices()],
    }
