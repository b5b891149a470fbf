"""JSON encoding of functions, polygons and generated instances.

Coordinates and slopes are written as ``"p/q"`` strings (``"3"`` for
integers) so that a round trip is exact.
"""
from __future__ import annotations

import json
from typing import Any, Tuple

from .geom import Point, format_rational, point, rational
from .plf import PLFunction, plf_new
from .polygon import SimplePolygon, polygon_new


def _pt(p: Point) -> list:
    return [format_rational(p.x), format_rational(p.y)]


def dump_plf(f: PLFunction) -> dict:
    out = {"vertices": [_pt(v) for v in f.vertices],
           "left_slope": format_rational(f.left_slope),
           "right_slope": format_rational(f.right_slope)}
    if f.anchor is not None:
        out["anchor"] = _pt(f.anchor)
    return out


def load_plf(doc: dict) -> PLFunction:
    anchor = doc.get("anchor")
    return plf_new([point(*v) for v in doc["vertices"]], rational(doc["left_slope"]),
                   rational(doc["right_slope"]), point(*anchor) if anchor is not None else None)


def dump_polygon(P: SimplePolygon) -> dict:
    return {"vertices": [_pt(v) for v in P.vertices]}


def load_polygon(doc: dict) -> SimplePolygon:
    return polygon_new([point(*v) for v in doc["vertices"]])


def _encode(value: Any) -> Any:
    """Generic encoder for trace payloads."""
    if isinstance(value, Point):
        return _pt(value)
    if isinstance(value, (list, tuple)):
        return [_encode(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _encode(v) for k, v in value.items()}
    if isinstance(value, (str, bool)) or value is None:
        return value
    if isinstance(value, int):
        return value
    return format_rational(value)


def dump_instance(kind: str, first, second, trace=None) -> dict:
    dump = dump_plf if kind == "envelope" else dump_polygon
    doc = {"kind": kind, "inputs": [dump(first), dump(second)]}
    if trace is not None:
        doc["params"] = dict(trace.params)
        doc["expected_n0"] = trace.expected_n0
        doc["expected_secondary"] = trace.expected_secondary
        doc["trace"] = {
            "stages": [{"stage": name, "points": _encode(pts)} for name, pts in trace.stage_log],
            "auxiliary": _encode(trace.auxiliary),
        }
    return doc


def load_instance(doc: dict) -> Tuple[str, Any, Any]:
    kind = doc["kind"]
    if kind not in ("envelope", "union", "intersection"):
        raise ValueError(f"unknown instance kind {kind!r}")
    load = load_plf if kind == "envelope" else load_polygon
    first, second = (load(d) for d in doc["inputs"])
    return kind, first, second


def write_json(path: str, doc: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def read_json(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
