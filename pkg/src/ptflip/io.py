"""JSON readers and writers for point sets, labelled pseudo-triangulations,
flip traces and pseudo-polygons.

Schemas (all keys required unless noted)::

    point set   {"points": [[x, y], ...]}
    pt          {"points": [...], "edges": [[u, v], ...], "labels": {"u-v": label}}
    trace       {"initial": <pt>, "events": [{"kind", "removed"?, "inserted"?, "label"}],
                 "stats"?: {...}}
    polygon     {"points": [...], "walk": [v, ...]}
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .flips import FlipEvent, FlipTrace
from .geometry import GeometryError, PointSet, edge
from .polygon import PseudoPolygon
from .triangulation import LabelError, PseudoTriangulation


class FormatError(ValueError):
    pass


def _points(doc: Any) -> PointSet:
    if not isinstance(doc, dict) or "points" not in doc:
        raise FormatError("missing 'points'")
    pts = doc["points"]
    if not isinstance(pts, list) or not all(isinstance(p, list) and len(p) == 2 for p in pts):
        raise FormatError("'points' must be a list of [x, y] pairs")
    try:
        return PointSet(pts)
    except GeometryError as exc:
        raise FormatError(str(exc)) from exc


def points_to_json(ps: PointSet) -> dict:
    return {"points": [list(p) for p in ps.coords]}


def points_from_json(doc: Any) -> PointSet:
    return _points(doc)


def pt_to_json(t: PseudoTriangulation) -> dict:
    return {
        "points": [list(p) for p in t.points.coords],
        "edges": [list(e) for e in sorted(t.edges)],
        "labels": {f"{u}-{v}": lab for (u, v), lab in sorted(t.labels.items())},
    }


def pt_from_json(doc: Any, points: PointSet | None = None) -> PseudoTriangulation:
    ps = points if points is not None else _points(doc)
    try:
        edges = [edge(int(u), int(v)) for u, v in doc["edges"]]
        labels = {}
        for k, lab in doc.get("labels", {}).items():
            u, v = k.split("-")
            labels[edge(int(u), int(v))] = int(lab)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed pseudo-triangulation: {exc}") from exc
    for u, v in edges:
        if not (0 <= u < ps.n and 0 <= v < ps.n) or u == v:
            raise FormatError(f"bad edge {(u, v)}")
    try:
        t = PseudoTriangulation(ps, edges, labels)
    except (LabelError, ValueError) as exc:
        raise FormatError(str(exc)) from exc
    return t


def trace_to_json(tr: FlipTrace, stats: dict | None = None) -> dict:
    doc = {"initial": pt_to_json(tr.initial), "events": [ev.to_json() for ev in tr.events]}
    if stats is not None:
        doc["stats"] = stats
    return doc


def trace_from_json(doc: Any) -> FlipTrace:
    if not isinstance(doc, dict) or "initial" not in doc or "events" not in doc:
        raise FormatError("trace needs 'initial' and 'events'")
    t = pt_from_json(doc["initial"])
    try:
        evs = [FlipEvent.from_json(d) for d in doc["events"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed event: {exc}") from exc
    return FlipTrace(t, evs)


def polygon_to_json(x: PseudoPolygon) -> dict:
    return x.to_json()


def polygon_from_json(doc: Any) -> PseudoPolygon:
    ps = _points(doc)
    walk = doc.get("walk")
    if not isinstance(walk, list) or not all(isinstance(v, int) and 0 <= v < ps.n for v in walk):
        raise FormatError("'walk' must list vertex indices")
    return PseudoPolygon(ps.coords, tuple(walk))


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc


def write_json(path: str | Path, doc: Any) -> None:
    Path(path).write_text(dumps(doc))
