"""JSON formats: finite instances, convex scenes, topologies and reports.

Rationals travel as ``"p/q"`` strings (integers also accepted on input) and
infinity as ``"inf"``. Floats are rejected on input and never written.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from typing import Optional

import jsonschema

from .backends import Convex2dBackend, FiniteBackend
from .convex2d import ConvexityError, ConvexPolygon, PolyhedralNorm
from .extended import ext, fmt, parse_rational
from .metric import FiniteSpace, MetricAxiomError


class InputError(ValueError):
    """Malformed or invalid input; the message names the offending field."""


@dataclass
class Instance:
    kind: str  # "finite" or "convex2d"
    names: list
    sets: list
    backend: object
    space: Optional[FiniteSpace] = None
    norm: Optional[PolyhedralNorm] = None

    def by_name(self, name):
        try:
            return self.sets[self.names.index(name)]
        except ValueError:
            raise InputError(f"boundary.{name}: unknown set name") from None


def read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}") from None


def _rational(value, where, signed=False):
    if not isinstance(value, (int, str)) or isinstance(value, bool):
        raise InputError(f"{where}: expected integer or 'p/q' string, got {value!r}")
    try:
        return parse_rational(value) if signed else ext(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise InputError(f"{where}: {exc}") from None


def _need(obj, key, kind, where):
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected an object")
    if key not in obj:
        raise InputError(f"{where}.{key}: missing field")
    if not isinstance(obj[key], kind):
        raise InputError(f"{where}.{key}: wrong type")
    return obj[key]


def parse_finite(data) -> Instance:
    points = _need(data, "points", list, "instance")
    dist = _need(data, "dist", list, "instance")
    rows = []
    for i, row in enumerate(dist):
        if not isinstance(row, list):
            raise InputError(f"instance.dist[{i}]: expected a list")
        rows.append([_rational(v, f"instance.dist[{i}][{j}]") for j, v in enumerate(row)])
    try:
        space = FiniteSpace(points, rows)
    except MetricAxiomError as exc:
        raise InputError(f"instance.dist: {exc}") from None
    raw_sets = data.get("sets")
    if raw_sets is None:
        raw_sets = [{"name": f"M{i + 1}", "members": [p]} for i, p in enumerate(space.labels)]
    if not isinstance(raw_sets, list) or not raw_sets:
        raise InputError("instance.sets: expected a nonempty list")
    names, sets = [], []
    for i, s in enumerate(raw_sets):
        name = _need(s, "name", str, f"instance.sets[{i}]")
        members = _need(s, "members", list, f"instance.sets[{i}]")
        if not members:
            raise InputError(f"instance.sets[{i}].members: sets must be nonempty")
        try:
            sets.append(space.subset(members))
        except (KeyError, IndexError) as exc:
            raise InputError(f"instance.sets[{i}].members: {exc.args[0]}") from None
        names.append(name)
    if len(set(names)) != len(names):
        raise InputError("instance.sets: set names must be distinct")
    return Instance("finite", names, sets, FiniteBackend(space), space=space)


def _polygon(vertices, where):
    if not isinstance(vertices, list) or not vertices:
        raise InputError(f"{where}: expected a nonempty list of [x, y]")
    pts = []
    for k, p in enumerate(vertices):
        if not isinstance(p, list) or len(p) != 2:
            raise InputError(f"{where}[{k}]: expected [x, y]")
        pts.append(tuple(_rational(c, f"{where}[{k}]", signed=True) for c in p))
    try:
        return ConvexPolygon(pts)
    except ConvexityError as exc:
        raise InputError(f"{where}: {exc}") from None


def parse_convex(data) -> Instance:
    norm_obj = _need(data, "norm", dict, "scene")
    try:
        norm = PolyhedralNorm(_polygon(_need(norm_obj, "unit_ball", list, "scene.norm"), "scene.norm.unit_ball"))
    except ConvexityError as exc:
        raise InputError(f"scene.norm.unit_ball: {exc}") from None
    raw_sets = _need(data, "sets", list, "scene")
    if not raw_sets:
        raise InputError("scene.sets: expected a nonempty list")
    names, sets = [], []
    for i, s in enumerate(raw_sets):
        names.append(_need(s, "name", str, f"scene.sets[{i}]"))
        sets.append(_polygon(_need(s, "vertices", list, f"scene.sets[{i}]"), f"scene.sets[{i}].vertices"))
    if len(set(names)) != len(names):
        raise InputError("scene.sets: set names must be distinct")
    return Instance("convex2d", names, sets, Convex2dBackend(norm), norm=norm)


def parse_instance(data, backend: Optional[str] = None) -> Instance:
    if not isinstance(data, dict):
        raise InputError("instance: expected a JSON object")
    kind = "finite" if "points" in data else "convex2d" if "norm" in data else None
    if kind is None:
        raise InputError("instance: needs 'points' (finite) or 'norm' (convex2d)")
    if backend is not None and backend != kind:
        raise InputError(f"instance: --backend {backend} but the file is a {kind} instance")
    return parse_finite(data) if kind == "finite" else parse_convex(data)


def load_instance(path, backend: Optional[str] = None) -> Instance:
    return parse_instance(read_json(path), backend)


def parse_topology(data, instance: Instance):
    from .networks import BoundaryGraph, GraphError

    vertices = _need(data, "vertices", list, "topology")
    edges = _need(data, "edges", list, "topology")
    bnd = _need(data, "boundary", dict, "topology")
    for i, e in enumerate(edges):
        if not isinstance(e, list) or len(e) != 2:
            raise InputError(f"topology.edges[{i}]: expected [u, v]")
    boundary = {}
    for v, name in bnd.items():
        if not isinstance(name, str):
            raise InputError(f"topology.boundary.{v}: expected a set name")
        boundary[v] = instance.by_name(name)
    try:
        return BoundaryGraph(vertices, [tuple(e) for e in edges], boundary)
    except GraphError as exc:
        raise InputError(f"topology: {exc}") from None


def encode_element(element, backend) -> list:
    return backend.encode(element)


def encode_vector(d) -> list:
    return [fmt(x) for x in d]


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_atomic(path, text: str):
    """Write once: temp file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# schemas ---------------------------------------------------------------------------

_RAT = {"type": "string", "pattern": r"^(inf|-?\d+(/\d+)?)$"}
_POINT = {"type": "array", "items": _RAT, "minItems": 2, "maxItems": 2}
_ELEMENT = {"type": "array", "items": {"anyOf": [{"type": "string"}, _POINT]}}

FS_REPORT_SCHEMA = {
    "type": "object",
    "required": ["command", "backend", "method", "seed", "value", "omega", "classes"],
    "properties": {
        "command": {"const": "fs-solve"},
        "backend": {"enum": ["finite", "convex2d"]},
        "method": {"enum": ["brute", "radius", "simplex"]},
        "seed": {"type": "integer"},
        "sets": {"type": "array", "items": {"type": "string"}},
        "value": _RAT,
        "omega": {"type": "array", "items": {"type": "array", "items": _RAT}},
        "classes": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["d", "K_d", "minimal", "one_sided", "reverse", "d_far"],
                "properties": {
                    "d": {"type": "array", "items": _RAT},
                    "K_d": _ELEMENT,
                    "members": {"type": ["array", "null"], "items": _ELEMENT},
                    "minimal": {"type": ["array", "null"], "items": _ELEMENT},
                    "one_sided": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                    "reverse": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                    "d_far": {"type": "object", "additionalProperties": _ELEMENT},
                },
            },
        },
        "solver": {
            "type": "object",
            "additionalProperties": {"type": ["string", "integer", "boolean"]},
        },
    },
}

NET_REPORT_SCHEMA = {
    "type": "object",
    "required": ["command", "backend", "mode", "value", "network", "exact"],
    "properties": {
        "command": {"const": "net-solve"},
        "backend": {"enum": ["finite", "convex2d"]},
        "mode": {"enum": ["mpn", "smt"]},
        "seed": {"type": "integer"},
        "value": _RAT,
        "exact": {"type": "boolean"},
        "method": {"type": "string"},
        "topologies": {"type": "integer"},
        "optimal_topologies": {"type": "array", "items": {"type": "integer"}},
        "network": {
            "type": "object",
            "required": ["vertices", "edges", "boundary", "images"],
            "properties": {
                "vertices": {"type": "array", "items": {"type": "string"}},
                "edges": {"type": "array", "items": {"type": "array", "items": {"type": "string"}}},
                "boundary": {"type": "object", "additionalProperties": {"type": "string"}},
                "images": {"type": "object", "additionalProperties": _ELEMENT},
            },
        },
        "report": {"type": "object", "additionalProperties": {"type": ["string", "integer", "boolean"]}},
    },
}

VERIFY_REPORT_SCHEMA = {
    "type": "object",
    "required": ["command", "suite", "backend", "seed", "cases", "properties", "passed", "observational"],
    "properties": {
        "command": {"const": "verify"},
        "suite": {"type": "string"},
        "backend": {"enum": ["finite", "convex2d"]},
        "seed": {"type": "integer"},
        "cases": {"type": "integer"},
        "observational": {"type": "boolean"},
        "passed": {"type": "boolean"},
        "properties": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["checked", "failed"],
                "properties": {"checked": {"type": "integer"}, "failed": {"type": "integer"}},
            },
        },
        "counterexample": {"type": ["string", "null"]},
    },
}


def validate(report: dict, schema: dict):
    jsonschema.validate(report, schema)
    return report
