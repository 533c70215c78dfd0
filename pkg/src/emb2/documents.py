"""Input documents and classification reports.

The input format is versioned JSON with zero-indexed integer simplices:

    {
      "schema_version": 1,
      "name": "torus_meridian",            // optional
      "vertices": 7,
      "triangles": [[0, 1, 3], ...],
      "subcomplex": {
        "vertices": [0, 1, 2],
        "edges": [[0, 1], [1, 2], [0, 2]],
        "triangles": []
      }
    }

Serialization is deterministic (sorted keys, fixed separators), so documents
and JSON reports are byte-stable across runs.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .catalog import catalog_entry
from .classify import (
    ClassificationTrace,
    GroupDescription,
    HomotopyTypeDescriptor,
    descriptor_fundamental_group,
)
from .errors import InputSyntaxError, InvalidInput, SchemaVersionUnsupported
from .subcomplex import Subcomplex, embed_subcomplex
from .surface import SimplicialSurface, require_surface

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class InputDocument:
    schema_version: int
    vertices: int
    triangles: tuple
    sub_vertices: tuple
    sub_edges: tuple
    sub_triangles: tuple
    name: str | None = None

    def to_json_dict(self) -> dict:
        doc = {
            "schema_version": self.schema_version,
            "vertices": self.vertices,
            "triangles": [list(t) for t in self.triangles],
            "subcomplex": {
                "vertices": list(self.sub_vertices),
                "edges": [list(e) for e in self.sub_edges],
                "triangles": [list(t) for t in self.sub_triangles],
            },
        }
        if self.name is not None:
            doc["name"] = self.name
        return doc


def serialize_document(doc: InputDocument) -> str:
    return json.dumps(doc.to_json_dict(), sort_keys=True, indent=2) + "\n"


def _expect(cond, message):
    if not cond:
        raise InputSyntaxError(message)


def _int_list(value, length, where):
    _expect(isinstance(value, list) and len(value) == length, f"{where}: expected a list of {length} integers")
    _expect(all(isinstance(x, int) and not isinstance(x, bool) for x in value), f"{where}: entries must be integers")
    return tuple(value)


def document_from_text(text: str) -> InputDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputSyntaxError(f"not valid JSON: {exc}") from exc
    _expect(isinstance(data, dict), "top level must be an object")
    version = data.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaVersionUnsupported(
            f"schema_version {version!r} unsupported (expected {SCHEMA_VERSION})"
        )
    vertices = data.get("vertices")
    _expect(isinstance(vertices, int) and vertices >= 0, "vertices: non-negative integer required")
    tris = data.get("triangles")
    _expect(isinstance(tris, list), "triangles: list required")
    triangles = tuple(_int_list(t, 3, f"triangles[{i}]") for i, t in enumerate(tris))
    for i, t in enumerate(triangles):
        _expect(all(0 <= v < vertices for v in t), f"triangles[{i}]: vertex index out of range")
    sub = data.get("subcomplex")
    _expect(isinstance(sub, dict), "subcomplex: object required")
    sv = sub.get("vertices", [])
    _expect(isinstance(sv, list) and all(isinstance(v, int) for v in sv), "subcomplex.vertices: list of integers")
    se = sub.get("edges", [])
    _expect(isinstance(se, list), "subcomplex.edges: list required")
    sub_edges = tuple(_int_list(e, 2, f"subcomplex.edges[{i}]") for i, e in enumerate(se))
    st = sub.get("triangles", [])
    _expect(isinstance(st, list), "subcomplex.triangles: list required")
    sub_tris = tuple(_int_list(t, 3, f"subcomplex.triangles[{i}]") for i, t in enumerate(st))
    name = data.get("name")
    if name is not None:
        _expect(isinstance(name, str), "name: string required")
    return InputDocument(
        schema_version=version,
        vertices=vertices,
        triangles=triangles,
        sub_vertices=tuple(sv),
        sub_edges=sub_edges,
        sub_triangles=sub_tris,
        name=name,
    )


def parse_input(text: str) -> tuple[SimplicialSurface, Subcomplex]:
    """Parse and fully validate a document, returning the surface/subcomplex
    pair or raising a structured InvalidInput error."""
    doc = document_from_text(text)
    surface = require_surface(doc.triangles, doc.vertices)
    x = embed_subcomplex(surface, doc.sub_vertices, doc.sub_edges, doc.sub_triangles)
    return surface, x


def document_hash(doc: InputDocument) -> str:
    return hashlib.sha256(serialize_document(doc).encode()).hexdigest()


def generate_example(name: str) -> InputDocument:
    """Deterministic catalog document for one of the built-in examples."""
    entry = catalog_entry(name)
    return InputDocument(
        schema_version=SCHEMA_VERSION,
        vertices=entry["vertex_count"],
        triangles=tuple(tuple(t) for t in entry["triangles"]),
        sub_vertices=tuple(entry["sub_vertices"]),
        sub_edges=tuple(tuple(e) for e in entry["sub_edges"]),
        sub_triangles=tuple(tuple(t) for t in entry["sub_triangles"]),
        name=name,
    )


@dataclass
class Report:
    descriptor: HomotopyTypeDescriptor
    pi1: GroupDescription
    trace: ClassificationTrace
    input_hash: str
    name: str | None
    timing_ms: float | None = None

    def to_json_dict(self) -> dict:
        # timing is omitted: JSON reports are byte-stable across runs
        return {
            "name": self.name,
            "input_sha256": self.input_hash,
            "descriptor": {
                "tag": self.descriptor.tag.value,
                "surface": self.descriptor.surface.describe()
                if self.descriptor.surface
                else None,
                "display": self.descriptor.display(),
            },
            "pi1": {
                "kind": self.pi1.kind,
                "display": self.pi1.display,
                "generators": list(self.pi1.generators),
                "relators": list(self.pi1.relators),
            },
            "case": self.trace.case,
            "trace": [
                {"decision": s.decision, "evidence": s.evidence}
                for s in self.trace.steps
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2) + "\n"

    def human_text(self, explain: bool = False) -> str:
        lines = []
        if self.name:
            lines.append(f"input: {self.name}")
        lines.append(f"homotopy type: {self.descriptor.display()}")
        case = self.trace.case or ""
        lines.append(f"case: {case.replace('Thm', 'Theorem')}")
        lines.append(f"pi1: {self.pi1.display}")
        if self.timing_ms is not None:
            lines.append(f"time: {self.timing_ms:.0f} ms")
        if explain:
            lines.append("trace:")
            for step in self.trace.steps:
                ev = ", ".join(f"{k}={v}" for k, v in step.evidence.items())
                lines.append(f"  - {step.decision}: {ev}")
        return "\n".join(lines) + "\n"


def build_report(doc: InputDocument, descriptor, trace, timing_ms=None) -> Report:
    return Report(
        descriptor=descriptor,
        pi1=descriptor_fundamental_group(descriptor),
        trace=trace,
        input_hash=document_hash(doc),
        name=doc.name,
        timing_ms=timing_ms,
    )
