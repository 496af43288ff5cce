"""Line-oriented point-set documents.

Line 1 is a JSON header ``{"schema": 1, "name": ..., "source": ..., "avoids": [...]}``;
every following non-blank line is one point ``{"x": int, "y": int, "color": "red"|"blue"}``.
Colors are all present or all absent.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .geom import COORD_LIMIT, Color, ColoredPointSet, Point, find_collinear_triple
from .structures import StructureKind, kinds_label, parse_kinds

SCHEMA = 1


class DocumentError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


@dataclass(frozen=True)
class PointSetDocument:
    points: tuple[Point, ...]
    colors: tuple[Color, ...] | None = None
    name: str = ""
    source: str = ""
    avoids: frozenset = field(default_factory=frozenset)

    @property
    def colored(self) -> bool:
        return self.colors is not None

    @property
    def cps(self) -> ColoredPointSet:
        if self.colors is None:
            raise DocumentError("document has no colors")
        return ColoredPointSet(self.points, self.colors, check="none")

    def red_points(self) -> list[Point]:
        if self.colors is None:
            return list(self.points)
        return [p for p, c in zip(self.points, self.colors) if c is Color.RED]

    @classmethod
    def from_cps(cls, cps: ColoredPointSet, **meta) -> "PointSetDocument":
        return cls(tuple(cps.points), tuple(cps.colors), **meta)


def _int(value, what, line):
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(f"{what} must be an integer, got {value!r}", line)
    if abs(value) > COORD_LIMIT:
        raise DocumentError(f"{what}={value} exceeds the coordinate cap 2^30", line)
    return value


def parse_document(text: str) -> PointSetDocument:
    lines = text.splitlines()
    numbered = [(i + 1, s) for i, s in enumerate(lines) if s.strip()]
    if not numbered:
        raise DocumentError("empty document", 1)
    hline, htext = numbered[0]
    try:
        header = json.loads(htext)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"header is not JSON: {exc.msg}", hline) from None
    if not isinstance(header, dict) or header.get("schema") != SCHEMA:
        raise DocumentError(f"header must be an object with \"schema\": {SCHEMA}", hline)
    try:
        avoids = parse_kinds(header.get("avoids", []))
    except ValueError as exc:
        raise DocumentError(str(exc), hline) from None
    points, colors, where = [], [], []
    for lineno, s in numbered[1:]:
        try:
            rec = json.loads(s)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"not JSON: {exc.msg}", lineno) from None
        if not isinstance(rec, dict) or "x" not in rec or "y" not in rec:
            raise DocumentError("point record needs \"x\" and \"y\"", lineno)
        p = Point(_int(rec["x"], "x", lineno), _int(rec["y"], "y", lineno))
        c = rec.get("color")
        if c is not None:
            try:
                c = Color.parse(c)
            except ValueError:
                raise DocumentError(f"unknown color {c!r}", lineno) from None
        points.append(p)
        colors.append(c)
        where.append(lineno)
    has = [c is not None for c in colors]
    if any(has) and not all(has):
        raise DocumentError("colors must be given for all points or none", where[has.index(False)])
    seen: dict[Point, int] = {}
    for p, ln in zip(points, where):
        if p in seen:
            raise DocumentError(f"duplicate point {tuple(p)} (first on line {seen[p]})", ln)
        seen[p] = ln
    triple = find_collinear_triple(points, "full")
    if triple is not None:
        a, b, c = (where[i] for i in triple)
        raise DocumentError(f"points on lines {a}, {b}, {c} are collinear", c)
    return PointSetDocument(tuple(points), tuple(colors) if points and all(has) else None,
                            str(header.get("name", "")), str(header.get("source", "")), avoids)


def load_document(path) -> PointSetDocument:
    return parse_document(Path(path).read_text())


def dump_document(doc: PointSetDocument) -> str:
    header = {"schema": SCHEMA}
    if doc.name:
        header["name"] = doc.name
    if doc.source:
        header["source"] = doc.source
    if doc.avoids:
        header["avoids"] = kinds_label(doc.avoids).split(",")
    out = [json.dumps(header)]
    for i, p in enumerate(doc.points):
        rec = {"x": p.x, "y": p.y}
        if doc.colors is not None:
            rec["color"] = doc.colors[i].name.lower()
        out.append(json.dumps(rec))
    return "\n".join(out) + "\n"


def save_document(doc: PointSetDocument, path) -> None:
    Path(path).write_text(dump_document(doc))


def document(points: Sequence, colors: Sequence | None = None, name: str = "", source: str = "",
             avoids=()) -> PointSetDocument:
    pts = tuple(Point(int(x), int(y)) for x, y in points)
    cols = None if colors is None else tuple(c if isinstance(c, Color) else Color.parse(c) for c in colors)
    return PointSetDocument(pts, cols, name, source, frozenset(StructureKind(k) for k in avoids))
