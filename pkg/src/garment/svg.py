"""Deterministic SVG drawings of colored point sets and structure regions."""
from __future__ import annotations

from typing import Sequence
from xml.sax.saxutils import escape

from .geom import Color, convex_hull
from .io import PointSetDocument
from .structures import StructureInstance, region_polygons

FILL = {Color.RED: "#d62728", Color.BLUE: "#1f77b4"}
NEUTRAL = "#444444"


def _fmt(v: float) -> str:
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def render_svg(doc: PointSetDocument, highlights: Sequence[StructureInstance] = (), size: int = 480,
               margin: int = 24) -> bytes:
    pts = doc.points
    if not pts:
        body = ""
        vb = f"0 0 {size} {size}"
        return _wrap(vb, size, size, doc.name, body)
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0, 1)
    scale = (size - 2 * margin) / span
    width = round((x1 - x0) * scale) + 2 * margin
    height = round((y1 - y0) * scale) + 2 * margin

    def tx(p):
        return _fmt(margin + (float(p[0]) - x0) * scale), _fmt(margin + (y1 - float(p[1])) * scale)

    parts = []
    if len(pts) >= 3:
        hull = convex_hull(pts)
        path = " ".join(",".join(tx(pts[i])) for i in hull)
        parts.append(f'<polygon class="hull" points="{path}" fill="none" stroke="#999999" stroke-width="1"/>')
    for inst in highlights:
        color = FILL.get(doc.colors[inst.points[0]], NEUTRAL) if doc.colors else NEUTRAL
        for poly in region_polygons(inst, pts):
            path = " ".join(",".join(tx(v)) for v in poly)
            parts.append(
                f'<polygon class="region {inst.kind.name.lower()}" points="{path}" fill="{color}" '
                f'fill-opacity="0.3" stroke="{color}" stroke-width="1.5"><title>{escape(inst.describe())}</title></polygon>'
            )
    for i, p in enumerate(pts):
        cx, cy = tx(p)
        color = FILL[doc.colors[i]] if doc.colors else NEUTRAL
        parts.append(f'<circle cx="{cx}" cy="{cy}" r="4" fill="{color}"><title>{i}: ({p.x}, {p.y})</title></circle>')
    return _wrap(f"0 0 {width} {height}", width, height, doc.name, "\n".join(parts))


def _wrap(viewbox, width, height, title, body) -> bytes:
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
            f'viewBox="{viewbox}">')
    t = f"<title>{escape(title)}</title>\n" if title else ""
    return (head + "\n" + t + body + "\n</svg>\n").encode()
