"""SVG rendering of a set inside its domain using drawsvg."""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

import drawsvg as draw

from ..models import Arc, Circle, ConvexDomain, ConvexPolygon, Disk, LineCoords, RectifiableSet, Reuleaux, Segment
from ..services.geom import domain_support

Bounds = Tuple[float, float, float, float]


@dataclass(frozen=True)
class RenderStyle:
    size: int = 800
    margin: int = 20
    stroke: str = "#1f2937"
    domain_stroke: str = "#6b7280"
    witness_stroke: str = "#dc2626"
    stroke_width: float = 1.0
    background: str = "#ffffff"

    @classmethod
    def from_settings(cls, settings: Dict[str, Any]) -> "RenderStyle":
        known = {k: settings[k] for k in cls.__dataclass_fields__ if k in settings}
        return cls(**known)


def _r(v: float) -> float:
    # fixed precision keeps repeated renders byte-identical
    return round(float(v), 6)


class SetRenderer:
    """World coordinates (y up) mapped into a square canvas (y down)."""

    def __init__(self, style: Optional[RenderStyle] = None):
        self.style = style or RenderStyle()

    def _bounds(self, rset: RectifiableSet, domain: ConvexDomain) -> Bounds:
        x0, x1 = domain_support(0.0, domain)
        y0, y1 = domain_support(math.pi / 2.0, domain)
        pk = rset.packed
        for pts in (pk.seg_p0, pk.seg_p1):
            if len(pts):
                x0, x1 = min(x0, pts[:, 0].min()), max(x1, pts[:, 0].max())
                y0, y1 = min(y0, pts[:, 1].min()), max(y1, pts[:, 1].max())
        for centers, radii in ((pk.circ_center, pk.circ_radius), (pk.arc_center, pk.arc_radius)):
            if len(radii):
                x0, x1 = min(x0, (centers[:, 0] - radii).min()), max(x1, (centers[:, 0] + radii).max())
                y0, y1 = min(y0, (centers[:, 1] - radii).min()), max(y1, (centers[:, 1] + radii).max())
        return float(x0), float(y0), float(x1), float(y1)

    def render(
        self, rset: RectifiableSet, domain: ConvexDomain, witness: Optional[LineCoords] = None
    ) -> draw.Drawing:
        st = self.style
        x0, y0, x1, y1 = self._bounds(rset, domain)
        span = max(x1 - x0, y1 - y0, 1e-12)
        scale = (st.size - 2 * st.margin) / span

        def px(x: float, y: float) -> Tuple[float, float]:
            return _r(st.margin + (x - x0) * scale), _r(st.size - st.margin - (y - y0) * scale)

        d = draw.Drawing(st.size, st.size)
        d.append(draw.Rectangle(0, 0, st.size, st.size, fill=st.background))
        self._render_domain(d, domain, px, scale)
        for prim in rset.primitives:
            self._render_primitive(d, prim, px, scale)
        if witness is not None:
            self._render_witness(d, witness, px, span)
        return d

    def _render_domain(self, d: draw.Drawing, domain: ConvexDomain, px, scale: float) -> None:
        st = self.style
        common = dict(stroke=st.domain_stroke, stroke_width=st.stroke_width * 1.5, fill="none")
        if isinstance(domain, Disk):
            cx, cy = px(*domain.center)
            d.append(draw.Circle(cx, cy, _r(domain.radius * scale), **common))
        elif isinstance(domain, ConvexPolygon):
            pts = [c for v in domain.vertices for c in px(*v)]
            d.append(draw.Lines(*pts, close=True, **common))
        elif isinstance(domain, Reuleaux):
            path = draw.Path(**common)
            w = domain.width
            for j, (center, start, span) in enumerate(domain.boundary_arcs()):
                sx, sy = px(center[0] + w * math.cos(start), center[1] + w * math.sin(start))
                ex, ey = px(center[0] + w * math.cos(start + span), center[1] + w * math.sin(start + span))
                if j == 0:
                    path.M(sx, sy)
                path.A(_r(w * scale), _r(w * scale), 0, 0, 0, ex, ey)
            path.Z()
            d.append(path)

    def _render_primitive(self, d: draw.Drawing, prim, px, scale: float) -> None:
        st = self.style
        if isinstance(prim, Segment):
            (ax, ay), (bx, by) = px(*prim.p0), px(*prim.p1)
            d.append(draw.Line(ax, ay, bx, by, stroke=st.stroke, stroke_width=st.stroke_width))
        elif isinstance(prim, Circle):
            cx, cy = px(*prim.center)
            d.append(draw.Circle(cx, cy, _r(prim.radius * scale), stroke=st.stroke, stroke_width=st.stroke_width, fill="none"))
        elif isinstance(prim, Arc):
            (sx, sy), (ex, ey) = (px(*p) for p in prim.endpoints())
            r = _r(prim.radius * scale)
            large = 1 if prim.angle_span > math.pi else 0
            path = draw.Path(stroke=st.stroke, stroke_width=st.stroke_width, fill="none")
            path.M(sx, sy).A(r, r, 0, large, 0, ex, ey)
            d.append(path)

    def _render_witness(self, d: draw.Drawing, line: LineCoords, px, span: float) -> None:
        (nx, ny), (vx, vy) = line.normal, line.direction
        reach = 2.0 * span + abs(line.offset)
        bx, by = line.offset * nx, line.offset * ny
        ax, ay = px(bx - reach * vx, by - reach * vy)
        ex, ey = px(bx + reach * vx, by + reach * vy)
        d.append(draw.Line(ax, ay, ex, ey, stroke=self.style.witness_stroke, stroke_width=self.style.stroke_width * 2))


def render_svg(
    rset: RectifiableSet,
    domain: ConvexDomain,
    path: Optional[Union[str, Path]] = None,
    *,
    witness: Optional[LineCoords] = None,
    style: Optional[RenderStyle] = None,
) -> str:
    """Render to an SVG string, also saving it when a path is given."""
    drawing = SetRenderer(style).render(rset, domain, witness)
    svg = drawing.as_svg()
    if path:
        out = Path(path)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(svg, encoding="utf-8")
    return svg
