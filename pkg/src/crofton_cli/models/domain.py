from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

import numpy as np

from ..errors import InvalidArgumentError
from .geometry import TWO_PI, Point, _point


def angle_in_arc(phi: float, start: float, span: float, slack: float = 0.0) -> bool:
    """True when angle phi lies on the counterclockwise arc [start, start + span]."""
    rel = (phi - start) % TWO_PI
    return rel <= span + slack or rel >= TWO_PI - slack


@dataclass(frozen=True)
class ConvexDomain:
    """Common base: the cached metrics every domain exposes."""

    area: float = field(init=False, repr=False, compare=False)
    diameter: float = field(init=False, repr=False, compare=False)
    circumradius: float = field(init=False, repr=False, compare=False)

    kind = "domain"

    def _set_metrics(self, area: float, diameter: float, circumradius: float) -> None:
        object.__setattr__(self, "area", float(area))
        object.__setattr__(self, "diameter", float(diameter))
        object.__setattr__(self, "circumradius", float(circumradius))

    def to_dict(self) -> Dict[str, Any]:
        raise NotImplementedError


@dataclass(frozen=True)
class Disk(ConvexDomain):
    center: Point = (0.0, 0.0)
    radius: float = 1.0

    kind = "disk"

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", _point(self.center))
        r = float(self.radius)
        if not (math.isfinite(r) and r > 0):
            raise InvalidArgumentError(f"Disk radius must be positive, got {self.radius}")
        object.__setattr__(self, "radius", r)
        self._set_metrics(math.pi * r * r, 2.0 * r, math.hypot(*self.center) + r)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "center": list(self.center), "radius": self.radius}


@dataclass(frozen=True)
class ConvexPolygon(ConvexDomain):
    vertices: Tuple[Point, ...] = ()

    kind = "polygon"

    def __post_init__(self) -> None:
        verts = tuple(_point(v) for v in self.vertices)
        if len(verts) < 3:
            raise InvalidArgumentError(f"A polygon needs at least 3 vertices, got {len(verts)}")
        arr = np.asarray(verts, dtype=float)
        edges = np.roll(arr, -1, axis=0) - arr
        nxt = np.roll(edges, -1, axis=0)
        cross = edges[:, 0] * nxt[:, 1] - edges[:, 1] * nxt[:, 0]
        scale = float(np.max(np.hypot(edges[:, 0], edges[:, 1]))) ** 2
        if np.any(cross <= 1e-12 * scale):
            raise InvalidArgumentError("Polygon vertices must be strictly convex and counterclockwise")
        object.__setattr__(self, "vertices", verts)
        x, y = arr[:, 0], arr[:, 1]
        area = 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))
        diffs = arr[:, None, :] - arr[None, :, :]
        diameter = float(np.max(np.hypot(diffs[..., 0], diffs[..., 1])))
        self._set_metrics(area, diameter, float(np.max(np.hypot(x, y))))

    @classmethod
    def square(cls, side: float, center: Point = (0.0, 0.0)) -> "ConvexPolygon":
        h = float(side) / 2.0
        cx, cy = center
        return cls(((cx - h, cy - h), (cx + h, cy - h), (cx + h, cy + h), (cx - h, cy + h)))

    @classmethod
    def from_corner(cls, side: float, corner: Point = (0.0, 0.0)) -> "ConvexPolygon":
        """Axis-aligned square [x, x + side] x [y, y + side]."""
        s = float(side)
        x, y = corner
        return cls(((x, y), (x + s, y), (x + s, y + s), (x, y + s)))

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "vertices": [list(v) for v in self.vertices]}


@dataclass(frozen=True)
class Reuleaux(ConvexDomain):
    """Reuleaux triangle over an equilateral triangle, stored counterclockwise."""

    corners: Tuple[Point, Point, Point] = ((0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3.0) / 2.0))

    kind = "reuleaux"

    def __post_init__(self) -> None:
        corners = tuple(_point(c) for c in self.corners)
        if len(corners) != 3:
            raise InvalidArgumentError("A Reuleaux triangle needs exactly three corners")
        (ax, ay), (bx, by), (cx, cy) = corners
        if (bx - ax) * (cy - ay) - (by - ay) * (cx - ax) < 0:
            corners = (corners[0], corners[2], corners[1])
        sides = [math.dist(corners[i], corners[(i + 1) % 3]) for i in range(3)]
        w = sides[0]
        if w <= 0 or max(abs(s - w) for s in sides) > 1e-9 * w:
            raise InvalidArgumentError(f"Reuleaux corners must form an equilateral triangle, sides {sides}")
        object.__setattr__(self, "corners", corners)
        area = (math.pi - math.sqrt(3.0)) * w * w / 2.0
        self._set_metrics(area, w, self._max_norm(w))

    @classmethod
    def from_width(cls, width: float, center: Point = (0.0, 0.0), rotation: float = 0.0) -> "Reuleaux":
        w = float(width)
        if not (math.isfinite(w) and w > 0):
            raise InvalidArgumentError(f"Reuleaux width must be positive, got {width}")
        rho = w / math.sqrt(3.0)
        cx, cy = center
        corners = tuple(
            (
                cx + rho * math.cos(rotation + math.pi / 2 + j * TWO_PI / 3),
                cy + rho * math.sin(rotation + math.pi / 2 + j * TWO_PI / 3),
            )
            for j in range(3)
        )
        return cls(corners)  # type: ignore[arg-type]

    @property
    def width(self) -> float:
        return self.diameter

    def boundary_arcs(self) -> List[Tuple[Point, float, float]]:
        """(center, angle_start, angle_span) of the three boundary arcs."""
        arcs = []
        for j in range(3):
            c = self.corners[j]
            b = self.corners[(j + 1) % 3]
            start = math.atan2(b[1] - c[1], b[0] - c[0])
            arcs.append((c, start % TWO_PI, math.pi / 3.0))
        return arcs

    def _max_norm(self, w: float) -> float:
        best = max(math.hypot(*c) for c in self.corners)
        for c, start, span in self.boundary_arcs():
            norm = math.hypot(*c)
            if norm < 1e-15:
                best = max(best, w)
            elif angle_in_arc(math.atan2(c[1], c[0]), start, span):
                best = max(best, norm + w)
        return best

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "corners": [list(c) for c in self.corners]}


def domain_from_dict(data: Dict[str, Any]) -> ConvexDomain:
    kind = data.get("kind")
    if kind == "disk":
        return Disk(tuple(data.get("center", (0.0, 0.0))), float(data.get("radius", 1.0)))
    if kind == "polygon":
        return ConvexPolygon(tuple(tuple(v) for v in data["vertices"]))
    if kind == "reuleaux":
        return Reuleaux(tuple(tuple(c) for c in data["corners"]))  # type: ignore[arg-type]
    raise InvalidArgumentError(f"Unknown domain kind: {kind!r}")
