from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple, Union

from ..errors import InvalidArgumentError

Point = Tuple[float, float]

TWO_PI = 2.0 * math.pi


def _finite(*values: float) -> bool:
    return all(math.isfinite(v) for v in values)


def _point(p) -> Point:
    x, y = p
    x, y = float(x), float(y)
    if not _finite(x, y):
        raise InvalidArgumentError(f"Point coordinates must be finite, got ({x}, {y})")
    return (x, y)


@dataclass(frozen=True)
class LineCoords:
    """The line { (x, y) : x cos(theta) + y sin(theta) = offset }.

    Instances are always canonical: theta in [0, pi). (theta + pi, -offset)
    names the same line and is folded onto the half-angle cover.
    """

    theta: float
    offset: float

    def __post_init__(self) -> None:
        theta, offset = float(self.theta), float(self.offset)
        if not _finite(theta, offset):
            raise InvalidArgumentError(f"Line coordinates must be finite, got ({theta}, {offset})")
        t = theta % TWO_PI
        if t >= math.pi:
            t -= math.pi
            offset = -offset
        if t >= math.pi:  # theta just below a multiple of 2*pi rounded up
            t = 0.0
            offset = -offset
        object.__setattr__(self, "theta", t)
        object.__setattr__(self, "offset", offset + 0.0)

    @property
    def normal(self) -> Point:
        return (math.cos(self.theta), math.sin(self.theta))

    @property
    def direction(self) -> Point:
        return (-math.sin(self.theta), math.cos(self.theta))


@dataclass(frozen=True)
class Segment:
    p0: Point
    p1: Point

    def __post_init__(self) -> None:
        p0, p1 = _point(self.p0), _point(self.p1)
        if p0 == p1:
            raise InvalidArgumentError(f"Segment endpoints must be distinct, got {p0} twice")
        object.__setattr__(self, "p0", p0)
        object.__setattr__(self, "p1", p1)

    @property
    def length(self) -> float:
        return math.hypot(self.p1[0] - self.p0[0], self.p1[1] - self.p0[1])


@dataclass(frozen=True)
class Circle:
    center: Point
    radius: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", _point(self.center))
        r = float(self.radius)
        if not (math.isfinite(r) and r > 0):
            raise InvalidArgumentError(f"Circle radius must be positive, got {self.radius}")
        object.__setattr__(self, "radius", r)

    @property
    def length(self) -> float:
        return TWO_PI * self.radius


@dataclass(frozen=True)
class Arc:
    """Counterclockwise arc from angle_start through angle_span radians."""

    center: Point
    radius: float
    angle_start: float
    angle_span: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", _point(self.center))
        r, a, s = float(self.radius), float(self.angle_start), float(self.angle_span)
        if not (math.isfinite(r) and r > 0):
            raise InvalidArgumentError(f"Arc radius must be positive, got {self.radius}")
        if not _finite(a, s) or not (0.0 < s <= TWO_PI):
            raise InvalidArgumentError(f"Arc span must lie in (0, 2*pi], got {self.angle_span}")
        object.__setattr__(self, "radius", r)
        object.__setattr__(self, "angle_start", a % TWO_PI)
        object.__setattr__(self, "angle_span", s)

    @property
    def length(self) -> float:
        return self.radius * self.angle_span

    def endpoints(self) -> Tuple[Point, Point]:
        cx, cy = self.center
        a0 = self.angle_start
        a1 = a0 + self.angle_span
        return (
            (cx + self.radius * math.cos(a0), cy + self.radius * math.sin(a0)),
            (cx + self.radius * math.cos(a1), cy + self.radius * math.sin(a1)),
        )


Primitive = Union[Segment, Circle, Arc]


def make_arc(center: Point, radius: float, angle_start: float, angle_span: float) -> Primitive:
    """Build an arc, folding a full turn into a Circle."""
    if float(angle_span) >= TWO_PI:
        return Circle(center, radius)
    return Arc(center, radius, angle_start, angle_span)


@dataclass(frozen=True)
class IntersectionResult:
    count: int
    degenerate: bool = False

    def __add__(self, other: "IntersectionResult") -> "IntersectionResult":
        return IntersectionResult(self.count + other.count, self.degenerate or other.degenerate)
