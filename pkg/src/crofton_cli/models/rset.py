from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, Iterable, Optional, Tuple

import numpy as np

from ..errors import InvalidArgumentError
from .domain import ConvexDomain
from .geometry import Arc, Circle, Primitive, Segment


@dataclass(frozen=True)
class PackedPrimitives:
    """Column arrays of a set's primitives, grouped by kind."""

    seg_p0: np.ndarray  # (m, 2)
    seg_p1: np.ndarray  # (m, 2)
    circ_center: np.ndarray  # (k, 2)
    circ_radius: np.ndarray  # (k,)
    arc_center: np.ndarray  # (a, 2)
    arc_radius: np.ndarray
    arc_start: np.ndarray
    arc_span: np.ndarray

    @property
    def size(self) -> int:
        return len(self.seg_p0) + len(self.circ_radius) + len(self.arc_radius)


@dataclass(frozen=True)
class RectifiableSet:
    """A finite union of segments, circles and arcs.

    total_length is the cached one-dimensional measure of the union (overlaps
    are counted with multiplicity, as intersection counts are). A set with a
    domain attached lies inside it, up to the degeneracy tolerance.
    """

    primitives: Tuple[Primitive, ...] = ()
    metadata: Dict[str, Any] = field(default_factory=dict, compare=False)
    domain: Optional[ConvexDomain] = field(default=None, compare=False)
    total_length: float = field(init=False)

    def __post_init__(self) -> None:
        prims = tuple(self.primitives)
        for p in prims:
            if not isinstance(p, (Segment, Circle, Arc)):
                raise InvalidArgumentError(f"Unsupported primitive: {p!r}")
        object.__setattr__(self, "primitives", prims)
        object.__setattr__(self, "total_length", math.fsum(p.length for p in prims))
        if self.domain is not None and prims:
            from ..services.geom import set_inside

            if not set_inside(self, self.domain):
                raise InvalidArgumentError(f"Set leaves its domain {self.domain.to_dict()}")

    def __len__(self) -> int:
        return len(self.primitives)

    def __iter__(self):
        return iter(self.primitives)

    @property
    def is_empty(self) -> bool:
        return not self.primitives

    def union(self, other: "RectifiableSet | Iterable[Primitive]") -> "RectifiableSet":
        extra = other.primitives if isinstance(other, RectifiableSet) else tuple(other)
        return RectifiableSet(self.primitives + tuple(extra), dict(self.metadata), self.domain)

    def with_metadata(self, **items: Any) -> "RectifiableSet":
        meta = dict(self.metadata)
        meta.update(items)
        return RectifiableSet(self.primitives, meta, self.domain)

    @cached_property
    def packed(self) -> PackedPrimitives:
        segs = [p for p in self.primitives if isinstance(p, Segment)]
        circs = [p for p in self.primitives if isinstance(p, Circle)]
        arcs = [p for p in self.primitives if isinstance(p, Arc)]
        return PackedPrimitives(
            seg_p0=np.array([s.p0 for s in segs], dtype=float).reshape(-1, 2),
            seg_p1=np.array([s.p1 for s in segs], dtype=float).reshape(-1, 2),
            circ_center=np.array([c.center for c in circs], dtype=float).reshape(-1, 2),
            circ_radius=np.array([c.radius for c in circs], dtype=float),
            arc_center=np.array([a.center for a in arcs], dtype=float).reshape(-1, 2),
            arc_radius=np.array([a.radius for a in arcs], dtype=float),
            arc_start=np.array([a.angle_start for a in arcs], dtype=float),
            arc_span=np.array([a.angle_span for a in arcs], dtype=float),
        )

    @cached_property
    def extent(self) -> float:
        """Radius of the smallest origin-centered ball holding the set."""
        pk = self.packed
        best = 0.0
        if len(pk.seg_p0):
            best = max(best, float(np.max(np.hypot(pk.seg_p0[:, 0], pk.seg_p0[:, 1]))))
            best = max(best, float(np.max(np.hypot(pk.seg_p1[:, 0], pk.seg_p1[:, 1]))))
        if len(pk.circ_radius):
            best = max(best, float(np.max(np.hypot(pk.circ_center[:, 0], pk.circ_center[:, 1]) + pk.circ_radius)))
        if len(pk.arc_radius):
            best = max(best, float(np.max(np.hypot(pk.arc_center[:, 0], pk.arc_center[:, 1]) + pk.arc_radius)))
        return best


@dataclass(frozen=True)
class SteinhausParams:
    """n equally-angled line families, each translated by integer multiples of epsilon."""

    n: int
    epsilon: float

    def __post_init__(self) -> None:
        if int(self.n) != self.n or self.n < 1:
            raise InvalidArgumentError(f"Steinhaus n must be a positive integer, got {self.n}")
        eps = float(self.epsilon)
        if not (math.isfinite(eps) and eps > 0):
            raise InvalidArgumentError(f"Steinhaus epsilon must be positive, got {self.epsilon}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "epsilon", eps)
