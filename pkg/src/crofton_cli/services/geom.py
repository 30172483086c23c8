"""
Planar geometry kernel: lines in (theta, offset) coordinates, intersection
counting against segments/circles/arcs, and chords of convex domains.

Conventions:
- A line is { x : x . u = offset } with u = (cos theta, sin theta); points on it
  are offset * u + t * v with v = (-sin theta, cos theta).
- Counting is transversal-only. A line within `tol` of a tangency, a segment
  endpoint, an arc endpoint or a collinear segment is flagged degenerate and the
  offending primitive contributes 0.
- Every function is pure; the vectorized variants take numpy arrays and never
  mutate their inputs.
"""
from __future__ import annotations

import math
from typing import Optional, Tuple, Union

import numpy as np
from scipy.optimize import minimize_scalar

from ..errors import InvalidArgumentError
from ..models import (
    Arc,
    Circle,
    ConvexDomain,
    ConvexPolygon,
    Disk,
    IntersectionResult,
    LineCoords,
    Primitive,
    RectifiableSet,
    Reuleaux,
    Segment,
)
from ..models.domain import angle_in_arc
from ..models.geometry import TWO_PI, Point
from ..models.rset import PackedPrimitives

TAU_DEG = 1e-9

# Upper bound on lines x primitives evaluated in one numpy block.
_BLOCK = 4_000_000


# ------------------------------- Lines -------------------------------

def normalize_line(theta: float, offset: float) -> LineCoords:
    """Canonical (theta mod pi, signed offset) coordinates of a line."""
    if not (math.isfinite(theta) and math.isfinite(offset)):
        raise InvalidArgumentError(f"Line coordinates must be finite, got ({theta}, {offset})")
    return LineCoords(theta, offset)


# ---------------------------- Intersections --------------------------

def _pack_one(prim: Primitive) -> PackedPrimitives:
    return RectifiableSet((prim,)).packed


def _segment_counts(c, s, off, p0, p1, tol):
    a = p0[:, 0] * c + p0[:, 1] * s - off
    b = p1[:, 0] * c + p1[:, 1] * s - off
    deg = (np.abs(a) <= tol) | (np.abs(b) <= tol)
    hits = (a * b < 0) & ~deg
    return hits.sum(axis=1), deg.any(axis=1)


def _circle_counts(c, s, off, center, radius, tol):
    d = np.abs(center[:, 0] * c + center[:, 1] * s - off)
    deg = np.abs(d - radius) <= tol
    hits = (d < radius) & ~deg
    return 2 * hits.sum(axis=1), deg.any(axis=1)


def _arc_counts(theta, c, s, off, center, radius, start, span, tol):
    q = off - (center[:, 0] * c + center[:, 1] * s)
    # endpoints on the line
    e0x = center[:, 0] + radius * np.cos(start)
    e0y = center[:, 1] + radius * np.sin(start)
    e1x = center[:, 0] + radius * np.cos(start + span)
    e1y = center[:, 1] + radius * np.sin(start + span)
    deg = (np.abs(e0x * c + e0y * s - off) <= tol) | (np.abs(e1x * c + e1y * s - off) <= tol)
    # tangency at a point that belongs to the arc
    tangent = np.abs(np.abs(q) - radius) <= tol
    tangent_angle = np.where(q >= 0, theta, theta + math.pi)
    rel_t = (tangent_angle - start) % TWO_PI
    deg |= tangent & (rel_t <= span)
    crossing = (np.abs(q) < radius) & ~tangent
    half = np.arccos(np.clip(q / radius, -1.0, 1.0))
    hits = np.zeros(q.shape, dtype=np.int64)
    for sign in (1.0, -1.0):
        rel = (theta + sign * half - start) % TWO_PI
        hits += (crossing & (rel > 0) & (rel < span)).astype(np.int64)
    return hits.sum(axis=1), deg.any(axis=1)


def _count_block(thetas: np.ndarray, offsets: np.ndarray, pk: PackedPrimitives, tol: float):
    theta = thetas[:, None]
    c, s = np.cos(theta), np.sin(theta)
    off = offsets[:, None]
    counts = np.zeros(len(thetas), dtype=np.int64)
    degenerate = np.zeros(len(thetas), dtype=bool)
    if len(pk.seg_p0):
        k, d = _segment_counts(c, s, off, pk.seg_p0, pk.seg_p1, tol)
        counts += k
        degenerate |= d
    if len(pk.circ_radius):
        k, d = _circle_counts(c, s, off, pk.circ_center, pk.circ_radius, tol)
        counts += k
        degenerate |= d
    if len(pk.arc_radius):
        k, d = _arc_counts(theta, c, s, off, pk.arc_center, pk.arc_radius, pk.arc_start, pk.arc_span, tol)
        counts += k
        degenerate |= d
    return counts, degenerate


def count_intersections_batch(
    thetas: np.ndarray,
    offsets: np.ndarray,
    rset: RectifiableSet,
    *,
    tol: float = TAU_DEG,
) -> Tuple[np.ndarray, np.ndarray]:
    """Transversal counts and degenerate flags for many lines at once."""
    thetas = np.asarray(thetas, dtype=float).ravel()
    offsets = np.asarray(offsets, dtype=float).ravel()
    if thetas.shape != offsets.shape:
        raise InvalidArgumentError("thetas and offsets must have the same length")
    pk = rset.packed
    counts = np.zeros(len(thetas), dtype=np.int64)
    degenerate = np.zeros(len(thetas), dtype=bool)
    if pk.size == 0 or len(thetas) == 0:
        return counts, degenerate
    step = max(1, _BLOCK // pk.size)
    for i in range(0, len(thetas), step):
        k, d = _count_block(thetas[i : i + step], offsets[i : i + step], pk, tol)
        counts[i : i + step] = k
        degenerate[i : i + step] = d
    return counts, degenerate


def intersect_line_primitive(line: LineCoords, prim: Primitive, *, tol: float = TAU_DEG) -> IntersectionResult:
    k, d = _count_block(np.array([line.theta]), np.array([line.offset]), _pack_one(prim), tol)
    return IntersectionResult(int(k[0]), bool(d[0]))


def count_intersections(line: LineCoords, rset: RectifiableSet, *, tol: float = TAU_DEG) -> IntersectionResult:
    k, d = count_intersections_batch(np.array([line.theta]), np.array([line.offset]), rset, tol=tol)
    return IntersectionResult(int(k[0]), bool(d[0]))


# ------------------------- Breakpoint structure ------------------------

def _cat(parts, dtype=float) -> np.ndarray:
    return np.concatenate(parts).astype(dtype) if parts else np.zeros(0, dtype=dtype)


def projection_intervals(
    theta: float, rset: RectifiableSet, *, tol: float = TAU_DEG
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Monotone pieces of the set seen from direction theta.

    Returns (lo, hi, weight, extra): a line at offset p strictly inside (lo, hi)
    crosses the piece `weight` times. `extra` holds offsets of pieces too thin to
    cross (segments parallel to the lines), which are breakpoints all the same.
    """
    pk = rset.packed
    c, s = math.cos(theta), math.sin(theta)
    los, his, ws, extra = [], [], [], []
    if len(pk.seg_p0):
        a = pk.seg_p0[:, 0] * c + pk.seg_p0[:, 1] * s
        b = pk.seg_p1[:, 0] * c + pk.seg_p1[:, 1] * s
        lo, hi = np.minimum(a, b), np.maximum(a, b)
        flat = hi - lo <= tol
        los.append(lo[~flat])
        his.append(hi[~flat])
        ws.append(np.ones(int((~flat).sum()), dtype=np.int64))
        extra.append(a[flat])
        extra.append(b[flat])
    if len(pk.circ_radius):
        mid = pk.circ_center[:, 0] * c + pk.circ_center[:, 1] * s
        los.append(mid - pk.circ_radius)
        his.append(mid + pk.circ_radius)
        ws.append(np.full(len(mid), 2, dtype=np.int64))
    for center, r, start, span in zip(pk.arc_center, pk.arc_radius, pk.arc_start, pk.arc_span):
        base = center[0] * c + center[1] * s
        end = start + span
        k0 = math.ceil((start - theta) / math.pi)
        cuts = [start]
        k = k0
        while theta + k * math.pi < end:
            phi = theta + k * math.pi
            if phi > start:
                cuts.append(phi)
            k += 1
        cuts.append(end)
        for phi0, phi1 in zip(cuts[:-1], cuts[1:]):
            f0 = base + r * math.cos(phi0 - theta)
            f1 = base + r * math.cos(phi1 - theta)
            lo, hi = min(f0, f1), max(f0, f1)
            if hi - lo <= tol:
                extra.append(np.array([lo, hi]))
                continue
            los.append(np.array([lo]))
            his.append(np.array([hi]))
            ws.append(np.array([1], dtype=np.int64))
    return _cat(los), _cat(his), _cat(ws, np.int64), _cat(extra)


# ------------------------------- Domains -------------------------------

def domain_metrics(domain: ConvexDomain) -> Tuple[float, float, float]:
    """(area, diameter, circumradius about the origin)."""
    return domain.area, domain.diameter, domain.circumradius


def _disk_interval(center: Point, radius: float, c: np.ndarray, s: np.ndarray, offsets: np.ndarray):
    q = offsets - (center[0] * c + center[1] * s)
    tc = -center[0] * s + center[1] * c
    h2 = radius * radius - q * q
    h = np.sqrt(np.maximum(h2, 0.0))
    lo = np.where(h2 > 0, tc - h, np.inf)
    hi = np.where(h2 > 0, tc + h, -np.inf)
    return lo, hi


def _polygon_halfplanes(poly: ConvexPolygon) -> Tuple[np.ndarray, np.ndarray]:
    v = np.asarray(poly.vertices, dtype=float)
    e = np.roll(v, -1, axis=0) - v
    n = np.stack([e[:, 1], -e[:, 0]], axis=1) / np.hypot(e[:, 0], e[:, 1])[:, None]
    b = np.sum(n * v, axis=1)
    return n, b


def _angles(theta, offsets: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """cos/sin of theta broadcast to the offsets (one shared angle or one per line)."""
    t = np.broadcast_to(np.asarray(theta, dtype=float), offsets.shape)
    return np.cos(t), np.sin(t)


def _chord_interval(theta, offsets: np.ndarray, domain: ConvexDomain):
    """Parameter interval [lo, hi] along v of the line's intersection with the domain."""
    offsets = np.asarray(offsets, dtype=float).ravel()
    c, s = _angles(theta, offsets)
    if isinstance(domain, Disk):
        return _disk_interval(domain.center, domain.radius, c, s, offsets)
    if isinstance(domain, Reuleaux):
        lo = np.full(offsets.shape, -np.inf)
        hi = np.full(offsets.shape, np.inf)
        for corner in domain.corners:
            l, h = _disk_interval(corner, domain.width, c, s, offsets)
            lo, hi = np.maximum(lo, l), np.minimum(hi, h)
        return lo, hi
    if isinstance(domain, ConvexPolygon):
        n, b = _polygon_halfplanes(domain)
        # rows are lines, columns are edges
        alpha = -s[:, None] * n[None, :, 0] + c[:, None] * n[None, :, 1]
        beta = b[None, :] - offsets[:, None] * (c[:, None] * n[None, :, 0] + s[:, None] * n[None, :, 1])
        flat = np.abs(alpha) < 1e-14
        with np.errstate(divide="ignore", invalid="ignore"):
            bound = beta / np.where(flat, 1.0, alpha)
        hi = np.where((alpha > 0) & ~flat, bound, np.inf).min(axis=1)
        lo = np.where((alpha < 0) & ~flat, bound, -np.inf).max(axis=1)
        outside = (flat & (beta < 0)).any(axis=1)
        lo = np.where(outside, np.inf, lo)
        hi = np.where(outside, -np.inf, hi)
        return lo, hi
    raise InvalidArgumentError(f"Unsupported domain: {domain!r}")


def chord_lengths(theta, offsets: np.ndarray, domain: ConvexDomain) -> np.ndarray:
    """H^1 of (line cap domain) for every offset; theta is one angle or one per offset."""
    offsets = np.asarray(offsets, dtype=float).ravel()
    if isinstance(domain, Disk):
        c, s = _angles(theta, offsets)
        q = offsets - (domain.center[0] * c + domain.center[1] * s)
        return 2.0 * np.sqrt(np.maximum(domain.radius**2 - q * q, 0.0))
    lo, hi = _chord_interval(theta, offsets, domain)
    return np.maximum(hi - lo, 0.0)


def chord_length(line: LineCoords, domain: ConvexDomain) -> float:
    return float(chord_lengths(line.theta, np.array([line.offset]), domain)[0])


def chord_segments(theta, offsets: np.ndarray, domain: ConvexDomain):
    """Endpoints of the chords at the given offsets: (p0 (k,2), p1 (k,2), lengths)."""
    offsets = np.asarray(offsets, dtype=float).ravel()
    c, s = _angles(theta, offsets)
    lo, hi = _chord_interval(theta, offsets, domain)
    lengths = np.maximum(hi - lo, 0.0)
    lo = np.where(np.isfinite(lo), lo, 0.0)
    hi = np.where(np.isfinite(hi), hi, 0.0)
    base = np.stack([offsets * c, offsets * s], axis=1)
    v = np.stack([-s, c], axis=1)
    return base + lo[:, None] * v, base + hi[:, None] * v, lengths


def chord_segment(line: LineCoords, domain: ConvexDomain) -> Optional[Tuple[Point, Point]]:
    p0, p1, length = chord_segments(line.theta, np.array([line.offset]), domain)
    if length[0] <= 0:
        return None
    return (float(p0[0, 0]), float(p0[0, 1])), (float(p1[0, 0]), float(p1[0, 1]))


def domain_support(theta: float, domain: ConvexDomain) -> Tuple[float, float]:
    """[min, max] of x . u over the domain, u = (cos theta, sin theta)."""
    c, s = math.cos(theta), math.sin(theta)
    if isinstance(domain, Disk):
        mid = domain.center[0] * c + domain.center[1] * s
        return mid - domain.radius, mid + domain.radius
    if isinstance(domain, ConvexPolygon):
        proj = np.asarray(domain.vertices) @ np.array([c, s])
        return float(proj.min()), float(proj.max())
    if isinstance(domain, Reuleaux):
        return -_reuleaux_support(domain, theta + math.pi), _reuleaux_support(domain, theta)
    raise InvalidArgumentError(f"Unsupported domain: {domain!r}")


def _reuleaux_support(domain: Reuleaux, theta: float) -> float:
    c, s = math.cos(theta), math.sin(theta)
    best = max(x * c + y * s for x, y in domain.corners)
    for center, start, span in domain.boundary_arcs():
        if angle_in_arc(theta % TWO_PI, start, span):
            best = max(best, center[0] * c + center[1] * s + domain.width)
    return best


def chord_argmax(theta: float, domain: ConvexDomain) -> float:
    """Offset of the longest chord at angle theta (chords are concave in the offset)."""
    if isinstance(domain, Disk):
        return domain.center[0] * math.cos(theta) + domain.center[1] * math.sin(theta)
    if isinstance(domain, ConvexPolygon):
        proj = np.asarray(domain.vertices) @ np.array([math.cos(theta), math.sin(theta)])
        lengths = chord_lengths(theta, proj, domain)
        return float(proj[int(np.argmax(lengths))])
    lo, hi = domain_support(theta, domain)
    res = minimize_scalar(
        lambda p: -float(chord_lengths(theta, np.array([p]), domain)[0]),
        bounds=(lo, hi),
        method="bounded",
        options={"xatol": 1e-12},
    )
    return float(res.x)


def boundary_gap(domain: ConvexDomain, points: np.ndarray) -> np.ndarray:
    """Level function of the domain: 0 on the boundary, negative inside."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if isinstance(domain, Disk):
        return np.hypot(pts[:, 0] - domain.center[0], pts[:, 1] - domain.center[1]) - domain.radius
    if isinstance(domain, Reuleaux):
        return np.max(
            [np.hypot(pts[:, 0] - cx, pts[:, 1] - cy) - domain.width for cx, cy in domain.corners], axis=0
        )
    if isinstance(domain, ConvexPolygon):
        n, b = _polygon_halfplanes(domain)
        return np.max(pts @ n.T - b[None, :], axis=1)
    raise InvalidArgumentError(f"Unsupported domain: {domain!r}")


def contains(domain: ConvexDomain, points: np.ndarray, tol: float = TAU_DEG) -> bool:
    return bool(np.all(boundary_gap(domain, points) <= tol))


def set_inside(rset: RectifiableSet, domain: ConvexDomain, tol: float = TAU_DEG) -> bool:
    """Containment of every primitive (segments by endpoints, circles/arcs by sampled rims)."""
    pk = rset.packed
    if len(pk.seg_p0) and not (contains(domain, pk.seg_p0, tol) and contains(domain, pk.seg_p1, tol)):
        return False
    phi = np.linspace(0.0, TWO_PI, 721)
    for center, r in zip(pk.circ_center, pk.circ_radius):
        rim = center + r * np.stack([np.cos(phi), np.sin(phi)], axis=1)
        if not contains(domain, rim, tol):
            return False
    for center, r, start, span in zip(pk.arc_center, pk.arc_radius, pk.arc_start, pk.arc_span):
        ang = start + np.linspace(0.0, span, 181)
        rim = center + r * np.stack([np.cos(ang), np.sin(ang)], axis=1)
        if not contains(domain, rim, tol):
            return False
    return True


# ----------------------------- Rigid motions -----------------------------

Movable = Union[Primitive, RectifiableSet, LineCoords, ConvexDomain]


def _move_point(p: Point, c: float, s: float, t: Point) -> Point:
    return (c * p[0] - s * p[1] + t[0], s * p[0] + c * p[1] + t[1])


def apply_rigid_motion(obj: Movable, rotation: float, translation: Point = (0.0, 0.0)) -> Movable:
    """Rotate about the origin by `rotation`, then translate by `translation`."""
    c, s = math.cos(rotation), math.sin(rotation)
    t = (float(translation[0]), float(translation[1]))
    if isinstance(obj, LineCoords):
        theta = obj.theta + rotation
        return LineCoords(theta, obj.offset + t[0] * math.cos(theta) + t[1] * math.sin(theta))
    if isinstance(obj, Segment):
        return Segment(_move_point(obj.p0, c, s, t), _move_point(obj.p1, c, s, t))
    if isinstance(obj, Circle):
        return Circle(_move_point(obj.center, c, s, t), obj.radius)
    if isinstance(obj, Arc):
        return Arc(_move_point(obj.center, c, s, t), obj.radius, obj.angle_start + rotation, obj.angle_span)
    if isinstance(obj, RectifiableSet):
        domain = None if obj.domain is None else apply_rigid_motion(obj.domain, rotation, t)
        return RectifiableSet(
            tuple(apply_rigid_motion(p, rotation, t) for p in obj.primitives),
            dict(obj.metadata),
            domain,  # type: ignore[arg-type]
        )
    if isinstance(obj, Disk):
        return Disk(_move_point(obj.center, c, s, t), obj.radius)
    if isinstance(obj, ConvexPolygon):
        return ConvexPolygon(tuple(_move_point(v, c, s, t) for v in obj.vertices))
    if isinstance(obj, Reuleaux):
        return Reuleaux(tuple(_move_point(v, c, s, t) for v in obj.corners))  # type: ignore[arg-type]
    raise InvalidArgumentError(f"Cannot move object of type {type(obj).__name__}")


__all__ = [
    "TAU_DEG",
    "normalize_line",
    "intersect_line_primitive",
    "count_intersections",
    "count_intersections_batch",
    "projection_intervals",
    "chord_length",
    "chord_lengths",
    "chord_segment",
    "chord_segments",
    "chord_argmax",
    "domain_support",
    "domain_metrics",
    "boundary_gap",
    "contains",
    "set_inside",
    "apply_rigid_motion",
]
