"""Builders for the two set families and generic set assembly."""
from __future__ import annotations

import logging
import math
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import InvalidArgumentError, ResourceLimitError
from ..models import Circle, ConvexDomain, Disk, LineCoords, RectifiableSet, Segment, SteinhausParams
from ..models.geometry import Point
from .geom import TAU_DEG, chord_segments, domain_support

log = logging.getLogger(__name__)

DEFAULT_MAX_PRIMITIVES = 10_000_000

# Radius used for circles added while topping up the disk construction.
_MAX_EXTRA_RADIUS = 1.0 - 1e-6


def set_length(rset: RectifiableSet) -> float:
    return rset.total_length


def circles_set(
    radii: Iterable[float],
    center: Point = (0.0, 0.0),
    *,
    domain: Optional[ConvexDomain] = None,
    metadata: Optional[dict] = None,
) -> RectifiableSet:
    return RectifiableSet(tuple(Circle(center, r) for r in radii), dict(metadata or {}), domain)


# ------------------------------ Unit disk ------------------------------

def disk_circle_radii(length: float) -> List[float]:
    """r_i = sqrt(1 - (i / m)^2) for 1 <= i < m, where m = 2L / pi^2."""
    length = float(length)
    if not (math.isfinite(length) and length > 0):
        raise InvalidArgumentError(f"Length must be positive, got {length}")
    m = 2.0 * length / math.pi**2
    top = math.ceil(m - 1e-12) - 1
    radii = [math.sqrt(1.0 - (i / m) ** 2) for i in range(1, top + 1)]
    return [r for r in radii if 0.0 < r < 1.0]


def disk_construction(length: float) -> RectifiableSet:
    """Concentric circles in the unit disk with total length exactly `length`.

    The raw radii leave a deficit of roughly pi; it is topped up with as few
    circles as possible (largest first), and a surplus is removed from the
    innermost circles, shrinking the last one touched.
    """
    radii = disk_circle_radii(length)
    pre = 2.0 * math.pi * math.fsum(radii)
    deficit = float(length) - pre
    added: List[float] = []
    removed: List[float] = []
    shrunk: Optional[Tuple[float, float]] = None
    if deficit > 0:
        remaining = deficit / (2.0 * math.pi)
        while remaining > 1e-15 * max(1.0, length):
            rho = min(remaining, _MAX_EXTRA_RADIUS)
            added.append(rho)
            remaining -= rho
    elif deficit < 0:
        surplus = -deficit / (2.0 * math.pi)
        while radii and radii[-1] <= surplus:
            r = radii.pop()
            removed.append(r)
            surplus -= r
        if radii and surplus > 0:
            old = radii[-1]
            radii[-1] = old - surplus
            shrunk = (old, radii[-1])
    meta = {
        "construction": "disk-circles",
        "target_length": float(length),
        "pre_adjustment_length": pre,
        "pre_adjustment_circles": len(radii) + len(removed),
        "adjustment": {
            "deficit": deficit,
            "added_radii": added,
            "removed_radii": removed,
            "shrunk": None if shrunk is None else list(shrunk),
        },
    }
    rset = circles_set(radii + added, domain=Disk(), metadata=meta)
    log.debug("disk construction L=%s: %d circles, pre-length %.6f", length, len(rset), pre)
    return rset


# ------------------------------ Steinhaus ------------------------------

def _family_theta(k: int, n: int) -> float:
    # normal of the k-th family: (-sin(pi k/n), cos(pi k/n))
    return math.pi * k / n + math.pi / 2.0


def _translate_range(epsilon: float, radius: float) -> int:
    return int(math.floor(radius / epsilon + 1e-12))


def steinhaus_lines(params: SteinhausParams, radius: float) -> List[LineCoords]:
    """Every line of S_{n, eps} that meets the closed ball of the given radius."""
    top = _translate_range(params.epsilon, radius)
    return [
        LineCoords(_family_theta(k, params.n), s * params.epsilon)
        for k in range(params.n)
        for s in range(-top, top + 1)
    ]


def steinhaus_clip(
    params: SteinhausParams,
    domain: ConvexDomain,
    *,
    max_primitives: int = DEFAULT_MAX_PRIMITIVES,
    tol: float = TAU_DEG,
) -> RectifiableSet:
    """Domain cap S_{n, eps}: the chords cut by every family line, empty chords omitted."""
    top = _translate_range(params.epsilon, domain.circumradius)
    requested = params.n * (2 * top + 1)
    if requested > max_primitives:
        raise ResourceLimitError("Steinhaus primitive count", requested, max_primitives)
    offsets = np.arange(-top, top + 1, dtype=float) * params.epsilon
    segments: List[Segment] = []
    for k in range(params.n):
        theta = _family_theta(k, params.n)
        lo, hi = domain_support(theta, domain)
        inside = offsets[(offsets > lo - tol) & (offsets < hi + tol)]
        p0, p1, lengths = chord_segments(theta, inside, domain)
        keep = lengths > tol
        segments.extend(Segment(tuple(a), tuple(b)) for a, b in zip(p0[keep], p1[keep]))
    meta = {"construction": "steinhaus", "n": params.n, "epsilon": params.epsilon}
    log.debug("steinhaus n=%d eps=%g: %d chords", params.n, params.epsilon, len(segments))
    return RectifiableSet(tuple(segments), meta, domain)


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def steinhaus_params_for_length(length: float) -> SteinhausParams:
    length = float(length)
    if not (math.isfinite(length) and length > 0):
        raise InvalidArgumentError(f"Length must be positive, got {length}")
    n = _round_half_up(length ** (1.0 / 3.0))
    inv_eps = _round_half_up(length ** (2.0 / 3.0))
    if n < 1 or inv_eps < 1:
        raise InvalidArgumentError(f"Length {length} is too small for a Steinhaus set (n = {n})")
    return SteinhausParams(n, 1.0 / inv_eps)


def steinhaus_for_length(
    length: float,
    domain: ConvexDomain,
    *,
    max_primitives: int = DEFAULT_MAX_PRIMITIVES,
) -> Tuple[SteinhausParams, RectifiableSet]:
    """n = round(L^(1/3)), eps = 1 / round(L^(2/3)); the realized length is recorded, not forced."""
    params = steinhaus_params_for_length(length)
    rset = steinhaus_clip(params, domain, max_primitives=max_primitives)
    rset = rset.with_metadata(target_length=float(length), realized_length=rset.total_length)
    return params, rset


# ------------------------------ Random sets ------------------------------

def random_segment_set(
    domain: ConvexDomain,
    count: int,
    total_length: float,
    rng: np.random.Generator,
    *,
    jitter: float = 0.5,
    max_tries: int = 1000,
) -> RectifiableSet:
    """`count` random segments inside the domain whose lengths sum to `total_length`."""
    if count < 1 or not total_length > 0:
        raise InvalidArgumentError("Need count >= 1 and a positive total length")
    weights = rng.uniform(1.0 - jitter, 1.0 + jitter, size=count)
    lengths = weights / math.fsum(weights) * float(total_length)
    if lengths.max() >= domain.diameter:
        raise InvalidArgumentError(
            f"Segment length {lengths.max():.4g} does not fit a domain of diameter {domain.diameter:.4g}"
        )
    return RectifiableSet(
        tuple(place_segment(domain, float(l), rng, max_tries=max_tries) for l in lengths),
        {"construction": "random-segments"},
        domain,
    )


def place_segment(domain: ConvexDomain, length: float, rng: np.random.Generator, *, max_tries: int = 1000) -> Segment:
    """A segment of the given length on a random chord long enough to hold it."""
    for _ in range(max_tries):
        theta = float(rng.uniform(0.0, math.pi))
        lo, hi = domain_support(theta, domain)
        p = float(rng.uniform(lo, hi))
        a, b, chord = chord_segments(theta, np.array([p]), domain)
        if chord[0] <= length:
            continue
        t = float(rng.uniform(0.0, chord[0] - length)) / chord[0]
        start = a[0] + t * (b[0] - a[0])
        direction = (b[0] - a[0]) / chord[0]
        end = start + length * direction
        return Segment(tuple(start), tuple(end))
    raise InvalidArgumentError(f"Could not place a segment of length {length} after {max_tries} tries")


__all__ = [
    "DEFAULT_MAX_PRIMITIVES",
    "set_length",
    "circles_set",
    "disk_circle_radii",
    "disk_construction",
    "steinhaus_lines",
    "steinhaus_clip",
    "steinhaus_params_for_length",
    "steinhaus_for_length",
    "random_segment_set",
    "place_segment",
]
