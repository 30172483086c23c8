"""
Buffon discrepancy of a set S inside a convex domain:

    sup over lines l of | #(l cap S) - factor * H^1(l cap domain) |,
    factor = (2/pi) * L / area(domain)

Degenerate lines (tangencies, endpoint hits, collinear segments) form a null
set and are skipped, never perturbed. Every sup comes back with the line that
attains it, so a reported value can be re-checked with `deviation`.
"""
from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import quad

from ..errors import DegenerateLineError, InvalidArgumentError, ResourceLimitError
from ..models import (
    ConvexDomain,
    ConvexPolygon,
    DeviationTarget,
    DiscrepancyReport,
    Disk,
    LineCoords,
    Method,
    PropositionCheck,
    RectifiableSet,
    Reuleaux,
    ScalingRow,
    ScalingStudy,
)
from ..models.geometry import TWO_PI
from .construct import DEFAULT_MAX_PRIMITIVES, steinhaus_for_length
from .geom import (
    TAU_DEG,
    chord_argmax,
    chord_length,
    chord_lengths,
    count_intersections,
    count_intersections_batch,
    domain_support,
    projection_intervals,
)

log = logging.getLogger(__name__)

DEFAULT_THETA_COUNT = 4096
DEFAULT_RESOLUTION = 2048
GAP_FORMULA = "factor * (diam(domain) + extent(set)) * (pi / theta_count) / 2"

# Lines per MC evaluation block.
_MC_CHUNK = 65_536


def target_for(rset: RectifiableSet, domain: ConvexDomain) -> DeviationTarget:
    return DeviationTarget.for_length(rset.total_length, domain)


def deviation(line: LineCoords, rset: RectifiableSet, target: DeviationTarget, *, tol: float = TAU_DEG) -> float:
    res = count_intersections(line, rset, tol=tol)
    if res.degenerate:
        raise DegenerateLineError(line)
    return abs(res.count - target.factor * chord_length(line, target.domain))


# ------------------------------ Breakpoint scan ------------------------------

@dataclass(frozen=True)
class _AngleBest:
    value: float
    offset: float
    count: int
    chord: float
    skipped: int


def _scan_angle(theta: float, rset: RectifiableSet, domain: ConvexDomain, factor: float, tol: float) -> _AngleBest:
    lo, hi, weight, extra = projection_intervals(theta, rset, tol=tol)
    pmin, pmax = domain_support(theta, domain)
    bps = np.unique(np.concatenate([lo, hi, extra, [pmin, pmax]]))
    # count on the open interval (bps[i], bps[i + 1])
    delta = np.zeros(len(bps) + 1, dtype=np.int64)
    np.add.at(delta, np.searchsorted(bps, lo), weight)
    np.add.at(delta, np.searchsorted(bps, hi), -weight)
    counts = np.cumsum(delta)[: len(bps) - 1]
    left = bps[:-1] + 2.0 * tol
    right = bps[1:] - 2.0 * tol
    usable = right - left > 0.0
    # intervals too narrow to hold a non-degenerate line
    skipped = int((~usable).sum())
    if not usable.any():
        return _AngleBest(-1.0, 0.5 * (pmin + pmax), 0, 0.0, skipped)
    left, right, counts = left[usable], right[usable], counts[usable]
    peak = np.clip(chord_argmax(theta, domain), left, right)
    candidates = np.concatenate([left, right, peak])
    cand_counts = np.concatenate([counts, counts, counts])
    chords = chord_lengths(theta, candidates, domain)
    dev = np.abs(cand_counts - factor * chords)
    i = int(np.argmax(dev))
    return _AngleBest(float(dev[i]), float(candidates[i]), int(cand_counts[i]), float(chords[i]), skipped)


def _scan_chunk(thetas: np.ndarray, rset: RectifiableSet, domain: ConvexDomain, factor: float, tol: float) -> List[_AngleBest]:
    return [_scan_angle(float(t), rset, domain, factor, tol) for t in thetas]


def certified_gap(factor: float, domain: ConvexDomain, rset: RectifiableSet, theta_count: int) -> float:
    lip = factor * (domain.diameter + rset.extent)
    return lip * (math.pi / theta_count) / 2.0


def sup_discrepancy_scan(
    rset: RectifiableSet,
    domain: ConvexDomain,
    theta_count: int = DEFAULT_THETA_COUNT,
    *,
    factor: Optional[float] = None,
    threads: int = 1,
    tol: float = TAU_DEG,
    max_primitives: int = DEFAULT_MAX_PRIMITIVES,
) -> DiscrepancyReport:
    """Deterministic sup over the angle grid j * pi / theta_count, exact in the offset.

    For a fixed angle the count is piecewise constant in the offset and the
    chord is concave, so each open interval between breakpoints is maximized
    at its two ends (pulled in by 2 * tol) or at the chord's peak.
    """
    if theta_count < 4:
        raise InvalidArgumentError(f"theta_count must be >= 4, got {theta_count}")
    if rset.packed.size > max_primitives:
        raise ResourceLimitError("primitives", rset.packed.size, max_primitives)
    target = target_for(rset, domain)
    c = target.factor if factor is None else float(factor)
    thetas = np.arange(theta_count, dtype=float) * (math.pi / theta_count)
    workers = max(1, int(threads))
    chunks = np.array_split(thetas, min(theta_count, workers * 8))
    log.info("scan: %d primitives, %d angles, %d worker(s)", rset.packed.size, theta_count, workers)
    if workers == 1:
        results = [r for chunk in chunks for r in _scan_chunk(chunk, rset, domain, c, tol)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(lambda ch: _scan_chunk(ch, rset, domain, c, tol), chunks)
            results = [r for part in parts for r in part]
    values = np.array([r.value for r in results])
    j = int(np.argmax(values))
    best = results[j]
    skipped = sum(r.skipped for r in results)
    witness = LineCoords(float(thetas[j]), best.offset) if best.value >= 0 else None
    gap = certified_gap(c, domain, rset, theta_count)
    log.debug("scan sup %.6g at theta=%.6g p=%.6g (gap %.3g)", best.value, thetas[j], best.offset, gap)
    return DiscrepancyReport(
        sup_value=max(best.value, 0.0),
        witness=witness,
        method=Method.BREAKPOINT_SCAN,
        theta_samples=theta_count,
        mc_samples=0,
        certified_gap=gap,
        degenerate_lines_skipped=skipped,
        factor=c,
        realized_length=rset.total_length,
        witness_count=best.count if witness is not None else None,
        witness_chord=best.chord if witness is not None else None,
        metadata={
            "gap_formula": GAP_FORMULA,
            "lipschitz": c * (domain.diameter + rset.extent),
            "theta_grid": "j * pi / theta_count",
            "degeneracy_tol": tol,
            "degenerate_unit": "breakpoint interval narrower than 4 * degeneracy_tol",
            "factor_source": "length" if factor is None else "override",
            "domain": domain.to_dict(),
        },
    )


# ------------------------------ Monte Carlo ------------------------------

def sample_lines(count: int, radius: float, seed: int) -> Tuple[np.ndarray, np.ndarray]:
    """Lines uniform in [0, pi) x [-radius, radius] under the kinematic measure."""
    rng = np.random.default_rng(seed)
    thetas = rng.uniform(0.0, math.pi, size=count)
    offsets = rng.uniform(-radius, radius, size=count)
    return thetas, offsets


def sampling_radius(rset: RectifiableSet, domain: ConvexDomain) -> float:
    return max(domain.circumradius, rset.extent)


def sup_discrepancy_mc(
    rset: RectifiableSet,
    domain: ConvexDomain,
    samples: int,
    seed: int,
    *,
    factor: Optional[float] = None,
    tol: float = TAU_DEG,
) -> DiscrepancyReport:
    """Largest deviation over seeded random lines; a lower bound only."""
    if samples < 1:
        raise InvalidArgumentError(f"samples must be >= 1, got {samples}")
    c = target_for(rset, domain).factor if factor is None else float(factor)
    thetas, offsets = sample_lines(samples, sampling_radius(rset, domain), seed)
    best_val, best_i, skipped = -1.0, -1, 0
    best_count, best_chord = 0, 0.0
    for start in range(0, samples, _MC_CHUNK):
        t = thetas[start : start + _MC_CHUNK]
        p = offsets[start : start + _MC_CHUNK]
        counts, degenerate = count_intersections_batch(t, p, rset, tol=tol)
        chords = chord_lengths(t, p, domain)
        dev = np.where(degenerate, -1.0, np.abs(counts - c * chords))
        skipped += int(degenerate.sum())
        i = int(np.argmax(dev))
        if dev[i] > best_val:
            best_val, best_i = float(dev[i]), start + i
            best_count, best_chord = int(counts[i]), float(chords[i])
    witness = LineCoords(float(thetas[best_i]), float(offsets[best_i])) if best_val >= 0 else None
    log.debug("mc sup %.6g over %d lines (%d degenerate)", max(best_val, 0.0), samples, skipped)
    return DiscrepancyReport(
        sup_value=max(best_val, 0.0),
        witness=witness,
        method=Method.MONTE_CARLO,
        theta_samples=0,
        mc_samples=samples,
        certified_gap=math.inf,
        degenerate_lines_skipped=skipped,
        factor=c,
        realized_length=rset.total_length,
        witness_count=best_count if witness is not None else None,
        witness_chord=best_chord if witness is not None else None,
        metadata={
            "seed": int(seed),
            "degeneracy_tol": tol,
            "degenerate_unit": "sampled line",
            "domain": domain.to_dict(),
        },
    )


def lower_bound_certificate(report: DiscrepancyReport, rset: RectifiableSet, domain: ConvexDomain, *, tol: float = TAU_DEG) -> float:
    """Re-evaluate the report's witness: the discrepancy is at least this value."""
    if report.witness is None:
        return 0.0
    return deviation(report.witness, rset, DeviationTarget.with_factor(report.factor, domain, rset.total_length), tol=tol)


# ------------------------------ Crofton integrals ------------------------------

def _kink_angles(rset: RectifiableSet) -> np.ndarray:
    """Angles in [0, 2 pi) where the projected length of some primitive is not smooth."""
    pk = rset.packed
    parts = []
    if len(pk.seg_p0):
        d = pk.seg_p1 - pk.seg_p0
        alpha = np.arctan2(d[:, 1], d[:, 0]) + math.pi / 2.0
        parts.extend([alpha, alpha + math.pi])
    if len(pk.arc_radius):
        for a in (pk.arc_start, pk.arc_start + pk.arc_span):
            parts.extend([a, a + math.pi])
    if not parts:
        return np.zeros(0)
    return np.unique(np.round(np.concatenate(parts) % TWO_PI, 15))


def _count_profile(theta: float, rset: RectifiableSet, radius: float, tol: float) -> float:
    lo, hi, weight, _ = projection_intervals(theta, rset, tol=tol)
    width = np.clip(np.minimum(hi, radius) - np.maximum(lo, -radius), 0.0, None)
    return float(np.dot(weight, width))


def _chord_profile(theta: float, domain: ConvexDomain, radius: float) -> float:
    if isinstance(domain, Disk):
        return math.pi * domain.radius**2
    pmin, pmax = domain_support(theta, domain)
    a, b = max(pmin, -radius), min(pmax, radius)
    if b <= a:
        return 0.0
    c, s = math.cos(theta), math.sin(theta)
    if isinstance(domain, ConvexPolygon):
        corners = domain.vertices
    elif isinstance(domain, Reuleaux):
        corners = domain.corners
    else:
        corners = ()
    points = sorted({x * c + y * s for x, y in corners if a < x * c + y * s < b})
    value, _ = quad(
        lambda p: float(chord_lengths(theta, np.array([p]), domain)[0]),
        a,
        b,
        points=points or None,
        limit=200,
        epsabs=1e-13,
        epsrel=1e-11,
    )
    return value


def crofton_integrals(
    rset: RectifiableSet,
    domain: ConvexDomain,
    radius: Optional[float] = None,
    resolution: int = DEFAULT_RESOLUTION,
    *,
    tol: float = TAU_DEG,
) -> Tuple[float, float]:
    """(count integral, chord integral) over the double cover [0, 2 pi) x [-R, R].

    The offset integral is exact for the count (piecewise constant) and
    adaptive for the chord. The angle integral is a composite midpoint rule on
    the uniform grid refined at every angle where a projected length kinks.
    Expected values: 4 * L and 2 * pi * area.
    """
    need = sampling_radius(rset, domain)
    R = need if radius is None else float(radius)
    if R < need - 1e-12:
        raise InvalidArgumentError(f"radius {R} does not cover the set and domain (needs {need})")
    if resolution < 1:
        raise InvalidArgumentError(f"resolution must be >= 1, got {resolution}")
    nodes = np.union1d(np.linspace(0.0, TWO_PI, resolution + 1), _kink_angles(rset))
    widths = np.diff(nodes)
    keep = widths > 0
    mids = 0.5 * (nodes[:-1] + nodes[1:])[keep]
    widths = widths[keep]
    count_integral = math.fsum(w * _count_profile(float(t), rset, R, tol) for t, w in zip(mids, widths))
    chord_integral = math.fsum(w * _chord_profile(float(t), domain, R) for t, w in zip(mids, widths))
    log.debug("crofton: %d cells, count %.12g (4L = %.12g)", len(mids), count_integral, 4 * rset.total_length)
    return count_integral, chord_integral


# ------------------------------ Proposition ------------------------------

def proposition_bound_check(
    rset: RectifiableSet,
    domain: ConvexDomain,
    c: float,
    x: float,
    *,
    theta_count: int = 256,
    threads: int = 1,
) -> PropositionCheck:
    """|c - (2/pi) L / area| <= (2 diam / area) X, after checking X against a quick re-measure."""
    if not (math.isfinite(x) and x >= 0):
        raise InvalidArgumentError(f"X must be a finite non-negative bound, got {x}")
    measured = sup_discrepancy_scan(rset, domain, theta_count, factor=c, threads=threads)
    if measured.sup_value > x + 1e-9 * max(1.0, x):
        raise InvalidArgumentError(
            f"X = {x} is not an upper bound: a line with deviation {measured.sup_value} exists"
        )
    lhs = abs(c - target_for(rset, domain).factor)
    rhs = 2.0 * domain.diameter / domain.area * x
    return PropositionCheck(holds=lhs <= rhs, margin=rhs - lhs, lhs=lhs, rhs=rhs, c=float(c), x=float(x))


def proposition_certificate(
    rset: RectifiableSet,
    domain: ConvexDomain,
    c: Optional[float] = None,
    theta_count: int = 1024,
    *,
    threads: int = 1,
) -> PropositionCheck:
    """Measure X for the factor c (default: the length-derived one), then check the bound."""
    c = target_for(rset, domain).factor if c is None else float(c)
    report = sup_discrepancy_scan(rset, domain, theta_count, factor=c, threads=threads)
    return proposition_bound_check(rset, domain, c, report.upper_bound, theta_count=min(theta_count, 256), threads=threads)


# ------------------------------ Scaling study ------------------------------

def pencil_deviation(rset: RectifiableSet, domain: ConvexDomain, epsilon: float, *, directions: int = 64, tol: float = TAU_DEG) -> float:
    """Largest deviation among lines passing within epsilon/4 of the origin."""
    target = target_for(rset, domain)
    thetas = (np.arange(directions, dtype=float) + 0.5) * (math.pi / directions)
    thetas = np.concatenate([thetas, thetas])
    offsets = np.concatenate([np.full(directions, epsilon / 4.0), np.full(directions, -epsilon / 4.0)])
    counts, degenerate = count_intersections_batch(thetas, offsets, rset, tol=tol)
    chords = chord_lengths(thetas, offsets, domain)
    dev = np.where(degenerate, 0.0, np.abs(counts - target.factor * chords))
    return float(dev.max())


def scaling_study(
    domain: ConvexDomain,
    lengths: Sequence[float],
    *,
    theta_count: int = DEFAULT_THETA_COUNT,
    threads: int = 1,
    max_primitives: int = DEFAULT_MAX_PRIMITIVES,
    pencil: bool = False,
) -> ScalingStudy:
    """Steinhaus sets at each length, their scan sup, and the log-log fit of sup against L."""
    if not lengths:
        raise InvalidArgumentError("at least one length is required")
    rows: List[ScalingRow] = []
    for L in lengths:
        params, rset = steinhaus_for_length(L, domain, max_primitives=max_primitives)
        report = sup_discrepancy_scan(rset, domain, theta_count, threads=threads, max_primitives=max_primitives)
        rows.append(
            ScalingRow(
                length=float(L),
                n=params.n,
                epsilon=params.epsilon,
                realized_length=rset.total_length,
                sup_value=report.sup_value,
                certified_gap=report.certified_gap,
                primitive_count=len(rset),
                pencil_deviation=pencil_deviation(rset, domain, params.epsilon) if pencil else None,
            )
        )
        log.info("scaling L=%g: n=%d eps=%.3g sup=%.4f", L, params.n, params.epsilon, report.sup_value)
    slope = intercept = None
    residuals: List[float] = []
    sups = np.array([r.sup_value for r in rows])
    if len(rows) >= 3 and np.all(sups > 0):
        x = np.log([r.length for r in rows])
        y = np.log(sups)
        slope_f, intercept_f = np.polyfit(x, y, 1)
        slope, intercept = float(slope_f), float(intercept_f)
        residuals = [float(v) for v in y - (slope_f * x + intercept_f)]
    elif len(rows) >= 3:
        log.warning("scaling fit skipped: a zero sup cannot be log-transformed")
    c_estimate = max(r.normalized for r in rows)
    return ScalingStudy(rows=rows, slope=slope, intercept=intercept, residuals=residuals, c_estimate=c_estimate)


__all__ = [
    "DEFAULT_THETA_COUNT",
    "DEFAULT_RESOLUTION",
    "GAP_FORMULA",
    "target_for",
    "deviation",
    "certified_gap",
    "sup_discrepancy_scan",
    "sample_lines",
    "sampling_radius",
    "sup_discrepancy_mc",
    "lower_bound_certificate",
    "crofton_integrals",
    "proposition_bound_check",
    "proposition_certificate",
    "pencil_deviation",
    "scaling_study",
]
