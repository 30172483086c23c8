"""
Trigonometric side of the longimeter: the equally spaced |sin| sum

    A_n(theta) = sum_{k=0}^{n-1} |sin(pi k / n + theta)|

its cosine series

    A_n(theta) = 2n/pi - (4/pi) sum_{l>=1} n / (4 l^2 n^2 - 1) cos(2 l n theta)

and the relative error A_n * pi / (2n) - 1 a Steinhaus longimeter makes when it
reads a unit segment at angle theta.
"""
from __future__ import annotations

import logging
import math
from typing import Dict, Tuple, Union

import numpy as np
from scipy.optimize import minimize_scalar

from ..errors import InvalidArgumentError
from ..models import LongimeterExtremes, Segment, SinSumResult
from ..models.geometry import Point

log = logging.getLogger(__name__)

DEFAULT_TERMS = 1000
DEFAULT_GRID = 10_000

# Extremes as printed for the six-direction longimeter (min, max).
QUOTED_LONGIMETER_ERRORS: Tuple[float, float] = (-0.0226, 0.0115)


def _check_n(n: int) -> int:
    if int(n) != n or n < 1:
        raise InvalidArgumentError(f"n must be a positive integer, got {n}")
    return int(n)


def abs_sin_sum_direct(n: int, theta: float) -> float:
    n = _check_n(n)
    return math.fsum(abs(math.sin(math.pi * k / n + theta)) for k in range(n))


def abs_sin_sum_grid(n: int, thetas: np.ndarray) -> np.ndarray:
    """Vectorized direct sum over an array of angles."""
    n = _check_n(n)
    k = np.arange(n, dtype=float)
    t = np.asarray(thetas, dtype=float)
    return np.abs(np.sin(np.pi * k[None, :] / n + t.reshape(-1, 1))).sum(axis=1).reshape(t.shape)


def series_coefficient_sum(n: int, terms: int = DEFAULT_TERMS) -> float:
    """Partial sum of n / (4 l^2 n^2 - 1) over 1 <= l <= terms. The full series stays below 1/n."""
    n = _check_n(n)
    if terms < 1:
        raise InvalidArgumentError(f"terms must be >= 1, got {terms}")
    ell = np.arange(1, int(terms) + 1, dtype=float)
    return math.fsum(n / (4.0 * ell * ell * n * n - 1.0))


def fourier_tail_bound(n: int, terms: int) -> float:
    """(4/pi) sum_{l>terms} n/(4 l^2 n^2 - 1), bounded by the integral from `terms`."""
    n = _check_n(n)
    if terms < 1:
        raise InvalidArgumentError(f"terms must be >= 1, got {terms}")
    u = 2.0 * n * terms
    return math.log1p(2.0 / (u - 1.0)) / math.pi


def abs_sin_sum_fourier(n: int, theta: float, terms: int = DEFAULT_TERMS) -> Tuple[float, float]:
    """Truncated series value and a rigorous bound on the dropped tail."""
    n = _check_n(n)
    if terms < 1:
        raise InvalidArgumentError(f"terms must be >= 1, got {terms}")
    ell = np.arange(1, terms + 1, dtype=float)
    coeff = n / (4.0 * ell * ell * n * n - 1.0)
    series = math.fsum(coeff * np.cos(2.0 * ell * n * theta))
    value = 2.0 * n / math.pi - 4.0 / math.pi * series
    return value, fourier_tail_bound(n, terms)


def abs_sin_sum_fourier_grid(n: int, thetas: np.ndarray, terms: int = DEFAULT_TERMS) -> np.ndarray:
    """Truncated series at many angles; the tail bound is the same for all of them."""
    n = _check_n(n)
    t = np.asarray(thetas, dtype=float).ravel()
    ell = np.arange(1, terms + 1, dtype=float)
    coeff = n / (4.0 * ell * ell * n * n - 1.0)
    series = np.cos(2.0 * n * np.outer(t, ell)) @ coeff
    return 2.0 * n / math.pi - 4.0 / math.pi * series


def sin_sum(n: int, theta: float, terms: int = DEFAULT_TERMS) -> SinSumResult:
    fourier, tail = abs_sin_sum_fourier(n, theta, terms)
    return SinSumResult(n=n, theta=theta, direct_value=abs_sin_sum_direct(n, theta), fourier_value=fourier, tail_bound=tail)


def global_deviation_bound(n: int) -> float:
    """Upper bound on max_theta |A_n(theta) - 2n/pi|: (4/pi) * (1/n)."""
    return 4.0 / (math.pi * _check_n(n))


def relative_error(n: int, theta: float) -> float:
    n = _check_n(n)
    return abs_sin_sum_direct(n, theta) * math.pi / (2.0 * n) - 1.0


def _refine(n: int, center: float, width: float, sign: float) -> Tuple[float, float]:
    res = minimize_scalar(
        lambda t: sign * relative_error(n, t),
        bounds=(center - width, center + width),
        method="bounded",
        options={"xatol": 1e-13},
    )
    theta = float(res.x)
    value = relative_error(n, theta)
    # the grid node itself may beat the refinement at a kink
    node_value = relative_error(n, center)
    if sign * node_value <= sign * value:
        theta, value = center, node_value
    return theta, value


def _reduce(theta: float, period: float) -> float:
    t = theta % period
    if period - t < 1e-9:
        t = 0.0
    return t


def longimeter_error_extremes(n: int, grid: int = DEFAULT_GRID) -> LongimeterExtremes:
    """Extremes of A_n * pi / (2n) - 1 over one period [0, pi/n]."""
    n = _check_n(n)
    period = math.pi / n
    thetas = np.linspace(0.0, period, grid + 1)
    rel = abs_sin_sum_grid(n, thetas) * math.pi / (2.0 * n) - 1.0
    h = period / grid
    lo_theta, lo_val = _refine(n, float(thetas[int(np.argmin(rel))]), h, 1.0)
    hi_theta, hi_val = _refine(n, float(thetas[int(np.argmax(rel))]), h, -1.0)
    out = LongimeterExtremes(
        n=n,
        min_rel_error=lo_val,
        max_rel_error=hi_val,
        argmin_theta=_reduce(lo_theta, period),
        argmax_theta=_reduce(hi_theta, period),
    )
    log.debug("longimeter n=%d: min %.6f at %.3g, max %.6f at %.3g", n, lo_val, out.argmin_theta, hi_val, out.argmax_theta)
    return out


def longimeter_report(n: int = 6, grid: int = DEFAULT_GRID) -> Dict[str, object]:
    """Computed extremes in percent, next to the quoted six-direction figures when they apply."""
    ext = longimeter_error_extremes(n, grid)
    report: Dict[str, object] = {
        "n": n,
        "min_rel_error_pct": 100.0 * ext.min_rel_error,
        "max_rel_error_pct": 100.0 * ext.max_rel_error,
        "argmin_theta": ext.argmin_theta,
        "argmax_theta": ext.argmax_theta,
        "expected_argmin": 0.0,
        "expected_argmax": math.pi / (2 * n),
        "bound_pct": 100.0 * 2.0 / (n * n),
    }
    if n == 6:
        qmin, qmax = QUOTED_LONGIMETER_ERRORS
        report["quoted_min_pct"] = 100.0 * qmin
        report["quoted_max_pct"] = 100.0 * qmax
        report["min_gap_pp"] = 100.0 * (ext.min_rel_error - qmin)
        report["max_gap_pp"] = 100.0 * (ext.max_rel_error - qmax)
    return report


# ------------------------- Crossing counts -------------------------

SegmentLike = Union[Segment, Tuple[Point, Point]]


def _endpoints(segment: SegmentLike) -> Tuple[Point, Point]:
    if isinstance(segment, Segment):
        return segment.p0, segment.p1
    p0, p1 = segment
    return (float(p0[0]), float(p0[1])), (float(p1[0]), float(p1[1]))


def _family_normal(k: int, n: int) -> Point:
    a = math.pi * k / n
    return (-math.sin(a), math.cos(a))


def projection_count(segment: SegmentLike, k: int, n: int, epsilon: float) -> float:
    """Leading term |<nu_k, y - x>| / epsilon of the crossings with family k; exact up to one line."""
    n = _check_n(n)
    if not epsilon > 0:
        raise InvalidArgumentError(f"epsilon must be positive, got {epsilon}")
    (x0, y0), (x1, y1) = _endpoints(segment)
    nx, ny = _family_normal(k, n)
    return abs(nx * (x1 - x0) + ny * (y1 - y0)) / epsilon


def crossing_count_exact(segment: SegmentLike, n: int, epsilon: float) -> int:
    """Lines of the unclipped S_{n, eps} crossing the open segment transversally."""
    n = _check_n(n)
    if not epsilon > 0:
        raise InvalidArgumentError(f"epsilon must be positive, got {epsilon}")
    (x0, y0), (x1, y1) = _endpoints(segment)
    total = 0
    for k in range(n):
        nx, ny = _family_normal(k, n)
        a = (nx * x0 + ny * y0) / epsilon
        b = (nx * x1 + ny * y1) / epsilon
        lo, hi = min(a, b), max(a, b)
        if hi > lo:
            total += max(0, math.ceil(hi) - math.floor(lo) - 1)
    return total


__all__ = [
    "DEFAULT_TERMS",
    "QUOTED_LONGIMETER_ERRORS",
    "abs_sin_sum_direct",
    "abs_sin_sum_grid",
    "abs_sin_sum_fourier",
    "abs_sin_sum_fourier_grid",
    "sin_sum",
    "series_coefficient_sum",
    "fourier_tail_bound",
    "global_deviation_bound",
    "relative_error",
    "longimeter_error_extremes",
    "longimeter_report",
    "projection_count",
    "crossing_count_exact",
]
