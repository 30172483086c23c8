"""
Named verification suites. Each returns a VerifyResult whose checks carry the
measured value, the limit it was held to and whether it passed.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Sequence, Tuple

import numpy as np

from ..errors import InvalidArgumentError
from ..models import Arc, Circle, ConvexDomain, ConvexPolygon, Disk, RectifiableSet, Reuleaux, Segment
from .construct import disk_circle_radii, disk_construction, steinhaus_for_length
from .discrepancy import crofton_integrals, proposition_certificate, scaling_study, sup_discrepancy_scan
from .harmonic import (
    QUOTED_LONGIMETER_ERRORS,
    abs_sin_sum_fourier_grid,
    abs_sin_sum_grid,
    fourier_tail_bound,
    global_deviation_bound,
    longimeter_error_extremes,
)
from .geom import TAU_DEG

log = logging.getLogger(__name__)

_SCALING_DOMAINS = {"disk": Disk(), "square": ConvexPolygon.square(1.0)}


@dataclass
class VerifyResult:
    suite: str
    checks: List[Dict[str, Any]] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c["ok"] for c in self.checks)

    def check(self, name: str, value: float, limit: float, ok: bool) -> None:
        self.checks.append({"name": name, "value": float(value), "limit": float(limit), "ok": bool(ok)})
        if not ok:
            log.warning("%s: %s = %.6g violates %.6g", self.suite, name, value, limit)

    def to_dict(self) -> Dict[str, Any]:
        return {"suite": self.suite, "passed": self.passed, "checks": list(self.checks), "details": dict(self.details)}


def random_small_set(rng: np.random.Generator, max_primitives: int = 20, radius: float = 2.0) -> RectifiableSet:
    """Up to max_primitives segments, circles and arcs inside the ball B(0, radius)."""
    prims = []
    for _ in range(int(rng.integers(1, max_primitives + 1))):
        kind = rng.integers(3)
        if kind == 0:
            r = radius * np.sqrt(rng.uniform(size=2))
            phi = rng.uniform(0.0, 2 * math.pi, size=2)
            prims.append(Segment((r[0] * math.cos(phi[0]), r[0] * math.sin(phi[0])), (r[1] * math.cos(phi[1]), r[1] * math.sin(phi[1]))))
            continue
        rho = rng.uniform(0.05, radius / 2.0)
        dist = rng.uniform(0.0, radius - rho)
        phi = rng.uniform(0.0, 2 * math.pi)
        center = (dist * math.cos(phi), dist * math.sin(phi))
        if kind == 1:
            prims.append(Circle(center, rho))
        else:
            prims.append(Arc(center, rho, rng.uniform(0.0, 2 * math.pi), rng.uniform(0.1, 2 * math.pi - 0.1)))
    return RectifiableSet(tuple(prims))


def verify_crofton(*, sets: int = 50, resolution: int = 2048, seed: int = 0, rel_tol: float = 1e-6) -> VerifyResult:
    result = VerifyResult("crofton")
    rng = np.random.default_rng(seed)
    ball = Disk((0.0, 0.0), 2.0)
    worst = 0.0
    for _ in range(sets):
        rset = random_small_set(rng)
        count_integral, _ = crofton_integrals(rset, ball, resolution=resolution)
        worst = max(worst, abs(count_integral / (4.0 * rset.total_length) - 1.0))
    result.check("max |count / 4L - 1|", worst, rel_tol, worst <= rel_tol)
    for name, domain in (
        ("disk", Disk()),
        ("square", ConvexPolygon.from_corner(1.0)),
        ("reuleaux", Reuleaux.from_width(1.0)),
    ):
        _, chord_integral = crofton_integrals(RectifiableSet(), domain, resolution=resolution)
        err = abs(chord_integral / (2.0 * math.pi * domain.area) - 1.0)
        result.check(f"{name}: |chord / 2pi area - 1|", err, rel_tol, err <= rel_tol)
    result.details.update({"sets": sets, "resolution": resolution, "seed": seed, "cover": "double"})
    return result


def counting_bound_error(length: float, grid: int = 100_000) -> float:
    """max_r |#{i : r_i >= r} - (2L/pi^2) sqrt(1 - r^2)| over a grid plus every r_i +- tol."""
    radii = np.sort(np.asarray(disk_circle_radii(length)))
    m = 2.0 * length / math.pi**2
    r = np.concatenate([np.linspace(0.0, 1.0, grid + 2)[1:-1], radii - TAU_DEG, radii + TAU_DEG])
    r = r[(r > 0.0) & (r < 1.0)]
    count = len(radii) - np.searchsorted(radii, r, side="left")
    return float(np.max(np.abs(count - m * np.sqrt(1.0 - r * r))))


def verify_theorem1(
    lengths: Sequence[float] = (100.0, 500.0, 1000.0, 5000.0),
    *,
    theta_count: int = 4096,
    grid: int = 100_000,
    threads: int = 1,
    bound: float = 100.0,
) -> VerifyResult:
    result = VerifyResult("theorem1")
    constants = {}
    disk = Disk()
    for L in lengths:
        rset = disk_construction(L)
        report = sup_discrepancy_scan(rset, disk, theta_count, threads=threads)
        constants[str(L)] = report.sup_value
        result.check(f"L={L:g}: sup", report.sup_value, bound, report.upper_bound <= bound)
        result.check(f"L={L:g}: sup >= 1/2", report.sup_value, 0.5, report.sup_value >= 0.5 - 1e-6)
        err = counting_bound_error(L, grid)
        result.check(f"L={L:g}: counting error", err, 1.0, err <= 1.0 + 1e-9)
        pre = float(rset.metadata["pre_adjustment_length"])
        result.check(f"L={L:g}: |pre length - L|", abs(pre - L), 8 * math.pi, abs(pre - L) <= 8 * math.pi)
        post = abs(rset.total_length - L)
        result.check(f"L={L:g}: |length - L|", post, 1e-9 * L, post <= 1e-9 * L)
    result.details.update({"observed_sup": constants, "theta_count": theta_count})
    return result


def _proposition_checks(
    result: VerifyResult,
    label: str,
    rset: RectifiableSet,
    domain: ConvexDomain,
    perturbation: float,
    theta_count: int,
    threads: int,
) -> None:
    c = 2.0 / math.pi * rset.total_length / domain.area
    for name, factor in (
        ("c", c),
        (f"c(1+{perturbation:g})", c * (1 + perturbation)),
        (f"c(1-{perturbation:g})", c * (1 - perturbation)),
        ("0", 0.0),
    ):
        check = proposition_certificate(rset, domain, factor, theta_count, threads=threads)
        result.check(f"{label}, {name}: margin", check.margin, 0.0, check.holds)


def verify_proposition(
    lengths: Sequence[float] = (100.0, 500.0, 1000.0, 5000.0),
    steinhaus_lengths: Sequence[float] = (1e3, 1e4, 1e5),
    *,
    perturbation: float = 0.1,
    theta_count: int = 1024,
    steinhaus_theta_count: int = 256,
    threads: int = 1,
) -> VerifyResult:
    """Proposition bound for the disk constructions and for Steinhaus sets in the disk and square."""
    result = VerifyResult("proposition")
    for L in lengths:
        _proposition_checks(result, f"disk L={L:g}", disk_construction(L), Disk(), perturbation, theta_count, threads)
    for name, domain in _SCALING_DOMAINS.items():
        for L in steinhaus_lengths:
            _, rset = steinhaus_for_length(L, domain)
            _proposition_checks(
                result, f"steinhaus {name} L={L:g}", rset, domain, perturbation, steinhaus_theta_count, threads
            )
    result.details.update(
        {"lengths": list(lengths), "steinhaus_lengths": list(steinhaus_lengths), "perturbation": perturbation}
    )
    return result


def verify_scaling(
    lengths: Sequence[float] = (1e3, 1e4, 1e5),
    *,
    domains: Sequence[str] = ("disk", "square"),
    theta_count: int = 256,
    threads: int = 1,
    slope_range: Tuple[float, float] = (0.25, 0.45),
    spread: float = 2.0,
) -> VerifyResult:
    """Log-log slope of the Steinhaus scan sup against L, and the spread of sup / L^(1/3)."""
    result = VerifyResult("scaling")
    lo, hi = slope_range
    for name in domains:
        if name not in _SCALING_DOMAINS:
            raise InvalidArgumentError(f"Unknown scaling domain {name!r}; choose from {', '.join(_SCALING_DOMAINS)}")
        study = scaling_study(_SCALING_DOMAINS[name], lengths, theta_count=theta_count, threads=threads)
        slope = study.slope if study.slope is not None else 0.0
        result.check(f"{name}: slope in [{lo:g}, {hi:g}]", slope, hi, study.slope is not None and lo <= slope <= hi)
        normalized = [r.normalized for r in study.rows]
        ratio = max(normalized) / min(normalized) if min(normalized) > 0 else 0.0
        result.check(f"{name}: max/min sup / L^(1/3)", ratio, spread, 0.0 < ratio <= spread)
        result.details[name] = {"slope": study.slope, "c_estimate": study.c_estimate, "normalized": normalized}
    result.details.update({"lengths": list(lengths), "theta_count": theta_count})
    return result


def verify_harmonic(
    n_max: int = 64,
    *,
    samples: int = 10_000,
    terms: int = 1000,
    seed: int = 0,
    slack: float = 1e-10,
) -> VerifyResult:
    result = VerifyResult("harmonic")
    rng = np.random.default_rng(seed)
    worst_identity = -math.inf
    worst_global = -math.inf
    for n in range(1, n_max + 1):
        thetas = rng.uniform(0.0, 2 * math.pi, size=samples)
        direct = abs_sin_sum_grid(n, thetas)
        fourier = abs_sin_sum_fourier_grid(n, thetas, terms)
        worst_identity = max(worst_identity, float(np.max(np.abs(direct - fourier))) - fourier_tail_bound(n, terms))
        dense = np.linspace(0.0, math.pi / n, 2001)
        dev = float(np.max(np.abs(abs_sin_sum_grid(n, dense) - 2.0 * n / math.pi)))
        worst_global = max(worst_global, dev - global_deviation_bound(n))
    result.check("max |direct - fourier| - tail", worst_identity, slack, worst_identity <= slack)
    result.check("max deviation - 4/(pi n)", worst_global, 0.0, worst_global <= 0.0)
    result.details.update({"n_max": n_max, "samples": samples, "terms": terms})
    return result


def verify_longimeter(n: int = 6) -> VerifyResult:
    result = VerifyResult("longimeter")
    ext = longimeter_error_extremes(n)
    result.check("argmin theta", ext.argmin_theta, 1e-6, abs(ext.argmin_theta) <= 1e-6)
    result.check("argmax theta - pi/2n", abs(ext.argmax_theta - math.pi / (2 * n)), 1e-6, abs(ext.argmax_theta - math.pi / (2 * n)) <= 1e-6)
    result.check("extremes within 2/n^2", max(-ext.min_rel_error, ext.max_rel_error), 2.0 / n**2, max(-ext.min_rel_error, ext.max_rel_error) <= 2.0 / n**2)
    if n == 6:
        qmin, qmax = QUOTED_LONGIMETER_ERRORS
        max_pp = abs(100 * ext.max_rel_error - 100 * qmax)
        min_pp = abs(100 * ext.min_rel_error - (-2.3))
        result.check("max error vs 1.15% (pp)", max_pp, 0.02, max_pp <= 0.02)
        result.check("min error vs -2.3% (pp)", min_pp, 0.10, min_pp <= 0.10)
        result.details["quoted_min_gap_pp"] = 100 * (ext.min_rel_error - qmin)
    result.details.update(
        {
            "n": n,
            "min_rel_error_pct": 100 * ext.min_rel_error,
            "max_rel_error_pct": 100 * ext.max_rel_error,
            "argmin_theta": ext.argmin_theta,
            "argmax_theta": ext.argmax_theta,
        }
    )
    return result


SUITES: Dict[str, Callable[..., VerifyResult]] = {
    "crofton": verify_crofton,
    "proposition": verify_proposition,
    "harmonic": verify_harmonic,
    "theorem1": verify_theorem1,
    "longimeter": verify_longimeter,
    "scaling": verify_scaling,
}


def run_suite(name: str, **params: Any) -> VerifyResult:
    try:
        suite = SUITES[name]
    except KeyError:
        raise InvalidArgumentError(f"Unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
    return suite(**{k: v for k, v in params.items() if v is not None})


__all__ = [
    "VerifyResult",
    "SUITES",
    "run_suite",
    "random_small_set",
    "counting_bound_error",
    "verify_crofton",
    "verify_theorem1",
    "verify_proposition",
    "verify_harmonic",
    "verify_longimeter",
    "verify_scaling",
]
