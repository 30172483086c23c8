"""Local search for segment sets with small discrepancy at a fixed length budget."""
from __future__ import annotations

import logging
import math
from typing import Callable, List, Optional, Tuple

import numpy as np

from ..models import (
    ConvexDomain,
    DeviationTarget,
    DiscrepancyReport,
    HistoryEntry,
    LineCoords,
    RectifiableSet,
    SearchConfig,
    Segment,
)
from .construct import random_segment_set
from .discrepancy import sample_lines, sup_discrepancy_scan
from .geom import chord_lengths, chord_segment, count_intersections_batch

log = logging.getLogger(__name__)


class _Objective:
    """Sup deviation of the current segment arrays under the configured evaluator."""

    def __init__(self, domain: ConvexDomain, config: SearchConfig, p0: np.ndarray, p1: np.ndarray, threads: int) -> None:
        self.domain = domain
        self.config = config
        self.threads = threads
        self.factor = DeviationTarget.for_length(config.length_budget, domain).factor
        self.crn = config.evaluator.kind == "mc"
        if self.crn:
            # one fixed line sample for the whole run
            self.thetas, self.offsets = sample_lines(config.evaluator.samples, domain.circumradius, config.seed + 1)
            self.chords = chord_lengths(self.thetas, self.offsets, domain)
            counts, degenerate = self._columns(p0, p1)
            self.counts = counts
            self.degenerate = degenerate

    def _columns(self, p0: np.ndarray, p1: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        counts = np.zeros(len(self.thetas), dtype=np.int64)
        degenerate = np.zeros(len(self.thetas), dtype=np.int64)
        for a, b in zip(p0, p1):
            k, d = self._column(a, b)
            counts += k
            degenerate += d
        return counts, degenerate

    def _column(self, a: np.ndarray, b: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        single = RectifiableSet((Segment(tuple(a), tuple(b)),))
        k, d = count_intersections_batch(self.thetas, self.offsets, single)
        return k, d.astype(np.int64)

    def _value(self, counts: np.ndarray, degenerate: np.ndarray) -> float:
        dev = np.where(degenerate > 0, 0.0, np.abs(counts - self.factor * self.chords))
        return float(dev.max())

    def current(self, p0: np.ndarray, p1: np.ndarray) -> float:
        if self.crn:
            return self._value(self.counts, self.degenerate)
        return self._scan(p0, p1)

    def _scan(self, p0: np.ndarray, p1: np.ndarray) -> float:
        rset = _to_set(p0, p1, self.domain)
        return sup_discrepancy_scan(rset, self.domain, self.config.evaluator.theta_count, threads=self.threads).sup_value

    def propose(self, p0: np.ndarray, p1: np.ndarray, i: int, a: np.ndarray, b: np.ndarray):
        """Objective with segment i moved to (a, b), plus the state needed to commit it."""
        if not self.crn:
            q0, q1 = p0.copy(), p1.copy()
            q0[i], q1[i] = a, b
            return self._scan(q0, q1), None
        k_old, d_old = self._column(p0[i], p1[i])
        k_new, d_new = self._column(a, b)
        counts = self.counts - k_old + k_new
        degenerate = self.degenerate - d_old + d_new
        return self._value(counts, degenerate), (counts, degenerate)

    def commit(self, state) -> None:
        if self.crn and state is not None:
            self.counts, self.degenerate = state


def _to_set(p0: np.ndarray, p1: np.ndarray, domain: ConvexDomain, metadata: Optional[dict] = None) -> RectifiableSet:
    return RectifiableSet(
        tuple(Segment(tuple(a), tuple(b)) for a, b in zip(p0, p1)),
        dict(metadata or {}),
        domain,
    )


def _perturb(
    a: np.ndarray, b: np.ndarray, length: float, scale: float, rng: np.random.Generator, domain: ConvexDomain
) -> Optional[Tuple[np.ndarray, np.ndarray]]:
    """Jitter both endpoints, restore the length about the new midpoint, then
    slide the segment along its own line until it sits inside the domain.

    None if the line's chord is shorter than the segment.
    """
    noise = rng.normal(0.0, scale, size=(2, 2))
    a2, b2 = a + noise[0], b + noise[1]
    d = b2 - a2
    norm = math.hypot(d[0], d[1])
    if norm == 0.0:
        return None
    u = d / norm
    mid = 0.5 * (a2 + b2)
    ends = chord_segment(LineCoords(math.atan2(-u[0], u[1]), mid[0] * u[1] - mid[1] * u[0]), domain)
    if ends is None:
        return None
    lo, hi = sorted(float(np.dot(p, u)) for p in ends)
    if hi - lo < length:
        return None
    t = float(np.dot(mid, u))
    foot = mid - t * u
    t = min(max(t, lo + 0.5 * length), hi - 0.5 * length)
    return foot + (t - 0.5 * length) * u, foot + (t + 0.5 * length) * u


def optimize(
    domain: ConvexDomain,
    config: SearchConfig,
    *,
    threads: int = 1,
    on_step: Optional[Callable[[HistoryEntry], None]] = None,
) -> Tuple[RectifiableSet, DiscrepancyReport, List[HistoryEntry]]:
    """Greedy or annealed single-segment moves from a random start.

    Every segment keeps its initial length, so the budget holds at every step.
    Returns the best set seen, its final scan report and the per-step history.
    """
    rng = np.random.default_rng(config.seed)
    start = random_segment_set(domain, config.segment_count, config.length_budget, rng)
    p0 = start.packed.seg_p0.copy()
    p1 = start.packed.seg_p1.copy()
    lengths = np.hypot(*(p1 - p0).T)

    objective = _Objective(domain, config, p0, p1, threads)
    current = objective.current(p0, p1)
    initial = current
    best, best_p0, best_p1 = current, p0.copy(), p1.copy()
    history: List[HistoryEntry] = [HistoryEntry(0, current, True, current)]
    if on_step:
        on_step(history[0])

    schedule = config.schedule
    every = max(1, config.iterations // 10)
    log.info("optimize: %d segments, L=%g, %d iterations, %s/%s", config.segment_count, config.length_budget,
             config.iterations, config.evaluator.kind, schedule.kind)
    for step in range(1, config.iterations + 1):
        i = int(rng.integers(len(lengths)))
        moved = _perturb(p0[i], p1[i], float(lengths[i]), config.proposal_scale, rng, domain)
        accepted = False
        value = math.inf
        if moved is not None:
            value, state = objective.propose(p0, p1, i, *moved)
            if value <= current:
                accepted = True
            elif schedule.kind == "simulated_annealing":
                temp = schedule.temperature(step)
                accepted = temp > 0 and rng.random() < math.exp(-(value - current) / temp)
            if accepted:
                objective.commit(state)
                p0[i], p1[i] = moved
                current = value
                if current < best:
                    best, best_p0, best_p1 = current, p0.copy(), p1.copy()
        entry = HistoryEntry(step, value if math.isfinite(value) else current, accepted, current)
        history.append(entry)
        if on_step:
            on_step(entry)
        if step % every == 0:
            log.info("optimize step %d/%d: current %.4f, best %.4f", step, config.iterations, current, best)

    result = _to_set(
        best_p0,
        best_p1,
        domain,
        {"construction": "search", "initial_objective": initial, "best_objective": best, "seed": config.seed},
    )
    report = sup_discrepancy_scan(result, domain, config.final_theta_count, threads=threads)
    log.info("optimize done: objective %.4f -> %.4f, certified sup %.4f", initial, best, report.sup_value)
    return result, report, history


__all__ = ["optimize"]
