import math

import numpy as np
import pytest

from crofton_cli.errors import InvalidArgumentError
from crofton_cli.models import ConvexPolygon, Disk, EvaluatorChoice, RectifiableSet, ScheduleChoice, SearchConfig, Segment
from crofton_cli.services.geom import set_inside
from crofton_cli.services.search import _perturb, optimize


def _config(**overrides):
    base = dict(
        segment_count=20,
        length_budget=10.0,
        iterations=50,
        seed=3,
        evaluator=EvaluatorChoice("mc", samples=2000),
        final_theta_count=32,
    )
    base.update(overrides)
    return SearchConfig(**base)


def test_zero_iterations_returns_start():
    rset, report, history = optimize(Disk(), _config(iterations=0))
    assert len(history) == 1
    assert len(rset) == 20
    assert rset.metadata["initial_objective"] == rset.metadata["best_objective"]
    assert report.realized_length == pytest.approx(10.0)


def test_fixed_seed_is_reproducible():
    a = optimize(Disk(), _config())
    b = optimize(Disk(), _config())
    assert a[2] == b[2]
    assert a[0].primitives == b[0].primitives


def test_budget_and_domain_are_conserved():
    rset, _, history = optimize(Disk(), _config(proposal_scale=0.2))
    assert len(history) == 51
    assert all(isinstance(p, Segment) for p in rset.primitives)
    assert rset.total_length == pytest.approx(10.0, abs=1e-9)
    assert set_inside(rset, Disk())


def test_greedy_current_never_increases():
    _, _, history = optimize(Disk(), _config())
    currents = [h.current for h in history]
    assert all(b <= a for a, b in zip(currents, currents[1:]))
    assert all(h.current == h.objective for h in history if h.accepted)


def test_greedy_improves_on_the_random_start():
    rset, _, _ = optimize(Disk(), _config(segment_count=200, length_budget=20.0, iterations=1500))
    assert rset.metadata["best_objective"] < rset.metadata["initial_objective"]


def test_greedy_scan_current_never_increases():
    config = _config(
        segment_count=40,
        length_budget=20.0,
        iterations=300,
        evaluator=EvaluatorChoice("scan", theta_count=32),
    )
    rset, _, history = optimize(Disk(), config)
    currents = [h.current for h in history]
    assert all(b <= a for a, b in zip(currents, currents[1:]))
    assert currents[-1] < currents[0]
    assert rset.metadata["best_objective"] == currents[-1]


def test_perturb_slides_segment_back_into_domain():
    square = ConvexPolygon.from_corner(1.0)
    rng = np.random.default_rng(0)
    a, b = _perturb(np.array([0.95, 0.5]), np.array([1.15, 0.5]), 0.2, 0.0, rng, square)
    assert a.tolist() == pytest.approx([0.8, 0.5])
    assert b.tolist() == pytest.approx([1.0, 0.5])
    assert _perturb(np.array([0.0, 0.5]), np.array([2.0, 0.5]), 2.0, 0.0, rng, square) is None


def test_perturb_keeps_length_inside_disk():
    rng = np.random.default_rng(4)
    a0, b0 = np.array([0.7, 0.0]), np.array([0.95, 0.0])
    for _ in range(200):
        moved = _perturb(a0, b0, 0.25, 0.3, rng, Disk())
        if moved is None:
            continue
        a, b = moved
        assert math.dist(a, b) == pytest.approx(0.25)
        assert set_inside(RectifiableSet((Segment(tuple(a), tuple(b)),)), Disk())


def test_scan_evaluator_and_annealing():
    config = _config(
        segment_count=6,
        length_budget=3.0,
        iterations=10,
        evaluator=EvaluatorChoice("scan", theta_count=16),
        schedule=ScheduleChoice("simulated_annealing", t0=0.5, cooling=0.9),
    )
    rset, report, history = optimize(Disk(), config, threads=2)
    assert len(history) == 11
    assert math.isfinite(report.sup_value)
    assert rset.total_length == pytest.approx(3.0, abs=1e-9)


def test_on_step_sees_every_entry():
    seen = []
    _, _, history = optimize(Disk(), _config(iterations=5), on_step=seen.append)
    assert seen == history


@pytest.mark.parametrize("kwargs", [{"segment_count": 0}, {"length_budget": -1.0}, {"iterations": -1}])
def test_config_validation(kwargs):
    with pytest.raises(InvalidArgumentError):
        _config(**kwargs)
    with pytest.raises(InvalidArgumentError):
        EvaluatorChoice("grid")


def test_schedule_temperature_decays():
    sched = ScheduleChoice("simulated_annealing", t0=2.0, cooling=0.5)
    assert sched.temperature(0) == 2.0
    assert sched.temperature(3) == pytest.approx(0.25)
    assert np.isclose(ScheduleChoice().temperature(10), 0.999**10)
