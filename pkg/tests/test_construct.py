import math

import numpy as np
import pytest

from crofton_cli.errors import InvalidArgumentError, ResourceLimitError
from crofton_cli.models import Circle, ConvexPolygon, Disk, RectifiableSet, Segment, SteinhausParams
from crofton_cli.services.construct import (
    disk_circle_radii,
    disk_construction,
    random_segment_set,
    set_length,
    steinhaus_clip,
    steinhaus_for_length,
    steinhaus_lines,
    steinhaus_params_for_length,
)
from crofton_cli.services.geom import boundary_gap, set_inside


def test_set_length_is_additive():
    circle = RectifiableSet((Circle((0, 0), 1.0),))
    seg = RectifiableSet((Segment((0, 0), (3, 4)),))
    assert set_length(circle) == pytest.approx(2 * math.pi)
    assert set_length(seg) == pytest.approx(5.0)
    assert set_length(circle.union(seg)) == pytest.approx(2 * math.pi + 5.0)


def test_disk_radii_small_lengths():
    assert disk_circle_radii(math.pi**2 / 2) == []
    assert disk_circle_radii(math.pi**2) == pytest.approx([math.sqrt(3) / 2])


def test_disk_radii_for_500():
    radii = disk_circle_radii(500)
    assert len(radii) == 101
    assert radii[0] == pytest.approx(0.999951, abs=1e-6)
    assert all(0 < r < 1 for r in radii)
    assert radii == sorted(radii, reverse=True)


@pytest.mark.parametrize("length", [0.0, -3.0, math.inf])
def test_disk_radii_reject_bad_length(length):
    with pytest.raises(InvalidArgumentError):
        disk_circle_radii(length)


def test_disk_construction_hits_length_exactly():
    rset = disk_construction(500)
    assert rset.total_length == pytest.approx(500, rel=1e-12)
    assert 101 <= len(rset) <= 104
    assert abs(rset.metadata["pre_adjustment_length"] - 500) <= 8 * math.pi
    assert set_inside(rset, Disk())
    assert rset.domain == Disk()


def test_disk_construction_small_deficit():
    rset = disk_construction(math.pi**2)
    meta = rset.metadata
    assert meta["pre_adjustment_length"] == pytest.approx(5.441, abs=1e-3)
    assert meta["adjustment"]["deficit"] == pytest.approx(4.428, abs=2e-3)
    assert rset.total_length == pytest.approx(math.pi**2, rel=1e-12)


@pytest.mark.parametrize("length", [37.0, 100.0, 1000.0, 2500.0])
def test_disk_construction_length_audit(length):
    rset = disk_construction(length)
    assert rset.total_length == pytest.approx(length, rel=1e-12)
    assert all(c.radius < 1.0 for c in rset.primitives)


def test_steinhaus_single_family_in_disk():
    rset = steinhaus_clip(SteinhausParams(1, 0.25), Disk())
    assert len(rset) == 7
    heights = sorted(round(s.p0[1], 12) for s in rset.primitives)
    assert heights == pytest.approx([-0.75, -0.5, -0.25, 0.0, 0.25, 0.5, 0.75])
    for s in rset.primitives:
        assert s.p0[1] == pytest.approx(s.p1[1])
    ends = np.array([p for s in rset.primitives for p in (s.p0, s.p1)])
    assert np.abs(boundary_gap(Disk(), ends)).max() < 1e-9


def test_steinhaus_two_families_is_a_grid():
    rset = steinhaus_clip(SteinhausParams(2, 0.1), ConvexPolygon.square(1.0))
    for s in rset.primitives:
        dx, dy = s.p1[0] - s.p0[0], s.p1[1] - s.p0[1]
        assert min(abs(dx), abs(dy)) < 1e-12
    assert rset.metadata == {"construction": "steinhaus", "n": 2, "epsilon": 0.1}


def test_steinhaus_small_grid_in_unit_disk():
    rset = steinhaus_clip(SteinhausParams(2, 0.5), Disk())
    assert len(rset) == 6
    assert rset.total_length == pytest.approx(4.0 + 4.0 * math.sqrt(3.0))
    assert rset.total_length == pytest.approx(10.928, abs=1e-3)


def test_steinhaus_lines_cover_the_ball():
    lines = steinhaus_lines(SteinhausParams(3, 0.5), 1.0)
    assert len(lines) == 3 * 5


def test_steinhaus_cap():
    with pytest.raises(ResourceLimitError):
        steinhaus_clip(SteinhausParams(2, 1e-3), Disk(), max_primitives=100)


def test_steinhaus_params_for_length():
    assert steinhaus_params_for_length(1000) == SteinhausParams(10, 0.01)
    assert steinhaus_params_for_length(8) == SteinhausParams(2, 0.25)
    with pytest.raises(InvalidArgumentError):
        steinhaus_params_for_length(-1)


def test_steinhaus_for_length_records_realized_length():
    params, rset = steinhaus_for_length(1000, Disk())
    assert (params.n, params.epsilon) == (10, 0.01)
    assert rset.metadata["target_length"] == 1000.0
    assert rset.metadata["realized_length"] == pytest.approx(rset.total_length)
    # every family covers the disk once: about area / eps of chord per family
    assert rset.total_length == pytest.approx(math.pi * params.n / params.epsilon, rel=0.02)


def test_steinhaus_length_scales_with_line_density():
    ratios = []
    for n, eps in ((2, 0.05), (4, 0.02), (6, 0.01)):
        rset = steinhaus_clip(SteinhausParams(n, eps), Disk())
        ratios.append(rset.total_length / (n / eps))
    assert max(ratios) / min(ratios) < 1.05
    assert ratios[-1] == pytest.approx(math.pi, rel=0.01)


def test_random_segment_set_budget_and_containment():
    rng = np.random.default_rng(0)
    rset = random_segment_set(Disk(), 40, 12.0, rng)
    assert len(rset) == 40
    assert rset.total_length == pytest.approx(12.0, rel=1e-12)
    assert set_inside(rset, Disk())


def test_random_segment_set_rejects_oversized_segments():
    with pytest.raises(InvalidArgumentError):
        random_segment_set(Disk(), 1, 2.5, np.random.default_rng(0))
