import math

import numpy as np
import pytest

from crofton_cli.errors import InvalidArgumentError
from crofton_cli.models import Arc, Circle, ConvexPolygon, Disk, LineCoords, RectifiableSet, Reuleaux, Segment
from crofton_cli.services.geom import (
    apply_rigid_motion,
    boundary_gap,
    chord_length,
    chord_lengths,
    chord_segment,
    contains,
    count_intersections,
    count_intersections_batch,
    domain_metrics,
    domain_support,
    intersect_line_primitive,
    normalize_line,
    projection_intervals,
    set_inside,
)
from crofton_cli.services.verify import random_small_set


def test_normalize_line_folds_half_cover():
    line = normalize_line(3 * math.pi / 2, 0.5)
    assert line.theta == pytest.approx(math.pi / 2)
    assert line.offset == pytest.approx(-0.5)
    assert normalize_line(0.0, 1.0) == LineCoords(0.0, 1.0)
    aliased = normalize_line(math.pi, 0.3)
    assert aliased.theta == 0.0 and aliased.offset == pytest.approx(-0.3)


def test_normalize_line_is_idempotent():
    rng = np.random.default_rng(7)
    for theta, p in zip(rng.uniform(-10, 10, 1000), rng.uniform(-3, 3, 1000)):
        once = normalize_line(theta, p)
        assert normalize_line(once.theta, once.offset) == once
        assert 0.0 <= once.theta < math.pi


@pytest.mark.parametrize("theta", [-1e-20, 0.3 - (0.1 + 0.2)])
def test_normalize_line_just_below_zero_keeps_the_line(theta):
    line = normalize_line(theta, 0.5)
    assert line.theta == 0.0
    assert line.offset == 0.5


def test_rotating_back_by_a_tiny_angle_keeps_the_line():
    moved = apply_rigid_motion(LineCoords(0.0, 0.75), -1e-20)
    assert moved == LineCoords(0.0, 0.75)


@pytest.mark.parametrize("theta,offset", [(math.nan, 0.0), (0.0, math.inf)])
def test_normalize_line_rejects_non_finite(theta, offset):
    with pytest.raises(InvalidArgumentError):
        normalize_line(theta, offset)


def test_unit_circle_crossings():
    circle = Circle((0.0, 0.0), 1.0)
    assert intersect_line_primitive(LineCoords(0.0, 0.0), circle).count == 2
    assert intersect_line_primitive(LineCoords(0.0, 2.0), circle).count == 0
    tangent = intersect_line_primitive(LineCoords(0.0, 1.0), circle)
    assert tangent.degenerate and tangent.count == 0


def test_segment_endpoint_hit_is_degenerate():
    seg = Segment((0.0, 0.0), (1.0, 0.0))
    res = intersect_line_primitive(LineCoords(0.0, 0.0), seg)
    assert res.degenerate and res.count == 0
    assert intersect_line_primitive(LineCoords(0.0, 0.5), seg).count == 1


def test_arc_counts_only_its_own_points():
    upper = Arc((0.0, 0.0), 1.0, 0.0, math.pi)
    assert intersect_line_primitive(LineCoords(math.pi / 2, 0.5), upper).count == 2
    assert intersect_line_primitive(LineCoords(math.pi / 2, -0.5), upper).count == 0
    assert intersect_line_primitive(LineCoords(0.0, 0.5), upper).count == 1


def test_count_intersections_examples():
    assert count_intersections(LineCoords(0.3, 0.1), RectifiableSet()).count == 0
    rings = RectifiableSet((Circle((0, 0), 0.3), Circle((0, 0), 0.8)))
    assert count_intersections(LineCoords(0.0, 0.5), rings).count == 2
    grid = RectifiableSet(tuple(Segment((0.0, 0.1 * i), (1.0, 0.1 * i)) for i in range(11)))
    assert count_intersections(LineCoords(0.0, 0.55), grid).count == 11


def test_batch_matches_single_line_counts():
    rng = np.random.default_rng(3)
    rset = random_small_set(rng)
    thetas = rng.uniform(0, math.pi, 200)
    offsets = rng.uniform(-2, 2, 200)
    counts, degenerate = count_intersections_batch(thetas, offsets, rset)
    for t, p, k, d in zip(thetas, offsets, counts, degenerate):
        res = count_intersections(LineCoords(t, p), rset)
        assert (res.count, res.degenerate) == (k, d)


def test_projection_intervals_circle_weight_two():
    lo, hi, weight, extra = projection_intervals(0.0, RectifiableSet((Circle((0.5, 0.0), 0.25),)))
    assert lo.tolist() == pytest.approx([0.25])
    assert hi.tolist() == pytest.approx([0.75])
    assert weight.tolist() == [2]
    assert len(extra) == 0


def test_projection_intervals_flat_segment_is_breakpoint_only():
    lo, hi, weight, extra = projection_intervals(math.pi / 2, RectifiableSet((Segment((0, 0.2), (1, 0.2)),)))
    assert len(lo) == 0
    assert extra.tolist() == pytest.approx([0.2, 0.2])


def test_chord_length_unit_disk():
    disk = Disk()
    assert chord_length(LineCoords(0.0, 0.0), disk) == pytest.approx(2.0)
    assert chord_length(LineCoords(0.0, 1.0), disk) == pytest.approx(0.0)
    assert chord_length(LineCoords(0.0, 0.46653), disk) == pytest.approx(1.769, abs=1e-3)


def test_chord_length_square_and_reuleaux():
    square = ConvexPolygon.from_corner(1.0)
    assert chord_length(LineCoords(0.0, 0.3), square) == pytest.approx(1.0)
    assert chord_length(LineCoords(math.pi / 4, math.sqrt(0.5)), square) == pytest.approx(math.sqrt(2.0))
    assert chord_length(LineCoords(0.0, 1.5), square) == 0.0
    reuleaux = Reuleaux.from_width(1.0)
    lo, hi = domain_support(0.3, reuleaux)
    assert hi - lo == pytest.approx(1.0)


def test_chord_segment_endpoints_on_boundary():
    square = ConvexPolygon.square(2.0)
    p0, p1 = chord_segment(LineCoords(0.4, 0.2), square)
    assert np.abs(boundary_gap(square, np.array([p0, p1]))).max() < 1e-12
    assert chord_segment(LineCoords(0.4, 5.0), square) is None


def test_disk_closed_form_matches_boundary_intersection():
    rng = np.random.default_rng(17)
    disk = Disk((0.3, -0.2), 1.5)
    for theta, p in zip(rng.uniform(0, math.pi, 200), rng.uniform(-1.8, 1.8, 200)):
        line = LineCoords(theta, p)
        ends = chord_segment(line, disk)
        if ends is None:
            assert chord_length(line, disk) == 0.0
            continue
        assert np.abs(boundary_gap(disk, np.array(ends))).max() < 1e-12
        assert math.dist(*ends) == pytest.approx(chord_length(line, disk), abs=1e-12)


@pytest.mark.parametrize("domain", [Disk((0.2, 0.1), 0.8), ConvexPolygon.from_corner(1.0), Reuleaux.from_width(1.0)])
def test_chord_length_is_rigid_motion_equivariant(domain):
    rng = np.random.default_rng(19)
    for _ in range(200):
        line = LineCoords(rng.uniform(0, math.pi), rng.uniform(-1.5, 1.5))
        rot, shift = rng.uniform(0, 2 * math.pi), tuple(rng.uniform(-2, 2, 2))
        moved = chord_length(apply_rigid_motion(line, rot, shift), apply_rigid_motion(domain, rot, shift))
        assert moved == pytest.approx(chord_length(line, domain), abs=1e-10)


@pytest.mark.parametrize(
    "domain",
    [Disk(), ConvexPolygon.from_corner(1.0), Reuleaux.from_width(1.0), ConvexPolygon(((0, 0), (2, 0), (1, 1.5)))],
)
def test_chords_are_concave_in_offset(domain):
    rng = np.random.default_rng(11)
    for theta in rng.uniform(0, math.pi, 50):
        lo, hi = domain_support(theta, domain)
        a, b = np.sort(rng.uniform(lo, hi, size=(2, 20)), axis=0)
        mid = chord_lengths(theta, 0.5 * (a + b), domain)
        avg = 0.5 * (chord_lengths(theta, a, domain) + chord_lengths(theta, b, domain))
        assert np.all(mid >= avg - 1e-12)


def test_domain_metrics():
    assert domain_metrics(Disk()) == pytest.approx((math.pi, 2.0, 1.0))
    assert domain_metrics(Disk((3.0, 4.0), 1.0))[2] == pytest.approx(6.0)
    assert domain_metrics(ConvexPolygon.from_corner(1.0)) == pytest.approx((1.0, math.sqrt(2.0), math.sqrt(2.0)))
    assert Reuleaux.from_width(1.0).area == pytest.approx(0.70477, abs=1e-5)


def test_contains_and_set_inside():
    disk = Disk()
    assert contains(disk, np.array([[0.0, 0.0], [0.6, 0.8]]))
    assert not contains(disk, np.array([[0.0, 1.01]]))
    assert set_inside(RectifiableSet((Circle((0, 0), 0.5), Segment((0, 0), (0.7, 0.7)))), disk)
    assert not set_inside(RectifiableSet((Circle((0.5, 0), 0.6),)), disk)


def test_set_with_domain_must_lie_inside():
    inner = RectifiableSet((Circle((0, 0), 0.5),), domain=Disk())
    assert inner.domain == Disk()
    with pytest.raises(InvalidArgumentError, match="leaves its domain"):
        RectifiableSet((Circle((0, 0), 5.0),), domain=Disk())
    with pytest.raises(InvalidArgumentError):
        inner.union([Segment((0.0, 0.0), (2.0, 0.0))])
    assert len(RectifiableSet((Circle((0, 0), 5.0),))) == 1


def test_rigid_motion_examples():
    moved = apply_rigid_motion(LineCoords(0.0, 1.0), math.pi / 2)
    assert moved.theta == pytest.approx(math.pi / 2)
    assert moved.offset == pytest.approx(1.0)
    circle = apply_rigid_motion(Circle((1.0, 2.0), 0.5), 0.0, (0.25, -1.0))
    assert circle.center == pytest.approx((1.25, 1.0))


def test_rotate_then_unrotate_is_identity():
    rset = random_small_set(np.random.default_rng(5))
    back = apply_rigid_motion(apply_rigid_motion(rset, 0.7), -0.7)
    for p, q in zip(rset.primitives, back.primitives):
        assert type(p) is type(q)
        if isinstance(p, Segment):
            assert np.allclose([p.p0, p.p1], [q.p0, q.p1], atol=1e-12)
        else:
            assert np.allclose(p.center, q.center, atol=1e-12)
            assert q.radius == p.radius


def test_counts_are_rigid_motion_invariant():
    rng = np.random.default_rng(13)
    for _ in range(1000):
        rset = RectifiableSet((Segment(tuple(rng.uniform(-1, 1, 2)), tuple(rng.uniform(-1, 1, 2))),
                               Circle(tuple(rng.uniform(-0.5, 0.5, 2)), rng.uniform(0.1, 0.5))))
        line = LineCoords(rng.uniform(0, math.pi), rng.uniform(-1.5, 1.5))
        rot, shift = rng.uniform(0, 2 * math.pi), tuple(rng.uniform(-1, 1, 2))
        before = count_intersections(line, rset)
        after = count_intersections(apply_rigid_motion(line, rot, shift), apply_rigid_motion(rset, rot, shift))
        if not (before.degenerate or after.degenerate):
            assert before.count == after.count
