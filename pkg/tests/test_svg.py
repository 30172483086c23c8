from crofton_cli.models import Arc, Circle, ConvexPolygon, Disk, LineCoords, RectifiableSet, Reuleaux, Segment
from crofton_cli.ui.svg import RenderStyle, render_svg


def _mixed():
    return RectifiableSet(
        (Segment((-0.5, 0.0), (0.5, 0.2)), Circle((0.1, 0.1), 0.3), Arc((0.0, 0.0), 0.6, 0.5, 2.0)),
    )


def test_render_is_deterministic(tmp_path):
    a = render_svg(_mixed(), Disk())
    b = render_svg(_mixed(), Disk(), tmp_path / "out" / "set.svg")
    assert a == b
    assert (tmp_path / "out" / "set.svg").read_text(encoding="utf-8") == a


def test_empty_set_draws_domain_only():
    svg = render_svg(RectifiableSet(), Disk())
    assert svg.count("<circle") == 1
    assert "#1f2937" not in svg


def test_witness_overlay():
    plain = render_svg(_mixed(), Disk())
    marked = render_svg(_mixed(), Disk(), witness=LineCoords(0.3, 0.2))
    assert "#dc2626" not in plain
    assert "#dc2626" in marked


def test_polygon_and_reuleaux_domains():
    square = render_svg(RectifiableSet(), ConvexPolygon.square(1.0))
    assert "<circle" not in square and "<path" in square
    reuleaux = render_svg(RectifiableSet(), Reuleaux.from_width(1.0))
    assert "<circle" not in reuleaux and "<path" in reuleaux


def test_style_from_settings():
    style = RenderStyle.from_settings({"size": 300, "stroke": "#123456", "unknown": 1})
    assert style.size == 300
    svg = render_svg(_mixed(), Disk(), style=style)
    assert 'width="300"' in svg
    assert "#123456" in svg
