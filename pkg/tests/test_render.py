import pytest

from conftest import FACE, NOD, PINCH
from signbench.document import PlacedGlyph, SignDocument, place, registry_resolver
from signbench.render import RenderError, render_glyph_svg, render_svg


@pytest.fixture()
def resolve(demo_registry):
    return registry_resolver(demo_registry)


def test_empty_doc_renders_canvas_rect_only(demo_registry):
    svg = render_svg(SignDocument(100, 100), demo_registry)
    assert svg.count("<rect") == 1
    assert svg.count("<g ") == 0


def test_single_glyph_at_origin_scale_1(demo_registry, resolve):
    doc = place(SignDocument(100, 100), FACE, 0, 0, resolve)
    svg = render_svg(doc, demo_registry, scale=1)
    assert 'transform="translate(0 0)"' in svg


def test_element_count_is_glyphs_plus_canvas(demo_registry, resolve):
    doc = SignDocument(200, 200)
    for i, ref in enumerate([FACE, NOD, PINCH]):
        doc = place(doc, ref, 10 + i * 30, 40, resolve)
    svg = render_svg(doc, demo_registry)
    assert svg.count("<g ") == 3
    assert svg.count("<rect") == 1


def test_painting_order_follows_z(demo_registry):
    doc = SignDocument(200, 200, (
        PlacedGlyph(NOD, 10, 10, 1),
        PlacedGlyph(FACE, 10, 40, 2),
        PlacedGlyph(NOD, 10, 80, 3),
    ))
    svg = render_svg(doc, demo_registry)
    order = [int(part.split('"')[1])
             for part in svg.split("data-z=")[1:]]
    assert order == [1, 2, 3]


def test_scale_multiplies_positions(demo_registry, resolve):
    doc = place(SignDocument(100, 100), FACE, 7, 9, resolve)
    svg = render_svg(doc, demo_registry, scale=3)
    assert 'translate(21 27)' in svg
    assert 'width="300"' in svg


def test_deterministic_output(demo_registry, resolve):
    doc = place(SignDocument(100, 100), FACE, 5, 5, resolve)
    assert (render_svg(doc, demo_registry)
            == render_svg(doc, demo_registry))


def test_unresolvable_ref_lists_refs(demo_registry):
    doc = SignDocument(100, 100, (
        PlacedGlyph("08-08-088-01-01-01", 1, 1, 1),))
    with pytest.raises(RenderError) as exc_info:
        render_svg(doc, demo_registry)
    assert exc_info.value.refs == ["08-08-088-01-01-01"]


def test_embedded_user_geometry_renders_without_store(demo_registry):
    doc = SignDocument(100, 100, (
        PlacedGlyph("U-4", 2, 2, 1, (((0.0, 0.0), (1.0, 1.0)),)),))
    svg = render_svg(doc, demo_registry)
    assert svg.count("<g ") == 1


def test_glyph_svg_is_standalone(demo_registry):
    svg = render_glyph_svg(demo_registry.entry(FACE).geometry)
    assert svg.startswith("<svg ")
    assert "<path " in svg
