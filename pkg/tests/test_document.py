import random
from pathlib import Path

import pytest

from conftest import FACE, NOD
from helpers import random_document
from signbench.document import (
    DanglingRefError,
    PlacedGlyph,
    PlacementError,
    SchemaError,
    SignDocument,
    SignMeta,
    from_xml,
    glyph_box_size,
    move,
    place,
    registry_resolver,
    remove,
    to_xml,
    validate,
)

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture()
def resolve(demo_registry):
    return registry_resolver(demo_registry)


def test_place_on_empty_canvas(resolve):
    doc = place(SignDocument(100, 100), FACE, 10, 10, resolve)
    assert len(doc.glyphs) == 1
    assert doc.glyphs[0].z == 1
    assert doc.glyphs[0].geometry is None  # catalog refs stay by-reference


def test_place_does_not_mutate_original(resolve):
    original = SignDocument(100, 100)
    place(original, FACE, 10, 10, resolve)
    assert original.glyphs == ()


def test_place_out_of_bounds_reports_overflow():
    # a glyph box 30 units tall at y=90 on a 100-high canvas
    tall = ((0.0, 0.0), (0.0, 0.75))
    resolve = lambda ref: (tall,)
    with pytest.raises(PlacementError) as exc_info:
        place(SignDocument(100, 100), "01-01-001-01-01-01", 0, 90, resolve)
    assert exc_info.value.overflow_y == 20
    assert exc_info.value.overflow_x == 0


def test_glyph_box_size_scales_unit_extent():
    assert glyph_box_size(((( 0.0, 0.0), (0.5, 0.75)),)) == (20, 30)
    assert glyph_box_size((((0.3, 0.3), (0.3, 0.3)),)) == (1, 1)


def test_place_then_remove_is_identity(resolve):
    doc = place(SignDocument(100, 100), FACE, 10, 10, resolve)
    doc2 = place(doc, NOD, 12, 2, resolve)
    assert remove(doc2, doc2.top_z()) == doc


def test_move_preserves_bounds_invariant(resolve):
    doc = place(SignDocument(100, 100), FACE, 10, 10, resolve)
    moved = move(doc, 1, 60, 60, resolve)
    assert moved.glyphs[0].x == 60
    with pytest.raises(PlacementError):
        move(doc, 1, 90, 90, resolve)


def test_place_dangling_ref(resolve):
    with pytest.raises(DanglingRefError):
        place(SignDocument(100, 100), "08-09-099-01-01-01", 5, 5, resolve)


def test_random_edit_sequences_keep_documents_valid(demo_registry, resolve):
    rng = random.Random(11)
    refs = [e.ref for e in demo_registry.entries]
    doc = SignDocument(200, 200)
    for _ in range(300):
        action = rng.random()
        try:
            if action < 0.6 or not doc.glyphs:
                doc = place(doc, rng.choice(refs), rng.randint(0, 199),
                            rng.randint(0, 199), resolve)
            elif action < 0.8:
                z = rng.choice([g.z for g in doc.glyphs])
                doc = move(doc, z, rng.randint(0, 199), rng.randint(0, 199),
                           resolve)
            else:
                doc = remove(doc, rng.choice([g.z for g in doc.glyphs]))
        except PlacementError:
            continue
        assert validate(doc, demo_registry) == []


def test_document_rejects_duplicate_z():
    with pytest.raises(ValueError, match="unique"):
        SignDocument(100, 100, (
            PlacedGlyph(FACE, 0, 0, 1), PlacedGlyph(NOD, 0, 0, 1)))


def test_document_rejects_out_of_order_z():
    with pytest.raises(ValueError, match="order"):
        SignDocument(100, 100, (
            PlacedGlyph(FACE, 0, 0, 2), PlacedGlyph(NOD, 0, 0, 1)))


def test_empty_doc_canonical_form():
    assert to_xml(SignDocument(100, 100)) == b'<sign w="100" h="100"/>\n'


def test_roundtrip_structural_identity_500_random_docs():
    rng = random.Random(20260810)
    for _ in range(500):
        doc = random_document(rng)
        data = to_xml(doc)
        assert from_xml(data) == doc


def test_canonical_reserialization_is_byte_identical():
    data = (FIXTURES / "sign_canonical.xml").read_bytes()
    assert to_xml(from_xml(data)) == data


def test_non_canonical_input_normalizes():
    messy = (b"<sign  h='90' w='80'>"
             b"<glyph z='1' y='2' x='3' ref='01-01-001-01-01-01' />"
             b"</sign>")
    doc = from_xml(messy)
    assert (doc.canvas_w, doc.canvas_h) == (80, 90)
    canonical = to_xml(doc)
    assert from_xml(canonical) == doc
    assert to_xml(from_xml(canonical)) == canonical


def test_user_glyph_xml_is_self_contained():
    triangle = (((0.0, 0.0), (1.0, 0.25), (0.5, 1.0)),)
    doc = SignDocument(200, 200,
                       (PlacedGlyph("U-9", 10, 10, 1, triangle),))
    parsed = from_xml(to_xml(doc))
    assert parsed.glyphs[0].geometry == triangle
    # resolvable without any registry or store
    assert validate(parsed) == [] or all(
        d.code != "dangling-ref" for d in validate(parsed))


def test_unknown_refs_survive_parsing_but_validate_flags_them(demo_registry):
    doc = from_xml(b'<sign w="50" h="50">'
                   b'<glyph ref="08-08-088-01-01-01" x="1" y="1" z="1"/>'
                   b'</sign>')
    assert doc.glyphs[0].ref == "08-08-088-01-01-01"
    diagnostics = validate(doc, demo_registry)
    assert [d.code for d in diagnostics] == ["dangling-ref"]


def test_schema_violation_names_element_and_line():
    bad = b'<sign w="100" h="100">\n  <glyph x="1" y="1" z="1"/>\n</sign>'
    with pytest.raises(SchemaError) as exc_info:
        from_xml(bad)
    assert exc_info.value.element == "glyph"
    assert exc_info.value.line == 2


def test_schema_rejects_foreign_elements_and_bad_ints():
    with pytest.raises(SchemaError):
        from_xml(b"<other/>")
    with pytest.raises(SchemaError):
        from_xml(b'<sign w="100" h="100"><blob/></sign>')
    with pytest.raises(SchemaError, match="integer"):
        from_xml(b'<sign w="abc" h="100"/>')
    with pytest.raises(SchemaError):
        from_xml(b'<sign w="100" h="100"')  # truncated


def test_validate_policy_user_reusing_foreign_glyph(demo_registry, store):
    foreign = store.add_user_glyph((((0.0, 0.0), (1.0, 1.0)),),
                                   ["annotation"], "bea", session="bea-1")
    doc = SignDocument(200, 200, (
        PlacedGlyph(foreign.ref, 5, 5, 1, foreign.geometry),))
    flagged = validate(doc, demo_registry, store, role="user",
                       session="carl-2")
    assert [d.code for d in flagged] == ["policy-violation"]
    # the glyph's own session, and researchers, are fine
    assert validate(doc, demo_registry, store, "user", "bea-1") == []
    assert validate(doc, demo_registry, store, "researcher") == []


def test_meta_mode_validation():
    with pytest.raises(ValueError):
        SignMeta(mode="freestyle")
