import random
from collections import namedtuple

import pytest

from conftest import FACE, NOD, PINCH
from helpers import random_geometry
from signbench.acceptability import (
    FAIL,
    PASS,
    WARN,
    PlacementContext,
    RuleSet,
    check_coherence,
    check_legibility,
    check_utility,
    evaluate,
    parse_ruleset,
    worst,
)
from signbench.document import SignDocument, glyph_box_size, place, registry_resolver
from signbench.matching import build_index
from signbench.sketch import rasterize_frame
from signbench.workbench import CONVENTIONAL

Candidate = namedtuple("Candidate", "ref feature_tags geometry")

BARRED = ((((0.05, 0.5), (0.95, 0.5))),)  # full-width horizontal bar


def candidate(geometry, tags=()):
    return Candidate("pending", frozenset(tags), geometry)


@pytest.fixture(scope="module")
def form_index(demo_registry):
    return build_index(demo_registry, CONVENTIONAL)


# -- coherence ------------------------------------------------------------

def test_forearm_with_bar_passes():
    arc = (((0.2, 0.3), (0.5, 0.18), (0.8, 0.3)),
           ((0.05, 0.5), (0.95, 0.5)))
    assert check_coherence(candidate(arc, {"forearm"})).status == PASS


def test_forearm_without_bar_fails():
    arc = (((0.2, 0.3), (0.5, 0.18), (0.8, 0.3)),)
    result = check_coherence(candidate(arc, {"forearm"}))
    assert result.status == FAIL
    assert result.diagnostics[0].rule == "forearm-bar"


def test_forearm_short_bar_still_fails():
    arc = (((0.05, 0.3), (0.5, 0.18), (0.95, 0.3)),
           ((0.3, 0.5), (0.6, 0.5)))  # bar spans well under 90% of width
    result = check_coherence(candidate(arc, {"forearm"}))
    assert result.status == FAIL


def test_untagged_entry_is_not_subject_to_the_rule():
    arc = (((0.2, 0.3), (0.5, 0.18), (0.8, 0.3)),)
    assert check_coherence(candidate(arc, {"hand-config"})).status == PASS


def _context_with_nod_at(demo_registry, x, y):
    resolve = registry_resolver(demo_registry)
    doc = place(SignDocument(200, 200), FACE, 60, 60, resolve)
    doc = place(doc, NOD, x, y, resolve)
    return PlacementContext(doc, doc.top_z(), demo_registry)


def test_head_movement_above_face_passes(demo_registry):
    nod = demo_registry.entry(NOD)
    _, nod_h = glyph_box_size(nod.geometry)
    context = _context_with_nod_at(demo_registry, 62, 60 - nod_h - 2)
    assert check_coherence(nod, context).status == PASS


def test_head_movement_beside_face_fails(demo_registry):
    nod = demo_registry.entry(NOD)
    face_w, _ = glyph_box_size(demo_registry.entry(FACE).geometry)
    context = _context_with_nod_at(demo_registry, 60 + face_w + 5, 62)
    result = check_coherence(nod, context)
    assert result.status == FAIL
    assert result.diagnostics[0].rule == "head-above-face"


def test_head_movement_with_no_face_in_sign_fails(demo_registry):
    nod = demo_registry.entry(NOD)
    resolve = registry_resolver(demo_registry)
    doc = place(SignDocument(200, 200), NOD, 40, 40, resolve)
    context = PlacementContext(doc, 1, demo_registry)
    result = check_coherence(nod, context)
    assert result.status == FAIL
    assert "face-circle" in result.diagnostics[0].message


def test_placement_rule_skipped_without_context(demo_registry):
    nod = demo_registry.entry(NOD)
    assert check_coherence(nod, None).status == PASS


# -- utility ---------------------------------------------------------------

def test_exact_copy_warns_with_suggestion(demo_registry, form_index):
    pinch = demo_registry.entry(PINCH)
    result = check_utility(candidate(pinch.geometry), form_index)
    assert result.status == WARN
    assert result.suggestion == PINCH
    assert result.diagnostics[0].measured == 0.0


def test_distant_shape_passes(form_index):
    far = (((0.05, 0.1), (0.95, 0.1)), ((0.95, 0.1), (0.05, 0.9)),
           ((0.05, 0.9), (0.95, 0.9)), ((0.4, 0.3), (0.6, 0.75)))
    result = check_utility(candidate(far), form_index)
    assert result.status == PASS
    assert result.diagnostics[0].measured > RuleSet().redundancy_distance


def test_near_duplicate_just_under_threshold_warns(demo_registry, form_index):
    pinch = demo_registry.entry(PINCH)
    tau = RuleSet().redundancy_distance
    rng = random.Random(4)
    jitter = 0.004
    while True:  # perturb until measurably different but still redundant
        perturbed = tuple(
            tuple((x + rng.uniform(-jitter, jitter),
                   y + rng.uniform(-jitter, jitter)) for x, y in s)
            for s in pinch.geometry)
        result = check_utility(candidate(perturbed), form_index)
        measured = result.diagnostics[0].measured
        if 0 < measured < tau:
            break
        jitter *= 1.5
        assert jitter < 0.1, "could not construct a near-duplicate"
    assert result.status == WARN
    assert result.suggestion == PINCH


def test_empty_index_passes_with_note():
    result = check_utility(candidate((((0.0, 0.0), (1.0, 1.0)),)), None)
    assert result.status == PASS
    assert "no official" in result.diagnostics[0].message


def test_utility_agrees_with_matcher_k1(demo_registry, form_index):
    rng = random.Random(12)
    for _ in range(10):
        geometry = random_geometry(rng)
        [(ref, distance)] = form_index.match(geometry, k=1)
        result = check_utility(candidate(geometry), form_index)
        nearest = (result.suggestion if result.suggestion
                   else result.diagnostics[0].message.rsplit(" ", 1)[-1])
        assert nearest == ref
        assert result.diagnostics[0].measured == pytest.approx(distance)


# -- legibility --------------------------------------------------------------

def test_single_clean_stroke_passes():
    assert check_legibility(candidate((((0.1, 0.5), (0.9, 0.5)),))).status == PASS


def test_solid_square_fails_on_density():
    rows = tuple((((0.0, (k + 0.5) / 40), (1.0, (k + 0.5) / 40)),)[0]
                 for k in range(40))
    result = check_legibility(candidate(rows))
    assert result.status == FAIL
    assert any(d.rule == "legibility-density" and d.measured == 1.0
               for d in result.diagnostics)


def test_over_composed_head_glyph_fails(demo_registry):
    face = demo_registry.entry(FACE)
    nod = demo_registry.entry(NOD)
    gaze = demo_registry.entry("07-01-001-01-01-01")
    composite = face.geometry + nod.geometry + gaze.geometry
    result = check_legibility(candidate(composite))
    assert result.status == FAIL
    assert any(d.rule == "legibility-separation" for d in result.diagnostics)


def test_touching_strokes_are_joined_by_design():
    cross = (((0.5, 0.1), (0.5, 0.9)), ((0.1, 0.5), (0.9, 0.5)))
    assert check_legibility(candidate(cross)).status == PASS


def test_density_monotone_under_added_ink():
    rng = random.Random(9)
    size = 40
    for _ in range(30):
        geometry = random_geometry(rng)
        denser = geometry + random_geometry(rng, max_strokes=2)
        before = rasterize_frame(geometry, size).mean()
        after = rasterize_frame(denser, size).mean()
        assert after >= before


def test_added_ink_never_turns_density_fail_into_pass():
    rows = tuple((((0.0, (k + 0.5) / 40), (1.0, (k + 0.5) / 40)),)[0]
                 for k in range(30))
    failing = check_legibility(candidate(rows))
    assert any(d.rule == "legibility-density" for d in failing.diagnostics)
    more = rows + (((0.0, 0.99), (1.0, 0.99)),)
    still = check_legibility(candidate(more))
    assert any(d.rule == "legibility-density" for d in still.diagnostics)


# -- aggregation ---------------------------------------------------------------

def test_verdict_all_pass(demo_registry, form_index):
    far = (((0.05, 0.1), (0.95, 0.1)), ((0.95, 0.1), (0.05, 0.9)),
           ((0.05, 0.9), (0.95, 0.9)), ((0.4, 0.3), (0.6, 0.75)))
    verdict = evaluate(candidate(far, {"hand-config"}), None, form_index)
    assert verdict.overall == PASS


def test_verdict_coherence_fail_dominates(demo_registry, form_index):
    bare_arc = (((0.2, 0.3), (0.5, 0.18), (0.8, 0.3)),)
    verdict = evaluate(candidate(bare_arc, {"forearm"}), None, form_index)
    assert verdict.coherence.status == FAIL
    assert verdict.overall == FAIL


def test_verdict_utility_warn_only(demo_registry, form_index):
    pinch = demo_registry.entry(PINCH)
    verdict = evaluate(candidate(pinch.geometry, {"hand-config"}),
                       None, form_index)
    assert verdict.utility.status == WARN
    assert verdict.coherence.status == PASS
    assert verdict.legibility.status == PASS
    assert verdict.overall == WARN
    assert verdict.utility.suggestion == PINCH


def test_worst_ordering():
    assert worst(PASS, PASS) == PASS
    assert worst(PASS, WARN) == WARN
    assert worst(WARN, FAIL, PASS) == FAIL


def test_verdict_json_shape(demo_registry, form_index):
    pinch = demo_registry.entry(PINCH)
    payload = evaluate(candidate(pinch.geometry, {"x"}), None,
                       form_index).to_json()
    assert payload["overall"] == WARN
    assert payload["utility"]["suggestion"] == PINCH
    assert {"coherence", "utility", "legibility"} <= set(payload)


# -- configuration ---------------------------------------------------------------

def test_parse_ruleset_overrides():
    rules = parse_ruleset(
        "# custom\n"
        "rule bar tag=forearm predicate=horizontal-bar min_span=0.8\n"
        "utility tau=0.2\n"
        "legibility s_min=3 d_max=0.4\n")
    assert rules.redundancy_distance == 0.2
    assert rules.min_stroke_separation == 3
    assert rules.max_ink_density == 0.4
    assert len(rules.coherence_rules) == 1
    assert rules.coherence_rules[0].param("min_span", 0.9) == 0.8


def test_parse_ruleset_defaults_when_empty():
    assert parse_ruleset("") == RuleSet()


def test_parse_ruleset_rejects_junk():
    with pytest.raises(ValueError, match="line 1"):
        parse_ruleset("frobnicate a=1")


def test_ruleset_threshold_validation():
    with pytest.raises(ValueError):
        RuleSet(redundancy_distance=0)
    with pytest.raises(ValueError):
        RuleSet(min_stroke_separation=0.5)
    with pytest.raises(ValueError):
        RuleSet(max_ink_density=1.5)
