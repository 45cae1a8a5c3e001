import random

import pytest

from helpers import closure_oracle, random_lattice_cells
from signbench.closure import (
    MotionLattice,
    closure,
    closure_report,
    format_grid,
    format_records,
    lattice_from_registry,
    synthesize_entries,
)
from signbench.registry import (
    PLANES,
    GlyphEntry,
    MotionCell,
    Registry,
    parse_manifest,
)

SHAPES13 = tuple(f"s{i:02d}" for i in range(13))


def lattice(cells, shapes=SHAPES13):
    return MotionLattice(frozenset(cells), shapes)


def cell(shape, plane, rep):
    return MotionCell(shape, plane, rep)


def motion_entry(ref, mcell):
    return GlyphEntry(ref, f"m-{ref}", "official-2008",
                      ("movement", "test", "fam"), frozenset({"motion"}),
                      (((0.1, 0.1), (0.9, 0.9)),), motion=mcell)


def test_lattice_from_registry_counts_cells(gaps_registry):
    lat = lattice_from_registry(gaps_registry)
    assert len(lat.cells) == 9
    assert lat.warnings == ()
    assert lat.shape_classes == ("curve",)


def test_lattice_from_registry_empty():
    registry = parse_manifest("")
    lat = lattice_from_registry(registry)
    assert lat.cells == frozenset()


def test_lattice_shared_cell_warns():
    c = cell("curve", "V", 1)
    registry = Registry([
        motion_entry("02-01-001-01-01-01", c),
        motion_entry("02-01-002-01-01-01", c),
    ])
    lat = lattice_from_registry(registry)
    assert len(lat.cells) == 1
    assert len(lat.warnings) == 1
    assert "02-01-001-01-01-01" in lat.warnings[0]


def test_worked_gap_case_adds_exactly_three(gaps_registry):
    added = closure(lattice_from_registry(gaps_registry))
    assert added == {
        cell("curve", "V", 3),
        cell("curve", "H", 3),
        cell("curve", "S_lateral", 3),
    }


def test_full_lattice_already_closed():
    full = lattice(cell(s, p, r) for s in SHAPES13 for p in PLANES
                   for r in (1, 2, 3))
    assert closure(full) == frozenset()


def test_repetition_axis_does_not_close():
    # rep 3 exists nowhere, so no plane may gain it
    cells = {cell("s00", p, r) for p in PLANES for r in (1, 2)}
    assert closure(lattice(cells)) == frozenset()
    # but one plane having rep 3 spreads it to the other three
    cells.add(cell("s00", "V", 3))
    added = closure(lattice(cells))
    assert added == {cell("s00", p, 3) for p in ("H", "S_down", "S_lateral")}


def test_closure_matches_brute_force_oracle_on_random_lattices():
    rng = random.Random(99)
    for _ in range(200):
        cells = random_lattice_cells(rng, SHAPES13)
        assert closure(lattice(cells)) == closure_oracle(cells, SHAPES13)


def test_closure_idempotent():
    rng = random.Random(5)
    for _ in range(50):
        cells = random_lattice_cells(rng, SHAPES13)
        closed = cells | closure(lattice(cells))
        assert closure(lattice(closed)) == frozenset()


def test_closure_monotone():
    rng = random.Random(6)
    for _ in range(50):
        smaller = random_lattice_cells(rng, SHAPES13)
        larger = smaller | random_lattice_cells(rng, SHAPES13, density=0.1)
        closed_small = smaller | closure(lattice(smaller))
        closed_large = larger | closure(lattice(larger))
        assert closed_small <= closed_large


def test_closure_never_removes():
    rng = random.Random(7)
    for _ in range(50):
        cells = random_lattice_cells(rng, SHAPES13)
        assert cells <= cells | closure(lattice(cells))
        assert not (closure(lattice(cells)) & cells)


def test_closed_set_invariant_under_plane_permutation():
    rng = random.Random(8)
    for _ in range(50):
        cells = random_lattice_cells(rng, SHAPES13)
        perm = list(PLANES)
        rng.shuffle(perm)
        mapping = dict(zip(PLANES, perm))

        def permute(cs):
            return frozenset(cell(c.shape_class, mapping[c.plane],
                                  c.repetition) for c in cs)

        closed = cells | closure(lattice(cells))
        permuted = permute(cells)
        closed_permuted = permuted | closure(lattice(permuted))
        assert closed_permuted == permute(closed)


def test_synthesize_entries_worked_case(gaps_registry):
    added = closure(lattice_from_registry(gaps_registry))
    entries, skipped = synthesize_entries(gaps_registry, added)
    assert skipped == []
    assert len(entries) == 3
    template = "02-01-003-01-01-01"  # the S_down third repetition
    for entry in entries:
        assert entry.status == "extension"
        assert entry.provenance["template"] == template
        assert entry.symbol_id.base >= 500
    # identity substitution table: geometry equals the template's
    template_geometry = gaps_registry.entry(template).geometry
    assert all(e.geometry == template_geometry for e in entries)


def test_synthesize_nothing_from_empty():
    registry = parse_manifest("")
    assert synthesize_entries(registry, frozenset()) == ([], [])


def test_synthesize_reports_unsynthesizable_cells(gaps_registry):
    orphan = cell("curve", "V", 3)
    impossible = cell("curve", "V", 1)  # exists already -> no other-plane
    entries, skipped = synthesize_entries(
        gaps_registry, {orphan, cell("ghost", "H", 2)})
    del impossible
    assert [e.motion for e in entries] == [orphan]
    assert skipped == [cell("ghost", "H", 2)]


def test_synthesis_applies_plane_edit_rules():
    text = "\n".join([
        "!plane-edit V H rot90",
        "\t".join(["02-01-001-01-01-01", "m", "official-2008",
                   "movement", "t", "f", "motion", "loop:V:1",
                   "0.2,0.2 0.8,0.2"]),
    ])
    registry = parse_manifest(text)
    entries, _ = synthesize_entries(registry,
                                    {cell("loop", "H", 1)})
    [entry] = entries
    # rot90 of the segment: (x,y) -> (y, 1-x)
    assert entry.geometry == (((0.2, 0.8), (0.2, 0.19999999999999996)),)


def test_synthesized_ids_are_deterministic(gaps_registry):
    added = closure(lattice_from_registry(gaps_registry))
    first, _ = synthesize_entries(gaps_registry, added)
    second, _ = synthesize_entries(gaps_registry, added)
    assert [e.ref for e in first] == [e.ref for e in second]
    assert [e.ref for e in first] == sorted(e.ref for e in first)


def test_closure_report_totals(gaps_registry):
    report = closure_report(gaps_registry)
    assert len(report.existing) == 9
    assert len(report.added) == 3
    assert report.total_after == 12
    assert len(report.entries) == 3


def test_closure_report_on_closed_registry(demo_registry):
    report = closure_report(demo_registry)
    assert report.added == frozenset()
    assert format_records(report) == ""


def test_grid_marks_match_cells(gaps_registry):
    report = closure_report(gaps_registry)
    grid = format_grid(report)
    marks = {line.split()[0]: line.split()[1:] for line in grid.splitlines()
             if line.strip() and line.split()[0] in PLANES}
    # S_down row fully existing; the other three planes gain rep 3
    assert marks["S_down"] == ["o", "o", "o"]
    for plane in ("V", "H", "S_lateral"):
        assert marks[plane] == ["o", "o", "+"]
    assert "added: 3" in grid


def test_grid_closed_registry_has_no_added_marks(demo_registry):
    grid = format_grid(closure_report(demo_registry))
    assert "+" not in grid
    assert "added: 0" in grid


def test_report_extends_registry_cleanly(gaps_registry):
    report = closure_report(gaps_registry)
    extended = gaps_registry.with_entries(report.entries)
    assert len(extended) == 12
    # a second pass finds nothing left to add
    assert closure_report(extended).added == frozenset()


def test_lattice_rejects_undeclared_shapes():
    with pytest.raises(ValueError):
        MotionLattice(frozenset({cell("mystery", "V", 1)}), ("curve",))
