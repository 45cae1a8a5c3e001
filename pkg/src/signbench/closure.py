"""Movement-lattice completion.

Hand-movement glyphs live on a lattice of (shape class, plane,
repetition) cells, planes being the four direction rows V, H, S_down,
S_lateral. The completion rule: a movement writable on one plane must
be writable on all four, so any (shape, repetition) present somewhere
spreads across the whole plane axis. The repetition axis does not
close on its own - a third repetition appears on a plane only because
some other plane already has it.

Missing cells get synthesized catalog entries: geometry is copied
from a template glyph at the same (shape, repetition) on another
plane and pushed through the registry's plane-marker substitution
table; ids are drawn from a reserved extension band so repeated runs
allocate identically.

Everything here is pure over immutable inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .registry import (
    PLANES,
    REPETITIONS,
    GlyphEntry,
    MotionCell,
    Registry,
)
from .symbols import SymbolId

# Bases at or above this are reserved for synthesized extension ids.
EXTENSION_BASE_START = 500


@dataclass(frozen=True)
class MotionLattice:
    cells: frozenset[MotionCell]
    shape_classes: tuple[str, ...]
    warnings: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        undeclared = {c.shape_class for c in self.cells} - set(self.shape_classes)
        if undeclared:
            raise ValueError("cells with undeclared shape classes: "
                             + ", ".join(sorted(undeclared)))


def lattice_from_registry(registry: Registry) -> MotionLattice:
    """One cell per motion-tagged glyph; glyphs sharing a cell are
    collapsed and reported in the lattice's warnings."""
    occupants: dict[MotionCell, list[str]] = {}
    for entry in registry.motion_entries():
        occupants.setdefault(entry.motion, []).append(entry.ref)
    warnings = tuple(
        f"cell ({cell.shape_class}, {cell.plane}, {cell.repetition}) is "
        "shared by " + ", ".join(sorted(refs))
        for cell, refs in sorted(occupants.items())
        if len(refs) > 1
    )
    return MotionLattice(frozenset(occupants), registry.shape_classes, warnings)


def closure(lattice: MotionLattice) -> frozenset[MotionCell]:
    """Cells to add: every (shape, repetition) present on some plane,
    replicated to the planes it is missing from."""
    planes_by_sr: dict[tuple[str, int], set[str]] = {}
    for cell in lattice.cells:
        planes_by_sr.setdefault(
            (cell.shape_class, cell.repetition), set()).add(cell.plane)
    added = set()
    for (shape, rep), planes in planes_by_sr.items():
        for plane in PLANES:
            if plane not in planes:
                added.add(MotionCell(shape, plane, rep))
    return frozenset(added)


def _cell_sort_key(cell: MotionCell):
    return (cell.shape_class, PLANES.index(cell.plane), cell.repetition)


def _template_for(registry: Registry, cell: MotionCell) -> GlyphEntry | None:
    """Donor glyph at the same (shape, repetition) on another plane;
    plane order then ref order make the choice deterministic."""
    candidates = [
        e for e in registry.motion_entries()
        if e.motion.shape_class == cell.shape_class
        and e.motion.repetition == cell.repetition
        and e.motion.plane != cell.plane
    ]
    if not candidates:
        return None
    candidates.sort(key=lambda e: (PLANES.index(e.motion.plane), e.ref))
    return candidates[0]


def synthesize_entries(registry: Registry, added
                       ) -> tuple[list[GlyphEntry], list[MotionCell]]:
    """Extension entries for the added cells.

    Returns (entries, unsynthesizable-cells); a cell is skipped, not
    fatal, when no template exists for its (shape, repetition).
    """
    taken = {e.ref for e in registry.entries}
    entries: list[GlyphEntry] = []
    skipped: list[MotionCell] = []
    for cell in sorted(added, key=_cell_sort_key):
        template = _template_for(registry, cell)
        if template is None:
            skipped.append(cell)
            continue
        tid = template.symbol_id
        base = EXTENSION_BASE_START
        while True:
            sid = SymbolId(tid.category, tid.group, base, tid.variation,
                           tid.fill, tid.rotation)
            if sid.text not in taken:
                break
            base += 1
        taken.add(sid.text)
        rule = registry.plane_edits.rule(template.motion.plane, cell.plane)
        entries.append(GlyphEntry(
            ref=sid.text,
            name=f"{template.name} ({cell.plane})",
            status="extension",
            taxonomy=template.taxonomy,
            feature_tags=template.feature_tags,
            geometry=rule.apply(template.geometry),
            motion=cell,
            provenance={"template": template.ref},
        ))
    return entries, skipped


@dataclass(frozen=True)
class ClosureReport:
    existing: frozenset[MotionCell]
    added: frozenset[MotionCell]
    shape_classes: tuple[str, ...]
    entries: tuple[GlyphEntry, ...]
    unsynthesizable: tuple[MotionCell, ...]
    warnings: tuple[str, ...]

    def __post_init__(self):
        if self.existing & self.added:
            raise ValueError("existing and added cells must be disjoint")

    @property
    def total_after(self) -> int:
        return len(self.existing) + len(self.added)


def closure_report(registry: Registry) -> ClosureReport:
    lattice = lattice_from_registry(registry)
    added = closure(lattice)
    entries, skipped = synthesize_entries(registry, added)
    return ClosureReport(
        existing=lattice.cells,
        added=added,
        shape_classes=lattice.shape_classes,
        entries=tuple(entries),
        unsynthesizable=tuple(skipped),
        warnings=lattice.warnings,
    )


def format_grid(report: ClosureReport) -> str:
    """Per-shape text grids: rows are the four planes, columns the
    repetition counts; 'o' existing, '+' added, '.' absent."""
    label_w = max((len(p) for p in PLANES), default=0)
    lines = []
    for shape in report.shape_classes:
        lines.append(f"shape {shape}")
        header = " ".join(f"r{r}" for r in REPETITIONS)
        lines.append(f"  {'':{label_w}} {header}")
        for plane in PLANES:
            marks = []
            for rep in REPETITIONS:
                cell = MotionCell(shape, plane, rep)
                if cell in report.existing:
                    marks.append(" o")
                elif cell in report.added:
                    marks.append(" +")
                else:
                    marks.append(" .")
            lines.append(f"  {plane:{label_w}}" + "".join(marks))
    lines.append(f"existing: {len(report.existing)}")
    lines.append(f"added: {len(report.added)}")
    lines.append(f"total after: {report.total_after}")
    return "\n".join(lines)


def format_records(report: ClosureReport) -> str:
    """Machine-readable list: one added cell per line."""
    lines = []
    for entry in report.entries:
        cell = entry.motion
        lines.append("\t".join([
            cell.shape_class, cell.plane, str(cell.repetition),
            entry.ref, entry.provenance["template"],
        ]))
    for cell in report.unsynthesizable:
        lines.append("\t".join([
            cell.shape_class, cell.plane, str(cell.repetition), "-", "-"]))
    return "\n".join(lines)
