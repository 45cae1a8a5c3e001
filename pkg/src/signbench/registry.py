"""Glyph catalog: entries, manifests, taxonomy, and variant transforms.

A registry is loaded once from a line-oriented manifest and is
immutable afterwards, so it can be shared freely across threads.
User-submitted glyphs live in the writable store, never here; the
helpers at the bottom only build their catalog entries.

Manifest format (UTF-8, tab-separated, one record per line):

    id  name  status  category  group  family  tags  motion  geometry

* ``tags``: comma-separated labels, or ``-`` for none.
* ``motion``: ``shape:plane:repetition`` or ``-``. Planes are V, H,
  S_down, S_lateral.
* ``geometry``: inline stroke path (see signbench.geometry).

Directive lines start with ``!``:

    !version <label>
    !shapes <shape> [<shape> ...]
    !plane-edit <from-plane> <to-plane> <op> [<op> ...]

``!plane-edit`` rows fill the plane-marker substitution table used
when a motion glyph's geometry is carried from one plane to another;
pairs without a row get the identity rule, so the table is total over
all ordered plane pairs. Ops: identity, rot90, rot180, rot270, flipx,
flipy, append:<path> (path written without spaces, points joined by
``+``).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import geometry as geo
from .geometry import Geometry
from .symbols import SymbolId, SymbolIdError, is_user_ref, parse_symbol_id

PLANES = ("V", "H", "S_down", "S_lateral")
REPETITIONS = (1, 2, 3)
STATUSES = ("official-2004", "official-2008", "extension", "user")

MOTION_TAG = "motion"


class ManifestError(ValueError):
    """Unreadable or inconsistent manifest content."""


class UnknownGlyphError(KeyError):
    def __init__(self, ref: str):
        super().__init__(ref)
        self.ref = ref

    def __str__(self) -> str:
        return f"unknown glyph {self.ref}"


class MissingVariantError(LookupError):
    """The requested rotation/mirror/fill sibling is not cataloged."""

    def __init__(self, ref: str):
        super().__init__(ref)
        self.ref = ref

    def __str__(self) -> str:
        return f"variant {self.ref} not in registry"


class UnknownPathError(KeyError):
    def __init__(self, path: tuple[str, ...]):
        super().__init__(path)
        self.path = path

    def __str__(self) -> str:
        return "unknown taxonomy path " + "/".join(self.path)


@dataclass(frozen=True, order=True)
class MotionCell:
    """One point of the movement lattice."""

    shape_class: str
    plane: str
    repetition: int

    def __post_init__(self):
        if self.plane not in PLANES:
            raise ValueError(f"plane must be one of {PLANES}, got {self.plane!r}")
        if self.repetition not in REPETITIONS:
            raise ValueError(f"repetition must be 1..3, got {self.repetition!r}")
        if not self.shape_class:
            raise ValueError("empty shape class")


@dataclass(frozen=True)
class GlyphEntry:
    """One catalog glyph: identity, classification, drawable form."""

    ref: str                      # SymbolId text or opaque U-<n>
    name: str
    status: str
    taxonomy: tuple[str, str, str]
    feature_tags: frozenset[str]
    geometry: Geometry
    motion: MotionCell | None = None
    provenance: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if len(self.taxonomy) != 3 or not all(self.taxonomy):
            raise ValueError(
                f"{self.ref}: taxonomy must have exactly 3 non-empty levels")
        if not self.geometry:
            raise ValueError(f"{self.ref}: geometry must be non-empty")
        has_tag = MOTION_TAG in self.feature_tags
        if has_tag != (self.motion is not None):
            raise ValueError(
                f"{self.ref}: the motion tag and a motion cell imply each other")

    @property
    def symbol_id(self) -> SymbolId:
        return parse_symbol_id(self.ref)


_PLANE_OPS = {
    "identity": lambda g: g,
    "rot90": geo.rotate90,
    "rot180": geo.rotate180,
    "rot270": geo.rotate270,
    "flipx": geo.flip_x,
    "flipy": geo.flip_y,
}


@dataclass(frozen=True)
class PlaneEditRule:
    """Geometry edit converting a motion glyph between planes."""

    ops: tuple[str, ...] = ("identity",)

    def apply(self, geometry: Geometry) -> Geometry:
        out = geometry
        for op in self.ops:
            if op.startswith("append:"):
                out = out + geo.parse_path(op[len("append:"):].replace("+", " "))
            else:
                out = _PLANE_OPS[op](out)
        return out

    @property
    def is_identity(self) -> bool:
        return all(op == "identity" for op in self.ops)


IDENTITY_RULE = PlaneEditRule()


class PlaneEditTable:
    """Total mapping (from-plane, to-plane) -> PlaneEditRule.

    Pairs without an explicit rule resolve to identity.
    """

    def __init__(self, rules: dict[tuple[str, str], PlaneEditRule] | None = None):
        self._rules = dict(rules or {})
        for (a, b) in self._rules:
            if a not in PLANES or b not in PLANES:
                raise ValueError(f"unknown plane pair ({a}, {b})")

    def rule(self, from_plane: str, to_plane: str) -> PlaneEditRule:
        if from_plane not in PLANES or to_plane not in PLANES:
            raise ValueError(f"unknown plane pair ({from_plane}, {to_plane})")
        return self._rules.get((from_plane, to_plane), IDENTITY_RULE)

    @property
    def is_identity(self) -> bool:
        return all(rule.is_identity for rule in self._rules.values())


class Registry:
    """Immutable glyph catalog with id, taxonomy, and motion indexes."""

    def __init__(self, entries, plane_edits: PlaneEditTable | None = None,
                 version: str = "unversioned", shape_classes=None):
        self.version = version
        self.plane_edits = plane_edits or PlaneEditTable()
        self.entries: tuple[GlyphEntry, ...] = tuple(entries)

        self._by_ref: dict[str, GlyphEntry] = {}
        for entry in self.entries:
            if entry.ref in self._by_ref:
                raise ManifestError(f"duplicate id {entry.ref}")
            self._by_ref[entry.ref] = entry

        self._tree: dict[str, dict[str, list[GlyphEntry]]] = {}
        for entry in self.entries:
            cat, group, _family = entry.taxonomy
            self._tree.setdefault(cat, {}).setdefault(group, []).append(entry)
        for groups in self._tree.values():
            for members in groups.values():
                members.sort(key=lambda e: e.ref)

        seen = set()
        declared = list(shape_classes or [])
        for entry in self.entries:
            if entry.motion is not None:
                seen.add(entry.motion.shape_class)
        undeclared = seen - set(declared)
        if declared and undeclared:
            raise ManifestError(
                "motion shapes not in declared shape list: "
                + ", ".join(sorted(undeclared)))
        self.shape_classes: tuple[str, ...] = tuple(declared) or tuple(sorted(seen))

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, ref: str) -> bool:
        return ref in self._by_ref

    def get(self, ref: str) -> GlyphEntry | None:
        return self._by_ref.get(ref)

    def entry(self, ref: str) -> GlyphEntry:
        try:
            return self._by_ref[ref]
        except KeyError:
            raise UnknownGlyphError(ref) from None

    def motion_entries(self) -> list[GlyphEntry]:
        return [e for e in self.entries if e.motion is not None]

    def with_entries(self, extra) -> "Registry":
        """New registry extended with more entries (same plane table)."""
        return Registry(self.entries + tuple(extra), self.plane_edits,
                        self.version, self.shape_classes)


def count_by_status(registry: Registry) -> dict[str, int]:
    counts = {status: 0 for status in STATUSES}
    for entry in registry.entries:
        counts[entry.status] += 1
    return counts


def taxonomy_children(registry: Registry, path_prefix=()):
    """Children of a taxonomy prefix.

    Zero- and one-level prefixes return sorted child labels; a
    two-level prefix returns the glyph entries under it (sorted by
    ref), so any glyph is three selections away: category, group,
    then the glyph itself.
    """
    prefix = tuple(path_prefix)
    if len(prefix) == 0:
        return sorted(registry._tree)
    if len(prefix) == 1:
        (cat,) = prefix
        if cat not in registry._tree:
            raise UnknownPathError(prefix)
        return sorted(registry._tree[cat])
    if len(prefix) == 2:
        cat, group = prefix
        if cat not in registry._tree or group not in registry._tree[cat]:
            raise UnknownPathError(prefix)
        return list(registry._tree[cat][group])
    raise ValueError(f"path prefix may have at most 2 levels, got {len(prefix)}")


def transform_variant(registry: Registry, ref: str | SymbolId,
                      delta_rotation: int = 0, toggle_mirror: bool = False,
                      new_fill: int | None = None) -> SymbolId:
    """Id of the rotated/mirrored/refilled sibling of a cataloged glyph.

    Rotation steps are mod 8, so eight +1 steps come back around;
    toggling the mirror twice is the identity. The sibling must itself
    be cataloged, otherwise MissingVariantError (callers may fall back
    to freehand drawing).
    """
    sid = ref if isinstance(ref, SymbolId) else parse_symbol_id(ref)
    if sid.text not in registry:
        raise UnknownGlyphError(sid.text)
    step = (sid.rotation_step + delta_rotation) % 8
    mirrored = sid.mirrored != toggle_mirror
    target = sid.with_rotation(step, mirrored)
    if new_fill is not None:
        target = target.with_fill(new_fill)
    if target.text not in registry:
        raise MissingVariantError(target.text)
    return target


# -- manifest parsing ---------------------------------------------------

def _parse_tags(field_text: str) -> frozenset[str]:
    if field_text == "-":
        return frozenset()
    tags = frozenset(t.strip() for t in field_text.split(","))
    if not all(tags) or not tags:
        raise ValueError(f"bad tags field {field_text!r}")
    return tags


def _parse_motion(field_text: str) -> MotionCell | None:
    if field_text == "-":
        return None
    parts = field_text.split(":")
    if len(parts) != 3:
        raise ValueError(f"motion must be shape:plane:repetition, got {field_text!r}")
    shape, plane, rep = parts
    return MotionCell(shape, plane, int(rep))


def _parse_entry_line(line: str) -> GlyphEntry:
    fields = line.split("\t")
    if len(fields) != 9:
        raise ValueError(f"expected 9 tab-separated fields, got {len(fields)}")
    ref, name, status, cat, group, family, tags, motion, path = fields
    if not is_user_ref(ref):
        try:
            parse_symbol_id(ref)
        except SymbolIdError as exc:
            raise ValueError(str(exc)) from None
    return GlyphEntry(
        ref=ref,
        name=name,
        status=status,
        taxonomy=(cat, group, family),
        feature_tags=_parse_tags(tags),
        geometry=geo.parse_path(path),
        motion=_parse_motion(motion),
    )


def parse_manifest(text: str) -> Registry:
    version = "unversioned"
    shapes: list[str] = []
    rules: dict[tuple[str, str], PlaneEditRule] = {}
    entries: list[GlyphEntry] = []
    seen_refs: set[str] = set()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        try:
            if line.startswith("!"):
                parts = line.split()
                directive = parts[0]
                if directive == "!version":
                    version = " ".join(parts[1:]) or version
                elif directive == "!shapes":
                    shapes.extend(parts[1:])
                elif directive == "!plane-edit":
                    if len(parts) < 4:
                        raise ValueError("!plane-edit needs from, to, and ops")
                    rules[(parts[1], parts[2])] = PlaneEditRule(tuple(parts[3:]))
                else:
                    raise ValueError(f"unknown directive {directive}")
                continue
            entry = _parse_entry_line(line)
            if entry.ref in seen_refs:
                raise ValueError(f"duplicate id {entry.ref}")
            seen_refs.add(entry.ref)
            entries.append(entry)
        except (ValueError, geo.PathError) as exc:
            raise ManifestError(f"line {lineno}: {exc}") from None

    try:
        return Registry(entries, PlaneEditTable(rules), version, shapes or None)
    except ValueError as exc:
        raise ManifestError(str(exc)) from None


def load_manifest(path) -> Registry:
    with open(path, encoding="utf-8") as fh:
        return parse_manifest(fh.read())


def format_manifest(registry: Registry) -> str:
    """Inverse of parse_manifest, used to persist synthesized catalogs."""
    lines = [f"!version {registry.version}"]
    if registry.shape_classes:
        lines.append("!shapes " + " ".join(registry.shape_classes))
    for (a, b), rule in sorted(registry.plane_edits._rules.items()):
        lines.append(f"!plane-edit {a} {b} " + " ".join(rule.ops))
    for e in registry.entries:
        tags = ",".join(sorted(e.feature_tags)) if e.feature_tags else "-"
        motion = (f"{e.motion.shape_class}:{e.motion.plane}:{e.motion.repetition}"
                  if e.motion else "-")
        lines.append("\t".join([
            e.ref, e.name, e.status, *e.taxonomy, tags, motion,
            geo.format_path(e.geometry),
        ]))
    return "\n".join(lines) + "\n"


