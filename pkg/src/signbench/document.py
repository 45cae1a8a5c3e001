"""Composed signs: placement on the 2D canvas, validation, XML files.

Documents are immutable values; every edit returns a new document, so
undo in an editor is just keeping the previous value, and instances
can cross threads freely.

Canvas units are abstract integers (default canvas 200x200). A
cataloged glyph renders into a nominal GLYPH_BOX-unit square; its
bounding box is the part of that square its unit-box geometry spans,
and the placement anchor is the box's top-left corner.

File format: root ``sign`` (attributes w, h, then mode when not
"written", gloss and author when set); children ``glyph``
(ref, x, y, z) for cataloged refs and ``userglyph`` (id, x, y, z,
with a ``path`` child holding inline geometry) for user-drawn ones.
User geometry is embedded on save so files stay readable after the
originating store is gone. Serialization is canonical - fixed
attribute order, 2-space indent, LF line endings - so writing a
parsed canonical file reproduces it byte for byte.
"""

from __future__ import annotations

import math
import xml.parsers.expat
from dataclasses import dataclass, field, replace
from xml.sax.saxutils import escape, quoteattr

from . import geometry as geo
from .geometry import Geometry
from .symbols import is_user_ref

DEFAULT_CANVAS = 200
GLYPH_BOX = 40

MODES = ("written", "transcribed")


class PlacementError(ValueError):
    """Glyph box does not fit the canvas at the requested position."""

    def __init__(self, ref: str, overflow_x: int, overflow_y: int):
        self.ref = ref
        self.overflow_x = overflow_x
        self.overflow_y = overflow_y
        super().__init__(
            f"{ref} does not fit: overflows by ({overflow_x}, {overflow_y})")


class DanglingRefError(KeyError):
    def __init__(self, ref: str):
        super().__init__(ref)
        self.ref = ref

    def __str__(self) -> str:
        return f"cannot resolve glyph ref {self.ref}"


class SchemaError(ValueError):
    """Sign file violates the documented schema."""

    def __init__(self, message: str, element: str = "?", line: int = 0):
        self.element = element
        self.line = line
        super().__init__(f"<{element}> line {line}: {message}")


def glyph_box_size(geometry: Geometry) -> tuple[int, int]:
    """Canvas-unit bounding box of a glyph's unit-box geometry."""
    w, h = geo.extent(geometry)
    return (max(1, math.ceil(w * GLYPH_BOX)), max(1, math.ceil(h * GLYPH_BOX)))


@dataclass(frozen=True)
class PlacedGlyph:
    ref: str
    x: int
    y: int
    z: int
    geometry: Geometry | None = None  # embedded copy, user refs only

    def __post_init__(self):
        if self.x < 0 or self.y < 0:
            raise ValueError(f"{self.ref}: placement must be non-negative")


@dataclass(frozen=True)
class SignMeta:
    author: str = ""
    gloss: str | None = None
    mode: str = "written"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")


@dataclass(frozen=True)
class SignDocument:
    canvas_w: int = DEFAULT_CANVAS
    canvas_h: int = DEFAULT_CANVAS
    glyphs: tuple[PlacedGlyph, ...] = ()
    meta: SignMeta = field(default_factory=SignMeta)

    def __post_init__(self):
        if self.canvas_w < 1 or self.canvas_h < 1:
            raise ValueError("canvas must be at least 1x1")
        zs = [g.z for g in self.glyphs]
        if len(set(zs)) != len(zs):
            raise ValueError("z values must be unique")
        if zs != sorted(zs):
            raise ValueError("glyph list must be in z order")

    def top_z(self) -> int:
        return self.glyphs[-1].z if self.glyphs else 0

    def by_z(self, z: int) -> PlacedGlyph:
        for g in self.glyphs:
            if g.z == z:
                return g
        raise KeyError(f"no glyph at z={z}")


def registry_resolver(registry=None, store=None):
    """Geometry lookup over an optional catalog and user-glyph store."""

    def resolve(ref: str) -> Geometry | None:
        if registry is not None and ref in registry:
            return registry.entry(ref).geometry
        if store is not None and is_user_ref(ref):
            record = store.get_user_glyph(ref)
            if record is not None:
                return record.geometry
        return None

    return resolve


def _resolve_or_raise(placed_or_ref, resolve) -> Geometry:
    if isinstance(placed_or_ref, PlacedGlyph):
        if placed_or_ref.geometry is not None:
            return placed_or_ref.geometry
        ref = placed_or_ref.ref
    else:
        ref = placed_or_ref
    geometry = resolve(ref) if resolve is not None else None
    if geometry is None:
        raise DanglingRefError(ref)
    return geometry


def _check_bounds(doc: SignDocument, ref: str, x: int, y: int,
                  geometry: Geometry) -> None:
    w, h = glyph_box_size(geometry)
    over_x = max(0, x + w - doc.canvas_w) if x >= 0 else x
    over_y = max(0, y + h - doc.canvas_h) if y >= 0 else y
    if x < 0 or y < 0 or over_x > 0 or over_y > 0:
        raise PlacementError(ref, over_x, over_y)


def place(doc: SignDocument, glyph_ref: str, x: int, y: int,
          resolve=None) -> SignDocument:
    """New document with the glyph appended at the top of the stack."""
    geometry = _resolve_or_raise(glyph_ref, resolve)
    _check_bounds(doc, glyph_ref, x, y, geometry)
    embedded = geometry if is_user_ref(glyph_ref) else None
    placed = PlacedGlyph(glyph_ref, x, y, doc.top_z() + 1, embedded)
    return replace(doc, glyphs=doc.glyphs + (placed,))


def move(doc: SignDocument, z: int, x: int, y: int,
         resolve=None) -> SignDocument:
    target = doc.by_z(z)
    geometry = _resolve_or_raise(target, resolve)
    _check_bounds(doc, target.ref, x, y, geometry)
    moved = replace(target, x=x, y=y)
    return replace(doc, glyphs=tuple(moved if g.z == z else g
                                     for g in doc.glyphs))


def remove(doc: SignDocument, z: int) -> SignDocument:
    doc.by_z(z)
    return replace(doc, glyphs=tuple(g for g in doc.glyphs if g.z != z))


@dataclass(frozen=True)
class Diagnostic:
    code: str         # out-of-bounds | dangling-ref | policy-violation
    message: str
    ref: str | None = None
    z: int | None = None


def validate(doc: SignDocument, registry=None, store=None,
             role: str = "researcher", session: str | None = None
             ) -> list[Diagnostic]:
    """Diagnostics for bounds, unresolvable refs, and reuse policy.

    An empty list means the document is acceptable for the given
    role. Plain users may only reference user glyphs drawn in their
    own composition session; researchers may reference anything.
    """
    resolve = registry_resolver(registry, store)
    out: list[Diagnostic] = []
    for g in doc.glyphs:
        geometry = g.geometry if g.geometry is not None else resolve(g.ref)
        if geometry is None:
            out.append(Diagnostic("dangling-ref",
                                  f"{g.ref} is not in the registry or store",
                                  ref=g.ref, z=g.z))
            continue
        try:
            _check_bounds(doc, g.ref, g.x, g.y, geometry)
        except PlacementError as exc:
            out.append(Diagnostic("out-of-bounds", str(exc), ref=g.ref, z=g.z))
        if is_user_ref(g.ref) and role == "user":
            record = store.get_user_glyph(g.ref) if store is not None else None
            if record is None or session is None or record.session != session:
                out.append(Diagnostic(
                    "policy-violation",
                    f"{g.ref} was drawn outside this session and may not be "
                    "reused by role=user",
                    ref=g.ref, z=g.z))
    return out


# -- canonical XML ------------------------------------------------------

def to_xml(doc: SignDocument) -> bytes:
    lines = []
    attrs = [("w", str(doc.canvas_w)), ("h", str(doc.canvas_h))]
    if doc.meta.mode != "written":
        attrs.append(("mode", doc.meta.mode))
    if doc.meta.gloss is not None:
        attrs.append(("gloss", doc.meta.gloss))
    if doc.meta.author:
        attrs.append(("author", doc.meta.author))
    head = "<sign " + " ".join(f"{k}={quoteattr(v)}" for k, v in attrs)
    if not doc.glyphs:
        lines.append(head + "/>")
    else:
        lines.append(head + ">")
        for g in doc.glyphs:
            pos = f'x="{g.x}" y="{g.y}" z="{g.z}"'
            if is_user_ref(g.ref):
                lines.append(f'  <userglyph id={quoteattr(g.ref)} {pos}>')
                path = geo.format_path(g.geometry) if g.geometry else ""
                lines.append(f"    <path>{escape(path)}</path>")
                lines.append("  </userglyph>")
            else:
                lines.append(f'  <glyph ref={quoteattr(g.ref)} {pos}/>')
        lines.append("</sign>")
    return ("\n".join(lines) + "\n").encode("utf-8")


_SIGN_ATTRS = {"w", "h", "mode", "gloss", "author"}
_GLYPH_ATTRS = {"ref", "x", "y", "z"}
_USERGLYPH_ATTRS = {"id", "x", "y", "z"}


class _SignReader:
    """Expat-backed reader that keeps line numbers for schema errors."""

    def __init__(self):
        self.parser = xml.parsers.expat.ParserCreate()
        self.parser.StartElementHandler = self._start
        self.parser.EndElementHandler = self._end
        self.parser.CharacterDataHandler = self._chars
        self.doc: SignDocument | None = None
        self._placements: list[PlacedGlyph] = []
        self._sign_attrs: dict | None = None
        self._pending: dict | None = None
        self._path_text: list[str] | None = None
        self._stack: list[str] = []

    def _fail(self, message: str, element: str):
        raise SchemaError(message, element, self.parser.CurrentLineNumber)

    def _int_attr(self, attrs: dict, name: str, element: str) -> int:
        if name not in attrs:
            self._fail(f"missing attribute {name!r}", element)
        try:
            return int(attrs[name])
        except ValueError:
            self._fail(f"attribute {name!r} must be an integer, "
                       f"got {attrs[name]!r}", element)

    def _start(self, tag, attrs):
        parent = self._stack[-1] if self._stack else None
        self._stack.append(tag)
        if parent is None:
            if tag != "sign":
                self._fail("root element must be <sign>", tag)
            unknown = set(attrs) - _SIGN_ATTRS
            if unknown:
                self._fail(f"unknown attributes {sorted(unknown)}", tag)
            self._sign_attrs = dict(attrs)
        elif parent == "sign":
            if tag == "glyph":
                unknown = set(attrs) - _GLYPH_ATTRS
                if unknown or "ref" not in attrs:
                    self._fail("glyph needs ref, x, y, z attributes", tag)
                self._placements.append(PlacedGlyph(
                    ref=attrs["ref"],
                    x=self._int_attr(attrs, "x", tag),
                    y=self._int_attr(attrs, "y", tag),
                    z=self._int_attr(attrs, "z", tag)))
            elif tag == "userglyph":
                unknown = set(attrs) - _USERGLYPH_ATTRS
                if unknown or "id" not in attrs:
                    self._fail("userglyph needs id, x, y, z attributes", tag)
                if not is_user_ref(attrs["id"]):
                    self._fail(f"id {attrs['id']!r} is not a user glyph id", tag)
                self._pending = {
                    "ref": attrs["id"],
                    "x": self._int_attr(attrs, "x", tag),
                    "y": self._int_attr(attrs, "y", tag),
                    "z": self._int_attr(attrs, "z", tag),
                }
            else:
                self._fail("expected <glyph> or <userglyph>", tag)
        elif parent == "userglyph" and tag == "path":
            self._path_text = []
        else:
            self._fail(f"unexpected element under <{parent}>", tag)

    def _chars(self, data):
        if self._path_text is not None:
            self._path_text.append(data)
        elif data.strip():
            self._fail("unexpected text content", self._stack[-1])

    def _end(self, tag):
        self._stack.pop()
        if tag == "path":
            text = "".join(self._path_text).strip()
            self._path_text = None
            try:
                self._pending["geometry"] = geo.parse_path(text) if text else None
            except geo.PathError as exc:
                self._fail(str(exc), "path")
        elif tag == "userglyph":
            if "geometry" not in self._pending:
                self._fail("userglyph needs an embedded <path>", tag)
            self._placements.append(PlacedGlyph(**self._pending))
            self._pending = None
        elif tag == "sign":
            attrs = self._sign_attrs
            try:
                meta = SignMeta(author=attrs.get("author", ""),
                                gloss=attrs.get("gloss"),
                                mode=attrs.get("mode", "written"))
                self.doc = SignDocument(
                    canvas_w=self._int_attr(attrs, "w", "sign"),
                    canvas_h=self._int_attr(attrs, "h", "sign"),
                    glyphs=tuple(sorted(self._placements, key=lambda g: g.z)),
                    meta=meta)
            except ValueError as exc:
                self._fail(str(exc), "sign")


def from_xml(data: bytes | str) -> SignDocument:
    """Parse a sign file; inverse of to_xml on valid documents.

    Unknown glyph refs parse fine (documents must survive registry
    changes); validate() is what flags them.
    """
    if isinstance(data, str):
        data = data.encode("utf-8")
    reader = _SignReader()
    try:
        reader.parser.Parse(data, True)
    except xml.parsers.expat.ExpatError as exc:
        raise SchemaError(str(exc), "document", exc.lineno) from None
    if reader.doc is None:
        raise SchemaError("no <sign> root element", "document", 0)
    return reader.doc
