"""Glyph identifiers.

Two id namespaces coexist and never mix:

* ``SymbolId`` -- the structured six-field code of cataloged glyphs,
  written ``CC-GG-BBB-VV-FF-RR`` (category, group, base, variation,
  fill, rotation; zero-padded fixed widths).
* user glyph ids -- opaque ``U-<n>`` strings handed out by the store.
  Encoding user shapes as structured codes corrupts function-based
  search, so they are deliberately unstructured.

Rotation packs mirroring into one field: values 1..8 are 45-degree
counterclockwise steps, 9..16 the mirrored counterparts of 1..8.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


class SymbolIdError(ValueError):
    """Malformed or out-of-range symbol id text."""


_FIELD_RANGES = (
    ("category", 1, 8),
    ("group", 1, 99),
    ("base", 1, 999),
    ("variation", 1, 99),
    ("fill", 1, 6),
    ("rotation", 1, 16),
)

_ID_PATTERN = re.compile(r"^(\d{2})-(\d{2})-(\d{3})-(\d{2})-(\d{2})-(\d{2})$")

_USER_ID_PATTERN = re.compile(r"^U-([1-9]\d*)$")


@dataclass(frozen=True, order=True)
class SymbolId:
    category: int
    group: int
    base: int
    variation: int
    fill: int
    rotation: int

    def __post_init__(self):
        for (name, lo, hi), value in zip(_FIELD_RANGES, self.as_tuple()):
            if not isinstance(value, int) or not lo <= value <= hi:
                raise SymbolIdError(f"{name} out of range {lo}..{hi}: {value!r}")

    def as_tuple(self) -> tuple[int, int, int, int, int, int]:
        return (self.category, self.group, self.base,
                self.variation, self.fill, self.rotation)

    @property
    def text(self) -> str:
        c, g, b, v, f, r = self.as_tuple()
        return f"{c:02d}-{g:02d}-{b:03d}-{v:02d}-{f:02d}-{r:02d}"

    def __str__(self) -> str:
        return self.text

    # rotation field <-> (step, mirrored) view

    @property
    def rotation_step(self) -> int:
        """Counterclockwise 45-degree steps, 0..7."""
        return (self.rotation - 1) % 8

    @property
    def mirrored(self) -> bool:
        return self.rotation > 8

    def with_rotation(self, step: int, mirrored: bool) -> "SymbolId":
        rotation = (step % 8) + 1 + (8 if mirrored else 0)
        return SymbolId(self.category, self.group, self.base,
                        self.variation, self.fill, rotation)

    def with_fill(self, fill: int) -> "SymbolId":
        return SymbolId(self.category, self.group, self.base,
                        self.variation, fill, self.rotation)


def parse_symbol_id(text: str) -> SymbolId:
    """Parse canonical ``CC-GG-BBB-VV-FF-RR`` text.

    Raises SymbolIdError naming the offending field; format(parse(t)) == t.
    """
    m = _ID_PATTERN.match(text)
    if not m:
        raise SymbolIdError(
            f"malformed symbol id {text!r}: expected CC-GG-BBB-VV-FF-RR")
    values = [int(part) for part in m.groups()]
    for (name, lo, hi), value in zip(_FIELD_RANGES, values):
        if not lo <= value <= hi:
            raise SymbolIdError(f"{name} out of range {lo}..{hi}: {value}")
    return SymbolId(*values)


def format_symbol_id(sid: SymbolId) -> str:
    return sid.text


def is_user_ref(ref: str) -> bool:
    """True for opaque user-glyph ids of the form ``U-<n>``."""
    return bool(_USER_ID_PATTERN.match(ref))


def is_symbol_ref(ref: str) -> bool:
    try:
        parse_symbol_id(ref)
    except SymbolIdError:
        return False
    return True


def user_ref(number: int) -> str:
    if number < 1:
        raise ValueError(f"user glyph numbers start at 1, got {number}")
    return f"U-{number}"


def user_ref_number(ref: str) -> int:
    m = _USER_ID_PATTERN.match(ref)
    if not m:
        raise ValueError(f"not a user glyph id: {ref!r}")
    return int(m.group(1))
