"""Shared test utilities: independent oracles and random generators."""

from __future__ import annotations

import random

from signbench.document import PlacedGlyph, SignDocument, SignMeta
from signbench.geometry import scale as geo_scale
from signbench.geometry import translate as geo_translate
from signbench.registry import PLANES, REPETITIONS, MotionCell
from signbench.sketch import sketch_from_strokes
from signbench.symbols import SymbolId


def closure_oracle(cells, shapes) -> frozenset[MotionCell]:
    """Brute force over every (shape, plane, repetition) combination:
    a cell is added iff absent but present on some other plane."""
    cells = frozenset(cells)
    out = set()
    for shape in shapes:
        for plane in PLANES:
            for rep in REPETITIONS:
                cell = MotionCell(shape, plane, rep)
                if cell in cells:
                    continue
                if any(MotionCell(shape, p, rep) in cells for p in PLANES):
                    out.add(cell)
    return frozenset(out)


def random_lattice_cells(rng: random.Random, shapes, density=None):
    density = rng.uniform(0.05, 0.6) if density is None else density
    return frozenset(
        MotionCell(shape, plane, rep)
        for shape in shapes
        for plane in PLANES
        for rep in REPETITIONS
        if rng.random() < density
    )


def random_symbol_ref(rng: random.Random) -> str:
    return SymbolId(rng.randint(1, 8), rng.randint(1, 99), rng.randint(1, 999),
                    rng.randint(1, 99), rng.randint(1, 6),
                    rng.randint(1, 16)).text


def random_geometry(rng: random.Random, max_strokes=4):
    return tuple(
        tuple((rng.random(), rng.random())
              for _ in range(rng.randint(1, 6)))
        for _ in range(rng.randint(1, max_strokes))
    )


def random_document(rng: random.Random) -> SignDocument:
    """Structurally valid document with a mix of catalog and user refs
    and occasionally awkward metadata (escaping-sensitive text)."""
    w = rng.randint(40, 400)
    h = rng.randint(40, 400)
    glyphs = []
    for z in range(1, rng.randint(0, 8) + 1):
        if rng.random() < 0.3:
            glyphs.append(PlacedGlyph(
                ref=f"U-{rng.randint(1, 500)}",
                x=rng.randint(0, w - 1), y=rng.randint(0, h - 1), z=z,
                geometry=random_geometry(rng)))
        else:
            glyphs.append(PlacedGlyph(
                ref=random_symbol_ref(rng),
                x=rng.randint(0, w - 1), y=rng.randint(0, h - 1), z=z))
    gloss = rng.choice([None, "VARIE", 'many "different" things',
                        "a<b&c", "énoncé"])
    meta = SignMeta(
        author=rng.choice(["", "anna", "writer <x>", "p&q"]),
        gloss=gloss,
        mode=rng.choice(["written", "transcribed"]),
    )
    return SignDocument(w, h, tuple(glyphs), meta)


def exact_render(entry, scale=120.0, dx=25.0, dy=35.0):
    """Sketch that reproduces a catalog glyph's shape exactly (uniform
    scale and translation only)."""
    return sketch_from_strokes(
        geo_translate(geo_scale(entry.geometry, scale), dx, dy))


def jittered_render(entry, rng: random.Random, base_scale=100.0,
                    scale_spread=0.1, jitter=2.0):
    """Render with +-10% scale and +-2 unit point noise (defaults)."""
    s = base_scale * rng.uniform(1 - scale_spread, 1 + scale_spread)
    margin = jitter + 5
    strokes = [
        [(x * s + rng.uniform(-jitter, jitter) + margin,
          y * s + rng.uniform(-jitter, jitter) + margin)
         for x, y in stroke]
        for stroke in entry.geometry
    ]
    return sketch_from_strokes(strokes)


def exhaustive_match_oracle(described, query_vec, k):
    """Plain loop nearest-neighbor, independent of ShapeIndex."""
    import math
    scored = []
    for ref, vec in described:
        d = math.sqrt(sum((a - b) ** 2 for a, b in zip(vec, query_vec)))
        scored.append((d, ref))
    scored.sort(key=lambda t: (t[0], t[1]))
    return [(ref, d) for d, ref in scored[:k]]
