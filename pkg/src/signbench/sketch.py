"""Freehand sketches and the shape descriptor.

The descriptor is a 72-vector: 64 ink-occupancy ratios over an 8x8
zoning of the normalized bounding box, then an 8-bin histogram of
stroke directions (45-degree bins, weighted by segment length).
Catalog glyphs are described from their stored geometry through the
exact same pipeline as freehand strokes, so a drawing of a glyph and
the glyph itself land on the same point.

Normalization translates and uniformly scales the ink's bounding box
onto the raster (aspect preserved, centered) and then snaps
coordinates to 1e-6, which makes the descriptor exactly invariant
under translation and uniform scaling. Rotation is deliberately NOT
normalized away: glyphs that differ only by rotation are different
glyphs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import Geometry, Stroke

RASTER_SIDE = 64
ZONES = 8
DESCRIPTOR_LEN = ZONES * ZONES + 8


class SketchError(ValueError):
    pass


@dataclass(frozen=True)
class StrokeSketch:
    """Ordered freehand polylines in device coordinates."""

    strokes: tuple[Stroke, ...]
    canvas_w: int
    canvas_h: int

    def __post_init__(self):
        if not self.strokes:
            raise SketchError("a sketch needs at least one stroke")
        for i, stroke in enumerate(self.strokes):
            if len(stroke) < 2:
                raise SketchError(f"stroke {i} needs at least 2 points")
            for x, y in stroke:
                if not (0 <= x <= self.canvas_w and 0 <= y <= self.canvas_h):
                    raise SketchError(
                        f"stroke {i} leaves the {self.canvas_w}x"
                        f"{self.canvas_h} drawing area at ({x}, {y})")


def sketch_from_strokes(strokes, canvas_w: int | None = None,
                        canvas_h: int | None = None) -> StrokeSketch:
    strokes = tuple(tuple((float(x), float(y)) for x, y in s) for s in strokes)
    if canvas_w is None or canvas_h is None:
        xs = [x for s in strokes for x, _ in s] or [1.0]
        ys = [y for s in strokes for _, y in s] or [1.0]
        canvas_w = canvas_w or max(1, math.ceil(max(xs)))
        canvas_h = canvas_h or max(1, math.ceil(max(ys)))
    return StrokeSketch(strokes, canvas_w, canvas_h)


def parse_sketch_text(text: str) -> StrokeSketch:
    """Sketch file format: one stroke per line, ``x,y x,y ...``."""
    strokes = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        points = []
        for token in line.split():
            try:
                xs, ys = token.split(",")
                points.append((float(xs), float(ys)))
            except ValueError:
                raise SketchError(f"line {lineno}: bad point {token!r}") from None
        strokes.append(tuple(points))
    if not strokes:
        raise SketchError("sketch file has no strokes")
    return sketch_from_strokes(strokes)


def format_sketch_text(sketch: StrokeSketch) -> str:
    return "\n".join(
        " ".join(f"{x:g},{y:g}" for x, y in stroke)
        for stroke in sketch.strokes
    ) + "\n"


def _normalize(strokes, side: int):
    """Map the ink bounding box onto [0, side]^2, aspect preserved and
    centered, then snap to 1e-6 so equal shapes rasterize equally."""
    pts = [(x, y) for stroke in strokes for x, y in stroke]
    if not pts:
        raise SketchError("empty ink")
    minx = min(x for x, _ in pts)
    miny = min(y for _, y in pts)
    w = max(x for x, _ in pts) - minx
    h = max(y for _, y in pts) - miny
    span = max(w, h)
    if span == 0:
        c = side / 2
        return tuple(tuple((c, c) for _ in stroke) for stroke in strokes)
    s = side / span
    ox = (side - w * s) / 2
    oy = (side - h * s) / 2
    return tuple(
        tuple((round((x - minx) * s + ox, 6), round((y - miny) * s + oy, 6))
              for x, y in stroke)
        for stroke in strokes
    )


def _pixel(v: float, side: int) -> int:
    return min(side - 1, max(0, int(math.floor(v))))


def _draw_line(grid: np.ndarray, x0: int, y0: int, x1: int, y1: int) -> None:
    dx = abs(x1 - x0)
    dy = -abs(y1 - y0)
    sx = 1 if x0 < x1 else -1
    sy = 1 if y0 < y1 else -1
    err = dx + dy
    while True:
        grid[y0, x0] = True
        if x0 == x1 and y0 == y1:
            return
        e2 = 2 * err
        if e2 >= dy:
            err += dy
            x0 += sx
        if e2 <= dx:
            err += dx
            y0 += sy


def _rasterize_normalized(norm_strokes, side: int) -> np.ndarray:
    grid = np.zeros((side, side), dtype=bool)
    for stroke in norm_strokes:
        px = [( _pixel(x, side), _pixel(y, side)) for x, y in stroke]
        if len(px) == 1:
            grid[px[0][1], px[0][0]] = True
            continue
        for (x0, y0), (x1, y1) in zip(px, px[1:]):
            _draw_line(grid, x0, y0, x1, y1)
    return grid


def rasterize(sketch_or_strokes, side: int = RASTER_SIDE) -> np.ndarray:
    """Binary bitmap of the translation/scale-normalized ink, strokes
    drawn one unit wide. A single-point input becomes a center dot."""
    strokes = (sketch_or_strokes.strokes
               if isinstance(sketch_or_strokes, StrokeSketch)
               else tuple(sketch_or_strokes))
    return _rasterize_normalized(_normalize(strokes, side), side)


def rasterize_frame(geometry: Geometry, side: int) -> np.ndarray:
    """Bitmap of unit-box geometry drawn into a fixed side x side
    frame, with NO re-normalization; used where absolute ink density
    matters (adding strokes can only add ink)."""
    scaled = tuple(tuple((x * side, y * side) for x, y in stroke)
                   for stroke in geometry)
    return _rasterize_normalized(scaled, side)


def _direction_histogram(norm_strokes) -> np.ndarray:
    hist = np.zeros(8, dtype=float)
    for stroke in norm_strokes:
        for (x0, y0), (x1, y1) in zip(stroke, stroke[1:]):
            length = math.hypot(x1 - x0, y1 - y0)
            if length == 0:
                continue
            angle = math.degrees(math.atan2(y1 - y0, x1 - x0)) % 360
            hist[int(math.floor(angle / 45 + 0.5)) % 8] += length
    total = hist.sum()
    return hist / total if total > 0 else hist


def _occupancy(bitmap: np.ndarray) -> np.ndarray:
    side = bitmap.shape[0]
    if bitmap.shape != (side, side) or side % ZONES:
        raise SketchError(f"bitmap must be square with side divisible by {ZONES}")
    z = side // ZONES
    return bitmap.reshape(ZONES, z, ZONES, z).mean(axis=(1, 3))


def descriptor(source, side: int = RASTER_SIDE) -> np.ndarray:
    """72-vector shape descriptor.

    Accepts a StrokeSketch, a stroke/geometry tuple, or an already
    rasterized bitmap. Bitmaps carry no stroke order, so their
    direction histogram is all zero (like dot-only input).
    """
    if isinstance(source, np.ndarray):
        if not source.any():
            raise SketchError("empty ink")
        return np.concatenate([
            _occupancy(source.astype(bool)).ravel(), np.zeros(8)])
    strokes = (source.strokes if isinstance(source, StrokeSketch)
               else tuple(source))
    if not strokes or not any(len(s) for s in strokes):
        raise SketchError("empty ink")
    norm = _normalize(strokes, side)
    bitmap = _rasterize_normalized(norm, side)
    return np.concatenate([
        _occupancy(bitmap).ravel(), _direction_histogram(norm)])
