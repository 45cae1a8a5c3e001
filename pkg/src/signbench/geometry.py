"""Vector stroke geometry.

A glyph's drawable form is a tuple of strokes; a stroke is a tuple of
(x, y) points. Cataloged glyphs keep their geometry inside the unit
box [0,1] x [0,1], y growing downward; scaling happens only at render
time.

The inline text form used by manifests, sign files, and sketch files
is ``x,y x,y ...`` per stroke, strokes joined by ``;``. Floats are
written with repr so parse(format(g)) == g exactly.
"""

from __future__ import annotations

import math

Point = tuple[float, float]
Stroke = tuple[Point, ...]
Geometry = tuple[Stroke, ...]


class PathError(ValueError):
    """Malformed inline geometry text."""


def _fmt(v: float) -> str:
    text = repr(float(v))
    return text[:-2] if text.endswith(".0") else text


def format_path(geometry: Geometry) -> str:
    return ";".join(
        " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in stroke)
        for stroke in geometry
    )


def parse_path(text: str) -> Geometry:
    strokes = []
    for i, chunk in enumerate(text.split(";")):
        chunk = chunk.strip()
        if not chunk:
            raise PathError(f"empty stroke at index {i}")
        points = []
        for token in chunk.split():
            try:
                xs, ys = token.split(",")
                points.append((float(xs), float(ys)))
            except ValueError:
                raise PathError(f"bad point {token!r} in stroke {i}") from None
        strokes.append(tuple(points))
    return tuple(strokes)


def bounds(geometry: Geometry) -> tuple[float, float, float, float]:
    xs = [x for stroke in geometry for x, _ in stroke]
    ys = [y for stroke in geometry for _, y in stroke]
    if not xs:
        raise PathError("empty geometry has no bounds")
    return (min(xs), min(ys), max(xs), max(ys))


def extent(geometry: Geometry) -> tuple[float, float]:
    minx, miny, maxx, maxy = bounds(geometry)
    return (maxx - minx, maxy - miny)


def in_unit_box(geometry: Geometry, tol: float = 1e-9) -> bool:
    minx, miny, maxx, maxy = bounds(geometry)
    return minx >= -tol and miny >= -tol and maxx <= 1 + tol and maxy <= 1 + tol


def normalize_to_unit_box(strokes) -> Geometry:
    """Translate and uniformly scale strokes to fill the unit box.

    Aspect ratio is preserved and the result centered on the shorter
    axis; a degenerate (single point) input maps to the box center.
    """
    pts = [(float(x), float(y)) for stroke in strokes for x, y in stroke]
    if not pts:
        raise PathError("cannot normalize empty strokes")
    minx = min(x for x, _ in pts)
    miny = min(y for _, y in pts)
    maxx = max(x for x, _ in pts)
    maxy = max(y for _, y in pts)
    span = max(maxx - minx, maxy - miny)
    if span == 0:
        return tuple(tuple((0.5, 0.5) for _ in stroke) for stroke in strokes)
    ox = (1 - (maxx - minx) / span) / 2
    oy = (1 - (maxy - miny) / span) / 2
    return tuple(
        tuple(((x - minx) / span + ox, (y - miny) / span + oy) for x, y in stroke)
        for stroke in strokes
    )


def transform(geometry: Geometry, fn) -> Geometry:
    return tuple(tuple(fn(x, y) for x, y in stroke) for stroke in geometry)


# unit-box symmetries used by plane substitution rules

def rotate90(geometry: Geometry) -> Geometry:
    return transform(geometry, lambda x, y: (y, 1 - x))


def rotate180(geometry: Geometry) -> Geometry:
    return transform(geometry, lambda x, y: (1 - x, 1 - y))


def rotate270(geometry: Geometry) -> Geometry:
    return transform(geometry, lambda x, y: (1 - y, x))


def flip_x(geometry: Geometry) -> Geometry:
    return transform(geometry, lambda x, y: (1 - x, y))


def flip_y(geometry: Geometry) -> Geometry:
    return transform(geometry, lambda x, y: (x, 1 - y))


def stroke_length(stroke: Stroke) -> float:
    return sum(
        math.dist(stroke[i - 1], stroke[i]) for i in range(1, len(stroke))
    )


def _segment_distance(p: Point, q: Point, r: Point, s: Point) -> float:
    """Minimum distance between segments pq and rs (0 if they cross)."""
    if _segments_intersect(p, q, r, s):
        return 0.0
    return min(
        _point_segment_distance(p, r, s),
        _point_segment_distance(q, r, s),
        _point_segment_distance(r, p, q),
        _point_segment_distance(s, p, q),
    )


def _point_segment_distance(pt: Point, a: Point, b: Point) -> float:
    ax, ay = a
    bx, by = b
    px, py = pt
    dx, dy = bx - ax, by - ay
    if dx == 0 and dy == 0:
        return math.dist(pt, a)
    t = ((px - ax) * dx + (py - ay) * dy) / (dx * dx + dy * dy)
    t = max(0.0, min(1.0, t))
    return math.dist(pt, (ax + t * dx, ay + t * dy))


def _orient(a: Point, b: Point, c: Point) -> float:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _on_segment(a: Point, b: Point, c: Point) -> bool:
    return (min(a[0], b[0]) <= c[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= c[1] <= max(a[1], b[1]))


def _segments_intersect(p: Point, q: Point, r: Point, s: Point) -> bool:
    d1 = _orient(p, q, r)
    d2 = _orient(p, q, s)
    d3 = _orient(r, s, p)
    d4 = _orient(r, s, q)
    if ((d1 > 0) != (d2 > 0) and d1 != 0 and d2 != 0
            and (d3 > 0) != (d4 > 0) and d3 != 0 and d4 != 0):
        return True
    if d1 == 0 and _on_segment(p, q, r):
        return True
    if d2 == 0 and _on_segment(p, q, s):
        return True
    if d3 == 0 and _on_segment(r, s, p):
        return True
    if d4 == 0 and _on_segment(r, s, q):
        return True
    return False


def _segments(stroke: Stroke):
    if len(stroke) == 1:
        yield stroke[0], stroke[0]
    for i in range(len(stroke) - 1):
        yield stroke[i], stroke[i + 1]


def stroke_distance(a: Stroke, b: Stroke) -> float:
    """Minimum distance between two polylines."""
    best = math.inf
    for pa, qa in _segments(a):
        for pb, qb in _segments(b):
            d = _segment_distance(pa, qa, pb, qb)
            if d < best:
                best = d
                if best == 0:
                    return 0.0
    return best


def scale(geometry: Geometry, factor: float) -> Geometry:
    return transform(geometry, lambda x, y: (x * factor, y * factor))


def translate(geometry: Geometry, dx: float, dy: float) -> Geometry:
    return transform(geometry, lambda x, y: (x + dx, y + dy))
