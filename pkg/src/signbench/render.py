"""SVG rendering of glyph geometry and composed signs."""

from __future__ import annotations

from . import geometry as geo
from .document import GLYPH_BOX, SignDocument, registry_resolver
from .geometry import Geometry


class RenderError(ValueError):
    def __init__(self, refs: list[str]):
        self.refs = refs
        super().__init__("unresolvable refs: " + ", ".join(refs))


def _fmt(v: float) -> str:
    text = f"{v:.3f}".rstrip("0").rstrip(".")
    return text if text else "0"


def geometry_path_d(geometry: Geometry, scale: float = 1.0,
                    offset: tuple[float, float] = (0.0, 0.0)) -> str:
    """SVG path data for a stroke set, bbox-anchored at the offset."""
    minx, miny, _, _ = geo.bounds(geometry)
    parts = []
    for stroke in geometry:
        for i, (x, y) in enumerate(stroke):
            cmd = "M" if i == 0 else "L"
            px = (x - minx) * scale + offset[0]
            py = (y - miny) * scale + offset[1]
            parts.append(f"{cmd} {_fmt(px)} {_fmt(py)}")
        if len(stroke) == 1:
            x, y = stroke[0]
            parts.append(f"L {_fmt((x - minx) * scale + offset[0])} "
                         f"{_fmt((y - miny) * scale + offset[1])}")
    return " ".join(parts)


def render_svg(doc: SignDocument, registry=None, store=None,
               scale: int = 1) -> str:
    """Deterministic SVG: a canvas rect, then one group per placed
    glyph in stacking order."""
    resolve = registry_resolver(registry, store)
    missing = []
    resolved: list[tuple] = []
    for g in doc.glyphs:
        geometry = g.geometry if g.geometry is not None else resolve(g.ref)
        if geometry is None:
            missing.append(g.ref)
        else:
            resolved.append((g, geometry))
    if missing:
        raise RenderError(missing)

    w, h = doc.canvas_w * scale, doc.canvas_h * scale
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">',
        f'  <rect width="{w}" height="{h}" fill="white" stroke="#cccccc"/>',
    ]
    for g, geometry in resolved:
        d = geometry_path_d(geometry, scale=GLYPH_BOX * scale)
        lines.append(
            f'  <g transform="translate({g.x * scale} {g.y * scale})" '
            f'data-ref="{g.ref}" data-z="{g.z}">'
            f'<path d="{d}" fill="none" stroke="black" '
            f'stroke-width="{max(1, scale)}" stroke-linecap="round" '
            f'stroke-linejoin="round"/></g>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_glyph_svg(geometry: Geometry, size: int = GLYPH_BOX) -> str:
    """Standalone SVG of one glyph's unit-box geometry."""
    d = geometry_path_d(geometry, scale=size)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" '
        f'height="{size}" viewBox="0 0 {size} {size}">'
        f'<path d="{d}" fill="none" stroke="black" stroke-width="1" '
        f'stroke-linecap="round" stroke-linejoin="round"/></svg>'
    )
