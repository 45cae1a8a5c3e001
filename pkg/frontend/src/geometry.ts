/**
 * Stroke geometry helpers shared by the display canvas, the drawing
 * overlay, and the document model. Placement rules mirror the
 * service exactly: glyph geometry lives in a unit box and occupies
 * ceil(extent * GLYPH_BOX) canvas units, so client-side bounds checks
 * agree with server-side validation.
 */

export type Point = [number, number];
export type Stroke = Point[];
export type Geometry = Stroke[];

export const GLYPH_BOX = 40;

export function parsePath(text: string): Geometry {
  return text.split(";").map((chunk) =>
    chunk
      .trim()
      .split(/\s+/)
      .map((token) => {
        const [x, y] = token.split(",").map(Number);
        if (!Number.isFinite(x) || !Number.isFinite(y)) {
          throw new Error(`bad point ${token}`);
        }
        return [x, y] as Point;
      }),
  );
}

export function formatPath(geometry: Geometry): string {
  return geometry
    .map((stroke) => stroke.map(([x, y]) => `${x},${y}`).join(" "))
    .join(";");
}

export function bounds(
  geometry: Geometry,
): [number, number, number, number] {
  let minX = Infinity;
  let minY = Infinity;
  let maxX = -Infinity;
  let maxY = -Infinity;
  for (const stroke of geometry) {
    for (const [x, y] of stroke) {
      minX = Math.min(minX, x);
      minY = Math.min(minY, y);
      maxX = Math.max(maxX, x);
      maxY = Math.max(maxY, y);
    }
  }
  if (minX === Infinity) throw new Error("empty geometry");
  return [minX, minY, maxX, maxY];
}

export function boxSize(geometry: Geometry): [number, number] {
  const [minX, minY, maxX, maxY] = bounds(geometry);
  return [
    Math.max(1, Math.ceil((maxX - minX) * GLYPH_BOX)),
    Math.max(1, Math.ceil((maxY - minY) * GLYPH_BOX)),
  ];
}

export function normalizeToUnitBox(strokes: Geometry): Geometry {
  const [minX, minY, maxX, maxY] = bounds(strokes);
  const span = Math.max(maxX - minX, maxY - minY);
  if (span === 0) {
    return strokes.map((s) => s.map(() => [0.5, 0.5] as Point));
  }
  const ox = (1 - (maxX - minX) / span) / 2;
  const oy = (1 - (maxY - minY) / span) / 2;
  return strokes.map((s) =>
    s.map(([x, y]) => [(x - minX) / span + ox, (y - minY) / span + oy]),
  );
}

/** Distance from a point to the nearest point of a polyline. */
export function strokeDistance(stroke: Stroke, x: number, y: number): number {
  let best = Infinity;
  for (let i = 0; i < stroke.length; i++) {
    const [ax, ay] = stroke[i];
    const [bx, by] = stroke[Math.min(i + 1, stroke.length - 1)];
    const dx = bx - ax;
    const dy = by - ay;
    const lenSq = dx * dx + dy * dy;
    const t = lenSq === 0
      ? 0
      : Math.max(0, Math.min(1, ((x - ax) * dx + (y - ay) * dy) / lenSq));
    const px = ax + t * dx;
    const py = ay + t * dy;
    best = Math.min(best, Math.hypot(x - px, y - py));
  }
  return best;
}
