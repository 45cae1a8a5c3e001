/**
 * The freehand drawing overlay's model: pencil strokes and an eraser,
 * nothing else. The overlay shows an enlarged copy of the sign
 * display with the already-placed glyphs rendered behind the ink, so
 * the drawing keeps sensible proportions relative to them.
 */

import type { SketchPayload } from "./api.js";
import type { Geometry, Point, Stroke } from "./geometry.js";
import { strokeDistance } from "./geometry.js";

export const ERASER_RADIUS = 10;

export class SketchPad {
  strokes: Stroke[] = [];
  private current: Stroke | null = null;

  constructor(
    readonly width: number,
    readonly height: number,
  ) {}

  get empty(): boolean {
    return this.strokes.length === 0 && this.current === null;
  }

  /** Save is only offered once there is ink. */
  get canSave(): boolean {
    return this.strokes.some((s) => s.length >= 2);
  }

  private clamp([x, y]: Point): Point {
    return [
      Math.max(0, Math.min(this.width, x)),
      Math.max(0, Math.min(this.height, y)),
    ];
  }

  beginStroke(x: number, y: number): void {
    this.current = [this.clamp([x, y])];
  }

  extendStroke(x: number, y: number): void {
    this.current?.push(this.clamp([x, y]));
  }

  endStroke(): void {
    if (this.current && this.current.length >= 2) {
      this.strokes.push(this.current);
    }
    this.current = null;
  }

  /** The eraser removes whole strokes it touches. */
  erase(x: number, y: number, radius = ERASER_RADIUS): number {
    const before = this.strokes.length;
    this.strokes = this.strokes.filter(
      (s) => strokeDistance(s, x, y) > radius,
    );
    return before - this.strokes.length;
  }

  clear(): void {
    this.strokes = [];
    this.current = null;
  }

  inProgress(): Stroke | null {
    return this.current;
  }

  geometry(): Geometry {
    return this.strokes;
  }

  payload(): SketchPayload {
    return {
      strokes: this.strokes.map((s) => s.map(([x, y]) => [x, y])),
      canvas_w: Math.ceil(this.width),
      canvas_h: Math.ceil(this.height),
    };
  }
}
