/**
 * The freehand round trip: draw on the overlay, submit, look at the
 * verdict and the conventional-glyph suggestions, then either adopt a
 * suggested official glyph or keep the drawing as a user glyph. Both
 * outcomes land in the sign display at the drawn spot.
 *
 * Suggestions come back before the drawing is accepted so writers who
 * did not know an official glyph existed can switch to it instead of
 * minting a redundant one.
 */

import type { MatchHit, Verdict, WorkbenchApi } from "./api.js";
import { SignDoc } from "./document.js";
import { boxSize, parsePath } from "./geometry.js";
import type { EditorSession } from "./session.js";
import { SketchPad } from "./sketch.js";

export const OVERLAY_SCALE = 2;

export interface SubmitOutcome {
  id: string;
  verdict: Verdict;
  suggestions: MatchHit[];
  /** top-left of the ink, in display coordinates */
  at: { x: number; y: number };
}

function clampToFit(
  doc: SignDoc,
  box: [number, number],
  x: number,
  y: number,
): { x: number; y: number } {
  return {
    x: Math.max(0, Math.min(Math.floor(x), doc.w - box[0])),
    y: Math.max(0, Math.min(Math.floor(y), doc.h - box[1])),
  };
}

export class FreehandFlow {
  readonly pad: SketchPad;
  outcome: SubmitOutcome | null = null;

  constructor(
    private readonly api: WorkbenchApi,
    private readonly session: EditorSession,
    readonly scale = OVERLAY_SCALE,
  ) {
    this.pad = new SketchPad(
      session.doc.w * scale,
      session.doc.h * scale,
    );
  }

  get canSave(): boolean {
    return this.pad.canSave;
  }

  /** Store the drawing and collect the verdict plus suggestions. */
  async submit(tags: string[]): Promise<SubmitOutcome> {
    if (!this.canSave) throw new Error("nothing drawn yet");
    const ink = this.pad.geometry();
    let minX = Infinity;
    let minY = Infinity;
    for (const stroke of ink) {
      for (const [x, y] of stroke) {
        minX = Math.min(minX, x);
        minY = Math.min(minY, y);
      }
    }
    const result = await this.api.submitUserGlyph(this.pad.payload(), tags);
    this.outcome = {
      id: result.id,
      verdict: result.verdict,
      suggestions: result.suggestions,
      at: { x: minX / this.scale, y: minY / this.scale },
    };
    return this.outcome;
  }

  /** Keep the drawing: place the stored user glyph in the display. */
  async keepUserGlyph(): Promise<boolean> {
    if (!this.outcome) throw new Error("submit first");
    const record = await this.api.paletteUserGlyph(this.outcome.id);
    const box = boxSize(parsePath(record.geometry));
    const { x, y } = clampToFit(this.session.doc, box,
                                this.outcome.at.x, this.outcome.at.y);
    return this.session.tryPlace(this.outcome.id, box, x, y,
                                 record.geometry);
  }

  /** Place a suggested official glyph where the ink was instead. */
  async adoptSuggestion(ref: string): Promise<boolean> {
    if (!this.outcome) throw new Error("submit first");
    const entry = await this.api.glyph(ref);
    const { x, y } = clampToFit(this.session.doc, entry.box,
                                this.outcome.at.x, this.outcome.at.y);
    return this.session.tryPlace(ref, entry.box, x, y);
  }
}
