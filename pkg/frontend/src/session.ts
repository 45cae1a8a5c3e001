/**
 * One editing session: the current document, undo/redo stacks, the
 * selection, and the variant controls. Documents are immutable, so
 * undo is literally the previous value.
 *
 * Rotate/mirror/fill compute the sibling id locally and probe the
 * registry; a missing variant leaves the document untouched and
 * returns false so the UI can grey the control out.
 */

import type { WorkbenchApi } from "./api.js";
import {
  OutOfBoundsError,
  Placement,
  SignDoc,
  emptyDoc,
  move,
  place,
  remove,
  replaceRef,
  toXml,
} from "./document.js";
import { boxSize, parsePath } from "./geometry.js";
import { isUserRef, mirroredRef, nextFillRef, rotatedRef } from "./symbolid.js";

function randomToken(): string {
  return `session-${Math.random().toString(36).slice(2, 10)}`;
}

export class EditorSession {
  doc: SignDoc;
  readonly token: string;
  selectedZ: number | null = null;
  drawingMode = false;
  private past: SignDoc[] = [];
  private future: SignDoc[] = [];

  constructor(
    private readonly api: WorkbenchApi,
    doc?: SignDoc,
    token?: string,
  ) {
    this.doc = doc ?? emptyDoc();
    this.token = token ?? randomToken();
  }

  get canUndo(): boolean {
    return this.past.length > 0;
  }

  get canRedo(): boolean {
    return this.future.length > 0;
  }

  private apply(next: SignDoc): void {
    this.past.push(this.doc);
    this.future = [];
    this.doc = next;
  }

  undo(): boolean {
    const prev = this.past.pop();
    if (!prev) return false;
    this.future.push(this.doc);
    this.doc = prev;
    return true;
  }

  redo(): boolean {
    const next = this.future.pop();
    if (!next) return false;
    this.past.push(this.doc);
    this.doc = next;
    return true;
  }

  selected(): Placement | null {
    return this.doc.placements.find((p) => p.z === this.selectedZ) ?? null;
  }

  /** Place a cataloged glyph; false (no change) when it doesn't fit. */
  async placeGlyph(ref: string, x: number, y: number): Promise<boolean> {
    const entry = await this.api.glyph(ref);
    return this.tryPlace(ref, entry.box, x, y);
  }

  /** Place a user glyph fetched through the policy-gated palette. */
  async placeUserGlyph(ref: string, x: number, y: number): Promise<boolean> {
    const record = await this.api.paletteUserGlyph(ref);
    const box = boxSize(parsePath(record.geometry));
    return this.tryPlace(ref, box, x, y, record.geometry);
  }

  tryPlace(
    ref: string,
    box: [number, number],
    x: number,
    y: number,
    pathText?: string,
  ): boolean {
    try {
      this.apply(place(this.doc, ref, box, x, y, pathText));
    } catch (err) {
      if (err instanceof OutOfBoundsError) return false; // snap-back
      throw err;
    }
    this.selectedZ = this.doc.placements[this.doc.placements.length - 1].z;
    return true;
  }

  moveSelected(x: number, y: number): boolean {
    if (this.selectedZ === null) return false;
    try {
      this.apply(move(this.doc, this.selectedZ, x, y));
      return true;
    } catch (err) {
      if (err instanceof OutOfBoundsError) return false;
      throw err;
    }
  }

  removeSelected(): boolean {
    if (this.selectedZ === null) return false;
    this.apply(remove(this.doc, this.selectedZ));
    this.selectedZ = null;
    return true;
  }

  private async swapSelectedRef(targetRef: string): Promise<boolean> {
    const current = this.selected();
    if (!current || isUserRef(current.ref)) return false;
    const entry = await this.api.glyphOrNull(targetRef);
    if (entry === null) return false; // variant not cataloged
    try {
      this.apply(replaceRef(this.doc, current.z, targetRef, entry.box));
      return true;
    } catch (err) {
      if (err instanceof OutOfBoundsError) return false;
      throw err;
    }
  }

  /** Rotate the selected glyph by 45-degree steps. */
  rotateSelected(deltaSteps: number): Promise<boolean> {
    const current = this.selected();
    if (!current || isUserRef(current.ref)) return Promise.resolve(false);
    return this.swapSelectedRef(rotatedRef(current.ref, deltaSteps));
  }

  mirrorSelected(): Promise<boolean> {
    const current = this.selected();
    if (!current || isUserRef(current.ref)) return Promise.resolve(false);
    return this.swapSelectedRef(mirroredRef(current.ref));
  }

  cycleFillSelected(): Promise<boolean> {
    const current = this.selected();
    if (!current || isUserRef(current.ref)) return Promise.resolve(false);
    return this.swapSelectedRef(nextFillRef(current.ref));
  }

  async save(): Promise<string> {
    return this.api.saveSign(toXml(this.doc));
  }
}
