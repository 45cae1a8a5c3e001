/**
 * Palette navigation state. The taxonomy is two levels of labels with
 * glyph grids underneath, so any glyph is three selections away:
 * category, group, glyph. Grids are image-first; labels are the only
 * text shown.
 */

import type { GlyphEntry, WorkbenchApi } from "./api.js";

export type PaletteView =
  | { kind: "labels"; path: string[]; labels: string[] }
  | { kind: "entries"; path: string[]; entries: GlyphEntry[] };

export class PaletteState {
  view: PaletteView = { kind: "labels", path: [], labels: [] };
  selections = 0; // taps since the palette root, for the depth contract

  constructor(private readonly api: WorkbenchApi) {}

  async open(): Promise<PaletteView> {
    this.selections = 0;
    this.view = {
      kind: "labels",
      path: [],
      labels: await this.api.categories(),
    };
    return this.view;
  }

  /** Descend one level; at the bottom the caller picks an entry. */
  async select(label: string): Promise<PaletteView> {
    if (this.view.kind !== "labels") {
      throw new Error("select() is for label views; pick() chooses a glyph");
    }
    const path = [...this.view.path, label];
    const result = await this.api.children(path);
    this.selections += 1;
    this.view =
      result.kind === "labels"
        ? { kind: "labels", path, labels: result.items }
        : { kind: "entries", path, entries: result.items };
    return this.view;
  }

  /** Choosing a glyph from the grid is the final selection. */
  pick(entry: GlyphEntry): { entry: GlyphEntry; selections: number } {
    if (this.view.kind !== "entries") {
      throw new Error("no glyph grid is open");
    }
    this.selections += 1;
    return { entry, selections: this.selections };
  }

  async back(): Promise<PaletteView> {
    const path = this.view.path.slice(0, -1);
    this.selections = Math.max(0, this.selections - 1);
    if (!path.length) {
      this.view = {
        kind: "labels",
        path: [],
        labels: await this.api.categories(),
      };
      return this.view;
    }
    const result = await this.api.children(path);
    this.view =
      result.kind === "labels"
        ? { kind: "labels", path, labels: result.items }
        : { kind: "entries", path, entries: result.items };
    return this.view;
  }
}
