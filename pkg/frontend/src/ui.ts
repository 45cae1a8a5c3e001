/**
 * DOM wiring. Deliberately visual-first: glyphs are shown as drawings
 * everywhere (palette cells, suggestion chips, the display) and the
 * chrome leans on pictographic button labels over written language.
 */

import type { GlyphEntry, WorkbenchApi } from "./api.js";
import { Geometry, bounds, GLYPH_BOX, parsePath } from "./geometry.js";
import { FreehandFlow } from "./freehand.js";
import { PaletteState } from "./palette.js";
import type { Placement } from "./document.js";
import { EditorSession } from "./session.js";
import { isUserRef } from "./symbolid.js";

const DISPLAY_SCALE = 2;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className = "",
  text = "",
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text) node.textContent = text;
  return node;
}

function drawGeometry(
  ctx: CanvasRenderingContext2D,
  geometry: Geometry,
  x: number,
  y: number,
  scale: number,
  color = "#111",
  width = 1.6,
): void {
  const [minX, minY] = bounds(geometry);
  ctx.strokeStyle = color;
  ctx.lineWidth = width;
  ctx.lineCap = "round";
  ctx.lineJoin = "round";
  for (const stroke of geometry) {
    ctx.beginPath();
    stroke.forEach(([px, py], i) => {
      const cx = x + (px - minX) * GLYPH_BOX * scale;
      const cy = y + (py - minY) * GLYPH_BOX * scale;
      if (i === 0) ctx.moveTo(cx, cy);
      else ctx.lineTo(cx, cy);
    });
    if (stroke.length === 1) {
      const [px, py] = stroke[0];
      ctx.arc(x + (px - minX) * GLYPH_BOX * scale,
              y + (py - minY) * GLYPH_BOX * scale, width, 0, 7);
    }
    ctx.stroke();
  }
}

function glyphThumb(geometry: Geometry, size = 56): HTMLCanvasElement {
  const canvas = el("canvas", "thumb");
  canvas.width = size;
  canvas.height = size;
  const ctx = canvas.getContext("2d")!;
  const [minX, minY, maxX, maxY] = bounds(geometry);
  const span = Math.max(maxX - minX, maxY - minY) || 1;
  const scale = (size - 10) / (span * GLYPH_BOX);
  const ox = (size - (maxX - minX) * GLYPH_BOX * scale) / 2;
  const oy = (size - (maxY - minY) * GLYPH_BOX * scale) / 2;
  drawGeometry(ctx, geometry, ox, oy, scale);
  return canvas;
}

export class EditorUi {
  private session: EditorSession;
  private palette: PaletteState;
  private geometryCache = new Map<string, Geometry>();
  private display!: HTMLCanvasElement;
  private paletteBox!: HTMLElement;
  private statusBox!: HTMLElement;
  private banner!: HTMLElement;
  private controls: Record<string, HTMLButtonElement> = {};
  private dragging: { z: number; dx: number; dy: number } | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: WorkbenchApi,
  ) {
    this.session = new EditorSession(api);
    this.palette = new PaletteState(api);
    this.build();
    void this.refreshPalette();
    this.redraw();
  }

  private build(): void {
    this.root.replaceChildren();
    this.banner = el("div", "banner hidden", "⚠ ✕ ⇄ ✕");
    this.root.append(this.banner);

    const layout = el("div", "layout");
    this.root.append(layout);

    const side = el("div", "side");
    this.paletteBox = el("div", "palette");
    side.append(this.paletteBox);
    layout.append(side);

    const main = el("div", "main");
    const bar = el("div", "toolbar");
    const button = (label: string, title: string, fn: () => void) => {
      const b = el("button", "tool", label);
      b.title = title;
      b.onclick = fn;
      bar.append(b);
      this.controls[title] = b;
      return b;
    };
    button("↶", "undo", () => { this.session.undo(); this.redraw(); });
    button("↷", "redo", () => { this.session.redo(); this.redraw(); });
    button("⟲", "rotate-left", () => void this.variant(
      () => this.session.rotateSelected(1)));
    button("⟳", "rotate-right", () => void this.variant(
      () => this.session.rotateSelected(-1)));
    button("⇋", "mirror", () => void this.variant(
      () => this.session.mirrorSelected()));
    button("◐", "fill", () => void this.variant(
      () => this.session.cycleFillSelected()));
    button("✕", "delete", () => { this.session.removeSelected(); this.redraw(); });
    button("✏", "draw", () => void this.openOverlay());
    button("💾", "save", () => void this.saveSign());
    main.append(bar);

    this.display = el("canvas", "display");
    this.display.width = this.session.doc.w * DISPLAY_SCALE;
    this.display.height = this.session.doc.h * DISPLAY_SCALE;
    this.wireDisplay();
    main.append(this.display);

    this.statusBox = el("div", "status");
    main.append(this.statusBox);
    layout.append(main);
  }

  private offline(on: boolean): void {
    this.banner.classList.toggle("hidden", !on);
  }

  private async geometryOf(p: Placement): Promise<Geometry> {
    if (p.pathText) return parsePath(p.pathText);
    const cached = this.geometryCache.get(p.ref);
    if (cached) return cached;
    const entry = await this.api.glyph(p.ref);
    const geometry = parsePath(entry.geometry);
    this.geometryCache.set(p.ref, geometry);
    return geometry;
  }

  private redraw(): void {
    void this.redrawAsync();
  }

  private async redrawAsync(): Promise<void> {
    const ctx = this.display.getContext("2d")!;
    ctx.fillStyle = "#fff";
    ctx.fillRect(0, 0, this.display.width, this.display.height);
    for (const p of this.session.doc.placements) {
      try {
        const geometry = await this.geometryOf(p);
        drawGeometry(ctx, geometry, p.x * DISPLAY_SCALE, p.y * DISPLAY_SCALE,
                     DISPLAY_SCALE);
        this.offline(false);
      } catch {
        this.offline(true);
        return;
      }
      if (p.z === this.session.selectedZ) {
        ctx.strokeStyle = "#3b82f6";
        ctx.lineWidth = 1;
        ctx.strokeRect(p.x * DISPLAY_SCALE - 2, p.y * DISPLAY_SCALE - 2,
                       p.box[0] * DISPLAY_SCALE + 4,
                       p.box[1] * DISPLAY_SCALE + 4);
      }
    }
    this.controls["undo"].disabled = !this.session.canUndo;
    this.controls["redo"].disabled = !this.session.canRedo;
    const hasSelection = this.session.selected() !== null;
    for (const key of ["rotate-left", "rotate-right", "mirror", "fill",
                       "delete"]) {
      this.controls[key].disabled = !hasSelection;
    }
  }

  private async variant(action: () => Promise<boolean>): Promise<void> {
    const changed = await action();
    if (!changed) this.cue("∅"); // variant not cataloged
    this.redraw();
  }

  private cue(text: string): void {
    this.statusBox.textContent = text;
    setTimeout(() => { this.statusBox.textContent = ""; }, 1200);
  }

  private wireDisplay(): void {
    this.display.addEventListener("pointerdown", (ev) => {
      const x = ev.offsetX / DISPLAY_SCALE;
      const y = ev.offsetY / DISPLAY_SCALE;
      const hit = [...this.session.doc.placements].reverse().find(
        (p) => x >= p.x && x <= p.x + p.box[0]
            && y >= p.y && y <= p.y + p.box[1]);
      this.session.selectedZ = hit ? hit.z : null;
      if (hit) this.dragging = { z: hit.z, dx: x - hit.x, dy: y - hit.y };
      this.redraw();
    });
    this.display.addEventListener("pointermove", (ev) => {
      if (!this.dragging) return;
      const x = Math.round(ev.offsetX / DISPLAY_SCALE - this.dragging.dx);
      const y = Math.round(ev.offsetY / DISPLAY_SCALE - this.dragging.dy);
      if (this.session.moveSelected(x, y)) this.redraw();
    });
    const stop = () => { this.dragging = null; };
    this.display.addEventListener("pointerup", stop);
    this.display.addEventListener("pointerleave", stop);
  }

  private async refreshPalette(): Promise<void> {
    try {
      await this.palette.open();
      this.offline(false);
    } catch {
      this.offline(true);
      return;
    }
    this.renderPalette();
  }

  private renderPalette(): void {
    this.paletteBox.replaceChildren();
    const view = this.palette.view;
    if (view.path.length) {
      const back = el("button", "back", "←");
      back.onclick = async () => { await this.palette.back(); this.renderPalette(); };
      this.paletteBox.append(back);
    }
    if (view.kind === "labels") {
      for (const label of view.labels) {
        const cell = el("button", "label-cell", label);
        cell.onclick = async () => {
          await this.palette.select(label);
          this.renderPalette();
        };
        this.paletteBox.append(cell);
      }
    } else {
      for (const entry of view.entries) {
        const cell = el("button", "glyph-cell");
        cell.title = entry.name;
        cell.append(glyphThumb(parsePath(entry.geometry)));
        cell.onclick = () => void this.pickGlyph(entry);
        this.paletteBox.append(cell);
      }
    }
  }

  private async pickGlyph(entry: GlyphEntry): Promise<void> {
    this.palette.pick(entry);
    const x = Math.floor((this.session.doc.w - entry.box[0]) / 2);
    const y = Math.floor((this.session.doc.h - entry.box[1]) / 2);
    if (!this.session.tryPlace(entry.ref, entry.box, x, y)) this.cue("∅");
    this.redraw();
  }

  private async saveSign(): Promise<void> {
    try {
      const id = await this.session.save();
      this.cue(`✓ ${id}`);
    } catch {
      this.cue("✕");
    }
  }

  /** The drawing overlay: pencil, eraser, proportion backdrop. */
  private async openOverlay(): Promise<void> {
    const flow = new FreehandFlow(this.api, this.session);
    const dialog = el("div", "overlay");
    const card = el("div", "overlay-card");
    dialog.append(card);

    const canvas = el("canvas", "overlay-canvas");
    canvas.width = this.session.doc.w * flow.scale;
    canvas.height = this.session.doc.h * flow.scale;
    const ctx = canvas.getContext("2d")!;

    let tool: "pencil" | "eraser" = "pencil";
    const tools = el("div", "toolbar");
    const pencil = el("button", "tool active", "✏");
    const eraser = el("button", "tool", "🧽");
    pencil.onclick = () => { tool = "pencil"; pencil.classList.add("active"); eraser.classList.remove("active"); };
    eraser.onclick = () => { tool = "eraser"; eraser.classList.add("active"); pencil.classList.remove("active"); };
    tools.append(pencil, eraser);

    const tags = el("div", "tags");
    const tagSet = new Set<string>();
    for (const tag of ["hand-config", "motion", "head-movement",
                       "head-anchored", "annotation", "forearm"]) {
      const chip = el("button", "chip", tag);
      chip.onclick = () => {
        if (tagSet.delete(tag)) chip.classList.remove("active");
        else { tagSet.add(tag); chip.classList.add("active"); }
        refreshButtons();
      };
      tags.append(chip);
    }

    const actions = el("div", "toolbar");
    const save = el("button", "tool", "✓");
    const cancel = el("button", "tool", "✕");
    actions.append(save, cancel);
    const results = el("div", "results");
    card.append(tools, canvas, tags, actions, results);

    const refreshButtons = () => {
      save.disabled = !flow.canSave || tagSet.size === 0;
    };

    const redrawOverlay = async () => {
      ctx.fillStyle = "#fff";
      ctx.fillRect(0, 0, canvas.width, canvas.height);
      for (const p of this.session.doc.placements) {
        const geometry = await this.geometryOf(p).catch(() => null);
        if (geometry) {
          drawGeometry(ctx, geometry, p.x * flow.scale, p.y * flow.scale,
                       flow.scale, "#9ca3af");
        }
      }
      ctx.strokeStyle = "#111";
      ctx.lineWidth = 2;
      ctx.lineCap = "round";
      for (const stroke of [...flow.pad.strokes,
                            flow.pad.inProgress() ?? []]) {
        if (stroke.length < 2) continue;
        ctx.beginPath();
        stroke.forEach(([x, y], i) =>
          i ? ctx.lineTo(x, y) : ctx.moveTo(x, y));
        ctx.stroke();
      }
      refreshButtons();
    };

    let down = false;
    canvas.addEventListener("pointerdown", (ev) => {
      down = true;
      if (tool === "pencil") flow.pad.beginStroke(ev.offsetX, ev.offsetY);
      else flow.pad.erase(ev.offsetX, ev.offsetY);
      void redrawOverlay();
    });
    canvas.addEventListener("pointermove", (ev) => {
      if (!down) return;
      if (tool === "pencil") flow.pad.extendStroke(ev.offsetX, ev.offsetY);
      else flow.pad.erase(ev.offsetX, ev.offsetY);
      void redrawOverlay();
    });
    canvas.addEventListener("pointerup", () => {
      down = false;
      flow.pad.endStroke();
      void redrawOverlay();
    });

    cancel.onclick = () => dialog.remove();
    save.onclick = async () => {
      save.disabled = true;
      const outcome = await flow.submit([...tagSet]).catch(() => null);
      if (!outcome) { this.cue("✕"); dialog.remove(); return; }
      results.replaceChildren();
      results.append(el("div", `verdict ${outcome.verdict.overall}`,
                        outcome.verdict.overall));
      // suggestions first: adopting one avoids a redundant invention
      for (const hit of outcome.suggestions) {
        const entry = await this.api.glyphOrNull(hit.ref);
        if (!entry) continue;
        const chip = el("button", "glyph-cell");
        chip.title = entry.name;
        chip.append(glyphThumb(parsePath(entry.geometry), 44));
        chip.onclick = async () => {
          await flow.adoptSuggestion(hit.ref);
          dialog.remove();
          this.redraw();
        };
        results.append(chip);
      }
      const keep = el("button", "tool", "✏→▦");
      keep.title = "keep my glyph";
      keep.onclick = async () => {
        await flow.keepUserGlyph();
        dialog.remove();
        this.redraw();
      };
      results.append(keep);
    };

    this.root.append(dialog);
    await redrawOverlay();
    refreshButtons();
  }
}

export function mount(root: HTMLElement, api: WorkbenchApi): EditorUi {
  return new EditorUi(root, api);
}
