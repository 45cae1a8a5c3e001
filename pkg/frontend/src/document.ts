/**
 * The client-side sign document: an immutable value the session
 * snapshots for undo. Placement mirrors the service's rules so the
 * editor never builds a document that server-side validation would
 * reject; user-glyph geometry is carried as the server's own path
 * text and embedded verbatim on save.
 */

import { isUserRef } from "./symbolid.js";

export interface Placement {
  ref: string;
  x: number;
  y: number;
  z: number;
  box: [number, number];
  /** inline geometry text, user refs only; embedded in the XML */
  pathText?: string;
}

export interface SignDoc {
  w: number;
  h: number;
  placements: Placement[]; // always in z order
  gloss?: string;
  author?: string;
  mode?: "written" | "transcribed";
}

export class OutOfBoundsError extends Error {
  constructor(ref: string) {
    super(`${ref} does not fit the canvas there`);
  }
}

export function emptyDoc(w = 200, h = 200): SignDoc {
  return { w, h, placements: [] };
}

export function fits(doc: SignDoc, box: [number, number], x: number,
                     y: number): boolean {
  return x >= 0 && y >= 0 && x + box[0] <= doc.w && y + box[1] <= doc.h;
}

function topZ(doc: SignDoc): number {
  return doc.placements.length
    ? doc.placements[doc.placements.length - 1].z
    : 0;
}

export function place(
  doc: SignDoc,
  ref: string,
  box: [number, number],
  x: number,
  y: number,
  pathText?: string,
): SignDoc {
  if (!fits(doc, box, x, y)) throw new OutOfBoundsError(ref);
  const placed: Placement = { ref, x, y, z: topZ(doc) + 1, box };
  if (pathText !== undefined) placed.pathText = pathText;
  return { ...doc, placements: [...doc.placements, placed] };
}

export function move(doc: SignDoc, z: number, x: number, y: number): SignDoc {
  const target = doc.placements.find((p) => p.z === z);
  if (!target) throw new Error(`no placement at z=${z}`);
  if (!fits(doc, target.box, x, y)) throw new OutOfBoundsError(target.ref);
  return {
    ...doc,
    placements: doc.placements.map((p) =>
      p.z === z ? { ...p, x, y } : p,
    ),
  };
}

export function remove(doc: SignDoc, z: number): SignDoc {
  return { ...doc, placements: doc.placements.filter((p) => p.z !== z) };
}

export function replaceRef(
  doc: SignDoc,
  z: number,
  ref: string,
  box: [number, number],
): SignDoc {
  const target = doc.placements.find((p) => p.z === z);
  if (!target) throw new Error(`no placement at z=${z}`);
  if (!fits(doc, box, target.x, target.y)) throw new OutOfBoundsError(ref);
  return {
    ...doc,
    placements: doc.placements.map((p) =>
      p.z === z ? { ...p, ref, box } : p,
    ),
  };
}

function escapeAttr(value: string): string {
  return value
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}

function escapeText(value: string): string {
  return value
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;");
}

/** Canonical sign XML, matching the service's serializer. */
export function toXml(doc: SignDoc): string {
  const attrs = [`w="${doc.w}"`, `h="${doc.h}"`];
  if (doc.mode && doc.mode !== "written") attrs.push(`mode="${doc.mode}"`);
  if (doc.gloss !== undefined) attrs.push(`gloss="${escapeAttr(doc.gloss)}"`);
  if (doc.author) attrs.push(`author="${escapeAttr(doc.author)}"`);
  const head = `<sign ${attrs.join(" ")}`;
  if (!doc.placements.length) return `${head}/>\n`;

  const lines = [`${head}>`];
  for (const p of doc.placements) {
    const pos = `x="${p.x}" y="${p.y}" z="${p.z}"`;
    if (isUserRef(p.ref)) {
      lines.push(`  <userglyph id="${p.ref}" ${pos}>`);
      lines.push(`    <path>${escapeText(p.pathText ?? "")}</path>`);
      lines.push("  </userglyph>");
    } else {
      lines.push(`  <glyph ref="${p.ref}" ${pos}/>`);
    }
  }
  lines.push("</sign>");
  return lines.join("\n") + "\n";
}
