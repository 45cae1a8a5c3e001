/**
 * Client-side arithmetic on structured glyph ids, mirroring the
 * service's encoding: CC-GG-BBB-VV-FF-RR, with rotation values 1..8
 * as 45-degree steps and 9..16 their mirrored counterparts. Variant
 * controls compute the target id locally and probe the registry for
 * existence; there is no transform endpoint.
 */

const ID_RE = /^(\d{2})-(\d{2})-(\d{3})-(\d{2})-(\d{2})-(\d{2})$/;
const USER_RE = /^U-[1-9]\d*$/;

export interface SymbolIdParts {
  category: number;
  group: number;
  base: number;
  variation: number;
  fill: number;
  rotation: number;
}

export function isUserRef(ref: string): boolean {
  return USER_RE.test(ref);
}

export function parseSymbolId(ref: string): SymbolIdParts {
  const m = ID_RE.exec(ref);
  if (!m) throw new Error(`not a symbol id: ${ref}`);
  const [category, group, base, variation, fill, rotation] = m
    .slice(1)
    .map(Number);
  return { category, group, base, variation, fill, rotation };
}

export function formatSymbolId(p: SymbolIdParts): string {
  const pad = (v: number, n: number) => String(v).padStart(n, "0");
  return [
    pad(p.category, 2),
    pad(p.group, 2),
    pad(p.base, 3),
    pad(p.variation, 2),
    pad(p.fill, 2),
    pad(p.rotation, 2),
  ].join("-");
}

export function rotationStep(p: SymbolIdParts): number {
  return (p.rotation - 1) % 8;
}

export function isMirrored(p: SymbolIdParts): boolean {
  return p.rotation > 8;
}

function encodeRotation(step: number, mirrored: boolean): number {
  return ((step % 8) + 8) % 8 + 1 + (mirrored ? 8 : 0);
}

export function rotatedRef(ref: string, deltaSteps: number): string {
  const p = parseSymbolId(ref);
  p.rotation = encodeRotation(rotationStep(p) + deltaSteps, isMirrored(p));
  return formatSymbolId(p);
}

export function mirroredRef(ref: string): string {
  const p = parseSymbolId(ref);
  p.rotation = encodeRotation(rotationStep(p), !isMirrored(p));
  return formatSymbolId(p);
}

export function refWithFill(ref: string, fill: number): string {
  const p = parseSymbolId(ref);
  p.fill = fill;
  return formatSymbolId(p);
}

export function nextFillRef(ref: string): string {
  const p = parseSymbolId(ref);
  return refWithFill(ref, (p.fill % 6) + 1);
}
