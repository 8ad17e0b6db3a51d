/** Alignment arcs between a source and a target token row, as inline SVG. */

import { escapeHtml } from "./drsbox.js";

export interface TokenBox {
  label: string;
  x: number;      // center
  width: number;
}

const CHAR_W = 9;
const GAP = 18;

export function layoutRow(labels: string[]): TokenBox[] {
  const out: TokenBox[] = [];
  let x = GAP;
  for (const label of labels) {
    const width = Math.max(30, label.length * CHAR_W + 10);
    out.push({ label, x: x + width / 2, width });
    x += width + GAP;
  }
  return out;
}

export function rowWidth(row: TokenBox[]): number {
  const last = row[row.length - 1];
  return last ? last.x + last.width / 2 + GAP : 2 * GAP;
}

export interface ArcDiagram {
  width: number;
  height: number;
  svg: string;
  arcCount: number;
}

/** Source tokens on top, target tokens below, one path per alignment pair.
 * Pairs of a 2:1 split (same source, several targets) get a marker class. */
export function renderAlignment(source: string[], target: string[],
                                pairs: [number, number][]): ArcDiagram {
  const top = layoutRow(source);
  const bottom = layoutRow(target);
  const width = Math.max(rowWidth(top), rowWidth(bottom));
  const topY = 24;
  const bottomY = 120;
  const parts: string[] = [];

  const sourceFan = new Map<number, number>();
  for (const [s] of pairs) sourceFan.set(s, (sourceFan.get(s) ?? 0) + 1);

  top.forEach((box, i) => {
    parts.push(tokenBoxSvg(box, topY, `src-${i}`));
  });
  bottom.forEach((box, i) => {
    parts.push(tokenBoxSvg(box, bottomY, `tgt-${i}`));
  });

  let arcCount = 0;
  for (const [s, t] of pairs) {
    const a = top[s];
    const b = bottom[t];
    if (!a || !b) continue;
    arcCount += 1;
    const split = (sourceFan.get(s) ?? 0) > 1 ? " mb-arc-split" : "";
    const midY = (topY + bottomY) / 2 + 8;
    parts.push(
      `<path class="mb-arc${split}" d="M ${a.x} ${topY + 10} ` +
      `C ${a.x} ${midY}, ${b.x} ${midY}, ${b.x} ${bottomY - 22}" ` +
      `fill="none"/>`);
  }
  const svg = `<svg class="alignment" width="${width}" height="${bottomY + 16}" ` +
    `viewBox="0 0 ${width} ${bottomY + 16}">${parts.join("")}</svg>`;
  return { width, height: bottomY + 16, svg, arcCount };
}

function tokenBoxSvg(box: TokenBox, y: number, id: string): string {
  return `<g class="token-box" data-id="${id}">` +
    `<rect x="${box.x - box.width / 2}" y="${y - 18}" width="${box.width}" ` +
    `height="24" rx="4"/>` +
    `<text x="${box.x}" y="${y - 2}" text-anchor="middle">` +
    `${escapeHtml(box.label)}</text></g>`;
}
