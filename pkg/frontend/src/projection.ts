/** Side-by-side projection view: alignment arcs, flipped slashes, splits,
 * both boxes, and the service's verdict. */

import { renderAlignment } from "./arcs.js";
import { escapeHtml, renderDrsLayer } from "./drsbox.js";
import type { ProjectionRecord } from "./api.js";

export interface ProjectionViewInput {
  record: ProjectionRecord;
  sourceTokens: string[];
  targetTokens: string[];
  sourceCategories: (string | null)[];
  targetCategories: (string | null)[];
  sourceDrs: string | null;
  targetDrs: string | null;
}

export interface ProjectionViewModel {
  verdict: string;
  reason: string;
  arcsSvg: string;
  arcCount: number;
  flippedTargets: number[];   // target indices whose category differs
  splitTargets: number[];     // targets sharing a source with another target
  html: string;
}

export function buildProjectionView(input: ProjectionViewInput): ProjectionViewModel {
  const sentence = input.record.sentences[0] ??
    { status: "Unverified", reason: "no sentences", alignment: [], notes: [] };
  const pairs = sentence.alignment;
  const diagram = renderAlignment(input.sourceTokens, input.targetTokens, pairs);

  const flippedTargets: number[] = [];
  for (const [s, t] of pairs) {
    const src = input.sourceCategories[s];
    const tgt = input.targetCategories[t];
    if (src && tgt && src !== tgt) flippedTargets.push(t);
  }
  const fan = new Map<number, number[]>();
  for (const [s, t] of pairs) {
    const ts = fan.get(s) ?? [];
    ts.push(t);
    fan.set(s, ts);
  }
  const splitTargets = [...fan.values()].filter((ts) => ts.length > 1).flat();

  const verdict = sentence.status;
  const reason = sentence.reason;
  const verdictClass = verdict.toLowerCase();
  const banner = verdict === "Failed"
    ? `<div class="banner banner-failed">${escapeHtml(reason)}</div>`
    : "";
  const rows = input.targetTokens.map((surface, t) => {
    const marks: string[] = [];
    if (flippedTargets.includes(t)) marks.push("flipped slash");
    if (splitTargets.includes(t)) marks.push("2:1 split");
    const cat = input.targetCategories[t] ?? "—";
    return `<tr class="${marks.map((m) => m.replace(/[ :]/g, "-")).join(" ")}">` +
      `<td>${escapeHtml(surface)}</td><td>${escapeHtml(cat)}</td>` +
      `<td>${escapeHtml(marks.join(", "))}</td></tr>`;
  }).join("");
  const boxes = `<div class="drs-pair">` +
    `<div><h4>source box</h4>${input.sourceDrs ? renderDrsLayer(input.sourceDrs) : "—"}</div>` +
    `<div><h4>target box</h4>${input.targetDrs ? renderDrsLayer(input.targetDrs) : "—"}</div>` +
    `</div>`;
  const html =
    `<div class="projection">` +
    `<div class="verdict verdict-${verdictClass}">${escapeHtml(verdict)}</div>` +
    banner + diagram.svg +
    `<table class="projection-table"><tr><th>target</th><th>category</th>` +
    `<th>marks</th></tr>${rows}</table>` +
    (verdict === "Failed" && !input.targetDrs ? "" : boxes) +
    `</div>`;
  return {
    verdict, reason, arcsSvg: diagram.svg, arcCount: diagram.arcCount,
    flippedTargets, splitTargets, html,
  };
}
