/** Conflict queue rendering: open conflicts with pick-one resolution. */

import type { ConflictInfo } from "./api.js";
import { escapeHtml } from "./drsbox.js";

export function renderConflicts(conflicts: ConflictInfo[]): string {
  if (conflicts.length === 0) {
    return `<div class="empty-queue">no open conflicts</div>`;
  }
  const rows = conflicts.map((c) => {
    const gold = escapeHtml(String(c.gold));
    const fresh = escapeHtml(String(c.new));
    return `<tr data-conflict="${escapeHtml(c.id)}">` +
      `<td>${escapeHtml(c.part)}/${c.doc}</td>` +
      `<td>${escapeHtml(c.lang)}:${escapeHtml(c.layer)}@${c.position}</td>` +
      `<td><button class="keep" data-kept="${gold}">keep gold: ${gold}</button></td>` +
      `<td><button class="keep" data-kept="${fresh}">accept new: ${fresh}</button></td>` +
      `</tr>`;
  }).join("");
  return `<table class="conflicts"><tr><th>document</th><th>where</th>` +
    `<th colspan="2">resolution</th></tr>${rows}</table>`;
}
