/** Token chip rows: the editable per-token view of the annotation layers. */

import { escapeHtml } from "./drsbox.js";
import type { StagedEdit } from "./staging.js";

export interface TokenRow {
  id: number;
  start: number;
  end: number;
  surface: string;
  decomposedFrom: string | null;
}

export function parseTokenTable(tsv: string): TokenRow[] {
  const rows: TokenRow[] = [];
  for (const line of tsv.split("\n")) {
    if (!line.trim()) continue;
    const [id, start, end, surface, decomposed] = line.split("\t");
    rows.push({
      id: Number(id),
      start: Number(start),
      end: Number(end),
      surface: surface ?? "",
      decomposedFrom: decomposed === "-" ? null : decomposed ?? null,
    });
  }
  return rows;
}

export interface ChipModel {
  token: TokenRow;
  semtag: string | null;
  symbol: string | null;
  category: string | null;
  staged: Partial<Record<"semtag" | "sym" | "cat", string>>;
  error?: string;
}

export function buildChips(tokens: TokenRow[],
                           semtags: (string | null)[] | undefined,
                           symbols: (string | null)[] | undefined,
                           categories: (string | null)[] | undefined,
                           staged: StagedEdit[]): ChipModel[] {
  return tokens.map((token) => {
    const mine = staged.filter((e) => e.position === token.id);
    const stagedMap: ChipModel["staged"] = {};
    for (const edit of mine) {
      if (edit.layer === "semtag" || edit.layer === "sym" || edit.layer === "cat") {
        stagedMap[edit.layer] = String(edit.value);
      }
    }
    return {
      token,
      semtag: semtags?.[token.id] ?? null,
      symbol: symbols?.[token.id] ?? null,
      category: categories?.[token.id] ?? null,
      staged: stagedMap,
    };
  });
}

export function statusBadge(status: string): string {
  return `<span class="badge badge-${status.toLowerCase()}">${status}</span>`;
}

function field(chip: ChipModel, layer: "semtag" | "sym" | "cat",
               value: string | null): string {
  const stagedValue = chip.staged[layer];
  const shown = stagedValue ?? value ?? "";
  const cls = stagedValue !== undefined ? "chip-field chip-staged" : "chip-field";
  return `<input class="${cls}" data-layer="${layer}" ` +
    `data-position="${chip.token.id}" value="${escapeHtml(shown)}">`;
}

export function renderChip(chip: ChipModel): string {
  const error = chip.error
    ? `<div class="chip-error">${escapeHtml(chip.error)}</div>` : "";
  const decomposed = chip.token.decomposedFrom
    ? `<span class="chip-note">← ${escapeHtml(chip.token.decomposedFrom)}</span>`
    : "";
  return `<div class="chip" data-token="${chip.token.id}">` +
    `<div class="chip-surface">${escapeHtml(chip.token.surface)}${decomposed}</div>` +
    field(chip, "semtag", chip.semtag ? chip.semtag.toLowerCase() : null) +
    field(chip, "sym", chip.symbol) +
    field(chip, "cat", chip.category) +
    error + `</div>`;
}

export function renderChipRow(chips: ChipModel[]): string {
  return `<div class="chip-row">${chips.map(renderChip).join("")}</div>`;
}
