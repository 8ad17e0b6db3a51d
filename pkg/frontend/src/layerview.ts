/** The per-document view: raw text, chips, derivation, box, status badges. */

import type { DocumentInfo, LayerPayload } from "./api.js";
import { buildChips, parseTokenTable, renderChipRow, statusBadge,
         TokenRow } from "./chips.js";
import { parseDerivations, renderDerivation } from "./derivtree.js";
import { escapeHtml, renderDrsLayer } from "./drsbox.js";
import type { StagedEdit } from "./staging.js";

export interface LayerViewInput {
  info: DocumentInfo;
  lang: string;
  tokens: TokenRow[];
  semtag: LayerPayload | null;
  sym: LayerPayload | null;
  cat: LayerPayload | null;
  drs: LayerPayload | null;
  derivText: string | null;
  staged: StagedEdit[];
  showClausal: boolean;
}

export function renderLayerView(input: LayerViewInput): string {
  const { info, lang } = input;
  const raw = info.raw[lang] ?? "";
  const badges = (["tok", "semtag", "sym", "cat", "drs"] as const)
    .map((layer) => {
      const status = info.layers[lang]?.[layer]?.status ?? "Bronze";
      return `<span class="layer-badge" data-layer="${layer}">` +
        `${layer} ${statusBadge(status)}</span>`;
    }).join(" ");
  const chips = buildChips(
    input.tokens,
    input.semtag?.values, input.sym?.values, input.cat?.values,
    input.staged);
  const derivHtml = input.derivText
    ? parseDerivations(input.derivText).map(renderDerivation).join("")
    : `<div class="missing">derivation not computed</div>`;
  const drsHtml = input.drs?.text
    ? renderDrsLayer(input.drs.text, input.showClausal)
    : `<div class="missing">box not computed</div>`;
  const stagedCount = input.staged.length;
  const submit = stagedCount
    ? `<button id="submit-staged">submit ${stagedCount} staged ` +
      `edit${stagedCount === 1 ? "" : "s"}</button>`
    : "";
  return `<section class="layer-view" data-lang="${lang}">` +
    `<h3>${escapeHtml(lang)} ${badges}</h3>` +
    `<div class="raw-text">${escapeHtml(raw)}</div>` +
    renderChipRow(chips) + submit +
    `<h4>derivation</h4><div class="deriv-pane">${derivHtml}</div>` +
    `<h4>box <label class="toggle"><input type="checkbox" id="clausal-toggle"` +
    `${input.showClausal ? " checked" : ""}> clausal</label></h4>` +
    `<div class="drs-pane">${drsHtml}</div>` +
    `</section>`;
}

export { parseTokenTable };
