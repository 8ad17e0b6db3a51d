/** Application wiring: hash routing, data fetching, event handling.
 * All rendering goes through the pure view modules; this file only touches
 * the DOM and the service. */

import { ApiClient, ApiError, DocumentInfo, LayerPayload } from "./api.js";
import { renderConflicts } from "./conflicts.js";
import { escapeHtml } from "./drsbox.js";
import { parseTokenTable, renderLayerView } from "./layerview.js";
import { buildProjectionView } from "./projection.js";
import { Staging, StagedEdit } from "./staging.js";

const api = new ApiClient("");
const staging = new Staging(window.localStorage);
const root = () => document.getElementById("app")!;

let annotator = window.localStorage.getItem("meaningbank.annotator") || "";
let showClausal = false;
const etags = new Map<string, string>();

function annotatorName(): string {
  if (!annotator) {
    annotator = window.prompt("annotator name?") || "anonymous";
    window.localStorage.setItem("meaningbank.annotator", annotator);
  }
  return annotator;
}

async function layerOrNull(part: string, doc: number, lang: string,
                           layer: string): Promise<LayerPayload | null> {
  try {
    const payload = await api.layer(part, doc, lang, layer);
    etags.set(`${part}/${doc}/${lang}/${layer}`, payload.etag);
    return payload;
  } catch (e) {
    if (e instanceof ApiError && e.status === 404) return null;
    throw e;
  }
}

async function showDocuments(): Promise<void> {
  const docs = await api.listDocuments();
  const rows = docs.map((d) =>
    `<tr><td><a href="#/doc/${d.part}/${d.doc}/en">${d.part}/${d.doc}</a></td>` +
    `<td>${d.languages.join(", ")}</td>` +
    `<td>${d.gold_designated ? "gold section" : ""}</td></tr>`).join("");
  root().innerHTML = `<h2>documents</h2>` +
    `<table class="doc-list"><tr><th>document</th><th>languages</th>` +
    `<th></th></tr>${rows}</table>`;
}

async function showDocument(part: string, doc: number, lang: string): Promise<void> {
  const info: DocumentInfo = await api.document(part, doc);
  const tokensText = await api.layerText(part, doc, lang, "tokens");
  const tokens = tokensText ? parseTokenTable(tokensText) : [];
  const [semtag, sym, cat, drs] = await Promise.all([
    layerOrNull(part, doc, lang, "semtag"),
    layerOrNull(part, doc, lang, "sym"),
    layerOrNull(part, doc, lang, "cat"),
    layerOrNull(part, doc, lang, "drs"),
  ]);
  const derivText = await api.layerText(part, doc, lang, "deriv");
  const staged = staging.forLayer(part, doc, lang);

  const otherLangs = info.languages.filter((l) => l !== lang).map((l) =>
    `<a href="#/doc/${part}/${doc}/${l}">${l}</a>`).join(" ");
  const projections = Object.keys(info.projections).map((l) =>
    `<a href="#/projection/${part}/${doc}/${l}">projection → ${l}</a>`)
    .join(" ");
  root().innerHTML =
    `<nav><a href="#/docs">← documents</a> ${otherLangs} ${projections} ` +
    `<a href="#/conflicts">conflicts</a></nav>` +
    renderLayerView({ info, lang, tokens, semtag, sym, cat, drs, derivText,
                      staged, showClausal });
  wireLayerView(part, doc, lang);
}

function wireLayerView(part: string, doc: number, lang: string): void {
  for (const input of root().querySelectorAll<HTMLInputElement>(".chip-field")) {
    const original = input.value;
    input.addEventListener("change", () => {
      const layer = input.dataset.layer!;
      const position = Number(input.dataset.position);
      if (input.value !== original) {
        staging.stage({ part, doc, lang, layer, position, value: input.value });
        input.classList.add("chip-staged");
        refreshSubmitButton(part, doc, lang);
      }
    });
  }
  const toggle = root().querySelector<HTMLInputElement>("#clausal-toggle");
  toggle?.addEventListener("change", () => {
    showClausal = toggle.checked;
    void showDocument(part, doc, lang);
  });
  refreshSubmitButton(part, doc, lang);
}

function refreshSubmitButton(part: string, doc: number, lang: string): void {
  let button = root().querySelector<HTMLButtonElement>("#submit-staged");
  const staged = staging.forLayer(part, doc, lang);
  if (!button && staged.length > 0) {
    button = document.createElement("button");
    button.id = "submit-staged";
    root().querySelector(".chip-row")?.after(button);
  }
  if (!button) return;
  if (staged.length === 0) {
    button.remove();
    return;
  }
  button.textContent =
    `submit ${staged.length} staged edit${staged.length === 1 ? "" : "s"}`;
  button.onclick = () => void submitStaged(part, doc, lang);
}

async function submitStaged(part: string, doc: number, lang: string): Promise<void> {
  const name = annotatorName();
  for (const edit of staging.forLayer(part, doc, lang)) {
    try {
      const etag = etags.get(`${part}/${doc}/${lang}/${edit.layer}`);
      await api.postBow({ part, doc, lang, layer: edit.layer,
                          position: edit.position, value: edit.value,
                          annotator: name }, etag);
      staging.unstage(edit as StagedEdit);
    } catch (e) {
      if (e instanceof ApiError && e.status === 412) {
        const retry = window.confirm(
          "the layer changed since you read it; refetch and retry?");
        if (retry) {
          const fresh = await api.layer(part, doc, lang, edit.layer);
          etags.set(`${part}/${doc}/${lang}/${edit.layer}`, fresh.etag);
          await api.postBow({ part, doc, lang, layer: edit.layer,
                              position: edit.position, value: edit.value,
                              annotator: name }, fresh.etag);
          staging.unstage(edit as StagedEdit);
        }
        continue;
      }
      if (e instanceof ApiError && e.status === 422) {
        markChipError(edit.position, e.message);
        continue;
      }
      throw e;
    }
  }
  await showDocument(part, doc, lang);
}

function markChipError(position: number, message: string): void {
  const chip = root().querySelector(`.chip[data-token="${position}"]`);
  if (!chip) return;
  const div = document.createElement("div");
  div.className = "chip-error";
  div.textContent = message;
  chip.appendChild(div);
}

async function showProjection(part: string, doc: number, lang: string): Promise<void> {
  const info = await api.document(part, doc);
  const record = info.projections[lang];
  if (!record) {
    root().innerHTML = `<div class="banner banner-failed">no projection ` +
      `recorded for ${escapeHtml(lang)}</div>`;
    return;
  }
  const src = record.source_lang;
  const sourceTokens = parseTokenTable(
    (await api.layerText(part, doc, src, "tokens")) ?? "");
  const targetTokens = parseTokenTable(
    (await api.layerText(part, doc, lang, "tokens")) ?? "");
  const sourceCat = await layerOrNull(part, doc, src, "cat");
  const targetCat = await layerOrNull(part, doc, lang, "cat");
  const sourceDrs = await layerOrNull(part, doc, src, "drs");
  const targetDrs = await layerOrNull(part, doc, lang, "drs");
  const view = buildProjectionView({
    record,
    sourceTokens: sourceTokens.map((t) => t.surface),
    targetTokens: targetTokens.map((t) => t.surface),
    sourceCategories: sourceCat?.values ?? [],
    targetCategories: targetCat?.values ?? [],
    sourceDrs: sourceDrs?.text ?? null,
    targetDrs: targetDrs?.text ?? null,
  });
  root().innerHTML =
    `<nav><a href="#/doc/${part}/${doc}/${src}">← ${src}</a> ` +
    `<a href="#/doc/${part}/${doc}/${lang}">${lang}</a></nav>` + view.html;
}

async function showConflicts(): Promise<void> {
  const conflicts = await api.conflicts("open");
  root().innerHTML = `<h2>open conflicts</h2>` + renderConflicts(conflicts);
  for (const row of root().querySelectorAll<HTMLTableRowElement>("tr[data-conflict]")) {
    for (const button of row.querySelectorAll<HTMLButtonElement>("button.keep")) {
      button.addEventListener("click", () => {
        void api.resolveConflict(row.dataset.conflict!, button.dataset.kept,
                                 annotatorName())
          .then(() => showConflicts());
      });
    }
  }
}

async function route(): Promise<void> {
  const hash = window.location.hash || "#/docs";
  const parts = hash.slice(2).split("/");
  try {
    if (parts[0] === "doc" && parts.length >= 4) {
      await showDocument(parts[1]!, Number(parts[2]), parts[3]!);
    } else if (parts[0] === "projection" && parts.length >= 4) {
      await showProjection(parts[1]!, Number(parts[2]), parts[3]!);
    } else if (parts[0] === "conflicts") {
      await showConflicts();
    } else {
      await showDocuments();
    }
  } catch (e) {
    const message = e instanceof Error ? e.message : String(e);
    root().innerHTML = `<div class="banner banner-failed">` +
      `${escapeHtml(message)}</div>`;
  }
}

window.addEventListener("hashchange", () => void route());
window.addEventListener("DOMContentLoaded", () => void route());
