/** Parse derivation s-expressions and render them as nested category bars. */

import { escapeHtml } from "./drsbox.js";

export interface DerivModel {
  rule: string;
  category: string;
  surface?: string;
  semtag?: string;
  symbol?: string;
  children: DerivModel[];
}

type SexprNode = string | SexprNode[];

function tokenize(text: string): string[] {
  const out: string[] = [];
  let i = 0;
  while (i < text.length) {
    const c = text[i]!;
    if (/\s/.test(c)) {
      i += 1;
    } else if (c === "(" || c === ")") {
      out.push(c);
      i += 1;
    } else if (c === '"') {
      let j = i + 1;
      let buf = "";
      while (j < text.length && text[j] !== '"') {
        if (text[j] === "\\" && text[j + 1] === '"') j += 1;
        buf += text[j];
        j += 1;
      }
      if (j >= text.length) throw new Error("unterminated string in derivation");
      out.push(buf);
      i = j + 1;
    } else {
      let j = i;
      while (j < text.length && !/[\s()]/.test(text[j]!)) j += 1;
      out.push(text.slice(i, j));
      i = j;
    }
  }
  return out;
}

function read(tokens: string[], pos: { i: number }): SexprNode {
  if (tokens[pos.i] !== "(") throw new Error("expected ( in derivation");
  pos.i += 1;
  const out: SexprNode[] = [];
  while (pos.i < tokens.length && tokens[pos.i] !== ")") {
    if (tokens[pos.i] === "(") {
      out.push(read(tokens, pos));
    } else {
      out.push(tokens[pos.i]!);
      pos.i += 1;
    }
  }
  if (pos.i >= tokens.length) throw new Error("unbalanced derivation expression");
  pos.i += 1;
  return out;
}

function build(node: SexprNode): DerivModel {
  if (!Array.isArray(node)) throw new Error("malformed derivation");
  const [rule, category, ...rest] = node as [string, string, ...SexprNode[]];
  if (rule === "lex") {
    const [surface, semtag, symbol] = rest as [string, string, string];
    return { rule, category, surface, semtag, symbol, children: [] };
  }
  if (rule === "empty") {
    const [semtag] = rest as [string];
    return { rule, category, surface: "∅", semtag, children: [] };
  }
  return { rule, category, children: rest.map(build) };
}

export function parseDerivation(text: string): DerivModel {
  const tokens = tokenize(text);
  const pos = { i: 0 };
  return build(read(tokens, pos));
}

export function parseDerivations(text: string): DerivModel[] {
  return text.split("\n").map((l) => l.trim()).filter(Boolean)
    .map(parseDerivation);
}

const RULE_SIGNS: Record<string, string> = {
  fa: ">", ba: "<", fc: ">B", bc: "<B", bcx: "<Bx",
};

export function renderDerivation(model: DerivModel): string {
  if (model.children.length === 0) {
    const sym = model.symbol && model.symbol !== "-" ? model.symbol : "";
    const emptyClass = model.rule === "empty" ? " deriv-empty" : "";
    return `<div class="deriv-leaf${emptyClass}">` +
      `<div class="deriv-word">${escapeHtml(model.surface ?? "")}</div>` +
      `<div class="deriv-tags">${escapeHtml(model.semtag ?? "")}` +
      (sym ? ` · ${escapeHtml(sym)}` : "") + `</div>` +
      `<div class="deriv-cat">${escapeHtml(model.category)}</div></div>`;
  }
  const kids = model.children.map(renderDerivation).join("");
  const sign = RULE_SIGNS[model.rule] ?? model.rule;
  return `<div class="deriv-node">` +
    `<div class="deriv-children">${kids}</div>` +
    `<div class="deriv-bar"><span class="deriv-rule">${escapeHtml(sign)}</span>` +
    `<span class="deriv-cat">${escapeHtml(model.category)}</span></div></div>`;
}

export function leafCount(model: DerivModel): number {
  if (model.children.length === 0) return 1;
  return model.children.map(leafCount).reduce((a, b) => a + b, 0);
}
