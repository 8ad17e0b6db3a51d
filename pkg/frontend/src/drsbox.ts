/** Parse the clausal box format and render classic two-compartment boxes:
 * a referent row over a column of conditions, nested for negation. */

export interface BoxCondition {
  text: string;
  child?: BoxModel; // set for negation conditions
}

export interface BoxModel {
  id: string;
  refs: string[];
  conds: BoxCondition[];
}

export function parseClausal(text: string): BoxModel[] {
  const boxes = new Map<string, BoxModel>();
  const negated = new Set<string>();
  const order: string[] = [];

  const box = (id: string): BoxModel => {
    let found = boxes.get(id);
    if (!found) {
      found = { id, refs: [], conds: [] };
      boxes.set(id, found);
      order.push(id);
    }
    return found;
  };

  for (const rawLine of text.split("\n")) {
    const line = rawLine.trim();
    if (!line) continue;
    const fields = tokenizeClause(line);
    const id = fields[0];
    if (!id || fields.length < 2) continue;
    const b = box(id);
    const head = fields[1]!;
    const rest = fields.slice(2);
    if (head === "REF" && rest[0]) {
      b.refs.push(rest[0]);
    } else if (head === "NOT" && rest[0]) {
      negated.add(rest[0]);
      b.conds.push({ text: "¬", child: box(rest[0]) });
    } else if (head === "Role" && rest.length >= 3) {
      b.conds.push({ text: `${rest[0]}(${rest[1]},${rest[2]})` });
    } else if (head === "LT" && rest.length >= 2) {
      b.conds.push({ text: `${rest[0]} < ${rest[1]}` });
    } else if (head === "EQ" && rest.length >= 2) {
      b.conds.push({ text: `${rest[0]} = ${rest[1]}` });
    } else if (head === "Value" && rest.length >= 2) {
      b.conds.push({ text: `value(${rest[0]}, ${rest[1]})` });
    } else {
      b.conds.push({ text: `${head}(${rest.join(",")})` });
    }
  }
  return order.filter((id) => !negated.has(id)).map((id) => boxes.get(id)!);
}

function tokenizeClause(line: string): string[] {
  const out: string[] = [];
  const re = /"([^"]*)"|(\S+)/g;
  let m: RegExpExecArray | null;
  while ((m = re.exec(line)) !== null) {
    out.push(m[1] !== undefined ? m[1] : m[2]!);
  }
  return out;
}

export function escapeHtml(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;")
    .replace(/>/g, "&gt;").replace(/"/g, "&quot;");
}

export function renderBox(box: BoxModel): string {
  const refs = box.refs.map((r) => escapeHtml(r)).join("&nbsp;&nbsp;");
  const conds = box.conds.map((c) => {
    if (c.child) {
      return `<div class="drs-cond drs-neg">¬${renderBox(c.child)}</div>`;
    }
    return `<div class="drs-cond">${escapeHtml(c.text)}</div>`;
  }).join("");
  return `<div class="drs-box"><div class="drs-refs">${refs || "&nbsp;"}</div>` +
    `<div class="drs-conds">${conds}</div></div>`;
}

/** Render every top-level box in the layer, with a clausal-text toggle. */
export function renderDrsLayer(clausalText: string, showClausal = false): string {
  if (showClausal) {
    return `<pre class="drs-clausal">${escapeHtml(clausalText)}</pre>`;
  }
  return parseClausal(clausalText).map(renderBox).join("");
}
