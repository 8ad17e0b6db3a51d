/** Against a live service instance seeded with the worked example
 * documents: submitting a correction flips the rendered badge from Bronze
 * to Silver and adds one journal record; the projection view draws the
 * five alignment arcs with the Verified verdict. */

import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { spawn, spawnSync, ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join, resolve } from "node:path";

import { ApiClient } from "../src/api.js";
import { parseTokenTable } from "../src/chips.js";
import { statusBadge } from "../src/chips.js";
import { buildProjectionView } from "../src/projection.js";

const PKG_ROOT = resolve(__dirname, "../..");
const PORT = 8917;
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess | null = null;
let bankDir: string;

async function waitForServer(): Promise<void> {
  for (let i = 0; i < 100; i += 1) {
    try {
      const res = await fetch(`${BASE}/documents`);
      if (res.ok) return;
    } catch {
      /* not up yet */
    }
    await new Promise((r) => setTimeout(r, 150));
  }
  throw new Error("service did not come up");
}

beforeAll(async () => {
  bankDir = mkdtempSync(join(tmpdir(), "meaningbank-ui-"));
  const seeded = spawnSync("python3", [join(PKG_ROOT, "demos", "seed_bank.py"),
                                       bankDir],
                           { cwd: PKG_ROOT, encoding: "utf-8" });
  if (seeded.status !== 0) {
    throw new Error(`seeding failed: ${seeded.stderr}`);
  }
  server = spawn("python3", ["-m", "meaningbank.cli", "--bank", bankDir,
                             "serve", "--port", String(PORT)],
                 { cwd: PKG_ROOT, stdio: "ignore" });
  await waitForServer();
});

afterAll(() => {
  server?.kill();
  rmSync(bankDir, { recursive: true, force: true });
});

describe("live workbench flows", () => {
  const api = new ApiClient(BASE);

  it("flips the badge Bronze to Silver on a submitted correction and the "
     + "journal gains one record", async () => {
    const before = await api.layer("00", 3178, "en", "semtag");
    expect(before.status).toBe("Bronze");
    expect(before.bows).toBe(0);
    expect(statusBadge(before.status)).toContain("badge-bronze");

    const outcome = await api.postBow({
      part: "00", doc: 3178, lang: "en", layer: "semtag",
      position: 2, value: "CON", annotator: "ui-test",
    }, before.etag);
    expect(outcome.status).toBe("Silver");

    const after = await api.layer("00", 3178, "en", "semtag");
    expect(after.status).toBe("Silver");
    expect(after.bows).toBe(before.bows + 1);
    expect(after.values?.[2]).toBe("CON");
    expect(statusBadge(after.status)).toContain("badge-silver");
  });

  it("renders the projection view with five arcs and the Verified verdict",
     async () => {
    const info = await api.document("00", 3178);
    const record = info.projections["de"];
    expect(record).toBeDefined();

    const sourceTokens = parseTokenTable(
      (await api.layerText("00", 3178, "en", "tokens")) ?? "");
    const targetTokens = parseTokenTable(
      (await api.layerText("00", 3178, "de", "tokens")) ?? "");
    const srcCat = await api.layer("00", 3178, "en", "cat");
    const tgtCat = await api.layer("00", 3178, "de", "cat");
    const srcDrs = await api.layer("00", 3178, "en", "drs");
    const tgtDrs = await api.layer("00", 3178, "de", "drs");

    const view = buildProjectionView({
      record: record!,
      sourceTokens: sourceTokens.map((t) => t.surface),
      targetTokens: targetTokens.map((t) => t.surface),
      sourceCategories: srcCat.values ?? [],
      targetCategories: tgtCat.values ?? [],
      sourceDrs: srcDrs.text ?? null,
      targetDrs: tgtDrs.text ?? null,
    });
    expect(view.arcCount).toBe(5);
    expect(view.verdict).toBe("Verified");
    expect(view.html).toContain("verdict-verified");
    expect(targetTokens.map((t) => t.surface)).toEqual(
      ["Er", "kam", "um", "fünf~Uhr", "zurück"]);
  });

  it("keeps the service authoritative: stale submissions are rejected",
     async () => {
    const layer = await api.layer("00", 3178, "en", "semtag");
    await api.postBow({ part: "00", doc: 3178, lang: "en", layer: "semtag",
                        position: 0, value: "NAM", annotator: "ui-test" },
                      layer.etag);
    await expect(api.postBow(
      { part: "00", doc: 3178, lang: "en", layer: "semtag",
        position: 1, value: "EPS", annotator: "ui-test" },
      layer.etag,
    )).rejects.toMatchObject({ status: 412 });
  });
});
