import { describe, expect, it } from "vitest";
import { buildProjectionView } from "../src/projection.js";
import type { ProjectionRecord } from "../src/api.js";

const RECORD: ProjectionRecord = {
  source_lang: "en",
  target_lang: "de",
  sentences: [{
    status: "Verified",
    reason: "",
    alignment: [[0, 0], [1, 1], [2, 4], [3, 2], [4, 3]],
    notes: [],
  }],
};

const SRC_TOKENS = ["He", "came", "back", "at", "5~o'clock"];
const TGT_TOKENS = ["Er", "kam", "um", "fünf~Uhr", "zurück"];
const SRC_CATS = ["NP", "S\\NP", "(S\\NP)\\(S\\NP)", "((S\\NP)\\(S\\NP))/NP", "N"];
const TGT_CATS = ["NP", "S\\NP", "((S\\NP)\\(S\\NP))/NP", "N", "(S\\NP)\\(S\\NP)"];
const DRS = "b1 REF x1\nb1 male x1\n";

describe("projection view", () => {
  it("shows the verified verdict with five arcs", () => {
    const view = buildProjectionView({
      record: RECORD, sourceTokens: SRC_TOKENS, targetTokens: TGT_TOKENS,
      sourceCategories: SRC_CATS, targetCategories: TGT_CATS,
      sourceDrs: DRS, targetDrs: DRS,
    });
    expect(view.verdict).toBe("Verified");
    expect(view.arcCount).toBe(5);
    expect(view.html).toContain("verdict-verified");
    expect(view.html).toContain("drs-pair");
    expect(view.flippedTargets).toEqual([]);
  });

  it("highlights flipped slashes", () => {
    const flipped = [...TGT_CATS];
    flipped[1] = "S/NP";
    const view = buildProjectionView({
      record: RECORD, sourceTokens: SRC_TOKENS, targetTokens: TGT_TOKENS,
      sourceCategories: SRC_CATS, targetCategories: flipped,
      sourceDrs: DRS, targetDrs: DRS,
    });
    expect(view.flippedTargets).toEqual([1]);
    expect(view.html).toContain("flipped-slash");
  });

  it("marks identity helpers of a split", () => {
    const record: ProjectionRecord = {
      ...RECORD,
      sentences: [{ status: "Verified", reason: "",
                    alignment: [[0, 0], [1, 1], [1, 2]], notes: [] }],
    };
    const view = buildProjectionView({
      record, sourceTokens: ["a", "b"], targetTokens: ["x", "y", "z"],
      sourceCategories: ["NP", "N"], targetCategories: ["NP", "N", "N/N"],
      sourceDrs: DRS, targetDrs: DRS,
    });
    expect(view.splitTargets.sort()).toEqual([1, 2]);
  });

  it("surfaces failure reasons without a box diff crash", () => {
    const record: ProjectionRecord = {
      ...RECORD,
      sentences: [{ status: "Failed", reason: "no target derivation",
                    alignment: [], notes: [] }],
    };
    const view = buildProjectionView({
      record, sourceTokens: SRC_TOKENS, targetTokens: TGT_TOKENS,
      sourceCategories: SRC_CATS, targetCategories: [],
      sourceDrs: DRS, targetDrs: null,
    });
    expect(view.verdict).toBe("Failed");
    expect(view.html).toContain("banner-failed");
    expect(view.html).toContain("no target derivation");
    expect(view.html).not.toContain("drs-pair");
  });
});
