import { describe, expect, it } from "vitest";
import { parseClausal, renderBox, renderDrsLayer } from "../src/drsbox.js";

const CLAUSAL = `b1 REF x1
b1 REF x2
b1 REF e1
b1 male x1
b1 come e1
b1 Role Theme e1 x1
b1 LT t2 t1
b1 Value x2 "17:00"
b1 at e1 x2
`;

describe("parseClausal", () => {
  it("collects referents and conditions of the top box", () => {
    const boxes = parseClausal(CLAUSAL);
    expect(boxes).toHaveLength(1);
    const box = boxes[0]!;
    expect(box.refs).toEqual(["x1", "x2", "e1"]);
    expect(box.conds.map((c) => c.text)).toEqual([
      "male(x1)", "come(e1)", "Theme(e1,x1)", "t2 < t1",
      "value(x2, 17:00)", "at(e1,x2)",
    ]);
  });

  it("nests negated boxes and hides them from the top level", () => {
    const text = "b1 REF x1\nb1 male x1\nb1 NOT b2\nb2 REF e1\nb2 come e1\n";
    const boxes = parseClausal(text);
    expect(boxes).toHaveLength(1);
    const neg = boxes[0]!.conds.find((c) => c.child);
    expect(neg).toBeDefined();
    expect(neg!.child!.refs).toEqual(["e1"]);
    expect(neg!.child!.conds[0]!.text).toBe("come(e1)");
  });

  it("handles several sentences as several top boxes", () => {
    const text = "b1 REF x1\nb1 male x1\n\nb1 REF e1\nb1 come e1\n";
    // Same ids across chunks collapse; the exporter numbers each sentence
    // from b1, so the UI splits on blank lines before parsing.
    const chunks = text.split("\n\n").map((c) => parseClausal(c));
    expect(chunks).toHaveLength(2);
  });
});

describe("renderBox", () => {
  it("renders the two-compartment layout", () => {
    const html = renderBox(parseClausal(CLAUSAL)[0]!);
    expect(html).toContain("drs-refs");
    expect(html).toContain("drs-conds");
    expect(html.indexOf("drs-refs")).toBeLessThan(html.indexOf("drs-conds"));
    expect(html).toContain("Theme(e1,x1)");
  });

  it("escapes markup in symbols", () => {
    const html = renderBox(parseClausal("b1 REF x1\nb1 a<b x1\n")[0]!);
    expect(html).toContain("a&lt;b(x1)");
  });
});

describe("renderDrsLayer", () => {
  it("offers the clausal toggle", () => {
    expect(renderDrsLayer(CLAUSAL, true)).toContain("drs-clausal");
    expect(renderDrsLayer(CLAUSAL, false)).toContain("drs-box");
  });
});
