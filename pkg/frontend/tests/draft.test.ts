import { describe, expect, it } from "vitest";

import {
  emptyDraft,
  makeSoft,
  operatorFor,
  serializeDraft,
  validateDraft,
} from "../src/draft.js";
import { fixtureSchema } from "./fixtures.js";

const schema = fixtureSchema();

function prop(id: string) {
  const found = schema.find((p) => p.id === id);
  if (!found) throw new Error(`no property ${id}`);
  return found;
}

describe("operatorFor", () => {
  it("derives the operator from kind and tendency", () => {
    const draft = emptyDraft(schema);
    const c = draft.constraints.get("version")!;
    expect(operatorFor(prop("version"), c)).toBe("eq");
    expect(operatorFor(prop("response_time"), c)).toBe("lte");
    expect(operatorFor(prop("free_storage"), c)).toBe("gte");
    expect(operatorFor(prop("pricing"), c)).toBe("eq");
  });

  it("follows the direction on requester-defined properties", () => {
    const draft = emptyDraft(schema);
    const c = draft.constraints.get("established")!;
    c.direction = "high";
    expect(operatorFor(prop("established"), c)).toBe("gte");
    c.direction = "low";
    expect(operatorFor(prop("established"), c)).toBe("lte");
  });
});

describe("validateDraft", () => {
  it("requires at least one enabled constraint", () => {
    const draft = emptyDraft(schema);
    const issues = validateDraft(schema, draft);
    expect(issues).toHaveLength(1);
    expect(issues[0]!.message).toMatch(/at least one/);
  });

  it("requires a numeric value on scalar constraints", () => {
    const draft = emptyDraft(schema);
    const c = draft.constraints.get("version")!;
    c.enabled = true;
    c.scalarValue = "not a number";
    expect(validateDraft(schema, draft).some((i) => i.property === "version")).toBe(true);
    c.scalarValue = "5.6";
    expect(validateDraft(schema, draft)).toHaveLength(0);
  });

  it("requires features on an enabled feature list", () => {
    const draft = emptyDraft(schema);
    const c = draft.constraints.get("compatible_browsers")!;
    c.enabled = true;
    expect(validateDraft(schema, draft).some((i) => i.property === "compatible_browsers")).toBe(
      true,
    );
    c.features.add("explorer");
    expect(validateDraft(schema, draft)).toHaveLength(0);
  });

  it("rejects soft feature lists", () => {
    const draft = emptyDraft(schema);
    const c = draft.constraints.get("compatible_browsers")!;
    c.enabled = true;
    c.features.add("explorer");
    c.mode = "soft";
    expect(
      validateDraft(schema, draft).some((i) => i.message.includes("hard constraints")),
    ).toBe(true);
  });

  it("bounds the weight to 1..10", () => {
    const draft = emptyDraft(schema);
    const c = draft.constraints.get("version")!;
    c.enabled = true;
    c.scalarValue = "5.6";
    c.mode = "soft";
    c.weight = 11;
    expect(validateDraft(schema, draft).some((i) => i.message.includes("weight"))).toBe(true);
    c.weight = 10;
    expect(validateDraft(schema, draft)).toHaveLength(0);
  });

  it("limits difference-objective softs to discrete properties", () => {
    const draft = emptyDraft(schema);
    draft.objective = "difference";
    const c = draft.constraints.get("response_time")!;
    c.enabled = true;
    c.scalarValue = "300";
    c.mode = "soft";
    expect(validateDraft(schema, draft).some((i) => i.message.includes("difference"))).toBe(true);
    const v = draft.constraints.get("version")!;
    c.mode = "hard";
    v.enabled = true;
    v.scalarValue = "5.6";
    v.mode = "soft";
    expect(validateDraft(schema, draft)).toHaveLength(0);
  });
});

describe("serializeDraft", () => {
  it("produces the document shape the server expects", () => {
    const draft = emptyDraft(schema);
    const version = draft.constraints.get("version")!;
    version.enabled = true;
    version.scalarValue = "5.6";
    version.mode = "soft";
    version.weight = 3;
    const year = draft.constraints.get("established")!;
    year.enabled = true;
    year.scalarValue = "2009";
    year.direction = "high";
    const pricing = draft.constraints.get("pricing")!;
    pricing.enabled = true;
    pricing.enumLabel = "per hour";
    const browsers = draft.constraints.get("compatible_browsers")!;
    browsers.enabled = true;
    browsers.features = new Set(["safari", "explorer"]);

    const doc = serializeDraft(schema, draft);
    expect(doc.objective).toBe("boolean");
    expect(doc.constraints).toEqual([
      { property: "version", operator: "eq", value: 5.6, mode: "soft", weight: 3 },
      { property: "established", operator: "gte", value: 2009, mode: "hard", direction: "high" },
      { property: "pricing", operator: "eq", value: 2, mode: "hard" },
      {
        property: "compatible_browsers",
        operator: "eq",
        value: ["explorer", "safari"],
        mode: "hard",
      },
    ]);
  });

  it("never emits weight on hard constraints", () => {
    const draft = emptyDraft(schema);
    const version = draft.constraints.get("version")!;
    version.enabled = true;
    version.scalarValue = "5.5";
    version.weight = 7;
    const doc = serializeDraft(schema, draft);
    expect(doc.constraints[0]).not.toHaveProperty("weight");
  });
});

describe("makeSoft", () => {
  it("flips a hard constraint to soft in place", () => {
    const draft = emptyDraft(schema);
    const version = draft.constraints.get("version")!;
    version.enabled = true;
    version.scalarValue = "5.6";
    makeSoft(draft, "version");
    expect(version.mode).toBe("soft");
  });
});
