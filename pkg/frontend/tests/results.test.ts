import { describe, expect, it, vi } from "vitest";

import { failingHardProperties, renderResults } from "../src/results.js";
import { fixtureSchema } from "./fixtures.js";
import type { MatchResponse } from "../src/types.js";

const schema = fixtureSchema();

const OVERCONSTRAINED: MatchResponse = {
  request_echo: {
    constraints: [
      { property: "version", operator: "eq", value: 5.6, mode: "hard" },
      { property: "pricing", operator: "eq", value: 2, mode: "hard" },
    ],
    objective: "boolean",
  },
  ranking: [
    {
      service_id: 1,
      name: "svc-b",
      hard_feasible: false,
      total_points: 2,
      total_violation: 0,
      final_score: 2,
      properties: [
        { property: "version", degree: "EXACT", points: 2, violation: 0 },
        { property: "pricing", degree: "FAIL", points: 0, violation: 0 },
      ],
    },
    {
      service_id: 0,
      name: "svc-a",
      hard_feasible: false,
      total_points: 0,
      total_violation: 0,
      final_score: 0,
      properties: [
        { property: "version", degree: "FAIL", points: 0, violation: 0 },
        { property: "pricing", degree: "FAIL", points: 0, violation: 0 },
      ],
    },
  ],
  timing_ms: 2,
};

describe("renderResults", () => {
  it("keeps the server's row order and flags infeasible services", () => {
    const container = document.createElement("div");
    renderResults(container, OVERCONSTRAINED, schema);
    const rows = [...container.querySelectorAll<HTMLElement>("tr[data-service-id]")];
    expect(rows.map((r) => r.dataset.serviceId)).toEqual(["1", "0"]);
    expect(rows.every((r) => r.classList.contains("infeasible"))).toBe(true);
  });

  it("shows numbers verbatim from the response", () => {
    const container = document.createElement("div");
    renderResults(container, OVERCONSTRAINED, schema);
    const first = container.querySelector('tr[data-service-id="1"]')!;
    const cells = [...first.querySelectorAll("td")].map((td) => td.textContent);
    expect(cells.slice(0, 4)).toEqual(["1", "svc-b (infeasible)", "2", "0"]);
  });

  it("renders FAIL badges and offers make-soft toggles when nothing fits", () => {
    const container = document.createElement("div");
    const onMakeSoft = vi.fn();
    renderResults(container, OVERCONSTRAINED, schema, { onMakeSoft });
    expect(container.querySelectorAll(".badge.degree-FAIL").length).toBe(3);
    const buttons = [...container.querySelectorAll<HTMLElement>("button.make-soft")];
    expect(buttons.map((b) => b.dataset.property).sort()).toEqual(["pricing", "version"]);
    buttons[0]!.click();
    expect(onMakeSoft).toHaveBeenCalledWith(buttons[0]!.dataset.property);
  });

  it("shows no relaxation banner when something is feasible", () => {
    const container = document.createElement("div");
    const response: MatchResponse = {
      ...OVERCONSTRAINED,
      ranking: [
        {
          ...OVERCONSTRAINED.ranking[0]!,
          hard_feasible: true,
        },
      ],
    };
    renderResults(container, response, schema);
    expect(container.querySelector(".overconstrained-banner")).toBeNull();
  });
});

describe("failingHardProperties", () => {
  it("collects only hard-constrained failing properties", () => {
    const soft: MatchResponse = {
      ...OVERCONSTRAINED,
      request_echo: {
        constraints: [
          { property: "version", operator: "eq", value: 5.6, mode: "soft", weight: 1 },
          { property: "pricing", operator: "eq", value: 2, mode: "hard" },
        ],
        objective: "boolean",
      },
    };
    expect([...failingHardProperties(soft)]).toEqual(["pricing"]);
  });
});
