import { describe, expect, it } from "vitest";

import { SubmissionHistory } from "../src/history.js";
import type { MatchResponse, RequestDocument } from "../src/types.js";

function entry(feasible: boolean): [RequestDocument, MatchResponse] {
  const request: RequestDocument = {
    constraints: [{ property: "p", operator: "eq", value: 1, mode: "hard" }],
    objective: "boolean",
  };
  const response: MatchResponse = {
    request_echo: request,
    ranking: [
      {
        service_id: 0,
        name: "svc",
        hard_feasible: feasible,
        total_points: 0,
        total_violation: 0,
        final_score: 0,
        properties: [],
      },
    ],
    timing_ms: 1,
  };
  return [request, response];
}

describe("SubmissionHistory", () => {
  it("keeps the last ten submissions, newest first", () => {
    const history = new SubmissionHistory();
    for (let i = 0; i < 12; i++) {
      history.push(...entry(i % 2 === 0));
    }
    expect(history.entries).toHaveLength(10);
    // submission 11 (odd index, infeasible) is newest
    expect(history.entries[0]!.feasibleCount).toBe(0);
    expect(history.entries[1]!.feasibleCount).toBe(1);
  });

  it("records the feasible count from the response", () => {
    const history = new SubmissionHistory();
    history.push(...entry(true));
    expect(history.entries[0]!.feasibleCount).toBe(1);
  });
});
