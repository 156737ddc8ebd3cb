/**
 * Ranked comparison table.  Rows stay in the server's order and every
 * number is taken verbatim from the match response; infeasible services
 * are shown flagged, never hidden.  When nothing is feasible, the failing
 * hard constraints are highlighted and one-click "make soft" toggles are
 * offered (the user resubmits; nothing is relaxed automatically).
 */

import type { MatchResponse, PropertySchema, RequestDocument } from "./types.js";

export interface ResultHandlers {
  onMakeSoft?: (propertyId: string) => void;
}

export function renderResults(
  container: HTMLElement,
  response: MatchResponse,
  schema: PropertySchema[],
  handlers: ResultHandlers = {},
): void {
  container.textContent = "";
  const names = new Map(schema.map((p) => [p.id, p.display_name]));
  const feasibleCount = response.ranking.filter((r) => r.hard_feasible).length;
  const hardFailing = failingHardProperties(response);

  const summary = document.createElement("p");
  summary.className = "result-summary";
  summary.textContent = `${feasibleCount} of ${response.ranking.length} services satisfy all hard constraints (${response.timing_ms} ms)`;
  container.append(summary);

  if (response.ranking.length > 0 && feasibleCount === 0) {
    const banner = document.createElement("div");
    banner.className = "overconstrained-banner";
    const text = document.createElement("p");
    text.textContent =
      "No service satisfies every hard constraint. Relax one of the failing constraints:";
    banner.append(text);
    for (const propertyId of hardFailing) {
      const button = document.createElement("button");
      button.className = "make-soft";
      button.dataset.property = propertyId;
      button.textContent = `make "${names.get(propertyId) ?? propertyId}" soft`;
      button.addEventListener("click", () => handlers.onMakeSoft?.(propertyId));
      banner.append(button);
    }
    container.append(banner);
  }

  const table = document.createElement("table");
  table.className = "ranking";
  const constrained = response.request_echo.constraints.map((c) => c.property);
  const head = document.createElement("tr");
  for (const title of ["#", "service", "score", "violation", ...constrained.map((p) => names.get(p) ?? p)]) {
    const th = document.createElement("th");
    th.textContent = title;
    head.append(th);
  }
  table.append(head);

  response.ranking.forEach((report, position) => {
    const row = document.createElement("tr");
    row.className = report.hard_feasible ? "feasible" : "infeasible";
    row.dataset.serviceId = String(report.service_id);
    const degreeByProperty = new Map(report.properties.map((p) => [p.property, p]));
    const cells: (string | HTMLElement)[] = [
      String(position + 1),
      report.name + (report.hard_feasible ? "" : " (infeasible)"),
      String(report.final_score),
      String(report.total_violation),
    ];
    for (const propertyId of constrained) {
      const result = degreeByProperty.get(propertyId);
      if (!result) {
        cells.push("");
        continue;
      }
      const badge = document.createElement("span");
      badge.className = `badge degree-${result.degree}`;
      badge.textContent = result.degree;
      if (result.degree === "FAIL" && hardFailing.has(propertyId)) {
        badge.classList.add("failing-hard");
      }
      if (result.solution_set) {
        badge.title = result.solution_set.join(", ") || "no overlap";
      }
      cells.push(badge);
    }
    for (const cell of cells) {
      const td = document.createElement("td");
      td.append(cell);
      row.append(td);
    }
    table.append(row);
  });
  container.append(table);
}

/** Hard-constrained properties that fail for at least one service. */
export function failingHardProperties(response: MatchResponse): Set<string> {
  const hard = new Set(
    response.request_echo.constraints.filter((c) => c.mode === "hard").map((c) => c.property),
  );
  const failing = new Set<string>();
  for (const report of response.ranking) {
    for (const result of report.properties) {
      if (result.degree === "FAIL" && hard.has(result.property)) {
        failing.add(result.property);
      }
    }
  }
  return failing;
}

export function renderIssues(container: HTMLElement, issues: { property?: string | null; path?: string; message: string }[]): void {
  container.textContent = "";
  if (issues.length === 0) {
    return;
  }
  const list = document.createElement("ul");
  list.className = "issues";
  for (const issue of issues) {
    const item = document.createElement("li");
    const where = issue.property ?? issue.path;
    item.textContent = where ? `${where}: ${issue.message}` : issue.message;
    list.append(item);
  }
  container.append(list);
}
