/** Session-local history of the last submissions, newest first. */

import type { MatchResponse, RequestDocument } from "./types.js";

export interface HistoryEntry {
  request: RequestDocument;
  feasibleCount: number;
  submittedAt: number;
}

const LIMIT = 10;

export class SubmissionHistory {
  entries: HistoryEntry[] = [];

  push(request: RequestDocument, response: MatchResponse): void {
    this.entries.unshift({
      request,
      feasibleCount: response.ranking.filter((r) => r.hard_feasible).length,
      submittedAt: Date.now(),
    });
    if (this.entries.length > LIMIT) {
      this.entries.length = LIMIT;
    }
  }
}
