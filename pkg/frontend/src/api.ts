/**
 * Typed client for the gateway API.  At most one match request is in
 * flight; submitting again aborts the previous one.
 */

import type {
  MatchResponse,
  PropertySchema,
  RequestDocument,
  ServiceSummary,
  ValidationIssue,
} from "./types.js";

export class ValidationFailure extends Error {
  issues: ValidationIssue[];

  constructor(issues: ValidationIssue[]) {
    super(issues.map((i) => (i.path ? `${i.path}: ${i.message}` : i.message)).join("\n"));
    this.name = "ValidationFailure";
    this.issues = issues;
  }
}

export class ApiClient {
  private baseUrl: string;
  private inflight: AbortController | null = null;

  constructor(baseUrl: string) {
    this.baseUrl = baseUrl.replace(/\/$/, "");
  }

  async fetchSchema(): Promise<PropertySchema[]> {
    return this.getJson("/api/properties");
  }

  async fetchServices(): Promise<ServiceSummary[]> {
    return this.getJson("/api/services");
  }

  async submitMatch(document: RequestDocument): Promise<MatchResponse> {
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    try {
      const response = await fetch(`${this.baseUrl}/api/match`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(document),
        signal: controller.signal,
      });
      if (response.status === 422) {
        const body = (await response.json()) as { detail: ValidationIssue[] };
        throw new ValidationFailure(body.detail ?? [{ message: "invalid request" }]);
      }
      if (!response.ok) {
        throw new Error(`match failed: HTTP ${response.status}`);
      }
      return (await response.json()) as MatchResponse;
    } finally {
      if (this.inflight === controller) {
        this.inflight = null;
      }
    }
  }

  private async getJson<T>(path: string): Promise<T> {
    const response = await fetch(`${this.baseUrl}${path}`);
    if (!response.ok) {
      throw new Error(`GET ${path} failed: HTTP ${response.status}`);
    }
    return (await response.json()) as T;
  }
}
