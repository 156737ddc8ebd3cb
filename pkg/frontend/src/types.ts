/**
 * Wire types for the matchmaking gateway API.
 * These mirror the server's JSON documents exactly; the UI never derives
 * or recomputes any of the numbers it displays.
 */

export type Kind = "discrete" | "interval" | "enumeration" | "feature_list";
export type Tendency = "low" | "high" | "neutral" | "requester_defined";
export type Operator = "eq" | "lte" | "gte";
export type Mode = "hard" | "soft";
export type Direction = "low" | "high";
export type Objective = "boolean" | "difference";
export type Degree = "SUPER" | "EXACT" | "PARTIAL" | "FAIL" | "NOSPEC";

export interface PropertySchema {
  id: string;
  display_name: string;
  kind: Kind;
  tendency: Tendency;
  unit: string;
  scale: number;
  enum_values?: string[];
}

export interface ServiceSummary {
  service_id: number;
  name: string;
  specs: Record<string, number | string | string[] | null>;
}

export interface ConstraintDocument {
  property: string;
  operator: Operator;
  value: number | string[];
  mode: Mode;
  weight?: number;
  direction?: Direction;
}

export interface RequestDocument {
  constraints: ConstraintDocument[];
  objective: Objective;
}

export interface PropertyResultDocument {
  property: string;
  degree: Degree;
  points: number;
  violation: number;
  solution_set?: string[];
}

export interface ReportDocument {
  service_id: number;
  name: string;
  hard_feasible: boolean;
  total_points: number;
  total_violation: number;
  final_score: number;
  properties: PropertyResultDocument[];
}

export interface MatchResponse {
  request_echo: RequestDocument;
  ranking: ReportDocument[];
  timing_ms: number;
}

export interface ValidationIssue {
  path?: string;
  message: string;
}
