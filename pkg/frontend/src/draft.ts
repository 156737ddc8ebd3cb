/**
 * Request draft state and the client-side mirror of the server's
 * validation rules.  A draft either serializes to a valid request
 * document or reports the blocking issues; anything this module lets
 * through must be accepted by the server.
 */

import type {
  ConstraintDocument,
  Direction,
  Mode,
  Objective,
  Operator,
  PropertySchema,
  RequestDocument,
} from "./types.js";

export interface ConstraintDraft {
  enabled: boolean;
  mode: Mode;
  /** 1..10, meaningful for soft constraints only */
  weight: number;
  /** used only when the property tendency is requester_defined */
  direction: Direction;
  /** raw text from the number input (scalar kinds) */
  scalarValue: string;
  /** selected enumeration label (enumeration kind) */
  enumLabel: string;
  /** checked feature labels (feature_list kind) */
  features: Set<string>;
}

export interface RequestDraft {
  objective: Objective;
  constraints: Map<string, ConstraintDraft>;
}

export interface DraftIssue {
  property: string | null;
  message: string;
}

export function emptyDraft(schema: PropertySchema[]): RequestDraft {
  const constraints = new Map<string, ConstraintDraft>();
  for (const prop of schema) {
    constraints.set(prop.id, {
      enabled: false,
      mode: "hard",
      weight: 1,
      direction: "high",
      scalarValue: "",
      enumLabel: prop.enum_values?.[0] ?? "",
      features: new Set(),
    });
  }
  return { objective: "boolean", constraints };
}

/**
 * The operator the server will match with; shown to the user instead of a
 * free operator choice so a draft can never carry an operator/kind
 * mismatch.
 */
export function operatorFor(prop: PropertySchema, constraint: ConstraintDraft): Operator {
  if (prop.tendency === "requester_defined") {
    return constraint.direction === "high" ? "gte" : "lte";
  }
  if (prop.kind === "interval") {
    return prop.tendency === "low" ? "lte" : "gte";
  }
  return "eq";
}

/** Blocking issues; empty means serializeDraft yields a valid document. */
export function validateDraft(schema: PropertySchema[], draft: RequestDraft): DraftIssue[] {
  const issues: DraftIssue[] = [];
  const byId = new Map(schema.map((p) => [p.id, p]));
  let enabledCount = 0;
  for (const [propertyId, constraint] of draft.constraints) {
    if (!constraint.enabled) {
      continue;
    }
    enabledCount += 1;
    const prop = byId.get(propertyId);
    if (!prop) {
      issues.push({ property: propertyId, message: "unknown property" });
      continue;
    }
    if (prop.kind === "feature_list") {
      if (constraint.features.size === 0) {
        issues.push({ property: propertyId, message: "select at least one feature" });
      }
      if (constraint.mode === "soft") {
        issues.push({ property: propertyId, message: "feature lists are hard constraints" });
      }
      continue;
    }
    if (prop.kind === "enumeration") {
      if (!prop.enum_values?.includes(constraint.enumLabel)) {
        issues.push({ property: propertyId, message: "pick one of the listed values" });
      }
    } else if (constraint.scalarValue.trim() === "" || Number.isNaN(Number(constraint.scalarValue))) {
      issues.push({ property: propertyId, message: "enter a numeric value" });
    }
    if (constraint.mode === "soft") {
      if (!Number.isInteger(constraint.weight) || constraint.weight < 1 || constraint.weight > 10) {
        issues.push({ property: propertyId, message: "weight must be an integer from 1 to 10" });
      }
      if (draft.objective === "difference" && prop.kind !== "discrete") {
        issues.push({
          property: propertyId,
          message: "difference matching allows soft constraints on discrete properties only",
        });
      }
    }
  }
  if (enabledCount === 0) {
    issues.push({ property: null, message: "enable at least one constraint" });
  }
  return issues;
}

/** Document form of a draft; call only when validateDraft returns []. */
export function serializeDraft(schema: PropertySchema[], draft: RequestDraft): RequestDocument {
  const byId = new Map(schema.map((p) => [p.id, p]));
  const constraints: ConstraintDocument[] = [];
  for (const prop of schema) {
    const constraint = draft.constraints.get(prop.id);
    if (!constraint || !constraint.enabled) {
      continue;
    }
    const entry: ConstraintDocument = {
      property: prop.id,
      operator: operatorFor(prop, constraint),
      value: constraintValue(prop, constraint),
      mode: constraint.mode,
    };
    if (constraint.mode === "soft") {
      entry.weight = constraint.weight;
    }
    if (prop.tendency === "requester_defined") {
      entry.direction = constraint.direction;
    }
    constraints.push(entry);
  }
  return { constraints, objective: draft.objective };
}

function constraintValue(prop: PropertySchema, constraint: ConstraintDraft): number | string[] {
  if (prop.kind === "feature_list") {
    return [...constraint.features].sort();
  }
  if (prop.kind === "enumeration") {
    return prop.enum_values?.indexOf(constraint.enumLabel) ?? -1;
  }
  return Number(constraint.scalarValue);
}

/** The one-click relaxation toggle: turn a hard constraint soft. */
export function makeSoft(draft: RequestDraft, propertyId: string): void {
  const constraint = draft.constraints.get(propertyId);
  if (constraint) {
    constraint.mode = "soft";
  }
}
