/**
 * Request form: one control per schema property, typed by kind and
 * tendency.  Widgets only offer choices the server accepts, so the
 * operator is displayed (derived), never picked freely.
 */

import { operatorFor, type ConstraintDraft, type RequestDraft } from "./draft.js";
import type { PropertySchema } from "./types.js";

const OPERATOR_LABELS = { eq: "=", lte: "≤", gte: "≥" } as const;

export function buildForm(
  schema: PropertySchema[],
  draft: RequestDraft,
  onChange: () => void,
): HTMLElement {
  const form = document.createElement("div");
  form.className = "request-form";

  const objective = document.createElement("div");
  objective.className = "objective-toggle";
  objective.append("Soft-constraint objective: ");
  for (const mode of ["boolean", "difference"] as const) {
    const label = document.createElement("label");
    const radio = document.createElement("input");
    radio.type = "radio";
    radio.name = "objective";
    radio.value = mode;
    radio.checked = draft.objective === mode;
    radio.addEventListener("change", () => {
      draft.objective = mode;
      onChange();
    });
    label.append(radio, mode === "boolean" ? "count violations" : "minimize distance");
    objective.append(label);
  }
  form.append(objective);

  for (const prop of schema) {
    const constraint = draft.constraints.get(prop.id);
    if (constraint) {
      form.append(buildControl(prop, constraint, draft, onChange));
    }
  }
  return form;
}

function buildControl(
  prop: PropertySchema,
  constraint: ConstraintDraft,
  draft: RequestDraft,
  onChange: () => void,
): HTMLElement {
  const control = document.createElement("fieldset");
  control.className = `control kind-${prop.kind}`;
  control.dataset.property = prop.id;

  const legend = document.createElement("legend");
  const enable = document.createElement("input");
  enable.type = "checkbox";
  enable.className = "enable";
  enable.checked = constraint.enabled;
  enable.addEventListener("change", () => {
    constraint.enabled = enable.checked;
    onChange();
  });
  legend.append(enable, ` ${prop.display_name}`, prop.unit ? ` (${prop.unit})` : "");
  control.append(legend);

  const row = document.createElement("div");
  row.className = "widget-row";

  if (prop.tendency === "requester_defined") {
    const direction = document.createElement("select");
    direction.className = "direction";
    for (const dir of ["high", "low"] as const) {
      const option = document.createElement("option");
      option.value = dir;
      option.textContent = dir === "high" ? "at least" : "at most";
      option.selected = constraint.direction === dir;
      direction.append(option);
    }
    direction.addEventListener("change", () => {
      constraint.direction = direction.value as "high" | "low";
      operatorBadge.textContent = OPERATOR_LABELS[operatorFor(prop, constraint)];
      onChange();
    });
    row.append(direction);
  }

  const operatorBadge = document.createElement("span");
  operatorBadge.className = "operator";
  operatorBadge.textContent = OPERATOR_LABELS[operatorFor(prop, constraint)];
  if (prop.kind !== "feature_list") {
    row.append(operatorBadge);
  }

  if (prop.kind === "feature_list") {
    const boxes = document.createElement("div");
    boxes.className = "features";
    for (const label of prop.enum_values ?? []) {
      const wrap = document.createElement("label");
      const box = document.createElement("input");
      box.type = "checkbox";
      box.className = "feature";
      box.value = label;
      box.checked = constraint.features.has(label);
      box.addEventListener("change", () => {
        if (box.checked) {
          constraint.features.add(label);
        } else {
          constraint.features.delete(label);
        }
        onChange();
      });
      wrap.append(box, label);
      boxes.append(wrap);
    }
    row.append(boxes);
  } else if (prop.kind === "enumeration") {
    const select = document.createElement("select");
    select.className = "enum-value";
    for (const label of prop.enum_values ?? []) {
      const option = document.createElement("option");
      option.value = label;
      option.textContent = label;
      option.selected = constraint.enumLabel === label;
      select.append(option);
    }
    select.addEventListener("change", () => {
      constraint.enumLabel = select.value;
      onChange();
    });
    row.append(select);
  } else {
    const value = document.createElement("input");
    value.type = "number";
    value.className = "scalar-value";
    value.step = String(1 / prop.scale);
    value.value = constraint.scalarValue;
    value.addEventListener("input", () => {
      constraint.scalarValue = value.value;
      onChange();
    });
    row.append(value);
  }

  if (prop.kind !== "feature_list") {
    const mode = document.createElement("select");
    mode.className = "mode";
    for (const m of ["hard", "soft"] as const) {
      const option = document.createElement("option");
      option.value = m;
      option.textContent = m === "hard" ? "must hold" : "prefer";
      option.selected = constraint.mode === m;
      mode.append(option);
    }
    const weightWrap = document.createElement("label");
    weightWrap.className = "weight-wrap";
    const weight = document.createElement("input");
    weight.type = "range";
    weight.className = "weight";
    weight.min = "1";
    weight.max = "10";
    weight.step = "1";
    weight.value = String(constraint.weight);
    const weightValue = document.createElement("span");
    weightValue.className = "weight-value";
    weightValue.textContent = String(constraint.weight);
    weight.addEventListener("input", () => {
      constraint.weight = Number(weight.value);
      weightValue.textContent = weight.value;
      onChange();
    });
    weightWrap.append("importance ", weight, weightValue);
    weightWrap.hidden = constraint.mode !== "soft";
    mode.addEventListener("change", () => {
      constraint.mode = mode.value as "hard" | "soft";
      weightWrap.hidden = constraint.mode !== "soft";
      onChange();
    });
    row.append(mode, weightWrap);
  }

  control.append(row);
  return control;
}

/** Re-sync widget state after the draft changed outside the form. */
export function refreshForm(form: HTMLElement, draft: RequestDraft): void {
  for (const control of form.querySelectorAll<HTMLElement>(".control")) {
    const constraint = draft.constraints.get(control.dataset.property ?? "");
    if (!constraint) {
      continue;
    }
    const enable = control.querySelector<HTMLInputElement>("input.enable");
    if (enable) {
      enable.checked = constraint.enabled;
    }
    const mode = control.querySelector<HTMLSelectElement>("select.mode");
    if (mode) {
      mode.value = constraint.mode;
    }
    const weightWrap = control.querySelector<HTMLElement>(".weight-wrap");
    if (weightWrap) {
      weightWrap.hidden = constraint.mode !== "soft";
    }
  }
}
