import { describe, expect, it } from "vitest";

import { emptyDraft } from "../src/draft.js";
import { buildForm } from "../src/form.js";
import { fixtureSchema } from "./fixtures.js";

const schema = fixtureSchema();

function renderedForm() {
  const draft = emptyDraft(schema);
  const form = buildForm(schema, draft, () => {});
  document.body.textContent = "";
  document.body.append(form);
  return { form, draft };
}

describe("buildForm", () => {
  it("renders one control per schema property", () => {
    const { form } = renderedForm();
    expect(form.querySelectorAll(".control")).toHaveLength(7);
  });

  it("renders the feature list as five checkboxes", () => {
    const { form } = renderedForm();
    const control = form.querySelector('[data-property="compatible_browsers"]')!;
    expect(control.querySelectorAll("input.feature")).toHaveLength(5);
  });

  it("shows a direction selector only for requester-defined properties", () => {
    const { form } = renderedForm();
    expect(
      form.querySelector('[data-property="established"] select.direction'),
    ).not.toBeNull();
    expect(form.querySelector('[data-property="version"] select.direction')).toBeNull();
  });

  it("keeps the weight slider at 1..10 and hides it for hard constraints", () => {
    const { form } = renderedForm();
    const control = form.querySelector<HTMLElement>('[data-property="version"]')!;
    const slider = control.querySelector<HTMLInputElement>("input.weight")!;
    expect(slider.min).toBe("1");
    expect(slider.max).toBe("10");
    expect(control.querySelector<HTMLElement>(".weight-wrap")!.hidden).toBe(true);
    const mode = control.querySelector<HTMLSelectElement>("select.mode")!;
    mode.value = "soft";
    mode.dispatchEvent(new Event("change"));
    expect(control.querySelector<HTMLElement>(".weight-wrap")!.hidden).toBe(false);
  });

  it("writes widget edits back into the draft", () => {
    const { form, draft } = renderedForm();
    const control = form.querySelector<HTMLElement>('[data-property="response_time"]')!;
    control.querySelector<HTMLInputElement>("input.enable")!.click();
    const value = control.querySelector<HTMLInputElement>("input.scalar-value")!;
    value.value = "300";
    value.dispatchEvent(new Event("input"));
    const constraint = draft.constraints.get("response_time")!;
    expect(constraint.enabled).toBe(true);
    expect(constraint.scalarValue).toBe("300");
  });

  it("offers no operator choice, only the derived operator", () => {
    const { form } = renderedForm();
    const badge = form.querySelector('[data-property="response_time"] .operator')!;
    expect(badge.textContent).toBe("≤");
  });
});
