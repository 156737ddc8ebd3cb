/**
 * Application wiring: load the schema and services, keep one draft, submit
 * on demand, and render whatever the server said.
 */

import { ApiClient, ValidationFailure } from "./api.js";
import { emptyDraft, makeSoft, serializeDraft, validateDraft, type RequestDraft } from "./draft.js";
import { buildForm, refreshForm } from "./form.js";
import { SubmissionHistory } from "./history.js";
import { renderIssues, renderResults } from "./results.js";
import type { PropertySchema, ServiceSummary } from "./types.js";

export class App {
  private api: ApiClient;
  private root: HTMLElement;
  private schema: PropertySchema[] = [];
  private draft: RequestDraft = { objective: "boolean", constraints: new Map() };
  private history = new SubmissionHistory();
  private formElement: HTMLElement | null = null;

  constructor(root: HTMLElement, baseUrl: string) {
    this.root = root;
    this.api = new ApiClient(baseUrl);
  }

  async start(): Promise<void> {
    this.root.textContent = "";
    let services: ServiceSummary[];
    try {
      [this.schema, services] = await Promise.all([
        this.api.fetchSchema(),
        this.api.fetchServices(),
      ]);
    } catch (error) {
      this.renderConnectionBanner(String(error));
      return;
    }
    this.draft = emptyDraft(this.schema);

    const layout = document.createElement("div");
    layout.className = "layout";

    const formPane = document.createElement("section");
    formPane.className = "form-pane";
    const heading = document.createElement("h2");
    heading.textContent = "Your requirements";
    formPane.append(heading);
    if (this.schema.length === 0) {
      const empty = document.createElement("p");
      empty.className = "empty-state";
      empty.textContent = "The catalog is empty; there is nothing to request.";
      formPane.append(empty);
    } else {
      this.formElement = buildForm(this.schema, this.draft, () => this.renderIssuesOnly());
      formPane.append(this.formElement);
      const submit = document.createElement("button");
      submit.className = "submit";
      submit.textContent = "Find matching services";
      submit.addEventListener("click", () => void this.submit());
      formPane.append(submit);
    }
    formPane.append(this.issuesPane, this.historyPane);

    const servicePane = document.createElement("section");
    servicePane.className = "service-pane";
    const servicesHeading = document.createElement("h2");
    servicesHeading.textContent = `Catalog (${services.length} services)`;
    servicePane.append(servicesHeading);
    servicePane.append(this.renderServiceBrowser(services));
    servicePane.append(this.resultsPane);

    layout.append(formPane, servicePane);
    this.root.append(layout);
  }

  private issuesPane = document.createElement("div");
  private resultsPane = document.createElement("div");
  private historyPane = document.createElement("div");

  private renderConnectionBanner(detail: string): void {
    const banner = document.createElement("div");
    banner.className = "connection-banner";
    const text = document.createElement("p");
    text.textContent = `Cannot reach the matchmaking service: ${detail}`;
    const retry = document.createElement("button");
    retry.className = "retry";
    retry.textContent = "Retry";
    retry.addEventListener("click", () => void this.start());
    banner.append(text, retry);
    this.root.append(banner);
  }

  private renderServiceBrowser(services: ServiceSummary[]): HTMLElement {
    const list = document.createElement("ul");
    list.className = "service-browser";
    for (const service of services) {
      const item = document.createElement("li");
      const name = document.createElement("strong");
      name.textContent = service.name;
      const specs = document.createElement("small");
      specs.textContent = Object.entries(service.specs)
        .map(([k, v]) => `${k}: ${v === null ? "n/a" : Array.isArray(v) ? v.join("/") : v}`)
        .join(", ");
      item.append(name, document.createElement("br"), specs);
      list.append(item);
    }
    return list;
  }

  private renderIssuesOnly(): void {
    renderIssues(this.issuesPane, validateDraft(this.schema, this.draft));
  }

  async submit(): Promise<void> {
    const issues = validateDraft(this.schema, this.draft);
    renderIssues(this.issuesPane, issues);
    if (issues.length > 0) {
      return;
    }
    const document_ = serializeDraft(this.schema, this.draft);
    try {
      const response = await this.api.submitMatch(document_);
      this.history.push(document_, response);
      this.renderHistory();
      renderResults(this.resultsPane, response, this.schema, {
        onMakeSoft: (propertyId) => {
          makeSoft(this.draft, propertyId);
          if (this.formElement) {
            refreshForm(this.formElement, this.draft);
          }
          this.renderIssuesOnly();
        },
      });
    } catch (error) {
      if (error instanceof ValidationFailure) {
        renderIssues(this.issuesPane, error.issues);
        return;
      }
      if ((error as Error).name === "AbortError") {
        return; // superseded by a newer submission
      }
      this.renderConnectionBanner(String(error));
    }
  }

  private renderHistory(): void {
    this.historyPane.textContent = "";
    if (this.history.entries.length === 0) {
      return;
    }
    const heading = document.createElement("h3");
    heading.textContent = "Recent submissions";
    const list = document.createElement("ol");
    list.className = "history";
    for (const entry of this.history.entries) {
      const item = document.createElement("li");
      const softCount = entry.request.constraints.filter((c) => c.mode === "soft").length;
      item.textContent = `${entry.request.constraints.length} constraints (${softCount} soft), ${entry.feasibleCount} feasible`;
      list.append(item);
    }
    this.historyPane.append(heading, list);
  }
}

export function mount(selector: string, baseUrl: string): App {
  const root = document.querySelector<HTMLElement>(selector);
  if (!root) {
    throw new Error(`no element matches ${selector}`);
  }
  const app = new App(root, baseUrl);
  void app.start();
  return app;
}
