// Operator console: start a monitoring session, follow (or override) the
// sampling recommendations, watch both W trajectories against the control
// bounds, and see the terminal alarm decision. All numbers shown are the
// service's own; the console does no statistical computation.

import { ApiClient, ApiError } from "./api.js";
import { chartModel, renderChart } from "./chart.js";
import type {
  OutcomeResponse,
  Preview,
  Recommendation,
  Snapshot,
  Status,
  WPoint,
} from "./types.js";
import { validateForm, type RawFormFields } from "./validate.js";

export interface ConsoleOptions {
  pollMs?: number; // 0 disables the background snapshot poll
}

interface SessionView {
  id: string;
  status: Status;
  followedPolicy: boolean;
  interimExcursion: boolean;
  state: Snapshot["state"];
  bounds: Snapshot["bounds"];
  recommendation: Recommendation | null;
  config: Snapshot["config"];
  series: WPoint[];
  preview: Preview | null;
}

const FORM_FIELDS: (keyof RawFormFields)[] = [
  "theta0",
  "theta_star",
  "gamma",
  "n",
  "alpha",
  "seed",
];

const FORM_DEFAULTS: Record<string, string> = {
  theta0: "0.05",
  theta_star: "0.1",
  gamma: "0.25",
  n: "10",
  alpha: "0.0027",
  seed: "",
};

export class OperatorConsole {
  view: SessionView | null = null;
  busy = false;
  private timer: ReturnType<typeof setInterval> | null = null;
  private pollMs: number;

  constructor(
    private root: HTMLElement,
    private api: ApiClient,
    options: ConsoleOptions = {},
  ) {
    this.pollMs = options.pollMs ?? 1000;
  }

  mount(): void {
    this.root.innerHTML = `
<section id="start-panel">
  <h2>New monitoring session</h2>
  <form id="start-form">
    ${FORM_FIELDS.map(
      (name) => `
    <label>${labelFor(name)}
      <input id="f-${name}" name="${name}" value="${FORM_DEFAULTS[name]}" autocomplete="off" />
      <span class="field-error" id="err-${name}"></span>
    </label>`,
    ).join("")}
    <button id="btn-start" type="submit">Start session</button>
  </form>
</section>
<div id="error-banner" class="hidden" role="alert"></div>
<section id="session-panel" class="hidden">
  <div id="banner" class="banner"></div>
  <span id="badge-deviated" class="badge hidden">policy deviated</span>
  <span id="badge-excursion" class="badge hidden"
        title="a W value is currently past a terminal bound; this is informational only, the alarm decision is made at the horizon">
    interim excursion (non-inferential)</span>
  <div id="rec-card" class="card"></div>
  <div id="whatif" class="card"></div>
  <div id="readouts" class="card"></div>
  <div id="chart"></div>
  <div id="controls">
    <fieldset id="entry-line1">
      <legend>Record line 1</legend>
      <button id="btn-l1-pass" data-line="1" data-outcome="1">pass</button>
      <button id="btn-l1-fail" data-line="1" data-outcome="0">fail</button>
    </fieldset>
    <fieldset id="entry-line2">
      <legend>Record line 2</legend>
      <button id="btn-l2-pass" data-line="2" data-outcome="1">pass</button>
      <button id="btn-l2-fail" data-line="2" data-outcome="0">fail</button>
    </fieldset>
  </div>
</section>`;
    const form = this.element<HTMLFormElement>("#start-form");
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.start(this.readForm());
    });
    for (const id of ["btn-l1-pass", "btn-l1-fail", "btn-l2-pass", "btn-l2-fail"]) {
      const button = this.element<HTMLButtonElement>(`#${id}`);
      button.addEventListener("click", (event) => {
        event.preventDefault();
        const line = Number(button.dataset.line) as 1 | 2;
        const outcome = Number(button.dataset.outcome) as 0 | 1;
        void this.submit(line, outcome);
      });
    }
  }

  element<T extends HTMLElement>(selector: string): T {
    const found = this.root.querySelector<T>(selector);
    if (!found) throw new Error(`missing element ${selector}`);
    return found;
  }

  private readForm(): RawFormFields {
    const fields = {} as RawFormFields;
    for (const name of FORM_FIELDS) {
      fields[name] = this.element<HTMLInputElement>(`#f-${name}`).value;
    }
    return fields;
  }

  async start(fields: RawFormFields): Promise<void> {
    for (const name of FORM_FIELDS) {
      this.element(`#err-${name}`).textContent = "";
    }
    const result = validateForm(fields);
    if (!result.ok) {
      for (const [name, message] of Object.entries(result.errors)) {
        this.element(`#err-${name}`).textContent = message;
      }
      return; // invalid input never reaches the service
    }
    try {
      const snapshot = await this.api.createSession(result.value);
      this.adoptSnapshot(snapshot, []);
      this.clearError();
      this.startPolling();
      await this.refreshPreview();
    } catch (err) {
      this.showError(err);
      return;
    }
    this.render();
  }

  /** Restore an existing session (page reload path). */
  async resume(id: string): Promise<void> {
    try {
      const snapshot = await this.api.getSession(id);
      this.adoptSnapshot(snapshot, seriesFromHistory(snapshot));
      this.clearError();
      this.startPolling();
      await this.refreshPreview();
    } catch (err) {
      this.showError(err);
      return;
    }
    this.render();
  }

  async submit(line: 1 | 2, outcome: 0 | 1): Promise<void> {
    const view = this.view;
    if (!view || this.busy || view.status !== "active") return;
    this.busy = true;
    this.render();
    try {
      const response = await this.api.recordOutcome(view.id, line, outcome);
      this.applyOutcome(response);
      this.clearError();
      if (response.status === "active") {
        await this.refreshPreview();
      } else {
        view.preview = null;
      }
    } catch (err) {
      this.showError(err);
      if (err instanceof ApiError && err.code === "conflict") {
        // session finished under our feet; fetch the authoritative state
        await this.refreshFromServer();
      }
    } finally {
      this.busy = false;
      this.render();
    }
  }

  async refreshFromServer(): Promise<void> {
    const view = this.view;
    if (!view) return;
    try {
      const snapshot = await this.api.getSession(view.id);
      this.adoptSnapshot(snapshot, seriesFromHistory(snapshot));
      this.clearError();
    } catch (err) {
      this.showError(err);
    }
    this.render();
  }

  async refreshPreview(): Promise<void> {
    const view = this.view;
    if (!view) return;
    try {
      view.preview = await this.api.preview(view.id);
    } catch {
      view.preview = null; // what-if panel is best-effort
    }
  }

  private adoptSnapshot(snapshot: Snapshot, series: WPoint[]): void {
    this.view = {
      id: snapshot.id,
      status: snapshot.status,
      followedPolicy: snapshot.followed_policy,
      interimExcursion: snapshot.interim_excursion,
      state: snapshot.state,
      bounds: snapshot.bounds,
      recommendation: snapshot.recommendation,
      config: snapshot.config,
      series,
      preview: null,
    };
  }

  private applyOutcome(response: OutcomeResponse): void {
    const view = this.view;
    if (!view) return;
    view.state = response.state;
    view.status = response.status;
    view.followedPolicy = response.followed_policy;
    view.interimExcursion = response.interim_excursion;
    view.recommendation = response.recommendation;
    view.series.push({
      m: response.state.m,
      w1: response.state.w1,
      w2: response.state.w2,
    });
    if (response.status !== "active") {
      this.stopPolling();
    }
  }

  private startPolling(): void {
    this.stopPolling();
    if (this.pollMs > 0) {
      this.timer = setInterval(() => {
        if (!this.busy && this.view && this.view.status === "active") {
          void this.refreshFromServer();
        }
      }, this.pollMs);
    }
  }

  private stopPolling(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }

  destroy(): void {
    this.stopPolling();
  }

  private showError(err: unknown): void {
    const banner = this.element("#error-banner");
    banner.classList.remove("hidden");
    if (err instanceof ApiError && err.retriable) {
      banner.textContent = `service unreachable; retrying... (${err.message})`;
    } else if (err instanceof ApiError) {
      banner.textContent = `${err.code}: ${err.message}`;
    } else {
      banner.textContent = String(err);
    }
  }

  private clearError(): void {
    const banner = this.element("#error-banner");
    banner.classList.add("hidden");
    banner.textContent = "";
  }

  render(): void {
    const view = this.view;
    if (!view) return;
    this.element("#session-panel").classList.remove("hidden");
    this.element("#start-panel").classList.add("hidden");

    const banner = this.element("#banner");
    banner.className = `banner ${view.status}`;
    banner.textContent = bannerText(view.status);

    this.element("#badge-deviated").classList.toggle("hidden", view.followedPolicy);
    this.element("#badge-excursion").classList.toggle(
      "hidden",
      !view.interimExcursion,
    );

    this.element("#rec-card").innerHTML = recommendationText(view);
    this.element("#whatif").innerHTML = whatIfText(view);
    this.element("#readouts").innerHTML = readoutsText(view);

    renderChart(
      this.element("#chart"),
      chartModel(view.series, view.bounds, view.config.n),
    );

    const disabled = this.busy || view.status !== "active";
    for (const id of ["btn-l1-pass", "btn-l1-fail", "btn-l2-pass", "btn-l2-fail"]) {
      this.element<HTMLButtonElement>(`#${id}`).disabled = disabled;
    }
    const recLine = view.recommendation?.line;
    this.element("#entry-line1").classList.toggle("recommended", recLine === 1);
    this.element("#entry-line2").classList.toggle("recommended", recLine === 2);
  }
}

function labelFor(name: string): string {
  switch (name) {
    case "theta0":
      return "in-control probability";
    case "theta_star":
      return "projected out-of-control probability";
    case "gamma":
      return "exploration floor";
    case "n":
      return "sampling budget";
    case "alpha":
      return "false alarm rate";
    case "seed":
      return "seed (optional)";
    default:
      return name;
  }
}

function bannerText(status: Status): string {
  switch (status) {
    case "active":
      return "monitoring";
    case "completed":
      return "completed: in control at the horizon";
    case "alarmed":
      return "ALARM: a W statistic exited the control bounds";
  }
}

function recommendationText(view: SessionView): string {
  const rec = view.recommendation;
  if (!rec) {
    return `<strong>No further units</strong>: the budget of ${view.config.n} is spent.`;
  }
  if (rec.pi1 === null) {
    return `<strong>Sample line ${rec.line}</strong> (blocked first pair)`;
  }
  return (
    `<strong>Sample line ${rec.line}</strong>` +
    ` <span id="rec-pi">&pi;&#8321; = ${rec.pi1}</span>`
  );
}

function whatIfText(view: SessionView): string {
  const preview = view.preview;
  if (!preview || !preview.pending || !preview.if_outcome) {
    return "";
  }
  const line = preview.pending.line;
  const branch = (key: "0" | "1"): string => {
    const b = preview.if_outcome?.[key];
    if (!b) return "session ends";
    return b.pi1 === null ? "blocked" : `π₁ = ${b.pi1}`;
  };
  return (
    `What if the pending unit on line ${line}: ` +
    `pass &rarr; ${branch("1")}; fail &rarr; ${branch("0")}`
  );
}

function readoutsText(view: SessionView): string {
  const s = view.state;
  const b = view.bounds;
  const fmt = (v: number | string | null) => (v === null ? "none" : String(v));
  return (
    `<span>unit ${s.m} of ${view.config.n}</span>` +
    ` <span id="readout-w1">W1 = ${s.w1}</span>` +
    ` <span id="readout-w2">W2 = ${s.w2}</span>` +
    ` <span>bounds [${fmt(b.lcb)}, ${fmt(b.ucb)}]</span>`
  );
}

function seriesFromHistory(snapshot: Snapshot): WPoint[] {
  return (snapshot.history ?? []).map((record, index) => ({
    m: index + 1,
    w1: record.w1,
    w2: record.w2,
  }));
}

export function boot(root: HTMLElement, baseUrl: string): OperatorConsole {
  const app = new OperatorConsole(root, new ApiClient(baseUrl));
  app.mount();
  return app;
}
