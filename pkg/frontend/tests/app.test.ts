import { beforeEach, describe, expect, it, vi } from "vitest";

import { ApiClient } from "../src/api.js";
import { OperatorConsole } from "../src/app.js";
import type { Snapshot } from "../src/types.js";

const SNAPSHOT: Snapshot = {
  id: "abc123",
  status: "active",
  followed_policy: true,
  interim_excursion: false,
  state: { m: 0, n1: 0, s1: 0, n2: 0, s2: 0, w1: 0, w2: 0 },
  bounds: { lcb: "-inf", ucb: 1.9713071, l1: null, l2: 5.6428 },
  recommendation: { line: 1, pi1: null },
  config: { theta0: 0.05, theta_star: 0.1, gamma: 0.25, n: 10, alpha: 0.0027 },
};

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

function mountConsole(fetchFn: (input: string, init?: RequestInit) => Promise<Response>) {
  const root = document.createElement("div");
  document.body.replaceChildren(root);
  const app = new OperatorConsole(root, new ApiClient("http://svc", fetchFn), {
    pollMs: 0,
  });
  app.mount();
  return { app, root };
}

function formFields(overrides: Record<string, string> = {}) {
  return {
    theta0: "0.05",
    theta_star: "0.1",
    gamma: "0.25",
    n: "10",
    alpha: "0.0027",
    seed: "7",
    ...overrides,
  };
}

beforeEach(() => {
  document.body.innerHTML = "";
});

describe("session start", () => {
  it("blocks invalid input before any request", async () => {
    const fetchFn = vi.fn();
    const { app, root } = mountConsole(fetchFn);
    await app.start(formFields({ gamma: "0.6" }));
    expect(fetchFn).not.toHaveBeenCalled();
    expect(root.querySelector("#err-gamma")?.textContent).toContain("(0, 0.5]");
    expect(root.querySelector("#session-panel")?.classList.contains("hidden")).toBe(true);
  });

  it("renders blocked-pair instructions on success", async () => {
    const fetchFn = vi.fn(async () => jsonResponse(SNAPSHOT, 201));
    const { app, root } = mountConsole(fetchFn);
    await app.start(formFields());
    const card = root.querySelector("#rec-card")?.textContent ?? "";
    expect(card).toContain("Sample line 1");
    expect(card).toContain("blocked first pair");
    expect(root.querySelector("#banner")?.textContent).toBe("monitoring");
  });

  it("shows a retriable banner when the service is down", async () => {
    const fetchFn = vi.fn(async () => {
      throw new TypeError("fetch failed");
    });
    const { app, root } = mountConsole(fetchFn);
    await app.start(formFields());
    const banner = root.querySelector("#error-banner");
    expect(banner?.classList.contains("hidden")).toBe(false);
    expect(banner?.textContent).toContain("retrying");
  });

  it("shows service validation errors inline in the banner", async () => {
    const fetchFn = vi.fn(async () =>
      jsonResponse({ error: "validation", message: "sessions support exactly 2 lines" }, 400),
    );
    const { app, root } = mountConsole(fetchFn);
    await app.start(formFields());
    expect(root.querySelector("#error-banner")?.textContent).toContain("validation");
  });
});

describe("outcome entry", () => {
  function scriptedFetch() {
    let outcomes = 0;
    return vi.fn(async (input: string, init?: RequestInit) => {
      if (input.endsWith("/sessions") && init?.method === "POST") {
        return jsonResponse(SNAPSHOT, 201);
      }
      if (input.includes("/outcomes")) {
        outcomes += 1;
        if (outcomes === 1) {
          return jsonResponse({
            state: { m: 1, n1: 1, s1: 1, n2: 0, s2: 0, w1: 0.693, w2: 0 },
            recommendation: { line: 2, pi1: null },
            status: "active",
            followed_policy: true,
            interim_excursion: false,
          });
        }
        return jsonResponse({
          state: { m: 2, n1: 1, s1: 1, n2: 1, s2: 0, w1: 0.693, w2: -0.054 },
          recommendation: { line: 1, pi1: 0.75 },
          status: "active",
          followed_policy: false,
          interim_excursion: false,
        });
      }
      if (input.includes("/preview")) {
        return jsonResponse({
          pending: { line: 1, pi1: 0.75 },
          if_outcome: { "0": { pi1: 0.75 }, "1": { pi1: 0.75 } },
        });
      }
      return jsonResponse(SNAPSHOT);
    });
  }

  it("appends service-reported W values and updates the card", async () => {
    const { app, root } = mountConsole(scriptedFetch());
    await app.start(formFields());
    await app.submit(1, 1);
    await app.submit(2, 0);
    expect(app.view?.series).toEqual([
      { m: 1, w1: 0.693, w2: 0 },
      { m: 2, w1: 0.693, w2: -0.054 },
    ]);
    const card = root.querySelector("#rec-card")?.textContent ?? "";
    expect(card).toContain("Sample line 1");
    expect(card).toContain("0.75");
    expect(root.querySelector("#whatif")?.textContent).toContain("pass");
    expect(root.querySelectorAll("#chart polyline")).toHaveLength(2);
  });

  it("shows the policy-deviated badge when the service flags an override", async () => {
    const { app, root } = mountConsole(scriptedFetch());
    await app.start(formFields());
    await app.submit(1, 1);
    await app.submit(1, 0); // override: service reply carries followed_policy=false
    expect(root.querySelector("#badge-deviated")?.classList.contains("hidden")).toBe(false);
  });

  it("disables entry controls once the session is no longer active", async () => {
    const fetchFn = vi.fn(async (input: string, init?: RequestInit) => {
      if (input.endsWith("/sessions") && init?.method === "POST") {
        return jsonResponse(SNAPSHOT, 201);
      }
      if (input.includes("/outcomes")) {
        return jsonResponse({
          state: { m: 10, n1: 6, s1: 4, n2: 4, s2: 0, w1: 2.6, w2: -0.2 },
          recommendation: null,
          status: "alarmed",
          followed_policy: true,
          interim_excursion: false,
        });
      }
      return jsonResponse(SNAPSHOT);
    });
    const { app, root } = mountConsole(fetchFn);
    await app.start(formFields());
    await app.submit(1, 1);
    expect(root.querySelector("#banner")?.textContent).toContain("ALARM");
    const buttons = root.querySelectorAll<HTMLButtonElement>("#controls button");
    expect([...buttons].every((b) => b.disabled)).toBe(true);
    // further submits are ignored client-side
    await app.submit(1, 1);
    const outcomeCalls = fetchFn.mock.calls.filter(([url]) =>
      String(url).includes("/outcomes"),
    );
    expect(outcomeCalls).toHaveLength(1);
  });
});

describe("reload", () => {
  it("restores state and series from the session snapshot", async () => {
    const withHistory: Snapshot = {
      ...SNAPSHOT,
      status: "active",
      state: { m: 2, n1: 1, s1: 1, n2: 1, s2: 0, w1: 0.693, w2: -0.054 },
      recommendation: { line: 1, pi1: 0.75 },
      history: [
        { line: 1, outcome: 1, w1: 0.693, w2: 0 },
        { line: 2, outcome: 0, w1: 0.693, w2: -0.054 },
      ],
    };
    const fetchFn = vi.fn(async (input: string) => {
      if (input.includes("/preview")) {
        return jsonResponse({ pending: { line: 1, pi1: 0.75 }, if_outcome: null });
      }
      return jsonResponse(withHistory);
    });
    const { app, root } = mountConsole(fetchFn);
    await app.resume("abc123");
    expect(app.view?.series).toHaveLength(2);
    expect(app.view?.state.m).toBe(2);
    expect(root.querySelector("#rec-card")?.textContent).toContain("Sample line 1");
  });
});
