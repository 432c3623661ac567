// Typed client for the session service JSON API.

import type {
  OutcomeResponse,
  Preview,
  Snapshot,
} from "./types.js";
import type { SessionForm } from "./validate.js";

export class ApiError extends Error {
  constructor(
    public code: string,
    message: string,
    public status?: number,
  ) {
    super(message);
  }

  get retriable(): boolean {
    return this.code === "network";
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  private fetchFn: FetchLike;

  constructor(
    public baseUrl: string,
    fetchFn?: FetchLike,
  ) {
    this.fetchFn = fetchFn ?? ((input, init) => globalThis.fetch(input, init));
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let resp: Response;
    try {
      resp = await this.fetchFn(this.baseUrl + path, init);
    } catch (err) {
      throw new ApiError("network", `service unreachable: ${String(err)}`);
    }
    let body: unknown = null;
    try {
      body = await resp.json();
    } catch {
      body = {};
    }
    if (!resp.ok) {
      const payload = body as { error?: string; message?: string };
      throw new ApiError(
        payload.error ?? "http",
        payload.message ?? `request failed with status ${resp.status}`,
        resp.status,
      );
    }
    return body as T;
  }

  createSession(form: SessionForm): Promise<Snapshot> {
    return this.request<Snapshot>("/sessions", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(form),
    });
  }

  recordOutcome(id: string, line: 1 | 2, outcome: 0 | 1): Promise<OutcomeResponse> {
    return this.request<OutcomeResponse>(`/sessions/${id}/outcomes`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ line, outcome }),
    });
  }

  getSession(id: string): Promise<Snapshot> {
    return this.request<Snapshot>(`/sessions/${id}`);
  }

  preview(id: string): Promise<Preview> {
    return this.request<Preview>(`/sessions/${id}/preview`);
  }
}
