/** Typed client for the proof-session JSON API.  Every method returns the
 * parsed response body; failures throw ApiError with the server's error
 * envelope, so callers can branch on conflict/not-found/unprocessable. */

export interface FormulaViews {
  formula: string;
  formula_unicode: string;
  formula_html: string;
}

export interface GivenView extends FormulaViews {
  label: string;
  origin: string;
}

export interface GoalView {
  id: string;
  goal: string;
  goal_unicode: string;
  goal_html: string;
  givens: GivenView[];
  comments: string[];
}

export interface TheoremView {
  givens: ({ label: string } & FormulaViews)[];
  goal: FormulaViews;
}

export interface View {
  version: number;
  complete: boolean;
  outline_html: string;
  open_goals: GoalView[];
  can_undo: boolean;
  can_redo: boolean;
  theorem: TheoremView;
}

export interface StepTemplate {
  kind: string;
  needs: string[];
  given?: string;
  given2?: string;
}

export type Direction = "forward" | "backward";

export interface EquivOption {
  rule: string;
  name: string;
  kind: string;
  direction: Direction;
  preview: string;
  preview_unicode: string;
  preview_html: string;
}

export interface ParseEcho {
  ascii: string;
  unicode: string;
  html: string;
}

export interface SessionCreated {
  id: string;
  view: View;
}

export interface StepApplied {
  view: View;
  applied: Record<string, string>;
}

export interface AutoApplied {
  view: View;
  applied: Record<string, string>[];
}

export class ApiError extends Error {
  readonly status: number;
  readonly error: string;
  readonly offset?: number;
  readonly version?: number;

  constructor(status: number, body: Record<string, unknown>) {
    super(typeof body.message === "string" ? body.message : `HTTP ${status}`);
    this.status = status;
    this.error = typeof body.error === "string" ? body.error : "Unknown";
    if (typeof body.offset === "number") this.offset = body.offset;
    if (typeof body.version === "number") this.version = body.version;
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  private readonly base: string;
  private readonly fetchFn: FetchLike;

  constructor(base: string, fetchFn?: FetchLike) {
    this.base = base.replace(/\/+$/, "");
    // bind, or browsers reject fetch called without its window receiver
    this.fetchFn = fetchFn ?? globalThis.fetch.bind(globalThis);
  }

  private async request<T>(method: string, path: string, body?: unknown,
                           raw?: "raw"): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const resp = await this.fetchFn(this.base + path, init);
    if (!resp.ok) {
      let envelope: Record<string, unknown> = {};
      try {
        envelope = await resp.json();
      } catch {
        // non-JSON error body; keep the empty envelope
      }
      throw new ApiError(resp.status, envelope);
    }
    if (raw === "raw") {
      return (await resp.text()) as unknown as T;
    }
    return (await resp.json()) as T;
  }

  createSession(goal: string, givens: string[] = [],
                labels?: string[]): Promise<SessionCreated> {
    const body: Record<string, unknown> = { goal, givens };
    if (labels) body.labels = labels;
    return this.request("POST", "/api/v1/sessions", body);
  }

  async view(sessionId: string): Promise<View> {
    const data = await this.request<{ view: View }>(
      "GET", `/api/v1/sessions/${sessionId}`);
    return data.view;
  }

  async steps(sessionId: string, goal: string,
              given?: string): Promise<StepTemplate[]> {
    const query = given === undefined
      ? `goal=${encodeURIComponent(goal)}`
      : `goal=${encodeURIComponent(goal)}&given=${encodeURIComponent(given)}`;
    const data = await this.request<{ templates: StepTemplate[] }>(
      "GET", `/api/v1/sessions/${sessionId}/steps?${query}`);
    return data.templates;
  }

  applyStep(sessionId: string, expectedVersion: number, goal: string,
            step: Record<string, string>): Promise<StepApplied> {
    return this.request("POST", `/api/v1/sessions/${sessionId}/steps`,
                        { expected_version: expectedVersion, goal, step });
  }

  async undo(sessionId: string, expectedVersion: number): Promise<View> {
    const data = await this.request<{ view: View }>(
      "POST", `/api/v1/sessions/${sessionId}/undo`,
      { expected_version: expectedVersion });
    return data.view;
  }

  async redo(sessionId: string, expectedVersion: number): Promise<View> {
    const data = await this.request<{ view: View }>(
      "POST", `/api/v1/sessions/${sessionId}/redo`,
      { expected_version: expectedVersion });
    return data.view;
  }

  auto(sessionId: string, expectedVersion: number, goal: string,
       run = false): Promise<AutoApplied> {
    return this.request("POST", `/api/v1/sessions/${sessionId}/auto`,
                        { expected_version: expectedVersion, goal, run });
  }

  exportXml(sessionId: string): Promise<string> {
    return this.request("GET", `/api/v1/sessions/${sessionId}/export?format=xml`,
                        undefined, "raw");
  }

  exportHtml(sessionId: string): Promise<string> {
    return this.request("GET", `/api/v1/sessions/${sessionId}/export?format=html`,
                        undefined, "raw");
  }

  async importXml(document: string): Promise<SessionCreated> {
    const resp = await this.fetchFn(this.base + "/api/v1/sessions/import", {
      method: "POST",
      headers: { "content-type": "application/xml" },
      body: document,
    });
    if (!resp.ok) {
      throw new ApiError(resp.status, await resp.json());
    }
    return (await resp.json()) as SessionCreated;
  }

  parse(formula: string): Promise<ParseEcho> {
    return this.request("POST", "/api/v1/parse", { formula });
  }

  equivalences(formula: string, path: number[]):
      Promise<{ path: number[]; options: EquivOption[] }> {
    return this.request("POST", "/api/v1/equivalences", { formula, path });
  }
}
