/** Thin typed client over the /v1 API. Every console mutation goes through
 * exactly one of these calls; nothing is recomputed client-side. */

import {
  ActionDetail,
  ActionSummary,
  ApiError,
  ApiErrorPayload,
  EventsPayload,
  FeedbackResponse,
  PlanPayload,
  ValidationPayload,
} from "./types.js";

export class ApiClient {
  constructor(private readonly baseUrl: string) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(`${this.baseUrl}/v1${path}`, {
      headers: { "content-type": "application/json" },
      ...init,
    });
    const body = await response.json();
    if (!response.ok) {
      const payload: ApiErrorPayload =
        typeof body === "object" && body !== null && "code" in body
          ? (body as ApiErrorPayload)
          : { code: `http-${response.status}`, message: JSON.stringify(body) };
      throw new ApiError(response.status, payload);
    }
    return body as T;
  }

  async listActions(): Promise<ActionSummary[]> {
    const body = await this.request<{ actions: ActionSummary[] }>("/actions");
    return body.actions;
  }

  getAction(name: string): Promise<ActionDetail> {
    return this.request(`/actions/${encodeURIComponent(name)}`);
  }

  submitFeedback(name: string, text: string): Promise<FeedbackResponse> {
    return this.request(`/actions/${encodeURIComponent(name)}/feedback`, {
      method: "POST",
      body: JSON.stringify({ text, source: "human" }),
    });
  }

  validate(plan: string[], problemFile: string): Promise<ValidationPayload> {
    return this.request("/validate", {
      method: "POST",
      body: JSON.stringify({ plan, problem_file: problemFile }),
    });
  }

  validateInline(plan: string[], problem: string): Promise<ValidationPayload> {
    return this.request("/validate", {
      method: "POST",
      body: JSON.stringify({ plan, problem }),
    });
  }

  plan(instruction: string, problemFile: string): Promise<PlanPayload> {
    return this.request("/plan", {
      method: "POST",
      body: JSON.stringify({ instruction, problem_file: problemFile }),
    });
  }

  events(since: number, timeoutSeconds: number): Promise<EventsPayload> {
    return this.request(
      `/events?since=${since}&timeout=${timeoutSeconds}`,
    );
  }
}
