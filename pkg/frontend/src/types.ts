/** Payload shapes of the /v1 API (mirrors the server's pydantic models). */

export interface ActionSummary {
  name: string;
  clean: boolean;
  findings: number;
}

export interface FindingPayload {
  category: string;
  action: string;
  section: string;
  snippet: string;
  message: string;
}

export interface AuditPayload {
  clean: boolean;
  findings: FindingPayload[];
  infos: FindingPayload[];
}

export interface RevisionPayload {
  action: string;
  before: string;
  after: string;
  diff: string;
}

export interface ActionDetail {
  name: string;
  pddl: string;
  nl: string;
  audit: AuditPayload;
  revisions: RevisionPayload[];
}

export interface FeedbackResponse {
  revision: RevisionPayload;
  audit: AuditPayload;
}

export interface FailurePayload {
  step: number;
  kind: string;
  unmet: string[];
  detail: string[];
}

export interface ValidationPayload {
  verdict: string;
  failures: FailurePayload[];
  final_state: string[];
  not_evaluated: number[];
}

export interface PlanPayload {
  mode: string;
  outcome?: string;
  status?: string;
  rounds?: number;
  plan: string[] | null;
  stats?: { expansions: number; generated: number; plan_length: number | null };
}

export interface EventRecord {
  seq: number;
  kind: string;
  data: Record<string, unknown>;
  ts: number;
}

export interface EventsPayload {
  events: EventRecord[];
  next: number;
}

export interface ApiErrorPayload {
  code: string;
  message: string;
  detail?: string;
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly payload: ApiErrorPayload,
  ) {
    super(payload.message);
  }
}
