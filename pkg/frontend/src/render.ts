/** Pure HTML renderers for every console view.
 *
 * These take API payloads verbatim and return markup strings, so they are
 * unit-testable without a DOM and guarantee the console never invents
 * content the server did not send. */

import {
  ActionDetail,
  ActionSummary,
  ApiError,
  FailurePayload,
  PlanPayload,
  RevisionPayload,
  ValidationPayload,
} from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderActionList(
  actions: ActionSummary[],
  selected: string | null,
): string {
  if (actions.length === 0) {
    return '<p class="empty">No actions yet. Run the construction first.</p>';
  }
  const items = actions
    .map((action) => {
      const badge = action.clean
        ? '<span class="badge clean">clean</span>'
        : `<span class="badge dirty">${action.findings} finding(s)</span>`;
      const cls = action.name === selected ? "action selected" : "action";
      return `<li class="${cls}" data-action="${escapeHtml(action.name)}">` +
        `<span class="name">${escapeHtml(action.name)}</span>${badge}</li>`;
    })
    .join("");
  return `<ul class="actions">${items}</ul>`;
}

export function renderDiff(diff: string): string {
  if (!diff) {
    return '<p class="empty">no change</p>';
  }
  const lines = diff.split("\n").map((line) => {
    let cls = "ctx";
    if (line.startsWith("+")) cls = "add";
    else if (line.startsWith("-")) cls = "del";
    else if (line.startsWith("@@")) cls = "hunk";
    return `<span class="diff-${cls}">${escapeHtml(line)}</span>`;
  });
  return `<pre class="diff">${lines.join("\n")}</pre>`;
}

export function renderRevisionTimeline(revisions: RevisionPayload[]): string {
  if (revisions.length === 0) {
    return '<p class="empty">No revisions yet.</p>';
  }
  const items = revisions
    .map(
      (revision, index) =>
        `<li class="revision"><h4>Revision ${index + 1}</h4>` +
        renderDiff(revision.diff) +
        "</li>",
    )
    .join("");
  return `<ol class="revisions">${items}</ol>`;
}

export function renderActionDetail(detail: ActionDetail): string {
  const auditBlock = detail.audit.clean
    ? '<p class="audit clean">audit: clean</p>'
    : `<div class="audit dirty"><p>audit findings:</p><ul>${detail.audit.findings
        .map((f) => `<li>${escapeHtml(f.message)}</li>`)
        .join("")}</ul></div>`;
  return (
    `<h2>${escapeHtml(detail.name)}</h2>` +
    auditBlock +
    '<div class="panes">' +
    `<section class="pane"><h3>PDDL</h3><pre>${escapeHtml(detail.pddl)}</pre></section>` +
    `<section class="pane"><h3>Natural language</h3><pre>${escapeHtml(detail.nl)}</pre></section>` +
    "</div>" +
    `<section class="timeline"><h3>Revisions</h3>${renderRevisionTimeline(detail.revisions)}</section>`
  );
}

function renderFailure(failure: FailurePayload): string {
  const unmet = failure.unmet
    .map((literal) => `<li class="unmet">${escapeHtml(literal)}</li>`)
    .join("");
  const detail = failure.detail
    .map((d) => `<li class="detail">${escapeHtml(d)}</li>`)
    .join("");
  return (
    `<div class="failure"><span class="kind">${escapeHtml(failure.kind)}</span>` +
    `<ul>${unmet}${detail}</ul></div>`
  );
}

/** Per-step verdict list; the failing steps carry the `failed` class the
 * smoke test (and the stylesheet) look for. */
export function renderValidation(
  plan: string[],
  report: ValidationPayload,
): string {
  const failuresByStep = new Map<number, FailurePayload[]>();
  for (const failure of report.failures) {
    const bucket = failuresByStep.get(failure.step) ?? [];
    bucket.push(failure);
    failuresByStep.set(failure.step, bucket);
  }
  const steps = plan.map((step, index) => {
    const failures = failuresByStep.get(index) ?? [];
    const skipped = report.not_evaluated.includes(index);
    const cls = failures.length > 0 ? "step failed" : skipped ? "step skipped" : "step ok";
    const body = failures.map(renderFailure).join("");
    return `<li class="${cls}" data-step="${index}">${escapeHtml(step)}${body}</li>`;
  });
  const goal = (failuresByStep.get(plan.length) ?? [])
    .map(renderFailure)
    .join("");
  const goalBlock = goal ? `<div class="goal failed">${goal}</div>` : "";
  return (
    `<p class="verdict ${report.verdict}">verdict: ${escapeHtml(report.verdict)}</p>` +
    `<ol class="plan-steps">${steps.join("")}</ol>` +
    goalBlock
  );
}

export function renderPlanResult(payload: PlanPayload): string {
  const outcome = payload.outcome ?? payload.status ?? "unknown";
  const steps = (payload.plan ?? [])
    .map((step) => `<li class="step">${escapeHtml(step)}</li>`)
    .join("");
  const stats = payload.stats
    ? `<p class="stats">expansions: ${payload.stats.expansions}, length: ${payload.stats.plan_length}</p>`
    : "";
  return (
    `<p class="outcome ${escapeHtml(outcome)}">outcome: ${escapeHtml(outcome)}</p>` +
    (steps ? `<ol class="plan-steps">${steps}</ol>` : '<p class="empty">empty plan</p>') +
    stats
  );
}

/** API errors are shown verbatim with their machine code; a 409 is the
 * revision-in-flight case the workflow expects. */
export function renderError(error: unknown): string {
  if (error instanceof ApiError) {
    const note =
      error.status === 409 ? '<span class="note">revision in flight</span>' : "";
    return (
      `<div class="error"><span class="code">${escapeHtml(error.payload.code)}</span> ` +
      `${escapeHtml(error.payload.message)}${note}</div>`
    );
  }
  return `<div class="error">${escapeHtml(String(error))}</div>`;
}

export function renderEmptyProject(): string {
  return (
    '<div class="empty-state"><h2>Empty project</h2>' +
    "<p>No action models exist yet. Run <code>planforge construct</code> " +
    "against this project, then reload.</p></div>"
  );
}
