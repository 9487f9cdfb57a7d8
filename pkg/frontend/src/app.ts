/** Browser bootstrap: wires the renderers to the DOM and keeps the views
 * current through the long-poll change feed. This is the only module that
 * touches `document`. */

import { ApiClient } from "./api.js";
import {
  renderActionDetail,
  renderActionList,
  renderDiff,
  renderEmptyProject,
  renderError,
  renderPlanResult,
  renderValidation,
} from "./render.js";

interface ViewState {
  selected: string | null;
  event: number;
}

const state: ViewState = { selected: null, event: 0 };
const api = new ApiClient("");

function el(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node;
}

async function refreshActions(): Promise<void> {
  try {
    const actions = await api.listActions();
    if (actions.length === 0) {
      el("action-list").innerHTML = renderEmptyProject();
      return;
    }
    el("action-list").innerHTML = renderActionList(actions, state.selected);
    for (const item of document.querySelectorAll<HTMLElement>("li.action")) {
      item.addEventListener("click", () => {
        state.selected = item.dataset.action ?? null;
        void refreshDetail();
        void refreshActions();
      });
    }
  } catch (error) {
    el("action-list").innerHTML = renderError(error);
  }
}

async function refreshDetail(): Promise<void> {
  if (!state.selected) return;
  try {
    const detail = await api.getAction(state.selected);
    el("detail").innerHTML = renderActionDetail(detail);
  } catch (error) {
    el("detail").innerHTML = renderError(error);
  }
}

async function submitFeedback(): Promise<void> {
  const text = (el("feedback-text") as HTMLTextAreaElement).value.trim();
  if (!state.selected || !text) return;
  el("feedback-result").innerHTML = '<p class="pending">applying feedback…</p>';
  try {
    const result = await api.submitFeedback(state.selected, text);
    el("feedback-result").innerHTML =
      renderDiff(result.revision.diff) +
      (result.audit.clean
        ? '<p class="audit clean">audit: clean</p>'
        : '<p class="audit dirty">audit: findings remain</p>');
    await refreshDetail();
    await refreshActions();
  } catch (error) {
    el("feedback-result").innerHTML = renderError(error);
  }
}

async function submitValidation(): Promise<void> {
  const planLines = (el("validate-plan") as HTMLTextAreaElement).value
    .split("\n")
    .map((line) => line.trim())
    .filter(Boolean);
  const problemFile = (el("validate-problem") as HTMLInputElement).value.trim();
  try {
    const report = await api.validate(planLines, problemFile);
    el("validate-result").innerHTML = renderValidation(planLines, report);
  } catch (error) {
    el("validate-result").innerHTML = renderError(error);
  }
}

async function submitPlan(): Promise<void> {
  const instruction = (el("plan-instruction") as HTMLInputElement).value.trim();
  const problemFile = (el("plan-problem") as HTMLInputElement).value.trim();
  if (!instruction || !problemFile) return;
  el("plan-result").innerHTML = '<p class="pending">planning…</p>';
  try {
    const result = await api.plan(instruction, problemFile);
    el("plan-result").innerHTML = renderPlanResult(result);
  } catch (error) {
    el("plan-result").innerHTML = renderError(error);
  }
}

async function pollEvents(): Promise<void> {
  // Long-poll loop; any change refreshes the affected views.
  for (;;) {
    try {
      const body = await api.events(state.event, 25);
      state.event = body.next;
      if (body.events.length > 0) {
        await refreshActions();
        await refreshDetail();
        const ticker = body.events
          .map((event) => `<li>${event.kind}</li>`)
          .join("");
        el("event-ticker").innerHTML = `<ul>${ticker}</ul>`;
      }
    } catch {
      await new Promise((resolve) => setTimeout(resolve, 2000));
    }
  }
}

export function bootstrap(): void {
  el("feedback-submit").addEventListener("click", () => void submitFeedback());
  el("validate-submit").addEventListener("click", () => void submitValidation());
  el("plan-submit").addEventListener("click", () => void submitPlan());
  void refreshActions();
  void pollEvents();
}

bootstrap();
