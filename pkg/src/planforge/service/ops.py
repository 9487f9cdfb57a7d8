"""Shared operations facade over a loaded project.

Both the CLI and the HTTP API call these functions, so the two surfaces
cannot drift: an operation returns one JSON-able payload that the CLI prints
and the API serves.  Mutations go through per-action locks (second writer is
told the revision is in flight) and publish change-feed events.
"""

from __future__ import annotations

import threading
import time
from collections import defaultdict
from pathlib import Path

from ..auditor import audit
from ..builder import assemble_domain, build_domain
from ..correction import (
    FeedbackEvent,
    apply_feedback,
    feedback_ledger,
    render_model_nl,
)
from ..orchestrator import (
    Instruction,
    UntranslatableGoal,
    classical_pipeline,
    llm_plan_loop,
)
from ..pddl import (
    DomainModel,
    PddlSyntaxError,
    norm_name,
    parse_plan,
    parse_problem,
    print_domain,
)
from ..pddl.printer import format_action
from ..planner import SearchConfig
from ..state import localize_error, validate_plan
from ..workspace import Project


class UnknownAction(Exception):
    def __init__(self, name: str) -> None:
        super().__init__(f"unknown action '{name}'")
        self.name = name


class RevisionInFlight(Exception):
    def __init__(self, name: str) -> None:
        super().__init__(f"another revision is in flight for action '{name}'")
        self.name = name


class NoDomain(Exception):
    def __init__(self) -> None:
        super().__init__("the project has no constructed domain yet")


class EventBus:
    """In-process change feed with long-poll support."""

    def __init__(self) -> None:
        self._events: list[dict] = []
        self._condition = threading.Condition()

    def publish(self, kind: str, data: dict) -> None:
        with self._condition:
            self._events.append(
                {"seq": len(self._events) + 1, "kind": kind, "data": data, "ts": time.time()}
            )
            self._condition.notify_all()

    def since(self, seq: int, timeout: float = 0.0) -> dict:
        deadline = time.monotonic() + timeout
        with self._condition:
            while len(self._events) <= seq and timeout > 0:
                remaining = deadline - time.monotonic()
                if remaining <= 0:
                    break
                self._condition.wait(remaining)
            events = self._events[seq:]
            return {"events": events, "next": len(self._events)}


class ProjectOps:
    def __init__(self, project: Project) -> None:
        self.project = project
        self.session = project.load_session()
        self.events = EventBus()
        self._action_locks: dict[str, threading.Lock] = defaultdict(threading.Lock)

    # -- helpers -------------------------------------------------------------

    def domain(self) -> DomainModel:
        if self.session.models:
            return assemble_domain(self.session)
        raise NoDomain()

    def search_config(self) -> SearchConfig:
        planner = self.project.config.get("planner") or {}
        return SearchConfig(
            strategy=planner.get("strategy", "gbfs"),
            heuristic=planner.get("heuristic", "hadd"),
            max_expansions=int(planner.get("max_expansions", 1_000_000)),
            time_limit=float(planner.get("time_limit", 60.0)),
        )

    def resolve_problem(self, problem: str | None, problem_file: str | None):
        domain = self.domain()
        if problem is None and problem_file is None:
            raise PddlSyntaxError("a problem (inline text or file) is required")
        if problem is None:
            path = Path(problem_file)
            if not path.is_absolute():
                path = (self.project.root / path).resolve()
                root = self.project.root.resolve()
                if root not in path.parents and path != root:
                    raise ValueError(
                        f"problem file '{problem_file}' escapes the project directory"
                    )
            problem = path.read_text(encoding="utf-8")
        return domain, parse_problem(problem, domain)

    def _audit_action(self, name: str) -> dict:
        model = self.session.models.get(norm_name(name))
        if model is None:
            raise UnknownAction(name)
        report = audit(
            model,
            self.session.registry.entries,
            self.session.config.hierarchy,
            config=self.session.config.audit,
        )
        return report.to_payload()

    # -- operations ------------------------------------------------------------

    def construct(self) -> dict:
        domain, registry = build_domain(self.session)
        self.project.persist_session(self.session)
        payload = {
            "domain": norm_name(domain.name),
            "actions": [norm_name(a.name) for a in domain.actions],
            "predicates": len(registry.entries),
            "pddl": print_domain(domain),
        }
        self.events.publish("constructed", {"actions": payload["actions"]})
        return payload

    def list_actions(self) -> dict:
        actions = []
        for name in sorted(self.session.models):
            report = self._audit_action(name)
            actions.append(
                {
                    "name": name,
                    "clean": report["clean"],
                    "findings": len(report["findings"]),
                }
            )
        return {"actions": actions}

    def get_action(self, name: str) -> dict:
        key = norm_name(name)
        model = self.session.models.get(key)
        if model is None:
            raise UnknownAction(name)
        # submit_feedback persists each revision, so the file is the history.
        revisions = [r for r in self.project.revisions() if r.get("action") == key]
        return {
            "name": key,
            "pddl": format_action(model),
            "nl": render_model_nl(model, self.session.registry),
            "audit": self._audit_action(key),
            "revisions": revisions,
        }

    def audit_project(self) -> dict:
        reports = {name: self._audit_action(name) for name in sorted(self.session.models)}
        findings = [f for report in reports.values() for f in report["findings"]]
        return {
            "clean": not findings,
            "findings": findings,
            "messages": [f["message"] for f in findings],
            "per_action": reports,
        }

    def submit_feedback(self, name: str, text: str, source: str = "human") -> dict:
        key = norm_name(name)
        if self.session.models.get(key) is None:
            raise UnknownAction(name)
        lock = self._action_locks[key]
        if not lock.acquire(blocking=False):
            raise RevisionInFlight(key)
        try:
            event = FeedbackEvent(source=source, target_action=key, text=text)
            revision = apply_feedback(self.session, key, event)
            payload = revision.to_payload()
            self.project.save_conversation(self.session.conversation_for(key))
            self.project.append_event(event)
            self.project.append_revision(payload)
            domain = assemble_domain(self.session)
            self.project.save_domain(domain, self.session.registry)
            result = {"revision": payload, "audit": self._audit_action(key)}
            self.events.publish("revision", {"action": key, "revision": payload})
            return result
        finally:
            lock.release()

    def validate(
        self,
        plan_lines: list[str],
        problem: str | None = None,
        problem_file: str | None = None,
    ) -> dict:
        domain, spec = self.resolve_problem(problem, problem_file)
        plan = parse_plan("\n".join(plan_lines))
        report = validate_plan(domain, spec, plan)
        payload = report.to_payload()
        self.events.publish("validation", {"problem": spec.name, "verdict": payload["verdict"]})
        return payload

    def localize(
        self,
        plan_lines: list[str],
        problem: str | None = None,
        problem_file: str | None = None,
    ) -> dict:
        domain, spec = self.resolve_problem(problem, problem_file)
        plan = parse_plan("\n".join(plan_lines))
        return localize_error(domain, spec, plan).to_payload()

    def plan(
        self,
        instruction: str,
        problem: str | None = None,
        problem_file: str | None = None,
        mode: str = "classical",
    ) -> dict:
        domain, spec = self.resolve_problem(problem, problem_file)
        templates = self.session.config.templates
        transport = self.session.transport
        instr = Instruction(instruction, spec)
        if mode == "llm":
            outcome, conversation = llm_plan_loop(
                instr,
                domain,
                self.session.registry,
                templates,
                transport,
                examples=self.session.config.planner_examples,
                run_log=self.project.append_run,
                task_id=norm_name(spec.name),
            )
            self.project.save_conversation(conversation)
            payload = {"mode": "llm", **outcome.to_payload()}
        elif mode == "classical":
            planner_cfg = self.project.config.get("planner") or {}
            try:
                result = classical_pipeline(
                    instr,
                    domain,
                    self.session.registry,
                    templates,
                    transport,
                    self.search_config(),
                    external_command=planner_cfg.get("external_command"),
                    run_log=self.project.append_run,
                    task_id=norm_name(spec.name),
                )
            except UntranslatableGoal as exc:
                self.project.append_run(
                    {
                        "task": norm_name(spec.name),
                        "mode": "classical",
                        "rounds": 1,
                        "outcome": "invalid-translation",
                        "plan": None,
                        "violation": exc.violation,
                    }
                )
                raise
            payload = {"mode": "classical", **result.to_payload()}
        else:
            raise ValueError(f"unknown planning mode '{mode}'")
        self.events.publish("plan", {"problem": spec.name, "outcome": payload.get("outcome", payload.get("status"))})
        return payload

    def runs(self) -> dict:
        return {"runs": self.project.runs()}

    def report(self) -> dict:
        """Ledger plus run summaries (the Table-1/2-shaped output)."""
        ledger = feedback_ledger(self.session)
        domain_summary: dict | None = None
        if self.session.models:
            domain = assemble_domain(self.session)
            literal_count = sum(
                len(a.params)
                + len(a.preconditions)
                + len(a.add_effects)
                + len(a.del_effects)
                for a in domain.actions
            )
            domain_summary = {
                "domain": norm_name(domain.name),
                "actions": len(domain.actions),
                "predicates": len(domain.predicates),
                "params_and_literals": literal_count,
            }
        modes: dict[str, dict] = {}
        for record in self.project.runs():
            bucket = modes.setdefault(
                record.get("mode", "unknown"), {"tasks": 0, "solved": 0}
            )
            bucket["tasks"] += 1
            if record.get("outcome") in ("plan", "success"):
                bucket["solved"] += 1
        for bucket in modes.values():
            bucket["solve_rate"] = (
                round(bucket["solved"] / bucket["tasks"], 4) if bucket["tasks"] else None
            )
        return {"model": domain_summary, "feedback": ledger, "runs": modes}

    def events_since(self, since: int = 0, timeout: float = 0.0) -> dict:
        return self.events.since(since, timeout)
