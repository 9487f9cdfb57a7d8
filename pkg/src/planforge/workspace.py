"""Project persistence: directory layout, config, and structured artifacts.

Layout under the project root:

    project.cfg          YAML config (schema-versioned)
    templates/           prompt + feedback templates (editable copies)
    conversations/       one JSONL log per conversation, plus cassettes
    domain.draft.pddl    pass-2 draft, canonical-printer output
    domain.pddl          corrected domain, canonical-printer output
    predicates.txt       the registry with natural-language descriptions
    events.jsonl         feedback event log
    runs/runs.jsonl      structured run records
    tasks/               optional problem files

Everything is text and diff-friendly; domain files are always written by the
canonical printer.
"""

from __future__ import annotations

import json
import os
from contextlib import contextmanager
from importlib import resources
from pathlib import Path

import yaml

from .auditor import AuditConfig
from .builder import (
    ActionDescription,
    ConstructionSession,
    PredicateRegistry,
    SessionConfig,
)
from .correction import FeedbackEvent
from .gateway import (
    Conversation,
    CorruptLog,
    load_conversation,
    load_template_dir,
    persist,
    transport_from_config,
)
from .pddl import (
    DomainModel,
    PddlSyntaxError,
    PredicateDef,
    TypeHierarchy,
    UnsupportedFeature,
    norm_name,
    parse_domain,
    parse_predicate_signature,
    print_domain,
)
from .pddl.blocks import _balanced_snippet

SCHEMA_VERSION = 1


class SchemaVersionMismatch(Exception):
    def __init__(self, found: object) -> None:
        super().__init__(
            f"project schema version {found!r} is not supported "
            f"(expected {SCHEMA_VERSION})"
        )
        self.found = found


class CorruptArtifact(Exception):
    def __init__(self, path: str | Path, reason: str = "") -> None:
        detail = f": {reason}" if reason else ""
        super().__init__(f"corrupt artifact {path}{detail}")
        self.path = str(path)


class ProjectLocked(Exception):
    pass


class Project:
    def __init__(self, root: str | Path, config: dict) -> None:
        self.root = Path(root)
        self.config = config

    # -- paths -------------------------------------------------------------

    @property
    def config_path(self) -> Path:
        return self.root / "project.cfg"

    @property
    def templates_dir(self) -> Path:
        return self.root / "templates"

    @property
    def conversations_dir(self) -> Path:
        return self.root / "conversations"

    @property
    def runs_path(self) -> Path:
        return self.root / "runs" / "runs.jsonl"

    @property
    def events_path(self) -> Path:
        return self.root / "events.jsonl"

    @property
    def registry_path(self) -> Path:
        return self.root / "predicates.txt"

    def domain_path(self, draft: bool = False) -> Path:
        return self.root / ("domain.draft.pddl" if draft else "domain.pddl")

    # -- lifecycle ----------------------------------------------------------

    @classmethod
    def init(cls, root: str | Path, config: dict) -> "Project":
        root = Path(root)
        root.mkdir(parents=True, exist_ok=True)
        config = dict(config)
        config.setdefault("schema", SCHEMA_VERSION)
        project = cls(root, config)
        project.save_config()
        project.templates_dir.mkdir(exist_ok=True)
        (project.templates_dir / "feedback").mkdir(exist_ok=True)
        template_root = resources.files("planforge").joinpath("templates")
        for entry in template_root.iterdir():
            if entry.name.endswith(".txt"):
                target = project.templates_dir / entry.name
                if not target.exists():
                    target.write_text(entry.read_text(encoding="utf-8"), encoding="utf-8")
        for entry in template_root.joinpath("feedback").iterdir():
            if entry.name.endswith(".txt"):
                target = project.templates_dir / "feedback" / entry.name
                if not target.exists():
                    target.write_text(entry.read_text(encoding="utf-8"), encoding="utf-8")
        project.conversations_dir.mkdir(exist_ok=True)
        (project.root / "runs").mkdir(exist_ok=True)
        (project.root / "tasks").mkdir(exist_ok=True)
        return project

    @classmethod
    def load(cls, root: str | Path) -> "Project":
        root = Path(root)
        cfg_path = root / "project.cfg"
        if not cfg_path.exists():
            raise CorruptArtifact(cfg_path, "missing project.cfg")
        try:
            config = yaml.safe_load(cfg_path.read_text(encoding="utf-8"))
        except yaml.YAMLError as exc:
            raise CorruptArtifact(cfg_path, str(exc)) from exc
        if not isinstance(config, dict):
            raise CorruptArtifact(cfg_path, "config is not a mapping")
        if config.get("schema") != SCHEMA_VERSION:
            raise SchemaVersionMismatch(config.get("schema"))
        return cls(root, config)

    def save_config(self) -> None:
        with self._lock():
            self.config_path.write_text(
                yaml.safe_dump(self.config, sort_keys=False, allow_unicode=True),
                encoding="utf-8",
            )

    @contextmanager
    def _lock(self):
        """Advisory single-writer lock for the project directory."""
        lock_path = self.root / ".lock"
        try:
            fd = os.open(lock_path, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
        except FileExistsError:
            raise ProjectLocked(f"project {self.root} is locked by another writer")
        try:
            os.write(fd, str(os.getpid()).encode())
            os.close(fd)
            yield
        finally:
            lock_path.unlink(missing_ok=True)

    # -- config views --------------------------------------------------------

    @property
    def name(self) -> str:
        return self.config.get("name", self.root.name)

    def hierarchy(self) -> TypeHierarchy:
        hierarchy = TypeHierarchy()
        for tname, tparent in (self.config.get("types") or {}).items():
            hierarchy.add(tname, tparent)
        hierarchy.finalize()
        return hierarchy

    def action_descriptions(self) -> tuple[ActionDescription, ...]:
        out = []
        for item in self.config.get("actions") or []:
            out.append(
                ActionDescription(
                    item["name"], item.get("description", ""), item.get("extra_info", "")
                )
            )
        return tuple(out)

    def templates(self):
        return load_template_dir(self.templates_dir)

    def transport(self):
        return transport_from_config(self.config.get("transport") or {}, self.root)

    def session_config(self) -> SessionConfig:
        return SessionConfig(
            domain_name=self.name,
            description=self.config.get("description", ""),
            hierarchy=self.hierarchy(),
            actions=self.action_descriptions(),
            templates=self.templates(),
            audit=AuditConfig(),
            max_feedback_rounds=int(self.config.get("max_feedback_rounds", 3)),
            planner_examples=self.config.get("planner_examples", ""),
        )

    def new_session(self) -> ConstructionSession:
        return ConstructionSession(self.session_config(), self.transport())

    # -- artifacts ------------------------------------------------------------

    def save_domain(
        self, domain: DomainModel, registry: PredicateRegistry, *, draft: bool = False
    ) -> None:
        """Write the canonical domain file; the corrected (non-draft) save also
        rewrites the registry file and requires both predicate sets to agree."""
        with self._lock():
            if not draft:
                domain_names = {norm_name(p.name) for p in domain.predicates}
                registry_names = {norm_name(p.name) for p in registry.entries}
                if domain_names != registry_names:
                    raise ValueError(
                        "registry and domain predicate sets differ: "
                        f"{sorted(domain_names ^ registry_names)}"
                    )
                lines = [f"{p.signature()}: {p.description}" for p in registry.entries]
                self.registry_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
            self.domain_path(draft).write_text(print_domain(domain), encoding="utf-8")

    def load_domain(self, *, draft: bool = False) -> DomainModel | None:
        path = self.domain_path(draft)
        if not path.exists():
            return None
        try:
            return parse_domain(path.read_text(encoding="utf-8"))
        except (PddlSyntaxError, UnsupportedFeature) as exc:
            raise CorruptArtifact(path, str(exc)) from exc

    def load_registry(self) -> PredicateRegistry:
        hierarchy = self.hierarchy()
        if not self.registry_path.exists():
            return PredicateRegistry(hierarchy)
        entries: list[PredicateDef] = []
        for lineno, raw in enumerate(
            self.registry_path.read_text(encoding="utf-8").splitlines(), start=1
        ):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            snippet = _balanced_snippet(line)
            if snippet is None:
                raise CorruptArtifact(self.registry_path, f"line {lineno}")
            try:
                signature = parse_predicate_signature(snippet, normalize=False)
            except (PddlSyntaxError, UnsupportedFeature) as exc:
                raise CorruptArtifact(self.registry_path, f"line {lineno}: {exc}") from exc
            description = line[line.find(snippet) + len(snippet):].lstrip(" :").strip()
            entries.append(PredicateDef(signature.name, signature.params, description))
        return PredicateRegistry(hierarchy, tuple(entries))

    # -- logs -----------------------------------------------------------------

    def conversation_path(self, conversation_id: str) -> Path:
        return self.conversations_dir / f"{conversation_id}.jsonl"

    def save_conversation(self, conversation: Conversation) -> None:
        persist(conversation, self.conversation_path(conversation.id))

    def load_conversation(self, conversation_id: str) -> Conversation:
        path = self.conversation_path(conversation_id)
        if not path.exists():
            raise CorruptArtifact(path, "missing conversation log")
        return load_conversation(path)

    def conversations(self) -> dict[str, Conversation]:
        out: dict[str, Conversation] = {}
        for path in sorted(self.conversations_dir.glob("*.jsonl")):
            try:
                conv = load_conversation(path)
            except CorruptLog:
                continue  # cassettes and foreign logs are not conversations
            out[conv.id] = conv
        return out

    def append_run(self, record: dict) -> None:
        self.runs_path.parent.mkdir(exist_ok=True)
        with self.runs_path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")

    def runs(self) -> list[dict]:
        if not self.runs_path.exists():
            return []
        out = []
        for lineno, line in enumerate(
            self.runs_path.read_text(encoding="utf-8").splitlines(), start=1
        ):
            if not line.strip():
                continue
            try:
                out.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise CorruptArtifact(self.runs_path, f"line {lineno}") from exc
        return out

    @property
    def revisions_path(self) -> Path:
        return self.root / "revisions.jsonl"

    def append_revision(self, payload: dict) -> None:
        with self.revisions_path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(payload, ensure_ascii=False) + "\n")

    def revisions(self) -> list[dict]:
        if not self.revisions_path.exists():
            return []
        out = []
        for lineno, line in enumerate(
            self.revisions_path.read_text(encoding="utf-8").splitlines(), start=1
        ):
            if not line.strip():
                continue
            try:
                out.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise CorruptArtifact(self.revisions_path, f"line {lineno}") from exc
        return out

    def append_event(self, event: FeedbackEvent) -> None:
        with self.events_path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(event.to_payload(), ensure_ascii=False) + "\n")

    def events(self) -> list[dict]:
        if not self.events_path.exists():
            return []
        out = []
        for lineno, line in enumerate(
            self.events_path.read_text(encoding="utf-8").splitlines(), start=1
        ):
            if not line.strip():
                continue
            try:
                out.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise CorruptArtifact(self.events_path, f"line {lineno}") from exc
        return out

    # -- session hydration ------------------------------------------------------

    def load_session(self) -> ConstructionSession:
        """Rebuild a construction session from the persisted artifacts."""
        session = self.new_session()
        session.registry = self.load_registry()
        domain = self.load_domain(draft=True) or self.load_domain()
        if domain is not None:
            for action in domain.actions:
                session.models[norm_name(action.name)] = action
        best_pass: dict[str, int] = {}
        for conv_id, conv in self.conversations().items():
            session.conversations[conv_id] = conv
            action = conv.tags.get("action")
            if action:
                key = norm_name(action)
                pass_number = int(conv.tags.get("pass", "1"))
                if pass_number >= best_pass.get(key, 0):
                    best_pass[key] = pass_number
                    session.action_conversation[key] = conv_id
                session.pass_number = max(session.pass_number, pass_number)
        for payload in self.events():
            session.events.append(FeedbackEvent.from_payload(payload))
        session.revision_base = len(self.revisions())
        return session

    def persist_session(self, session: ConstructionSession) -> None:
        """Write conversations, registry, domain files, and events."""
        for conv in session.conversations.values():
            self.save_conversation(conv)
        if session.events:
            existing = len(self.events())
            for event in session.events[existing:]:
                self.append_event(event)
        if session.models:
            from .builder import assemble_domain

            domain = assemble_domain(session)
            self.save_domain(domain, session.registry, draft=False)
        if session.draft is not None:
            self.save_domain(session.draft, session.registry, draft=True)
