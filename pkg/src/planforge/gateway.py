"""The single boundary to language models.

Everything above this module talks to an abstract transport; live HTTP,
recorded-replay cassettes, and scripted queues are interchangeable, which is
what makes every pipeline deterministic under test.  Replay cassettes are
keyed by a digest of the outbound message list, so a stale cassette fails
loudly (:class:`CassetteMiss`) instead of silently answering a new prompt.
"""

from __future__ import annotations

import hashlib
import json
import os
import re
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Protocol, Sequence

_PLACEHOLDER_RE = re.compile(r"\{\{([a-zA-Z0-9_]+)\}\}")


class TransportError(Exception):
    """Live transport failure (network, auth, malformed response)."""


class CassetteMiss(Exception):
    def __init__(self, digest: str) -> None:
        super().__init__(
            f"no cassette entry for request digest {digest}; "
            "the prompt has drifted from the recorded fixtures"
        )
        self.digest = digest


class ScriptExhausted(Exception):
    def __init__(self) -> None:
        super().__init__("scripted transport has no more replies")


class CorruptLog(Exception):
    def __init__(self, line_number: int, path: str = "") -> None:
        where = f" in {path}" if path else ""
        super().__init__(f"corrupt conversation log{where} at line {line_number}")
        self.line_number = line_number


class UnboundSlot(Exception):
    def __init__(self, name: str) -> None:
        super().__init__(f"template slot '{name}' is not bound")
        self.slot = name


class UnknownSlot(Exception):
    def __init__(self, name: str) -> None:
        super().__init__(f"binding '{name}' does not match any template slot")
        self.slot = name


@dataclass(frozen=True)
class Message:
    role: str  # "system" | "user" | "assistant"
    content: str
    ts: float = 0.0


@dataclass
class Conversation:
    """Append-only dialogue; ids are unique within a workspace."""

    id: str
    messages: list[Message] = field(default_factory=list)
    tags: dict[str, str] = field(default_factory=dict)

    def append(self, role: str, content: str, *, clock: Callable[[], float] = time.time) -> Message:
        if role not in ("system", "user", "assistant"):
            raise ValueError(f"unknown role '{role}'")
        msg = Message(role, content, clock())
        self.messages.append(msg)
        return msg

    @property
    def last_role(self) -> str | None:
        return self.messages[-1].role if self.messages else None

    def outbound(self) -> list[Message]:
        return list(self.messages)


@dataclass(frozen=True)
class PromptTemplate:
    """Text with ``{{placeholder}}`` slots; rendering is exact substitution."""

    id: str
    body: str
    required_slots: tuple[str, ...] = ()

    @classmethod
    def from_text(cls, template_id: str, body: str) -> "PromptTemplate":
        slots = tuple(dict.fromkeys(_PLACEHOLDER_RE.findall(body)))
        return cls(template_id, body, slots)

    def render(self, bindings: dict[str, str]) -> str:
        slots = set(_PLACEHOLDER_RE.findall(self.body))
        for name in self.required_slots:
            if name not in bindings:
                raise UnboundSlot(name)
        for name in bindings:
            if name not in slots:
                raise UnknownSlot(name)
        missing = slots - set(bindings)
        if missing:
            raise UnboundSlot(sorted(missing)[0])
        out = self.body
        for name, value in bindings.items():
            out = out.replace("{{" + name + "}}", value)
        return out


def conversation_digest(messages: Sequence[Message]) -> str:
    payload = json.dumps(
        [[m.role, m.content] for m in messages],
        ensure_ascii=False,
        separators=(",", ":"),
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


class Transport(Protocol):
    def complete(self, messages: Sequence[Message]) -> str: ...


class ScriptedTransport:
    """Pops canned replies from a queue; exhaustion is an error."""

    def __init__(self, replies: Sequence[str]) -> None:
        self._queue: list[str] = list(replies)

    def __len__(self) -> int:
        return len(self._queue)

    def push(self, *replies: str) -> None:
        self._queue.extend(replies)

    def complete(self, messages: Sequence[Message]) -> str:
        if not self._queue:
            raise ScriptExhausted()
        return self._queue.pop(0)


class ReplayTransport:
    """Serves responses from a cassette keyed by request digest."""

    def __init__(self, cassette_path: str | Path) -> None:
        self.path = Path(cassette_path)
        self._entries: dict[str, str] = {}
        if self.path.exists():
            for lineno, line in enumerate(
                self.path.read_text(encoding="utf-8").splitlines(), start=1
            ):
                if not line.strip():
                    continue
                try:
                    record = json.loads(line)
                    self._entries[record["digest"]] = record["response"]
                except (json.JSONDecodeError, KeyError, TypeError) as exc:
                    raise CorruptLog(lineno, str(self.path)) from exc

    def complete(self, messages: Sequence[Message]) -> str:
        digest = conversation_digest(messages)
        if digest not in self._entries:
            raise CassetteMiss(digest)
        return self._entries[digest]


class RecordingTransport:
    """Wraps another transport and appends each exchange to a cassette file."""

    def __init__(self, inner: Transport, cassette_path: str | Path) -> None:
        self.inner = inner
        self.path = Path(cassette_path)
        self.path.parent.mkdir(parents=True, exist_ok=True)

    def complete(self, messages: Sequence[Message]) -> str:
        response = self.inner.complete(messages)
        digest = conversation_digest(messages)
        hint = messages[-1].content[:60].replace("\n", " ") if messages else ""
        record = {"digest": digest, "hint": hint, "response": response}
        with self.path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")
        return response


class LiveTransport:
    """HTTP chat-completion endpoint; the API key is read from an env var."""

    def __init__(
        self,
        endpoint: str,
        model: str,
        api_key_env: str = "",
        *,
        max_attempts: int = 3,
        backoff: float = 0.5,
    ) -> None:
        self.endpoint = endpoint.rstrip("/")
        self.model = model
        self.api_key_env = api_key_env
        self.max_attempts = max_attempts
        self.backoff = backoff

    def complete(self, messages: Sequence[Message]) -> str:
        import httpx

        headers = {}
        if self.api_key_env:
            key = os.environ.get(self.api_key_env)
            if not key:
                raise TransportError(
                    f"environment variable '{self.api_key_env}' is not set"
                )
            headers["Authorization"] = f"Bearer {key}"
        body = {
            "model": self.model,
            "messages": [{"role": m.role, "content": m.content} for m in messages],
        }
        last_error: Exception | None = None
        for attempt in range(self.max_attempts):
            try:
                response = httpx.post(
                    f"{self.endpoint}/chat/completions",
                    json=body,
                    headers=headers,
                    timeout=120.0,
                )
                response.raise_for_status()
                data = response.json()
                return data["choices"][0]["message"]["content"]
            except Exception as exc:  # noqa: BLE001 - uniform retry boundary
                last_error = exc
                if attempt + 1 < self.max_attempts:
                    time.sleep(self.backoff * (2**attempt))
        raise TransportError(f"live completion failed: {last_error}") from last_error


def complete(
    conversation: Conversation,
    transport: Transport,
    *,
    clock: Callable[[], float] = time.time,
) -> Message:
    """Send the conversation and append the assistant reply to it."""
    if conversation.last_role == "assistant":
        raise ValueError("conversation already ends with an assistant message")
    reply = transport.complete(conversation.outbound())
    return conversation.append("assistant", reply, clock=clock)


def persist(conversation: Conversation, path: str | Path) -> None:
    """Write the conversation as a line-per-message log; appends only.

    An existing log is never rewritten: lines already on disk stay untouched
    and only messages beyond them are appended.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    existing = 0
    needs_header = True
    if path.exists() and path.stat().st_size > 0:
        needs_header = False
        with path.open("r", encoding="utf-8") as fh:
            existing = max(sum(1 for line in fh if line.strip()) - 1, 0)
    with path.open("a", encoding="utf-8") as fh:
        if needs_header:
            fh.write(
                json.dumps(
                    {"conversation": conversation.id, "tags": conversation.tags},
                    ensure_ascii=False,
                )
                + "\n"
            )
        for msg in conversation.messages[existing:]:
            fh.write(
                json.dumps(
                    {"role": msg.role, "content": msg.content, "ts": msg.ts},
                    ensure_ascii=False,
                )
                + "\n"
            )


def load_conversation(path: str | Path) -> Conversation:
    path = Path(path)
    lines = path.read_text(encoding="utf-8").splitlines()
    if not lines:
        raise CorruptLog(1, str(path))
    try:
        header = json.loads(lines[0])
        conv = Conversation(header["conversation"], tags=dict(header.get("tags", {})))
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise CorruptLog(1, str(path)) from exc
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
            conv.messages.append(
                Message(record["role"], record["content"], record.get("ts", 0.0))
            )
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise CorruptLog(lineno, str(path)) from exc
    return conv


def load_template_file(path: str | Path) -> PromptTemplate:
    path = Path(path)
    return PromptTemplate.from_text(path.stem, path.read_text(encoding="utf-8"))


def load_template_dir(directory: str | Path) -> dict[str, PromptTemplate]:
    directory = Path(directory)
    out: dict[str, PromptTemplate] = {}
    for path in sorted(directory.glob("*.txt")):
        out[path.stem] = load_template_file(path)
    return out


def transport_from_config(config: dict, base_dir: str | Path = ".") -> Transport:
    """Build a transport from a project config mapping."""
    mode = config.get("mode", "scripted")
    if mode == "scripted":
        return ScriptedTransport(list(config.get("replies", [])))
    if mode == "replay":
        cassette = Path(base_dir) / config["cassette"]
        return ReplayTransport(cassette)
    if mode == "live":
        return LiveTransport(
            endpoint=config["endpoint"],
            model=config["model"],
            api_key_env=config.get("api_key_env", ""),
        )
    raise ValueError(f"unknown transport mode '{mode}'")
