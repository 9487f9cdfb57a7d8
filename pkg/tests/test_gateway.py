"""Templates, transports, conversation persistence, cassette semantics."""

import json
import random

import pytest

from planforge.gateway import (
    CassetteMiss,
    Conversation,
    CorruptLog,
    PromptTemplate,
    RecordingTransport,
    ReplayTransport,
    ScriptedTransport,
    ScriptExhausted,
    UnboundSlot,
    UnknownSlot,
    complete,
    conversation_digest,
    load_conversation,
    load_template_dir,
    persist,
    transport_from_config,
)


def test_render_zero_slots_returns_body():
    template = PromptTemplate.from_text("t", "no slots here")
    assert template.render({}) == "no slots here"


def test_render_exact_substitution():
    template = PromptTemplate.from_text("t", "A={{a}} twice {{a}}, B={{b}}")
    out = template.render({"a": "1", "b": "{{a}}"})
    assert out == "A=1 twice 1, B={{a}}"


def test_render_unbound_slot():
    template = PromptTemplate.from_text("t", "needs {{x}}")
    with pytest.raises(UnboundSlot):
        template.render({})


def test_render_unknown_slot():
    template = PromptTemplate.from_text("t", "needs {{x}}")
    with pytest.raises(UnknownSlot):
        template.render({"x": "1", "y": "2"})


def test_construction_template_binds_all_parts():
    from planforge.workspace import Project  # noqa: F401 (ensures packaging)
    from importlib import resources

    body = (
        resources.files("planforge")
        .joinpath("templates", "construct_action.txt")
        .read_text(encoding="utf-8")
    )
    template = PromptTemplate.from_text("construct_action", body)
    assert set(template.required_slots) == {
        "task_instructions",
        "demonstrations",
        "domain_description",
        "action_description",
        "predicate_list",
    }
    rendered = template.render(
        {
            "task_instructions": "INSTR",
            "demonstrations": "DEMO",
            "domain_description": "DOM",
            "action_description": "ACT",
            "predicate_list": "PREDS",
        }
    )
    for piece in ("INSTR", "DEMO", "DOM", "ACT", "PREDS"):
        assert piece in rendered
    assert "{{" not in rendered


def test_goal_translation_template_golden(golden_dir):
    from importlib import resources

    body = (
        resources.files("planforge")
        .joinpath("templates", "goal_translation.txt")
        .read_text(encoding="utf-8")
    )
    template = PromptTemplate.from_text("goal_translation", body)
    rendered = template.render(
        {
            "predicate_list": "1. (package-at ?p - package ?l - location): true if the package ?p is at the location ?l",
            "object_list": "- p1 (package)\n- l1 (location)",
            "instruction": "Bring p1 to l1.",
        }
    )
    golden = (golden_dir / "goal_translation_render.txt").read_text(encoding="utf-8")
    assert rendered == golden


def test_scripted_transport_pops_queue():
    transport = ScriptedTransport(["only reply"])
    conv = Conversation("c1")
    conv.append("user", "hi")
    message = complete(conv, transport)
    assert message.content == "only reply"
    assert conv.messages[-1].role == "assistant"
    with pytest.raises(ScriptExhausted):
        conv.append("user", "again")
        complete(conv, transport)


def test_complete_requires_non_assistant_tail():
    conv = Conversation("c2")
    conv.append("user", "hi")
    conv.append("assistant", "yo")
    with pytest.raises(ValueError):
        complete(conv, ScriptedTransport(["x"]))


def test_replay_deterministic_and_miss_on_mutation(tmp_path):
    cassette = tmp_path / "cassette.jsonl"
    inner = ScriptedTransport(["answer one"])
    recorder = RecordingTransport(inner, cassette)
    conv = Conversation("c3")
    conv.append("user", "the question")
    first = recorder.complete(conv.outbound())
    replay = ReplayTransport(cassette)
    conv2 = Conversation("c3b")
    conv2.append("user", "the question")
    assert replay.complete(conv2.outbound()) == first
    assert replay.complete(conv2.outbound()) == first  # byte-identical again
    conv2.messages[-1] = type(conv2.messages[-1])("user", "the question!", 0.0)
    with pytest.raises(CassetteMiss):
        replay.complete(conv2.outbound())


def test_digest_covers_roles_and_content():
    a = Conversation("a")
    a.append("user", "x")
    b = Conversation("b")
    b.append("system", "x")
    assert conversation_digest(a.outbound()) != conversation_digest(b.outbound())


def test_persist_load_roundtrip_empty(tmp_path):
    conv = Conversation("empty", tags={"k": "v"})
    path = tmp_path / "c.jsonl"
    persist(conv, path)
    loaded = load_conversation(path)
    assert loaded.id == "empty"
    assert loaded.tags == {"k": "v"}
    assert loaded.messages == []


def test_persist_load_roundtrip_random_conversations(tmp_path):
    rng = random.Random(0)
    for i in range(100):
        conv = Conversation(f"c{i}", tags={"n": str(i)})
        for _ in range(rng.randint(0, 6)):
            role = rng.choice(["user", "assistant", "system"])
            text = "".join(rng.choices("abc \n{}\"'", k=rng.randint(0, 30)))
            conv.append(role, text)
        path = tmp_path / f"c{i}.jsonl"
        persist(conv, path)
        loaded = load_conversation(path)
        assert loaded.id == conv.id
        assert [(m.role, m.content) for m in loaded.messages] == [
            (m.role, m.content) for m in conv.messages
        ]


def test_persist_is_append_only(tmp_path):
    conv = Conversation("grow")
    conv.append("user", "one")
    path = tmp_path / "c.jsonl"
    persist(conv, path)
    before = path.read_bytes()
    conv.append("assistant", "two")
    persist(conv, path)
    after = path.read_bytes()
    assert after.startswith(before)
    assert len(load_conversation(path).messages) == 2


def test_truncated_line_raises_corrupt_log(tmp_path):
    path = tmp_path / "c.jsonl"
    conv = Conversation("x")
    conv.append("user", "hello")
    persist(conv, path)
    with path.open("a", encoding="utf-8") as fh:
        fh.write('{"role": "assistant", "content": "trunc')
    with pytest.raises(CorruptLog) as err:
        load_conversation(path)
    assert err.value.line_number == 3


def test_transport_from_config_modes(tmp_path):
    scripted = transport_from_config({"mode": "scripted", "replies": ["a"]})
    assert isinstance(scripted, ScriptedTransport)
    cassette = tmp_path / "c.jsonl"
    cassette.write_text(json.dumps({"digest": "d", "response": "r"}) + "\n")
    replay = transport_from_config({"mode": "replay", "cassette": "c.jsonl"}, tmp_path)
    assert isinstance(replay, ReplayTransport)
    live = transport_from_config(
        {"mode": "live", "endpoint": "http://localhost:1", "model": "m"}
    )
    assert live.endpoint == "http://localhost:1"
    with pytest.raises(ValueError):
        transport_from_config({"mode": "nope"})


def test_load_template_dir(tmp_path):
    (tmp_path / "one.txt").write_text("hello {{x}}")
    templates = load_template_dir(tmp_path)
    assert templates["one"].required_slots == ("x",)
