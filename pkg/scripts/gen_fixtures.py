#!/usr/bin/env python3
"""Regenerate the committed fixtures/ tree.

Deterministic: canonical domain/problem files straight from the in-code
fixtures, plus replay projects whose cassettes are recorded from scripted
ideal transports.  Run from the repo root:  python scripts/gen_fixtures.py
"""

from __future__ import annotations

import json
import shutil
import sys
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from planforge.builder import ConstructionSession, build_domain
from planforge.correction import FeedbackEvent, apply_feedback
from planforge.domains import (
    FIXTURE_ACTION_DESCRIPTIONS,
    FIXTURE_DESCRIPTIONS,
    FIXTURE_DOMAINS,
    household,
)
from planforge.gateway import RecordingTransport, ScriptedTransport
from planforge.generators import (
    blocksworld_problem,
    block_configurations,
    household_task,
    logistics_suite,
    tyreworld_task,
)
from planforge.orchestrator import Instruction, translate_goal
from planforge.pddl import norm_name, print_domain, print_problem
from planforge.scripting import (
    MASHED_ITEM_FEEDBACK,
    construction_replies,
    flawed_mash,
    render_action_reply,
)
from planforge.workspace import Project

FIXTURES = REPO / "fixtures"

PLANNER_EXAMPLES = {
    "logistics": (
        "Example task: package p1 is at location l1-2, the truck t1 is at "
        "location l1-1, and both locations are in city c1. The goal is to "
        "have p1 at l1-1.\n"
        "Example output:\n"
        "1. (drive-truck t1 l1-1 l1-2 c1)\n"
        "2. (load-truck p1 t1 l1-2)\n"
        "3. (drive-truck t1 l1-2 l1-1 c1)\n"
        "4. (unload-truck p1 t1 l1-1)\n\n"
        "Example task: package p1 is at the airport l1-1 of city c1, the "
        "airplane a1 is at the airport l2-1 of city c2. The goal is to have "
        "p1 at l2-1.\n"
        "Example output:\n"
        "1. (fly-airplane a1 l2-1 l1-1)\n"
        "2. (load-airplane p1 a1 l1-1)\n"
        "3. (fly-airplane a1 l1-1 l2-1)\n"
        "4. (unload-airplane p1 a1 l2-1)"
    ),
    "household": (
        "Example task: the robot bot is at the sink, the apple is on the "
        "countertop. The goal is to have a washed apple on the countertop.\n"
        "Example output:\n"
        "1. (go-to bot sink countertop)\n"
        "2. (pick-up bot apple countertop)\n"
        "3. (go-to bot countertop sink)\n"
        "4. (wash bot apple sink)\n"
        "5. (go-to bot sink countertop)\n"
        "6. (put-on bot apple countertop)\n\n"
        "Example task: the robot bot is at the dining table and the bowl is "
        "on the dining table. The goal is to have the bowl in the fridge, "
        "which is closed.\n"
        "Example output:\n"
        "1. (go-to bot dining-table fridge)\n"
        "2. (open-furniture bot fridge)\n"
        "3. (go-to bot fridge dining-table)\n"
        "4. (pick-up bot bowl dining-table)\n"
        "5. (go-to bot dining-table fridge)\n"
        "6. (put-on bot bowl fridge)"
    ),
    "tyreworld": (
        "Example task: the wrench is in the boot and the boot is closed. The "
        "goal is to carry the wrench.\n"
        "Example output:\n"
        "1. (open-container boot)\n"
        "2. (fetch wrench-1 boot)"
    ),
}


def project_config(name: str) -> dict:
    domain = FIXTURE_DOMAINS[name]()
    types: dict[str, str | None] = {}
    for tname, tparent in domain.hierarchy.items():
        types[tname] = None if tparent == "object" else tparent
    actions = [
        {"name": a.name, "description": a.text, "extra_info": a.extra_info}
        for a in FIXTURE_ACTION_DESCRIPTIONS[name]
    ]
    return {
        "name": name,
        "description": FIXTURE_DESCRIPTIONS[name],
        "types": types,
        "actions": actions,
        "transport": {"mode": "replay", "cassette": "conversations/construction.jsonl"},
        "planner": {"strategy": "gbfs", "heuristic": "hadd"},
        "planner_examples": PLANNER_EXAMPLES[name],
    }


def write_domain_files() -> None:
    domains_dir = FIXTURES / "domains"
    domains_dir.mkdir(parents=True, exist_ok=True)
    for name, factory in FIXTURE_DOMAINS.items():
        (domains_dir / f"{name}.pddl").write_text(
            print_domain(factory()), encoding="utf-8"
        )
    problems_dir = FIXTURES / "problems"
    problems_dir.mkdir(parents=True, exist_ok=True)
    blocks = ("b1", "b2", "b3")
    configs = block_configurations(blocks)
    bw = blocksworld_problem("bw-sample", blocks, configs[0], configs[-1])
    (problems_dir / "blocksworld-sample.pddl").write_text(
        print_problem(bw), encoding="utf-8"
    )
    logi = logistics_suite(1)[0]
    (problems_dir / "logistics-sample.pddl").write_text(
        print_problem(logi.problem.with_goal(logi.goal)), encoding="utf-8"
    )
    hh = household_task(11, goal_kind="wash-and-store")
    (problems_dir / "household-sample.pddl").write_text(
        print_problem(hh.problem.with_goal(hh.goal)), encoding="utf-8"
    )
    tyre = tyreworld_task(5)
    (problems_dir / "tyreworld-sample.pddl").write_text(
        print_problem(tyre.problem.with_goal(tyre.goal)), encoding="utf-8"
    )


def build_project(name: str, overrides=None) -> Project:
    root = FIXTURES / "projects" / name
    if root.exists():
        shutil.rmtree(root)
    project = Project.init(root, project_config(name))
    domain = FIXTURE_DOMAINS[name]()
    replies = construction_replies(domain, overrides=overrides)
    transport = RecordingTransport(
        ScriptedTransport(replies), project.conversations_dir / "construction.jsonl"
    )
    session = ConstructionSession(project.session_config(), transport)
    build_domain(session)
    project.persist_session(session)
    return project


def record_logistics_tasks(project: Project) -> None:
    tasks = logistics_suite(21)
    index = []
    replies = [t.goal_reply for t in tasks]
    transport = RecordingTransport(
        ScriptedTransport(replies), project.conversations_dir / "construction.jsonl"
    )
    registry = project.load_registry()
    templates = project.templates()
    for i, task in enumerate(tasks, start=1):
        rel = f"tasks/task-{i:02d}.pddl"
        (project.root / rel).write_text(print_problem(task.problem), encoding="utf-8")
        index.append({"problem": rel, "instruction": task.instruction})
        goal = translate_goal(
            Instruction(task.instruction, task.problem), registry, templates, transport
        )
        assert tuple(goal) == task.goal, f"goal mismatch for task {i}"
    (project.root / "tasks" / "index.json").write_text(
        json.dumps(index, indent=2), encoding="utf-8"
    )


def record_household_correction(project: Project) -> None:
    corrected = household().action("mash")
    reply = render_action_reply(corrected, [])
    transport = RecordingTransport(
        ScriptedTransport([reply]), project.conversations_dir / "construction.jsonl"
    )
    session = project.load_session()
    session.transport = transport
    event = FeedbackEvent(
        source="human", target_action="mash", text=MASHED_ITEM_FEEDBACK
    )
    revision = apply_feedback(session, "mash", event)
    assert "(not (pickupable ?o))" in revision.diff, revision.diff
    # In-memory only: the shipped project keeps the flawed model; the cassette
    # now answers the recorded feedback during replay.


def main() -> None:
    write_domain_files()
    logistics_project = build_project("logistics")
    record_logistics_tasks(logistics_project)
    household_project = build_project(
        "household", overrides={"mash": flawed_mash(household())}
    )
    record_household_correction(household_project)
    build_project("tyreworld")
    print(f"fixtures written under {FIXTURES}")


if __name__ == "__main__":
    main()
