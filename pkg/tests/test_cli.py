"""CLI commands, exit codes, and CLI/HTTP payload parity."""

import json

import pytest
import yaml
from click.testing import CliRunner
from fastapi.testclient import TestClient

from planforge.cli import main
from planforge.domains import logistics
from planforge.generators import logistics_task
from planforge.pddl import print_plan, print_problem
from planforge.planner import solve
from planforge.scripting import MASHED_ITEM_FEEDBACK
from planforge.service.app import create_app
from planforge.workspace import Project

from conftest import fixture_project_copy


@pytest.fixture()
def runner():
    return CliRunner()


def _strip_volatile(payload):
    if isinstance(payload, dict):
        return {
            k: _strip_volatile(v)
            for k, v in payload.items()
            if k not in ("wall_time", "ts")
        }
    if isinstance(payload, list):
        return [_strip_volatile(v) for v in payload]
    return payload


def test_help_text_golden(runner, golden_dir):
    result = runner.invoke(main, ["--help"])
    assert result.exit_code == 0
    golden = (golden_dir / "cli_help.txt").read_text(encoding="utf-8")
    assert result.output == golden


def test_usage_error_exits_2(runner):
    result = runner.invoke(main, ["no-such-command"])
    assert result.exit_code == 2


def test_init_creates_project(runner, tmp_path):
    result = runner.invoke(
        main, ["--project", str(tmp_path / "p"), "init", "--name", "demo"]
    )
    assert result.exit_code == 0
    assert (tmp_path / "p" / "project.cfg").exists()
    assert (tmp_path / "p" / "templates" / "construct_action.txt").exists()


def test_construct_runs_build_domain(runner, tmp_path):
    root = fixture_project_copy("logistics", tmp_path)
    for name in ("domain.pddl", "domain.draft.pddl", "predicates.txt"):
        (root / name).unlink()
    result = runner.invoke(main, ["--project", str(root), "construct"])
    assert result.exit_code == 0, result.output
    assert "constructed domain 'logistics' with 6 action(s)" in result.output
    assert (root / "domain.pddl").exists()


def test_audit_clean_project_exit_zero(runner, tmp_path):
    root = fixture_project_copy("logistics", tmp_path)
    result = runner.invoke(main, ["--project", str(root), "audit"])
    assert result.exit_code == 0
    assert "clean" in result.output


def test_audit_forall_fixture_exits_one_with_category_message(runner, tmp_path):
    bad = tmp_path / "bad.pddl"
    bad.write_text(
        "(define (domain q) (:types w) (:predicates (p ?x - w))"
        " (:action z :parameters (?x - w)"
        " :precondition (forall (?y - w) (p ?y)) :effect (p ?x)))"
    )
    result = runner.invoke(main, ["audit", "--file", str(bad)])
    assert result.exit_code == 1
    assert result.output.startswith(
        "The precondition or effect contain the keyword 'forall' that is not supported"
    )


def test_validate_and_localize_plan_file(runner, tmp_path):
    root = fixture_project_copy("logistics", tmp_path)
    task = logistics_task(0)
    problem = task.problem.with_goal(task.goal)
    problem_file = tmp_path / "problem.pddl"
    problem_file.write_text(print_problem(problem))
    plan = solve(logistics(), problem).plan
    plan_file = tmp_path / "plan.txt"
    plan_file.write_text(print_plan(plan))

    result = runner.invoke(
        main,
        ["--project", str(root), "validate", str(plan_file), "--problem", str(problem_file)],
    )
    assert result.exit_code == 0, result.output
    assert result.output.splitlines()[0] == "valid"

    empty_plan = tmp_path / "empty.txt"
    empty_plan.write_text("")
    result = runner.invoke(
        main,
        ["--project", str(root), "validate", str(empty_plan), "--problem", str(problem_file)],
    )
    assert result.exit_code == 1
    assert "unmet-goal" in result.output

    result = runner.invoke(
        main,
        ["--project", str(root), "localize", str(plan_file), "--problem", str(problem_file)],
    )
    assert result.exit_code == 0
    assert "plan validates" in result.output


def test_plan_trivial_task_prints_empty_plan_exit_zero(runner, tmp_path):
    root = fixture_project_copy("logistics", tmp_path)
    task = logistics_task(0)
    trivial = task.problem  # empty goal: nothing to do
    problem_file = root / "tasks" / "trivial.pddl"
    problem_file.write_text(print_problem(trivial))
    cfg = yaml.safe_load((root / "project.cfg").read_text())
    cfg["transport"] = {
        "mode": "scripted",
        "replies": ["```\n(and\n    " + str(trivial.init[0]) + "\n)\n```"],
    }
    (root / "project.cfg").write_text(yaml.safe_dump(cfg, sort_keys=False))
    result = runner.invoke(
        main,
        ["--project", str(root), "plan", "keep everything as is",
         "--problem", str(problem_file)],
    )
    assert result.exit_code == 0, result.output
    assert result.output.splitlines()[0] == "plan"
    assert len(result.output.splitlines()) == 1  # empty plan: no steps printed


def test_llm_plan_scripted_project(runner, tmp_path):
    root = fixture_project_copy("logistics", tmp_path)
    task = logistics_task(0)
    problem = task.problem.with_goal(task.goal)
    good = solve(logistics(), problem).plan
    plan_text = "\n".join(f"{i}. {s}" for i, s in enumerate(good.steps, start=1))
    cfg = yaml.safe_load((root / "project.cfg").read_text())
    cfg["transport"] = {
        "mode": "scripted",
        "replies": [task.goal_reply, plan_text],
    }
    (root / "project.cfg").write_text(yaml.safe_dump(cfg, sort_keys=False))
    problem_file = root / "tasks" / "llm.pddl"
    problem_file.write_text(print_problem(task.problem))
    result = runner.invoke(
        main,
        ["--project", str(root), "llm-plan", task.instruction,
         "--problem", str(problem_file), "--format", "structured"],
    )
    assert result.exit_code == 0, result.output
    payload = json.loads(result.output)
    assert payload["status"] == "success"
    assert payload["rounds"] == 1


def test_correct_with_message(runner, tmp_path):
    root = fixture_project_copy("household", tmp_path)
    result = runner.invoke(
        main,
        ["--project", str(root), "correct", "--action", "mash",
         "--message", MASHED_ITEM_FEEDBACK],
    )
    assert result.exit_code == 0, result.output
    assert "+      (not (pickupable ?o))" in result.output
    assert "audit: clean" in result.output


def test_report_logistics_replay_prints_21_of_21(runner, tmp_path):
    root = fixture_project_copy("logistics", tmp_path)
    index = json.loads((root / "tasks" / "index.json").read_text())
    for entry in index:
        result = runner.invoke(
            main,
            ["--project", str(root), "plan", entry["instruction"],
             "--problem", entry["problem"]],
        )
        assert result.exit_code == 0, result.output
    result = runner.invoke(main, ["--project", str(root), "report"])
    assert result.exit_code == 0
    assert "classical: 21/21 solved (100%)" in result.output


def test_cli_http_parity_on_plan_validate_audit(runner, tmp_path):
    cli_root = fixture_project_copy("logistics", tmp_path / "cli")
    http_root = fixture_project_copy("logistics", tmp_path / "http")
    client = TestClient(create_app(Project.load(http_root)))
    index = json.loads((cli_root / "tasks" / "index.json").read_text())
    entry = index[0]

    # plan
    cli_result = runner.invoke(
        main,
        ["--project", str(cli_root), "plan", entry["instruction"],
         "--problem", entry["problem"], "--format", "structured"],
    )
    assert cli_result.exit_code == 0, cli_result.output
    http_payload = client.post(
        "/v1/plan",
        json={"instruction": entry["instruction"], "problem_file": entry["problem"]},
    ).json()
    assert _strip_volatile(json.loads(cli_result.output)) == _strip_volatile(http_payload)

    # validate
    task = logistics_task(0)
    problem = task.problem.with_goal(task.goal)
    problem_file = tmp_path / "problem.pddl"
    problem_file.write_text(print_problem(problem))
    plan_file = tmp_path / "plan.txt"
    plan_file.write_text(print_plan(solve(logistics(), problem).plan))
    cli_result = runner.invoke(
        main,
        ["--project", str(cli_root), "validate", str(plan_file),
         "--problem", str(problem_file), "--format", "structured"],
    )
    http_payload = client.post(
        "/v1/validate",
        json={
            "plan": plan_file.read_text().splitlines(),
            "problem": problem_file.read_text(),
        },
    ).json()
    assert _strip_volatile(json.loads(cli_result.output)) == _strip_volatile(http_payload)

    # audit
    cli_result = runner.invoke(
        main, ["--project", str(cli_root), "audit", "--format", "structured"]
    )
    http_payload = client.get("/v1/audit").json()
    assert _strip_volatile(json.loads(cli_result.output)) == _strip_volatile(http_payload)
