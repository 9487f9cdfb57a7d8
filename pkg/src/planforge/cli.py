"""Command-line entry points; a thin client over the service operations.

Every command resolves to the same :class:`ProjectOps` call the HTTP API
serves, and ``--format structured`` prints exactly the API payload.  Exit
codes: 0 success, 1 domain errors, 2 usage errors.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import yaml

from .gateway import CassetteMiss, ScriptExhausted, TransportError
from .orchestrator import UntranslatableGoal
from .pddl import (
    ModelError,
    PddlSyntaxError,
    TypeMismatch,
    UnknownPredicate,
    UnsupportedFeature,
    parse_domain,
)
from .service.ops import NoDomain, ProjectOps, RevisionInFlight, UnknownAction
from .workspace import CorruptArtifact, Project, ProjectLocked, SchemaVersionMismatch

_DOMAIN_ERRORS = (
    PddlSyntaxError,
    UnsupportedFeature,
    TypeMismatch,
    UnknownPredicate,
    ModelError,
    UnknownAction,
    RevisionInFlight,
    NoDomain,
    UntranslatableGoal,
    CorruptArtifact,
    SchemaVersionMismatch,
    ProjectLocked,
    TransportError,
    CassetteMiss,
    ScriptExhausted,
    ValueError,
    FileNotFoundError,
)


def _emit(payload: dict, fmt: str, text_renderer=None) -> None:
    if fmt == "structured":
        click.echo(json.dumps(payload, indent=2, ensure_ascii=False))
    elif text_renderer is not None:
        text_renderer(payload)
    else:
        click.echo(json.dumps(payload, indent=2, ensure_ascii=False))


def _fail(exc: Exception) -> None:
    click.echo(str(exc), err=True)
    sys.exit(1)


@click.group()
@click.option(
    "--project",
    "-p",
    "project_dir",
    default=".",
    show_default=True,
    help="Project directory.",
)
@click.pass_context
def main(ctx: click.Context, project_dir: str) -> None:
    """Build, audit, correct, and plan with LLM-constructed PDDL domains."""
    ctx.ensure_object(dict)
    ctx.obj["project_dir"] = Path(project_dir)


def _ops(ctx: click.Context) -> ProjectOps:
    try:
        project = Project.load(ctx.obj["project_dir"])
        return ProjectOps(project)
    except _DOMAIN_ERRORS as exc:
        _fail(exc)
        raise AssertionError("unreachable")


_FORMAT = click.option(
    "--format",
    "fmt",
    type=click.Choice(["text", "structured"]),
    default="text",
    show_default=True,
)


@main.command()
@click.option("--name", required=True, help="Domain/project name.")
@click.option("--description", default="", help="Domain description.")
@click.option(
    "--config",
    "config_file",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="YAML config to seed the project with (overrides name/description).",
)
@click.pass_context
def init(ctx: click.Context, name: str, description: str, config_file: str | None) -> None:
    """Create a project directory with templates and config."""
    config: dict = {"name": name, "description": description, "types": {}, "actions": []}
    if config_file:
        config = yaml.safe_load(Path(config_file).read_text(encoding="utf-8"))
    try:
        project = Project.init(ctx.obj["project_dir"], config)
    except _DOMAIN_ERRORS as exc:
        _fail(exc)
        return
    click.echo(f"initialized project '{project.name}' at {project.root}")


@main.command()
@_FORMAT
@click.pass_context
def construct(ctx: click.Context, fmt: str) -> None:
    """Run the two-pass domain construction (build_domain)."""
    ops = _ops(ctx)
    try:
        payload = ops.construct()
    except _DOMAIN_ERRORS as exc:
        _fail(exc)
        return
    _emit(
        payload,
        fmt,
        lambda p: click.echo(
            f"constructed domain '{p['domain']}' with {len(p['actions'])} "
            f"action(s) and {p['predicates']} predicate(s)"
        ),
    )


@main.command()
@click.option(
    "--file",
    "pddl_file",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="Audit a PDDL domain file instead of the project models.",
)
@_FORMAT
@click.pass_context
def audit(ctx: click.Context, pddl_file: str | None, fmt: str) -> None:
    """Audit the project's action models (exit 1 when findings exist)."""
    if pddl_file is not None:
        try:
            parse_domain(Path(pddl_file).read_text(encoding="utf-8"))
        except UnsupportedFeature as exc:
            click.echo(str(exc))
            sys.exit(1)
        except _DOMAIN_ERRORS as exc:
            _fail(exc)
            return
        _emit({"clean": True, "findings": [], "messages": []}, fmt,
              lambda p: click.echo("clean"))
        return
    ops = _ops(ctx)
    try:
        payload = ops.audit_project()
    except _DOMAIN_ERRORS as exc:
        _fail(exc)
        return

    def render(p: dict) -> None:
        if p["clean"]:
            click.echo("clean")
        else:
            for message in p["messages"]:
                click.echo(message)

    _emit(payload, fmt, render)
    if not payload["clean"]:
        sys.exit(1)


@main.command()
@click.option("--action", "action_name", required=True)
@click.option("--message", default=None, help="Feedback text (skips the prompt).")
@click.option(
    "--source",
    type=click.Choice(["human", "plan-validation"]),
    default="human",
    show_default=True,
)
@_FORMAT
@click.pass_context
def correct(
    ctx: click.Context, action_name: str, message: str | None, source: str, fmt: str
) -> None:
    """Show an action in natural language and apply corrective feedback."""
    ops = _ops(ctx)
    try:
        detail = ops.get_action(action_name)
        if fmt == "text":
            click.echo(detail["nl"])
            click.echo()
        if message is None:
            message = click.prompt("feedback")
        payload = ops.submit_feedback(action_name, message, source)
    except _DOMAIN_ERRORS as exc:
        _fail(exc)
        return

    def render(p: dict) -> None:
        diff = p["revision"]["diff"]
        click.echo(diff if diff else "no change")
        click.echo("audit: " + ("clean" if p["audit"]["clean"] else "findings remain"))

    _emit(payload, fmt, render)


def _read_plan_lines(plan_file: str) -> list[str]:
    return Path(plan_file).read_text(encoding="utf-8").splitlines()


@main.command()
@click.argument("plan_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--problem", "problem_file", required=True,
              help="Problem file (absolute or project-relative).")
@_FORMAT
@click.pass_context
def validate(ctx: click.Context, plan_file: str, problem_file: str, fmt: str) -> None:
    """Validate a plan file against a problem; report all failures."""
    ops = _ops(ctx)
    try:
        payload = ops.validate(_read_plan_lines(plan_file), problem_file=problem_file)
    except _DOMAIN_ERRORS as exc:
        _fail(exc)
        return

    def render(p: dict) -> None:
        click.echo(p["verdict"])
        for failure in p["failures"]:
            unmet = ", ".join(failure["unmet"]) or "; ".join(failure["detail"])
            click.echo(f"step {failure['step']}: {failure['kind']}: {unmet}")

    _emit(payload, fmt, render)
    if payload["verdict"] != "valid":
        sys.exit(1)


@main.command()
@click.argument("plan_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--problem", "problem_file", required=True,
              help="Problem file (absolute or project-relative).")
@_FORMAT
@click.pass_context
def localize(ctx: click.Context, plan_file: str, problem_file: str, fmt: str) -> None:
    """Find the first failing step of a user-suggested plan."""
    ops = _ops(ctx)
    try:
        payload = ops.localize(_read_plan_lines(plan_file), problem_file=problem_file)
    except _DOMAIN_ERRORS as exc:
        _fail(exc)
        return

    def render(p: dict) -> None:
        if p["failing_step"] is None:
            click.echo("plan validates" if not p["unmet"] else "goal unmet")
        else:
            click.echo(f"first failing step: {p['failing_step']}")
            click.echo("unmet: " + ", ".join(p["unmet"]))
            click.echo("suspect actions: " + ", ".join(p["suspect_actions"]))

    _emit(payload, fmt, render)


@main.command()
@click.argument("instruction")
@click.option("--problem", "problem_file", required=True,
              help="Problem file (absolute or project-relative).")
@_FORMAT
@click.pass_context
def plan(ctx: click.Context, instruction: str, problem_file: str, fmt: str) -> None:
    """Translate the instruction to a goal and run the built-in planner."""
    ops = _ops(ctx)
    try:
        payload = ops.plan(instruction, problem_file=problem_file, mode="classical")
    except _DOMAIN_ERRORS as exc:
        _fail(exc)
        return

    def render(p: dict) -> None:
        click.echo(p["outcome"])
        for step in p["plan"] or []:
            click.echo(step)

    _emit(payload, fmt, render)
    if payload.get("outcome") not in ("plan",):
        sys.exit(1)


@main.command(name="llm-plan")
@click.argument("instruction")
@click.option("--problem", "problem_file", required=True,
              help="Problem file (absolute or project-relative).")
@_FORMAT
@click.pass_context
def llm_plan(ctx: click.Context, instruction: str, problem_file: str, fmt: str) -> None:
    """Back-prompted LLM planning with validation feedback."""
    ops = _ops(ctx)
    try:
        payload = ops.plan(instruction, problem_file=problem_file, mode="llm")
    except _DOMAIN_ERRORS as exc:
        _fail(exc)
        return

    def render(p: dict) -> None:
        click.echo(f"{p['status']} after {p['rounds']} round(s)")
        for step in p["plan"] or []:
            click.echo(step)

    _emit(payload, fmt, render)
    if payload.get("status") != "success":
        sys.exit(1)


@main.command()
@_FORMAT
@click.pass_context
def report(ctx: click.Context, fmt: str) -> None:
    """Model summary, feedback ledger, and run statistics."""
    ops = _ops(ctx)
    try:
        payload = ops.report()
    except _DOMAIN_ERRORS as exc:
        _fail(exc)
        return

    def render(p: dict) -> None:
        model = p["model"]
        if model:
            click.echo(
                f"domain {model['domain']}: {model['actions']} actions, "
                f"{model['predicates']} predicates, "
                f"{model['params_and_literals']} params and literals"
            )
        feedback = p["feedback"]
        click.echo(
            f"feedback: {feedback['total_human_messages']} human message(s), "
            f"{feedback['errors_resolved']} error(s) resolved, "
            f"{feedback['extra_rounds']} extra round(s)"
        )
        for mode, stats in sorted(p["runs"].items()):
            rate = stats["solve_rate"]
            shown = f"{rate * 100:.0f}%" if rate is not None else "n/a"
            click.echo(f"{mode}: {stats['solved']}/{stats['tasks']} solved ({shown})")

    _emit(payload, fmt, render)


@main.command()
@click.option("--port", default=8075, show_default=True, type=int)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option(
    "--static",
    "static_dir",
    type=click.Path(file_okay=False),
    default=None,
    help="Directory of built console assets to serve at /.",
)
@click.pass_context
def serve(ctx: click.Context, port: int, host: str, static_dir: str | None) -> None:
    """Serve the /v1 HTTP API (and the console, when assets are given)."""
    import uvicorn

    from .service.app import create_app

    try:
        project = Project.load(ctx.obj["project_dir"])
    except _DOMAIN_ERRORS as exc:
        _fail(exc)
        return
    app = create_app(project, static_dir=static_dir)
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
