"""Optional escape hatch to an external planner executable.

The command template names `{domain}`, `{problem}` and `{plan}` placeholders;
the plan file must hold one ``(action obj ...)`` per line.  The external plan
goes through exactly the same validation as built-in search results.
"""

from __future__ import annotations

import shlex
import subprocess
import tempfile
import time
from pathlib import Path

from ..pddl import DomainModel, PddlSyntaxError, ProblemSpec, parse_plan, print_domain, print_problem


def run_external_planner(
    domain: DomainModel,
    problem: ProblemSpec,
    command_template: str,
    *,
    timeout: float = 120.0,
):
    from .search import ExternalPlannerFailure, PlanResult, SearchStats

    start = time.monotonic()
    with tempfile.TemporaryDirectory(prefix="planforge-ext-") as tmp:
        tmp_path = Path(tmp)
        domain_file = tmp_path / "domain.pddl"
        problem_file = tmp_path / "problem.pddl"
        plan_file = tmp_path / "plan.txt"
        domain_file.write_text(print_domain(domain), encoding="utf-8")
        problem_file.write_text(print_problem(problem), encoding="utf-8")
        command = command_template.format(
            domain=str(domain_file), problem=str(problem_file), plan=str(plan_file)
        )
        try:
            proc = subprocess.run(
                shlex.split(command),
                capture_output=True,
                text=True,
                timeout=timeout,
            )
        except (OSError, subprocess.TimeoutExpired) as exc:
            raise ExternalPlannerFailure(f"external planner failed to run: {exc}") from exc
        output = proc.stdout + proc.stderr
        if proc.returncode != 0:
            raise ExternalPlannerFailure(
                f"external planner exited with {proc.returncode}", output
            )
        if not plan_file.exists():
            raise ExternalPlannerFailure("external planner wrote no plan file", output)
        try:
            plan = parse_plan(plan_file.read_text(encoding="utf-8"))
        except PddlSyntaxError as exc:
            raise ExternalPlannerFailure(
                f"external plan output is unparseable: {exc}", output
            ) from exc
    stats = SearchStats(
        expansions=0,
        generated=0,
        wall_time=time.monotonic() - start,
        plan_length=len(plan),
    )
    return PlanResult("plan", plan, stats)
