"""Parameterized task generators for the fixture domains.

These back the desk-scale experiment analogs: exhaustive Blocksworld
enumeration for optimality checks, seeded random Logistics/Household/
Tyreworld tasks for the pipeline suites, and noisy action sequences for the
validator oracle.  Everything is a pure function of the seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .pddl import DomainModel, Literal, Plan, PlanStep, ProblemSpec, norm_name
from .state import apply_action, bind_action, initial_state
from .planner.grounding import enumerate_bindings


def _lit(name: str, *args: str) -> Literal:
    return Literal(name, tuple(args))


# ---------------------------------------------------------------------------
# Blocksworld enumeration

Config = frozenset  # frozenset[tuple[str, ...]]: towers listed bottom-to-top


def block_configurations(blocks: tuple[str, ...]) -> list[Config]:
    """All ways to arrange the given blocks into towers on the table."""
    if not blocks:
        return [frozenset()]
    first, rest = blocks[0], blocks[1:]
    configs: set[Config] = set()
    for partial in block_configurations(rest):
        configs.add(partial | {(first,)})
        for tower in partial:
            others = partial - {tower}
            for pos in range(len(tower) + 1):
                new_tower = tower[:pos] + (first,) + tower[pos:]
                configs.add(others | {new_tower})
    return sorted(configs, key=lambda c: sorted(c))


def config_init(config: Config) -> list[Literal]:
    facts: list[Literal] = [_lit("robot-arm-empty")]
    for tower in sorted(config):
        facts.append(_lit("block-on-table", tower[0]))
        for below, above in zip(tower, tower[1:]):
            facts.append(_lit("block-on", above, below))
        facts.append(_lit("block-clear", tower[-1]))
    return facts


def config_goal(config: Config) -> list[Literal]:
    facts: list[Literal] = []
    for tower in sorted(config):
        facts.append(_lit("block-on-table", tower[0]))
        for below, above in zip(tower, tower[1:]):
            facts.append(_lit("block-on", above, below))
    return facts


def blocksworld_problem(
    name: str, blocks: tuple[str, ...], init: Config, goal: Config
) -> ProblemSpec:
    return ProblemSpec(
        name=name,
        domain_name="blocksworld",
        objects=tuple((b, "block") for b in blocks),
        init=tuple(config_init(init)),
        goal=tuple(config_goal(goal)),
    )


def enumerate_blocksworld_instances(n_blocks: int):
    """Every (init config, goal config) pair over exactly ``n_blocks`` blocks."""
    blocks = tuple(f"b{i}" for i in range(1, n_blocks + 1))
    configs = block_configurations(blocks)
    for i, init in enumerate(configs):
        for j, goal in enumerate(configs):
            yield blocksworld_problem(f"bw-{n_blocks}-{i}-{j}", blocks, init, goal)


# ---------------------------------------------------------------------------
# Logistics

@dataclass(frozen=True)
class GeneratedTask:
    problem: ProblemSpec  # goal-less context
    goal: tuple[Literal, ...]
    instruction: str
    goal_reply: str  # scripted goal-translation reply achieving `goal`


def goal_reply(goal: tuple[Literal, ...]) -> str:
    """The reply text an ideal goal-translation model would produce."""
    inner = "\n".join(f"    {lit}" for lit in goal)
    return f"```\n(and\n{inner}\n)\n```"


def logistics_task(
    seed: int,
    *,
    n_cities: int = 2,
    n_locations: int = 2,
    n_packages: int = 2,
    n_planes: int = 1,
) -> GeneratedTask:
    rng = random.Random(seed)
    objects: list[tuple[str, str]] = []
    init: list[Literal] = []
    locations: list[str] = []
    airports: list[str] = []
    for ci in range(1, n_cities + 1):
        city = f"c{ci}"
        objects.append((city, "city"))
        city_locations = [f"l{ci}-{li}" for li in range(1, n_locations + 1)]
        for loc in city_locations:
            objects.append((loc, "location"))
            init.append(_lit("location-in-city", loc, city))
        airports.append(city_locations[0])
        init.append(_lit("airport", city_locations[0]))
        truck = f"t{ci}"
        objects.append((truck, "truck"))
        init.append(_lit("truck-at", truck, rng.choice(city_locations)))
        locations.extend(city_locations)
    for ai in range(1, n_planes + 1):
        plane = f"a{ai}"
        objects.append((plane, "plane"))
        init.append(_lit("plane-at", plane, rng.choice(airports)))
    goal: list[Literal] = []
    wishes: list[str] = []
    for pi in range(1, n_packages + 1):
        package = f"p{pi}"
        objects.append((package, "package"))
        origin = rng.choice(locations)
        init.append(_lit("package-at", package, origin))
        destination = rng.choice([l for l in locations if l != origin])
        goal.append(_lit("package-at", package, destination))
        wishes.append(f"package {package} has to be at location {destination}")
    instruction = "Please transport the packages so that " + "; ".join(wishes) + "."
    problem = ProblemSpec(
        name=f"logistics-{seed}",
        domain_name="logistics",
        objects=tuple(objects),
        init=tuple(init),
    )
    return GeneratedTask(problem, tuple(goal), instruction, goal_reply(tuple(goal)))


# ---------------------------------------------------------------------------
# Household

_HOUSEHOLD_FURNITURE = (
    # (name, flags)
    ("countertop", ("flat-surface",)),
    ("dining-table", ("flat-surface",)),
    ("fridge", ("furniture-openable",)),
    ("microwave-1", ("furniture-openable", "microwave")),
    ("stove-burner-1", ("stove-burner",)),
    ("sink", ("water-source",)),
    ("trash-can-1", ("trash-can",)),
    ("carpet-1", ("carpet",)),
)

_HOUSEHOLD_OBJECTS = (
    # (name, type, flags)
    ("apple", "householdObject", ("food", "pickupable", "object-clear")),
    ("potato", "householdObject", ("food", "pickupable", "object-clear")),
    ("knife-1", "householdObject", ("knife", "pickupable", "object-clear")),
    ("cloth-1", "householdObject", ("cloth", "pickupable", "object-clear", "object-clean")),
    ("vacuum-1", "householdObject", ("vacuum-cleaner", "pickupable", "object-clear")),
    ("cutting-board-1", "smallReceptacle", ("cutting-board", "pickupable", "object-clear")),
    ("pan-1", "smallReceptacle", ("pan", "pickupable", "object-clear")),
    ("bowl-1", "smallReceptacle", ("pickupable", "object-clear")),
    ("lunch-box-1", "smallReceptacle", ("receptacle-openable", "pickupable", "object-clear")),
    ("blender-1", "smallReceptacle", ("blender", "appliance-togglable", "object-clear")),
)

_FLAT_FURNITURE = ("countertop", "dining-table")

HOUSEHOLD_GOAL_KINDS = (
    "wash-and-store",
    "slice",
    "heat-microwave",
    "heat-pan",
    "mash",
    "wipe",
    "vacuum",
    "stack",
    "store-in-box",
)


def household_task(seed: int, *, goal_kind: str | None = None) -> GeneratedTask:
    rng = random.Random(seed)
    kind = goal_kind or rng.choice(HOUSEHOLD_GOAL_KINDS)
    objects: list[tuple[str, str]] = [("bot", "robot")]
    init: list[Literal] = [_lit("robot-hand-empty", "bot")]
    furniture = [name for name, _ in _HOUSEHOLD_FURNITURE]
    for name, flags in _HOUSEHOLD_FURNITURE:
        objects.append((name, "furnitureAppliance"))
        for flag in flags:
            init.append(_lit(flag, name))
        if "furniture-openable" in flags and rng.random() < 0.7:
            init.append(_lit("furniture-closed", name))
    init.append(_lit("robot-at", "bot", rng.choice(furniture)))
    for name, typ, flags in _HOUSEHOLD_OBJECTS:
        objects.append((name, typ))
        for flag in flags:
            init.append(_lit(flag, name))
        # Receptacles stay on flat furniture so their contents are reachable.
        if typ == "smallReceptacle":
            init.append(_lit("object-on", name, rng.choice(_FLAT_FURNITURE)))
        else:
            init.append(_lit("object-on", name, rng.choice(furniture[:6])))
        if "receptacle-openable" in flags and rng.random() < 0.5:
            init.append(_lit("receptacle-closed", name))
    if rng.random() < 0.2:
        init.append(_lit("vacuum-full", "vacuum-1"))

    food = rng.choice(("apple", "potato"))
    if kind == "wash-and-store":
        goal = (_lit("object-clean", food), _lit("object-on", food, "fridge"))
        instruction = f"Put a washed {food} in the fridge."
    elif kind == "slice":
        goal = (_lit("object-sliced", food),)
        instruction = f"Slice the {food}."
    elif kind == "heat-microwave":
        goal = (_lit("object-heated", food), _lit("object-on", food, "microwave-1"))
        instruction = f"Heat the {food} in the microwave and leave it there."
    elif kind == "heat-pan":
        goal = (
            _lit("object-heated", food),
            _lit("object-in-receptacle", food, "pan-1"),
            _lit("object-on", "pan-1", "stove-burner-1"),
        )
        instruction = f"Heat the {food} in the pan on the stove burner."
    elif kind == "mash":
        goal = (_lit("object-mashed", food),)
        instruction = f"Mash the {food} with the blender."
    elif kind == "wipe":
        target = rng.choice(_FLAT_FURNITURE)
        goal = (_lit("surface-wiped", target),)
        instruction = f"Wipe the {target} clean."
    elif kind == "vacuum":
        goal = (_lit("carpet-clean", "carpet-1"),)
        instruction = "Vacuum the carpet."
    elif kind == "stack":
        goal = (_lit("object-stacked-on", "bowl-1", "cutting-board-1"),)
        instruction = "Stack the bowl on top of the cutting board."
    elif kind == "store-in-box":
        goal = (_lit("object-in-receptacle", food, "lunch-box-1"),)
        instruction = f"Put the {food} into the lunch box."
    else:
        raise ValueError(f"unknown household goal kind '{kind}'")
    problem = ProblemSpec(
        name=f"household-{kind}-{seed}",
        domain_name="household",
        objects=tuple(objects),
        init=tuple(init),
    )
    return GeneratedTask(problem, goal, instruction, goal_reply(goal))


# ---------------------------------------------------------------------------
# Tyreworld

def tyreworld_task(seed: int, *, n_hubs: int = 1) -> GeneratedTask:
    rng = random.Random(seed)
    objects: list[tuple[str, str]] = [
        ("boot", "container"),
        ("wrench-1", "tool"),
        ("jack-1", "tool"),
        ("pump-1", "tool"),
    ]
    init: list[Literal] = [
        _lit("wrench", "wrench-1"),
        _lit("jack", "jack-1"),
        _lit("pump", "pump-1"),
        _lit("object-in-container", "wrench-1", "boot"),
        _lit("object-in-container", "jack-1", "boot"),
        _lit("object-in-container", "pump-1", "boot"),
    ]
    goal: list[Literal] = []
    wishes: list[str] = []
    for hi in range(1, n_hubs + 1):
        hub, flat, spare, nut = f"hub{hi}", f"flat{hi}", f"spare{hi}", f"nut{hi}"
        objects.extend([(hub, "hub"), (flat, "wheel"), (spare, "wheel"), (nut, "nut")])
        init.extend(
            [
                _lit("wheel-on-hub", flat, hub),
                _lit("hub-occupied", hub),
                _lit("nut-on-hub", nut, hub),
                _lit("object-in-container", spare, "boot"),
            ]
        )
        goal.extend(
            [
                _lit("wheel-on-hub", spare, hub),
                _lit("wheel-inflated", spare),
                _lit("nut-on-hub", nut, hub),
                _lit("object-in-container", flat, "boot"),
            ]
        )
        wishes.append(f"hub {hub} carries the inflated spare wheel {spare}")
    instruction = (
        "Replace the flat tyres: " + "; ".join(wishes) + ". Put the flat wheels away."
    )
    problem = ProblemSpec(
        name=f"tyreworld-{seed}",
        domain_name="tyreworld",
        objects=tuple(objects),
        init=tuple(init),
    )
    return GeneratedTask(problem, tuple(goal), instruction, goal_reply(tuple(goal)))


# ---------------------------------------------------------------------------
# Random action sequences (validator-oracle material)

def ground_action_pool(domain: DomainModel, problem: ProblemSpec):
    """All ground actions of a task, enumerated once and reused."""
    pool = []
    for schema in domain.actions:
        for binding in enumerate_bindings(domain, problem, schema.name):
            pool.append(bind_action(schema, binding))
    return pool


def random_action_sequence(
    seed: int,
    domain: DomainModel,
    problem: ProblemSpec,
    *,
    length: int = 6,
    noise: float = 0.3,
    pool=None,
) -> Plan:
    """A plan mixing applicable steps with random (often invalid) ones."""
    rng = random.Random(seed)
    state = initial_state(problem)
    steps: list[PlanStep] = []
    object_names = [norm_name(o) for o, _ in problem.objects]
    if pool is None:
        pool = ground_action_pool(domain, problem)
    for _ in range(length):
        roll = rng.random()
        if roll < noise:
            # Arbitrary binding of an arbitrary schema; may be ill-typed.
            schema = rng.choice(domain.actions)
            arity = schema.arity if rng.random() > 0.2 else rng.randint(0, 3)
            args = tuple(rng.choice(object_names) for _ in range(arity)) if object_names else ()
            steps.append(PlanStep(schema.name, args))
            continue
        applicable = []
        for ga in pool:
            positive, negative = ga.precondition_sets()
            if positive <= state and not (negative & state):
                applicable.append(ga)
        if not applicable:
            break
        action = rng.choice(applicable)
        steps.append(action.step())
        state = apply_action(state, action)
    return Plan(tuple(steps))


# ---------------------------------------------------------------------------
# Experiment suites (recorded seeds)

def logistics_suite(count: int = 21, seed0: int = 100) -> list[GeneratedTask]:
    """Logistics tasks within the desk-scale bounds (<=3 cities, <=6 packages)."""
    tasks: list[GeneratedTask] = []
    for i in range(count):
        rng = random.Random(seed0 + i)
        tasks.append(
            logistics_task(
                seed0 + i,
                n_cities=rng.randint(1, 3),
                n_locations=rng.randint(2, 3),
                n_packages=rng.randint(1, 6),
                n_planes=rng.randint(1, 2),
            )
        )
    return tasks


def household_suite(
    count: int = 20, seed0: int = 300, rejection_indices: tuple[int, ...] = (13,)
) -> list[GeneratedTask]:
    """Household tasks cycling over the goal kinds.

    Tasks at ``rejection_indices`` carry a deliberately broken goal-translation
    reply (an unknown predicate), modeling the goal-translation failure mode;
    their ground-truth goal stays intact.
    """
    tasks: list[GeneratedTask] = []
    for i in range(count):
        kind = HOUSEHOLD_GOAL_KINDS[i % len(HOUSEHOLD_GOAL_KINDS)]
        task = household_task(seed0 + i, goal_kind=kind)
        if i in rejection_indices:
            broken = task.goal_reply.replace("\n    (", "\n    (misnamed-", 1)
            task = GeneratedTask(task.problem, task.goal, task.instruction, broken)
        tasks.append(task)
    return tasks
