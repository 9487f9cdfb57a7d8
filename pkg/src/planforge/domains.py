"""Hand-written ground-truth fixture domains.

Blocksworld provides the in-prompt demonstrations; Logistics, Household and
Tyreworld are the benchmark domains the toolchain is exercised on.  Each
domain ships with predicate descriptions (the registry content) and the
natural-language action descriptions its construction project uses.
"""

from __future__ import annotations

from .builder import ActionDescription, PredicateRegistry
from .pddl import (
    ActionModel,
    DomainModel,
    Literal,
    PredicateDef,
    TypeHierarchy,
)


def _p(name: str, *args: str) -> Literal:
    return Literal(name, tuple(args))


def _n(name: str, *args: str) -> Literal:
    return Literal(name, tuple(args), positive=False)


def _pred(signature: str, description: str) -> PredicateDef:
    parts = signature.split()
    name = parts[0]
    params: list[tuple[str, str]] = []
    rest = parts[1:]
    for i in range(0, len(rest), 3):
        var, dash, typ = rest[i], rest[i + 1], rest[i + 2]
        assert dash == "-", signature
        params.append((var, typ))
    return PredicateDef(name, tuple(params), description)


def registry_for(domain: DomainModel) -> PredicateRegistry:
    return PredicateRegistry(domain.hierarchy, domain.predicates)


# ---------------------------------------------------------------------------
# Blocksworld


def blocksworld() -> DomainModel:
    hierarchy = TypeHierarchy({"block": None})
    predicates = (
        _pred("block-on ?x - block ?y - block", "true if the block ?x is on top of the block ?y"),
        _pred("block-on-table ?x - block", "true if the block ?x is directly on the table"),
        _pred("block-clear ?x - block", "true if the block ?x has no other block on top of it"),
        _pred("robot-arm-empty", "true if the robot arm is not holding any block"),
        _pred("robot-holding ?x - block", "the robot must be holding the block ?x in its gripper"),
    )
    actions = (
        ActionModel(
            "pick-up",
            params=(("?x", "block"),),
            preconditions=(_p("block-clear", "?x"), _p("block-on-table", "?x"), _p("robot-arm-empty")),
            add_effects=(_p("robot-holding", "?x"),),
            del_effects=(_p("block-on-table", "?x"), _p("block-clear", "?x"), _p("robot-arm-empty")),
        ),
        ActionModel(
            "put-down",
            params=(("?x", "block"),),
            preconditions=(_p("robot-holding", "?x"),),
            add_effects=(_p("block-on-table", "?x"), _p("block-clear", "?x"), _p("robot-arm-empty")),
            del_effects=(_p("robot-holding", "?x"),),
        ),
        ActionModel(
            "stack",
            params=(("?x", "block"), ("?y", "block")),
            preconditions=(_p("robot-holding", "?x"), _p("block-clear", "?y")),
            add_effects=(_p("block-on", "?x", "?y"), _p("block-clear", "?x"), _p("robot-arm-empty")),
            del_effects=(_p("robot-holding", "?x"), _p("block-clear", "?y")),
            inequalities=(("?x", "?y"),),
        ),
        ActionModel(
            "unstack",
            params=(("?x", "block"), ("?y", "block")),
            preconditions=(
                _p("block-on", "?x", "?y"),
                _p("block-clear", "?x"),
                _p("robot-arm-empty"),
            ),
            add_effects=(_p("robot-holding", "?x"), _p("block-clear", "?y")),
            del_effects=(_p("block-on", "?x", "?y"), _p("block-clear", "?x"), _p("robot-arm-empty")),
            inequalities=(("?x", "?y"),),
        ),
    )
    return DomainModel("blocksworld", hierarchy, predicates, actions)


# ---------------------------------------------------------------------------
# Logistics

LOGISTICS_DESCRIPTION = (
    "The AI agent here is a logistics planner that has to plan to transport "
    "packages within the locations in a city through a truck and between "
    "cities through an airplane. Within a city, the locations are directly "
    "linked, allowing trucks to travel between any two of these locations. "
    "Similarly, cities are directly connected to each other allowing "
    "airplanes to travel between any two cities. Each city is equipped with "
    "one truck and has a designated location that functions as an airport. "
    "There are five types of objects: package, truck, plane, location, and "
    "city. There can be multiple cities and each city can have multiple "
    "locations. There is no limit to how many packages a truck or plane can "
    "carry."
)


def logistics() -> DomainModel:
    hierarchy = TypeHierarchy(
        {"package": None, "truck": None, "plane": None, "location": None, "city": None}
    )
    predicates = (
        _pred("package-at ?p - package ?l - location", "true if the package ?p is at the location ?l"),
        _pred("truck-at ?t - truck ?l - location", "true if the truck ?t is at the location ?l"),
        _pred("plane-at ?a - plane ?l - location", "true if the airplane ?a is at the location ?l"),
        _pred("package-in-truck ?p - package ?t - truck", "true if the package ?p is loaded in the truck ?t"),
        _pred("package-in-plane ?p - package ?a - plane", "true if the package ?p is loaded in the airplane ?a"),
        _pred("location-in-city ?l - location ?c - city", "true if the location ?l is in the city ?c"),
        _pred("airport ?l - location", "true if the location ?l functions as an airport"),
    )
    actions = (
        ActionModel(
            "load-truck",
            params=(("?p", "package"), ("?t", "truck"), ("?l", "location")),
            preconditions=(_p("package-at", "?p", "?l"), _p("truck-at", "?t", "?l")),
            add_effects=(_p("package-in-truck", "?p", "?t"),),
            del_effects=(_p("package-at", "?p", "?l"),),
        ),
        ActionModel(
            "unload-truck",
            params=(("?p", "package"), ("?t", "truck"), ("?l", "location")),
            preconditions=(_p("package-in-truck", "?p", "?t"), _p("truck-at", "?t", "?l")),
            add_effects=(_p("package-at", "?p", "?l"),),
            del_effects=(_p("package-in-truck", "?p", "?t"),),
        ),
        ActionModel(
            "load-airplane",
            params=(("?p", "package"), ("?a", "plane"), ("?l", "location")),
            preconditions=(_p("package-at", "?p", "?l"), _p("plane-at", "?a", "?l")),
            add_effects=(_p("package-in-plane", "?p", "?a"),),
            del_effects=(_p("package-at", "?p", "?l"),),
        ),
        ActionModel(
            "unload-airplane",
            params=(("?p", "package"), ("?a", "plane"), ("?l", "location")),
            preconditions=(_p("package-in-plane", "?p", "?a"), _p("plane-at", "?a", "?l")),
            add_effects=(_p("package-at", "?p", "?l"),),
            del_effects=(_p("package-in-plane", "?p", "?a"),),
        ),
        ActionModel(
            "drive-truck",
            params=(("?t", "truck"), ("?from", "location"), ("?to", "location"), ("?c", "city")),
            preconditions=(
                _p("truck-at", "?t", "?from"),
                _p("location-in-city", "?from", "?c"),
                _p("location-in-city", "?to", "?c"),
            ),
            add_effects=(_p("truck-at", "?t", "?to"),),
            del_effects=(_p("truck-at", "?t", "?from"),),
            inequalities=(("?from", "?to"),),
        ),
        ActionModel(
            "fly-airplane",
            params=(("?a", "plane"), ("?from", "location"), ("?to", "location")),
            preconditions=(
                _p("plane-at", "?a", "?from"),
                _p("airport", "?from"),
                _p("airport", "?to"),
            ),
            add_effects=(_p("plane-at", "?a", "?to"),),
            del_effects=(_p("plane-at", "?a", "?from"),),
            inequalities=(("?from", "?to"),),
        ),
    )
    return DomainModel("logistics", hierarchy, predicates, actions)


LOGISTICS_ACTIONS = (
    ActionDescription(
        "load-truck",
        "This action enables the agent to load a package into a truck. For "
        "example, load package-1 into truck-1.",
    ),
    ActionDescription(
        "unload-truck",
        "This action enables the agent to unload a package from a truck. For "
        "example, unload package-1 from truck-1.",
    ),
    ActionDescription(
        "load-airplane",
        "This action enables the agent to load a package into an airplane. "
        "For example, load package-1 into plane-1.",
    ),
    ActionDescription(
        "unload-airplane",
        "This action enables the agent to unload a package from an airplane. "
        "For example, unload package-1 from plane-1.",
    ),
    ActionDescription(
        "drive-truck",
        "This action enables the agent to drive a truck from one location to "
        "another location in the same city. For example, drive truck-1 from "
        "location-1 to location-2 in city-1.",
        extra_info="A truck can only move between locations that belong to "
        "one and the same city.",
    ),
    ActionDescription(
        "fly-airplane",
        "This action enables the agent to fly an airplane from one city's "
        "airport to another city's airport. For example, fly plane-1 from "
        "location-1 to location-3.",
        extra_info="Airplanes can only take off from and land at locations "
        "that are airports.",
    ),
)


# ---------------------------------------------------------------------------
# Household

HOUSEHOLD_DESCRIPTION = (
    "The AI agent here is a household robot that can navigate to various "
    "large and normally immovable furniture pieces or appliances in the "
    "house to carry out household tasks. The robot has only one gripper, so "
    "it can only hold one object at a time, it should not hold any other "
    "irrelevant object in its gripper while performing a manipulation task, "
    "and operations on small household items should be carried out on "
    "furniture with a flat surface to get enough space for manipulation. "
    "There are three major types of objects in this domain: robot, "
    "furnitureAppliance, and householdObject. The object type "
    "furnitureAppliance covers large and normally immovable furniture pieces "
    "or appliances such as stove burners, side tables, dining tables, "
    "drawers, cabinets, or microwaves. The object type householdObject "
    "covers all other small household items such as handheld vacuum "
    "cleaners, cloths, apples, bananas, and small receptacles like bowls and "
    "lunch boxes. There is a subtype of householdObject called "
    "smallReceptacle that covers small receptacles like bowls, lunch boxes, "
    "plates, etc. The locations of the robot and the small household items "
    "are determined by the furniture pieces or appliances they are at, on or "
    "in."
)


def household() -> DomainModel:
    hierarchy = TypeHierarchy(
        {
            "robot": None,
            "furnitureAppliance": None,
            "householdObject": None,
            "smallReceptacle": "householdObject",
        }
    )
    predicates = (
        _pred("robot-at ?r - robot ?f - furnitureAppliance", "true if the robot ?r is at the furniture piece or appliance ?f"),
        _pred("robot-hand-empty ?r - robot", "true if the gripper of the robot ?r is empty"),
        _pred("robot-holding ?r - robot ?o - householdObject", "true if the robot ?r is holding the object ?o in its gripper"),
        _pred("object-on ?o - householdObject ?f - furnitureAppliance", "true if the object ?o is on or in the furniture piece or appliance ?f"),
        _pred("object-in-receptacle ?o - householdObject ?s - smallReceptacle", "true if the object ?o is in the small receptacle ?s"),
        _pred("furniture-openable ?f - furnitureAppliance", "true if the furniture piece or appliance ?f can be opened and closed"),
        _pred("furniture-closed ?f - furnitureAppliance", "true if the openable furniture piece or appliance ?f is closed"),
        _pred("flat-surface ?f - furnitureAppliance", "true if the furniture piece ?f has a flat surface suitable for manipulation"),
        _pred("pickupable ?o - householdObject", "true if the object ?o is small and light enough to be picked up"),
        _pred("object-clear ?o - householdObject", "true if the object ?o has no other object stacked on top of it"),
        _pred("object-stacked-on ?x - householdObject ?y - householdObject", "true if the object ?x is stacked on top of the object ?y"),
        _pred("object-stacked ?o - householdObject", "true if the object ?o is stacked on top of another object"),
        _pred("object-clean ?o - householdObject", "true if the object ?o is clean"),
        _pred("object-sliced ?o - householdObject", "true if the food item ?o has been sliced"),
        _pred("knife ?o - householdObject", "true if the object ?o is a knife"),
        _pred("cutting-board ?s - smallReceptacle", "true if the small receptacle ?s is a cutting board"),
        _pred("microwave ?f - furnitureAppliance", "true if the appliance ?f is a microwave"),
        _pred("stove-burner ?f - furnitureAppliance", "true if the appliance ?f is a stove burner"),
        _pred("pan ?s - smallReceptacle", "true if the small receptacle ?s is a pan"),
        _pred("object-heated ?o - householdObject", "true if the food item ?o has been heated"),
        _pred("appliance-togglable ?o - householdObject", "true if the small appliance ?o can be toggled on and off"),
        _pred("appliance-on ?o - householdObject", "true if the small appliance ?o is turned on"),
        _pred("receptacle-openable ?s - smallReceptacle", "true if the small receptacle ?s has a lid that can be opened and closed"),
        _pred("receptacle-closed ?s - smallReceptacle", "true if the small receptacle ?s is closed with its lid"),
        _pred("blender ?s - smallReceptacle", "true if the small receptacle ?s is a blender jug"),
        _pred("object-mashed ?o - householdObject", "true if the food item ?o has been mashed"),
        _pred("food ?o - householdObject", "true if the object ?o is a food item"),
        _pred("cloth ?o - householdObject", "true if the object ?o is a piece of cloth for wiping"),
        _pred("surface-wiped ?f - furnitureAppliance", "true if the surface of the furniture piece ?f has been wiped clean"),
        _pred("vacuum-cleaner ?o - householdObject", "true if the object ?o is a handheld vacuum cleaner"),
        _pred("carpet ?f - furnitureAppliance", "true if the furniture piece ?f is a carpet"),
        _pred("carpet-clean ?f - furnitureAppliance", "true if the carpet ?f has been vacuumed clean"),
        _pred("vacuum-full ?o - householdObject", "true if the dust bag of the vacuum cleaner ?o is full"),
        _pred("trash-can ?f - furnitureAppliance", "true if the furniture piece ?f is a trash can"),
        _pred("water-source ?f - furnitureAppliance", "true if the furniture piece ?f is a sink or basin with running water"),
    )
    r, f = ("?r", "robot"), ("?f", "furnitureAppliance")
    o = ("?o", "householdObject")
    actions = (
        ActionModel(
            "go-to",
            params=(r, ("?from", "furnitureAppliance"), ("?to", "furnitureAppliance")),
            preconditions=(_p("robot-at", "?r", "?from"),),
            add_effects=(_p("robot-at", "?r", "?to"),),
            del_effects=(_p("robot-at", "?r", "?from"),),
            inequalities=(("?from", "?to"),),
        ),
        ActionModel(
            "pick-up",
            params=(r, o, f),
            preconditions=(
                _p("robot-at", "?r", "?f"),
                _p("object-on", "?o", "?f"),
                _p("pickupable", "?o"),
                _p("object-clear", "?o"),
                _p("robot-hand-empty", "?r"),
                _n("object-stacked", "?o"),
                _n("furniture-closed", "?f"),
            ),
            add_effects=(_p("robot-holding", "?r", "?o"),),
            del_effects=(_p("object-on", "?o", "?f"), _p("robot-hand-empty", "?r")),
        ),
        ActionModel(
            "put-on",
            params=(r, o, f),
            preconditions=(
                _p("robot-at", "?r", "?f"),
                _p("robot-holding", "?r", "?o"),
                _n("furniture-closed", "?f"),
            ),
            add_effects=(_p("object-on", "?o", "?f"), _p("robot-hand-empty", "?r")),
            del_effects=(_p("robot-holding", "?r", "?o"),),
        ),
        ActionModel(
            "stack",
            params=(r, ("?x", "householdObject"), ("?y", "householdObject"), f),
            preconditions=(
                _p("robot-at", "?r", "?f"),
                _p("robot-holding", "?r", "?x"),
                _p("object-on", "?y", "?f"),
                _p("object-clear", "?y"),
                _p("flat-surface", "?f"),
            ),
            add_effects=(
                _p("object-stacked-on", "?x", "?y"),
                _p("object-stacked", "?x"),
                _p("object-on", "?x", "?f"),
                _p("robot-hand-empty", "?r"),
            ),
            del_effects=(_p("robot-holding", "?r", "?x"), _p("object-clear", "?y")),
            inequalities=(("?x", "?y"),),
        ),
        ActionModel(
            "unstack",
            params=(r, ("?x", "householdObject"), ("?y", "householdObject"), f),
            preconditions=(
                _p("robot-at", "?r", "?f"),
                _p("object-stacked-on", "?x", "?y"),
                _p("object-on", "?x", "?f"),
                _p("object-clear", "?x"),
                _p("pickupable", "?x"),
                _p("robot-hand-empty", "?r"),
            ),
            add_effects=(_p("robot-holding", "?r", "?x"), _p("object-clear", "?y")),
            del_effects=(
                _p("object-stacked-on", "?x", "?y"),
                _p("object-stacked", "?x"),
                _p("object-on", "?x", "?f"),
                _p("robot-hand-empty", "?r"),
            ),
            inequalities=(("?x", "?y"),),
        ),
        ActionModel(
            "open-furniture",
            params=(r, f),
            preconditions=(
                _p("robot-at", "?r", "?f"),
                _p("furniture-openable", "?f"),
                _p("furniture-closed", "?f"),
                _p("robot-hand-empty", "?r"),
            ),
            add_effects=(),
            del_effects=(_p("furniture-closed", "?f"),),
        ),
        ActionModel(
            "close-furniture",
            params=(r, f),
            preconditions=(
                _p("robot-at", "?r", "?f"),
                _p("furniture-openable", "?f"),
                _n("furniture-closed", "?f"),
                _p("robot-hand-empty", "?r"),
            ),
            add_effects=(_p("furniture-closed", "?f"),),
            del_effects=(),
        ),
        ActionModel(
            "toggle-on",
            params=(r, o, f),
            preconditions=(
                _p("robot-at", "?r", "?f"),
                _p("object-on", "?o", "?f"),
                _p("appliance-togglable", "?o"),
                _p("robot-hand-empty", "?r"),
                _n("appliance-on", "?o"),
            ),
            add_effects=(_p("appliance-on", "?o"),),
            del_effects=(),
        ),
        ActionModel(
            "toggle-off",
            params=(r, o, f),
            preconditions=(
                _p("robot-at", "?r", "?f"),
                _p("object-on", "?o", "?f"),
                _p("appliance-togglable", "?o"),
                _p("robot-hand-empty", "?r"),
                _p("appliance-on", "?o"),
            ),
            add_effects=(),
            del_effects=(_p("appliance-on", "?o"),),
        ),
        ActionModel(
            "slice",
            params=(r, o, ("?k", "householdObject"), ("?b", "smallReceptacle"), f),
            preconditions=(
                _p("robot-at", "?r", "?f"),
                _p("flat-surface", "?f"),
                _p("food", "?o"),
                _p("object-in-receptacle", "?o", "?b"),
                _p("cutting-board", "?b"),
                _p("object-on", "?b", "?f"),
                _p("knife", "?k"),
                _p("robot-holding", "?r", "?k"),
                _n("object-sliced", "?o"),
            ),
            add_effects=(_p("object-sliced", "?o"),),
            del_effects=(),
        ),
        ActionModel(
            "heat-with-microwave",
            params=(r, o, ("?m", "furnitureAppliance")),
            preconditions=(
                _p("robot-at", "?r", "?m"),
                _p("microwave", "?m"),
                _p("object-on", "?o", "?m"),
                _p("food", "?o"),
                _p("furniture-closed", "?m"),
                _p("robot-hand-empty", "?r"),
            ),
            add_effects=(_p("object-heated", "?o"),),
            del_effects=(),
        ),
        ActionModel(
            "heat-with-pan",
            params=(r, o, ("?p", "smallReceptacle"), f),
            preconditions=(
                _p("robot-at", "?r", "?f"),
                _p("stove-burner", "?f"),
                _p("pan", "?p"),
                _p("object-on", "?p", "?f"),
                _p("object-in-receptacle", "?o", "?p"),
                _p("food", "?o"),
                _p("robot-hand-empty", "?r"),
            ),
            add_effects=(_p("object-heated", "?o"),),
            del_effects=(),
        ),
        ActionModel(
            "transfer-food",
            params=(r, o, ("?s1", "smallReceptacle"), ("?s2", "smallReceptacle"), f),
            preconditions=(
                _p("robot-at", "?r", "?f"),
                _p("flat-surface", "?f"),
                _p("food", "?o"),
                _p("object-in-receptacle", "?o", "?s1"),
                _p("object-on", "?s1", "?f"),
                _p("object-on", "?s2", "?f"),
                _p("robot-hand-empty", "?r"),
                _n("receptacle-closed", "?s1"),
                _n("receptacle-closed", "?s2"),
            ),
            add_effects=(_p("object-in-receptacle", "?o", "?s2"),),
            del_effects=(_p("object-in-receptacle", "?o", "?s1"),),
            inequalities=(("?s1", "?s2"),),
        ),
        ActionModel(
            "put-in-receptacle",
            params=(r, o, ("?s", "smallReceptacle"), f),
            preconditions=(
                _p("robot-at", "?r", "?f"),
                _p("flat-surface", "?f"),
                _p("object-on", "?s", "?f"),
                _p("robot-holding", "?r", "?o"),
                _p("pickupable", "?o"),
                _n("receptacle-closed", "?s"),
            ),
            add_effects=(
                _p("object-in-receptacle", "?o", "?s"),
                _p("robot-hand-empty", "?r"),
            ),
            del_effects=(_p("robot-holding", "?r", "?o"),),
            inequalities=(("?o", "?s"),),
        ),
        ActionModel(
            "pick-up-from-receptacle",
            params=(r, o, ("?s", "smallReceptacle"), f),
            preconditions=(
                _p("robot-at", "?r", "?f"),
                _p("flat-surface", "?f"),
                _p("object-on", "?s", "?f"),
                _p("object-in-receptacle", "?o", "?s"),
                _p("pickupable", "?o"),
                _p("robot-hand-empty", "?r"),
                _n("receptacle-closed", "?s"),
            ),
            add_effects=(_p("robot-holding", "?r", "?o"),),
            del_effects=(
                _p("object-in-receptacle", "?o", "?s"),
                _p("robot-hand-empty", "?r"),
            ),
        ),
        ActionModel(
            "open-receptacle",
            params=(r, ("?s", "smallReceptacle"), f),
            preconditions=(
                _p("robot-at", "?r", "?f"),
                _p("flat-surface", "?f"),
                _p("object-on", "?s", "?f"),
                _p("receptacle-openable", "?s"),
                _p("receptacle-closed", "?s"),
                _p("robot-hand-empty", "?r"),
            ),
            add_effects=(),
            del_effects=(_p("receptacle-closed", "?s"),),
        ),
        ActionModel(
            "close-receptacle",
            params=(r, ("?s", "smallReceptacle"), f),
            preconditions=(
                _p("robot-at", "?r", "?f"),
                _p("flat-surface", "?f"),
                _p("object-on", "?s", "?f"),
                _p("receptacle-openable", "?s"),
                _n("receptacle-closed", "?s"),
                _p("robot-hand-empty", "?r"),
            ),
            add_effects=(_p("receptacle-closed", "?s"),),
            del_effects=(),
        ),
        ActionModel(
            "mash",
            params=(r, o, ("?b", "smallReceptacle"), f),
            preconditions=(
                _p("robot-at", "?r", "?f"),
                _p("blender", "?b"),
                _p("object-on", "?b", "?f"),
                _p("object-in-receptacle", "?o", "?b"),
                _p("food", "?o"),
                _p("appliance-togglable", "?b"),
                _p("appliance-on", "?b"),
                _p("robot-hand-empty", "?r"),
            ),
            add_effects=(_p("object-mashed", "?o"),),
            del_effects=(_p("pickupable", "?o"),),
        ),
        ActionModel(
            "wash",
            params=(r, o, f),
            preconditions=(
                _p("robot-at", "?r", "?f"),
                _p("water-source", "?f"),
                _p("robot-holding", "?r", "?o"),
            ),
            add_effects=(_p("object-clean", "?o"),),
            del_effects=(),
        ),
        ActionModel(
            "wipe",
            params=(r, ("?c", "householdObject"), f),
            preconditions=(
                _p("robot-at", "?r", "?f"),
                _p("cloth", "?c"),
                _p("robot-holding", "?r", "?c"),
                _p("object-clean", "?c"),
            ),
            add_effects=(_p("surface-wiped", "?f"),),
            del_effects=(_p("object-clean", "?c"),),
        ),
        ActionModel(
            "vacuum",
            params=(r, ("?v", "householdObject"), f),
            preconditions=(
                _p("robot-at", "?r", "?f"),
                _p("carpet", "?f"),
                _p("vacuum-cleaner", "?v"),
                _p("robot-holding", "?r", "?v"),
                _n("vacuum-full", "?v"),
            ),
            add_effects=(_p("carpet-clean", "?f"), _p("vacuum-full", "?v")),
            del_effects=(),
        ),
        ActionModel(
            "empty-vacuum",
            params=(r, ("?v", "householdObject"), f),
            preconditions=(
                _p("robot-at", "?r", "?f"),
                _p("trash-can", "?f"),
                _p("vacuum-cleaner", "?v"),
                _p("robot-holding", "?r", "?v"),
                _p("vacuum-full", "?v"),
            ),
            add_effects=(),
            del_effects=(_p("vacuum-full", "?v"),),
        ),
    )
    return DomainModel("household", hierarchy, predicates, actions)


HOUSEHOLD_ACTIONS = (
    ActionDescription("go-to", "This action enables the robot to navigate from one furniture piece or appliance to another."),
    ActionDescription(
        "pick-up",
        "This action enables the robot to pick up an object that is on or in a furniture piece or an appliance.",
        extra_info="The robot can only hold one object at a time, the object must not have anything stacked on top of it, and the furniture piece must not be closed.",
    ),
    ActionDescription(
        "put-on",
        "This action enables the robot to put an object it is holding on or in a furniture piece or an appliance.",
        extra_info="The furniture piece or appliance must not be closed.",
    ),
    ActionDescription(
        "stack",
        "This action enables the robot to stack the object it is holding on top of another object.",
        extra_info="Stacking must happen on a furniture piece with a flat surface and the object underneath must have nothing on top of it.",
    ),
    ActionDescription(
        "unstack",
        "This action enables the robot to pick up an object that is stacked on top of another object.",
        extra_info="The robot's gripper must be empty before unstacking.",
    ),
    ActionDescription(
        "open-furniture",
        "This action enables the robot to open a furniture piece or an appliance such as a fridge, a drawer or a microwave.",
        extra_info="The robot cannot open anything while holding an object.",
    ),
    ActionDescription(
        "close-furniture",
        "This action enables the robot to close an openable furniture piece or appliance.",
        extra_info="The robot cannot close anything while holding an object.",
    ),
    ActionDescription("toggle-on", "This action enables the robot to toggle a small appliance, such as a blender or a lamp, on."),
    ActionDescription("toggle-off", "This action enables the robot to toggle a small appliance off."),
    ActionDescription(
        "slice",
        "This action enables the robot to slice a food item with a knife.",
        extra_info="The food item must be in a cutting board that sits on a furniture piece with a flat surface, and the robot must be holding a knife.",
    ),
    ActionDescription(
        "heat-with-microwave",
        "This action enables the robot to heat a food item with a microwave.",
        extra_info="The food must already be inside the microwave and the microwave door must be closed while it runs.",
    ),
    ActionDescription(
        "heat-with-pan",
        "This action enables the robot to heat a food item with a pan.",
        extra_info="The food must be in the pan and the pan must sit on a stove burner.",
    ),
    ActionDescription(
        "transfer-food",
        "This action enables the robot to transfer a food item from one small receptacle to another.",
        extra_info="Both receptacles must be open, on the same flat furniture piece, and the robot's gripper must be empty.",
    ),
    ActionDescription(
        "put-in-receptacle",
        "This action enables the robot to put an object it is holding into or onto a small receptacle like a bowl or a plate.",
        extra_info="The receptacle must be open and must sit on a furniture piece with a flat surface.",
    ),
    ActionDescription(
        "pick-up-from-receptacle",
        "This action enables the robot to pick up an object that is in a small receptacle like a bowl or a lunch box.",
        extra_info="The receptacle must be open and must sit on a furniture piece with a flat surface.",
    ),
    ActionDescription(
        "open-receptacle",
        "This action enables the robot to open a small receptacle with a lid, such as a lunch box.",
        extra_info="The receptacle must sit on a furniture piece with a flat surface and the robot's gripper must be empty.",
    ),
    ActionDescription(
        "close-receptacle",
        "This action enables the robot to close a small receptacle with a lid.",
        extra_info="The receptacle must sit on a furniture piece with a flat surface and the robot's gripper must be empty.",
    ),
    ActionDescription(
        "mash",
        "This action enables the robot to mash a food item with a blender.",
        extra_info="The food must be inside the blender jug and the blender must be turned on. The item can no longer be picked up after being mashed.",
    ),
    ActionDescription(
        "wash",
        "This action enables the robot to wash an object it is holding under a sink or basin.",
    ),
    ActionDescription(
        "wipe",
        "This action enables the robot to wipe the surface of a furniture piece with a cloth.",
        extra_info="The cloth must be clean before wiping and becomes dirty afterwards.",
    ),
    ActionDescription(
        "vacuum",
        "This action enables the robot to vacuum a carpet with a handheld vacuum cleaner.",
        extra_info="The dust bag must not be full before vacuuming; vacuuming fills the dust bag.",
    ),
    ActionDescription(
        "empty-vacuum",
        "This action enables the robot to empty the dust bag of a handheld vacuum cleaner into a trash can.",
        extra_info="The robot must be at the trash can and holding the vacuum cleaner.",
    ),
)


# ---------------------------------------------------------------------------
# Tyreworld

TYREWORLD_DESCRIPTION = (
    "The AI agent here is a robot that has to replace a flat tyre with a "
    "spare one. This involves fetching the tools (wrench, jack, pump) from "
    "the boot, undoing the nuts on the flat tyre, jacking up the appropriate "
    "hub, removing the tyre, doing up the spare one, and so on. There are "
    "three major object types: small-object, container and hub. The object "
    "type small-object covers tools, wheels and nuts and has three subtypes: "
    "tool, wheel and nut. The object type container covers storage spaces "
    "like the boot of the car. The object type hub covers the hubs in the "
    "wheels of the car. There is no restriction on how many objects the "
    "robot can carry, and each hub has only one nut."
)


def tyreworld() -> DomainModel:
    hierarchy = TypeHierarchy(
        {
            "small-object": None,
            "tool": "small-object",
            "wheel": "small-object",
            "nut": "small-object",
            "container": None,
            "hub": None,
        }
    )
    predicates = (
        _pred("object-in-container ?o - small-object ?c - container", "true if the object ?o is inside the container ?c"),
        _pred("container-open ?c - container", "true if the container ?c is open"),
        _pred("agent-has ?o - small-object", "true if the robot is carrying the object ?o"),
        _pred("wrench ?t - tool", "true if the tool ?t is a wrench"),
        _pred("jack ?t - tool", "true if the tool ?t is a jack"),
        _pred("pump ?t - tool", "true if the tool ?t is a pump"),
        _pred("nut-on-hub ?n - nut ?h - hub", "true if the nut ?n is fastened on the hub ?h"),
        _pred("nut-loose ?n - nut", "true if the nut ?n is loose"),
        _pred("hub-jacked-up ?h - hub", "true if the hub ?h is jacked up off the ground"),
        _pred("jack-supporting ?t - tool ?h - hub", "true if the jack ?t is supporting the hub ?h"),
        _pred("hub-unfastened ?h - hub", "true if the hub ?h has no nut fastened on it"),
        _pred("wheel-on-hub ?w - wheel ?h - hub", "true if the wheel ?w is on the hub ?h"),
        _pred("hub-occupied ?h - hub", "true if some wheel is on the hub ?h"),
        _pred("wheel-inflated ?w - wheel", "true if the wheel ?w is inflated"),
    )
    actions = (
        ActionModel(
            "open-container",
            params=(("?c", "container"),),
            preconditions=(_n("container-open", "?c"),),
            add_effects=(_p("container-open", "?c"),),
            del_effects=(),
        ),
        ActionModel(
            "close-container",
            params=(("?c", "container"),),
            preconditions=(_p("container-open", "?c"),),
            add_effects=(),
            del_effects=(_p("container-open", "?c"),),
        ),
        ActionModel(
            "fetch",
            params=(("?o", "small-object"), ("?c", "container")),
            preconditions=(_p("object-in-container", "?o", "?c"), _p("container-open", "?c")),
            add_effects=(_p("agent-has", "?o"),),
            del_effects=(_p("object-in-container", "?o", "?c"),),
        ),
        ActionModel(
            "put-away",
            params=(("?o", "small-object"), ("?c", "container")),
            preconditions=(_p("agent-has", "?o"), _p("container-open", "?c")),
            add_effects=(_p("object-in-container", "?o", "?c"),),
            del_effects=(_p("agent-has", "?o"),),
        ),
        ActionModel(
            "loosen",
            params=(("?t", "tool"), ("?n", "nut"), ("?h", "hub")),
            preconditions=(
                _p("wrench", "?t"),
                _p("agent-has", "?t"),
                _p("nut-on-hub", "?n", "?h"),
                _n("nut-loose", "?n"),
                _n("hub-jacked-up", "?h"),
            ),
            add_effects=(_p("nut-loose", "?n"),),
            del_effects=(),
        ),
        ActionModel(
            "tighten",
            params=(("?t", "tool"), ("?n", "nut"), ("?h", "hub")),
            preconditions=(
                _p("wrench", "?t"),
                _p("agent-has", "?t"),
                _p("nut-on-hub", "?n", "?h"),
                _p("nut-loose", "?n"),
                _n("hub-jacked-up", "?h"),
            ),
            add_effects=(),
            del_effects=(_p("nut-loose", "?n"),),
        ),
        ActionModel(
            "jack-up",
            params=(("?t", "tool"), ("?h", "hub")),
            preconditions=(
                _p("jack", "?t"),
                _p("agent-has", "?t"),
                _n("hub-jacked-up", "?h"),
            ),
            add_effects=(_p("hub-jacked-up", "?h"), _p("jack-supporting", "?t", "?h")),
            del_effects=(_p("agent-has", "?t"),),
        ),
        ActionModel(
            "jack-down",
            params=(("?t", "tool"), ("?h", "hub")),
            preconditions=(_p("jack-supporting", "?t", "?h"),),
            add_effects=(_p("agent-has", "?t"),),
            del_effects=(_p("hub-jacked-up", "?h"), _p("jack-supporting", "?t", "?h")),
        ),
        ActionModel(
            "unfasten",
            params=(("?t", "tool"), ("?n", "nut"), ("?h", "hub")),
            preconditions=(
                _p("wrench", "?t"),
                _p("agent-has", "?t"),
                _p("nut-on-hub", "?n", "?h"),
                _p("nut-loose", "?n"),
                _p("hub-jacked-up", "?h"),
            ),
            add_effects=(_p("hub-unfastened", "?h"), _p("agent-has", "?n")),
            del_effects=(_p("nut-on-hub", "?n", "?h"),),
        ),
        ActionModel(
            "fasten",
            params=(("?t", "tool"), ("?n", "nut"), ("?h", "hub")),
            preconditions=(
                _p("wrench", "?t"),
                _p("agent-has", "?t"),
                _p("agent-has", "?n"),
                _p("hub-unfastened", "?h"),
                _p("hub-jacked-up", "?h"),
                _p("hub-occupied", "?h"),
            ),
            add_effects=(_p("nut-on-hub", "?n", "?h"), _p("nut-loose", "?n")),
            del_effects=(_p("hub-unfastened", "?h"), _p("agent-has", "?n")),
        ),
        ActionModel(
            "remove-wheel",
            params=(("?w", "wheel"), ("?h", "hub")),
            preconditions=(
                _p("wheel-on-hub", "?w", "?h"),
                _p("hub-jacked-up", "?h"),
                _p("hub-unfastened", "?h"),
            ),
            add_effects=(_p("agent-has", "?w"),),
            del_effects=(_p("wheel-on-hub", "?w", "?h"), _p("hub-occupied", "?h")),
        ),
        ActionModel(
            "put-on-wheel",
            params=(("?w", "wheel"), ("?h", "hub")),
            preconditions=(
                _p("agent-has", "?w"),
                _p("hub-unfastened", "?h"),
                _p("hub-jacked-up", "?h"),
                _n("hub-occupied", "?h"),
            ),
            add_effects=(_p("wheel-on-hub", "?w", "?h"), _p("hub-occupied", "?h")),
            del_effects=(_p("agent-has", "?w"),),
        ),
        ActionModel(
            "inflate",
            params=(("?t", "tool"), ("?w", "wheel")),
            preconditions=(
                _p("pump", "?t"),
                _p("agent-has", "?t"),
                _n("wheel-inflated", "?w"),
            ),
            add_effects=(_p("wheel-inflated", "?w"),),
            del_effects=(),
        ),
    )
    return DomainModel("tyreworld", hierarchy, predicates, actions)


TYREWORLD_ACTIONS = (
    ActionDescription("open-container", "This action enables the robot to open a container such as the boot of the car."),
    ActionDescription("close-container", "This action enables the robot to close a container."),
    ActionDescription(
        "fetch",
        "This action enables the robot to fetch an object from a container.",
        extra_info="The container must be open before anything can be taken out of it.",
    ),
    ActionDescription("put-away", "This action enables the robot to put an object it is carrying into an open container."),
    ActionDescription(
        "loosen",
        "This action enables the robot to loosen a nut on a hub with a wrench.",
        extra_info="The hub must still be on the ground, and the robot must be carrying a wrench.",
    ),
    ActionDescription(
        "tighten",
        "This action enables the robot to tighten a loose nut on a hub with a wrench.",
        extra_info="The hub must be on the ground.",
    ),
    ActionDescription(
        "jack-up",
        "This action enables the robot to jack up a hub with a jack.",
        extra_info="The jack stays under the hub while the hub is up, so the robot no longer carries it.",
    ),
    ActionDescription("jack-down", "This action enables the robot to jack down a hub and take the jack back."),
    ActionDescription(
        "unfasten",
        "This action enables the robot to completely undo the nut of a hub and collect it.",
        extra_info="The nut must be loose and the hub must be jacked up. Each hub has only one nut.",
    ),
    ActionDescription(
        "fasten",
        "This action enables the robot to do up a nut on a hub.",
        extra_info="A wheel must be on the hub, the hub must be jacked up, and the nut ends up loose until tightened.",
    ),
    ActionDescription(
        "remove-wheel",
        "This action enables the robot to remove a wheel from a hub.",
        extra_info="The hub must be jacked up and unfastened.",
    ),
    ActionDescription(
        "put-on-wheel",
        "This action enables the robot to put a wheel it is carrying on an unfastened, jacked-up, free hub.",
    ),
    ActionDescription(
        "inflate",
        "This action enables the robot to inflate a wheel with a pump.",
        extra_info="The robot must be carrying a pump.",
    ),
)


FIXTURE_DOMAINS = {
    "blocksworld": blocksworld,
    "logistics": logistics,
    "household": household,
    "tyreworld": tyreworld,
}

FIXTURE_ACTION_DESCRIPTIONS = {
    "logistics": LOGISTICS_ACTIONS,
    "household": HOUSEHOLD_ACTIONS,
    "tyreworld": TYREWORLD_ACTIONS,
}

FIXTURE_DESCRIPTIONS = {
    "logistics": LOGISTICS_DESCRIPTION,
    "household": HOUSEHOLD_DESCRIPTION,
    "tyreworld": TYREWORLD_DESCRIPTION,
}
