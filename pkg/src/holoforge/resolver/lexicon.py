"""Built-in scene lexicon for mock prompt elaboration and code generation.

Each scene maps to placement plans that compile into scene-command programs;
unknown prompts fall back to loading the last usable noun onto the floor.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class PlanItem:
    query: str
    size_m: float
    mass_kg: float
    anchor: str  # binding the item is placed next to
    direction: tuple[float, float, float]


def _slug(name: str) -> str:
    slug = re.sub(r"[^a-z0-9_]", "_", name.lower()).strip("_")
    return (slug or "item")[:32]


SCENE_PLANS: dict[str, tuple[PlanItem, ...]] = {
    "bedroom": (
        PlanItem("bed", 2.0, 35.0, "north_wall", (0.0, 0.0, -0.5)),
        PlanItem("nightstand", 0.6, 8.0, "bed", (1.0, 0.0, 0.0)),
        PlanItem("lamp", 0.45, 1.5, "nightstand", (0.0, 1.0, 0.0)),
        PlanItem("rug", 2.5, 4.0, "bed", (-1.0, 0.0, 0.0)),
    ),
    "office": (
        PlanItem("computer desk", 1.77, 30.0, "north_wall", (0.0, 0.0, -0.5)),
        PlanItem("chair", 1.0, 7.0, "computer_desk", (0.0, 0.0, -1.0)),
        PlanItem("computer", 0.5, 3.0, "computer_desk", (0.0, 1.0, 0.0)),
        PlanItem("bookshelf", 2.0, 60.0, "east_wall", (-0.5, 0.0, 0.0)),
    ),
    "kitchen": (
        PlanItem("table", 1.5, 25.0, "floor", (0.0, 1.0, 0.0)),
        PlanItem("fridge", 1.8, 70.0, "east_wall", (-0.5, 0.0, 0.0)),
        PlanItem("stove", 1.4, 50.0, "north_wall", (0.0, 0.0, -0.5)),
        PlanItem("pot", 0.3, 1.2, "stove", (0.0, 1.0, 0.0)),
    ),
    "living room": (
        PlanItem("sofa", 2.2, 45.0, "south_wall", (0.0, 0.0, 0.5)),
        PlanItem("coffee table", 1.0, 12.0, "sofa", (0.0, 0.0, 1.0)),
        PlanItem("television", 1.2, 15.0, "north_wall", (0.0, 0.0, -0.5)),
    ),
}

# Forest is special-cased to demonstrate looping instead of unrolled spam.
FOREST_PROGRAM = """repeat 6 {
  load "tree" as tree
}
load "boulder" as boulder
scale boulder to 1.2
place boulder next_to floor dir (0, 1, 0)
"""

# Worked example embedded in the live code-generation prompt.
EXAMPLE_PROGRAM = """load "Computer Desk" as desk
scale desk to 1.77
physics desk mass 30
place desk next_to north_wall dir (0, 0, -0.5)
load "Flashlight" as flashlight
scale flashlight to 0.2
place flashlight next_to desk dir (0, 1, 0)
physics flashlight mass 0.25
"""

CODEGEN_GRAMMAR_SUMMARY = """Commands, one per line:
  load "<asset name>" as <binding>
  scale <binding> to <meters>
  physics <binding> mass <kilograms>
  place <binding> next_to <binding> dir (<x>, <y>, <z>)
  move <binding> to (<x>, <y>, <z>)
  primitive <cube|sphere|cylinder|plane> as <binding>
  attach <binding> to <joint name>
  repeat <n> { ... }
  destroy_all
Bindings are lowercase identifiers. The room is 10x10x10 meters with floor,
ceiling, north_wall, east_wall, south_wall, and west_wall already bound; the
floor is at y = 0 and nothing may be placed outside the room."""


def build_codegen_prompt(request: str) -> str:
    """Prompt the live model for a scene-command program, not engine code."""
    return (
        "You furnish a virtual room by writing scene-command programs.\n\n"
        f"{CODEGEN_GRAMMAR_SUMMARY}\n\n"
        "Example request: Add a computer desk in front of the north wall with "
        "a flashlight on top, at real-world sizes and masses.\n"
        f"Example program:\n{EXAMPLE_PROGRAM}\n"
        f"Request: {request.strip()}\n"
        "Program:\n"
    )

STOPWORDS = frozenset(
    "a an the into onto in on of with and or to scene change make build add create "
    "please put set turn room my me us it this that".split()
)


def _fmt(value: float) -> str:
    if value == int(value):
        return str(int(value))
    return repr(value)


def plan_program(items: tuple[PlanItem, ...]) -> str:
    lines: list[str] = []
    for item in items:
        binding = _slug(item.query)
        d = item.direction
        lines.append(f'load "{item.query}" as {binding}')
        lines.append(f"scale {binding} to {_fmt(item.size_m)}")
        lines.append(f"physics {binding} mass {_fmt(item.mass_kg)}")
        lines.append(
            f"place {binding} next_to {item.anchor} dir ({_fmt(d[0])}, {_fmt(d[1])}, {_fmt(d[2])})"
        )
    return "\n".join(lines) + "\n"


def match_scene(text: str) -> Optional[str]:
    lowered = text.lower()
    for key in sorted(SCENE_PLANS, key=len, reverse=True):
        if key in lowered:
            return key
    if "forest" in lowered or "jungle" in lowered:
        return "forest"
    return None


def fallback_noun(text: str) -> Optional[str]:
    first = text.strip().splitlines()[0] if text.strip() else ""
    if first.lower().startswith("goal:"):
        first = first[len("goal:") :]
    words = [w for w in re.findall(r"[a-z]+", first.lower()) if w not in STOPWORDS]
    return words[-1] if words else None


_SPREAD = (-0.6, -0.45, -0.3, -0.15, 0.15, 0.3, 0.45, 0.6)


def fallback_program(noun: str) -> str:
    # Spread single objects around the floor deterministically by noun so
    # successive requests do not pile onto the room center.
    digest = int.from_bytes(hashlib.sha256(noun.encode()).digest()[:4], "big")
    dx = _SPREAD[digest % len(_SPREAD)]
    dz = _SPREAD[(digest // len(_SPREAD)) % len(_SPREAD)]
    binding = _slug(noun)
    return (
        f'load "{noun}" as {binding}\n'
        f"scale {binding} to 1\n"
        f"place {binding} next_to floor dir ({_fmt(dx)}, 1, {_fmt(dz)})\n"
    )


_LOAD_STEP_RE = re.compile(r"load (?:a |an |the )?([a-z][a-z ]*?)(?:,|\.|$)", re.MULTILINE)


def generate_program_text(text: str) -> Optional[str]:
    """Deterministic prompt -> program translation for mock mode.

    Accepts either a raw prompt or an elaborated step-by-step instruction:
    known scenes map to their placement plans, otherwise the first "load a X"
    step (or the prompt's own noun) becomes a single-object program.
    """
    scene = match_scene(text)
    if scene == "forest":
        return FOREST_PROGRAM
    if scene is not None:
        return plan_program(SCENE_PLANS[scene])
    m = _LOAD_STEP_RE.search(text.lower())
    noun = m.group(1).strip() if m else None
    if not noun:
        noun = fallback_noun(text)
    if not noun:
        return None
    return fallback_program(noun)


def elaborate_text(text: str) -> str:
    """Deterministic step-by-step expansion used by the mock elaborator."""
    scene = match_scene(text)
    if scene == "forest":
        return (
            f"Goal: {text.strip()}\n"
            "Step 1: load six tree models in a loop.\n"
            "Step 2: load a boulder, scale it to 1.2 m, and place it on the floor.\n"
        )
    if scene is None:
        noun = fallback_noun(text)
        if noun is None:
            return text
        return (
            f"Goal: {text.strip()}\n"
            f"Step 1: load a {noun}, scale it to 1 m, and place it on the floor.\n"
        )
    steps = []
    for i, item in enumerate(SCENE_PLANS[scene], start=1):
        steps.append(
            f"Step {i}: load a {item.query}, scale it to {_fmt(item.size_m)} m, "
            f"give it a mass of {_fmt(item.mass_kg)} kg, and place it next to the "
            f"{item.anchor.replace('_', ' ')}."
        )
    return f"Goal: {text.strip()}\n" + "\n".join(steps) + "\n"
