"""Prebuilt scenes: the 10x10x10 sandbox room and the pong court.

Structural planes have zero thickness along their normal so next-to
placement offsets reduce to the placed entity's half extent.
"""

from __future__ import annotations

from .entity import EntitySpec, Kind
from .scene import Box, SceneGraph
from .vectors import Vec3

ROOM_ENTITIES = (
    ("Floor", Vec3(0.0, 0.0, 0.0), Vec3(10.0, 0.0, 10.0)),
    ("Ceiling", Vec3(0.0, 10.0, 0.0), Vec3(10.0, 0.0, 10.0)),
    ("North Wall", Vec3(0.0, 0.0, 5.0), Vec3(10.0, 10.0, 0.0)),
    ("East Wall", Vec3(5.0, 0.0, 0.0), Vec3(0.0, 10.0, 10.0)),
    ("South Wall", Vec3(0.0, 0.0, -5.0), Vec3(10.0, 10.0, 0.0)),
    ("West Wall", Vec3(-5.0, 0.0, 0.0), Vec3(0.0, 10.0, 10.0)),
)

# Court: 4 m long (z), 2 m wide (x), 2 m high (y); end lines at z = +-2.
COURT_BOUNDS = Box(Vec3(-1.0, 0.0, -2.5), Vec3(1.0, 2.0, 2.5))
COURT_END_LINE = 2.0

COURT_ENTITIES = (
    ("Court Floor", Vec3(0.0, 0.0, 0.0), Vec3(2.0, 0.0, 4.0)),
    ("Court Ceiling", Vec3(0.0, 2.0, 0.0), Vec3(2.0, 0.0, 4.0)),
    ("West Side Wall", Vec3(-1.0, 1.0, 0.0), Vec3(0.0, 2.0, 4.0)),
    ("East Side Wall", Vec3(1.0, 1.0, 0.0), Vec3(0.0, 2.0, 4.0)),
)


def build_holodeck_scene(seed: int = 0) -> SceneGraph:
    scene = SceneGraph(rng_seed=seed)
    for name, position, extents in ROOM_ENTITIES:
        scene.spawn_entity(
            EntitySpec(
                name=name,
                kind=Kind.STRUCTURAL,
                position=position,
                base_extents=extents,
                shape="plane",
            )
        )
    return scene


def build_court_scene(seed: int = 0) -> SceneGraph:
    scene = SceneGraph(bounds=COURT_BOUNDS, rng_seed=seed)
    for name, position, extents in COURT_ENTITIES:
        scene.spawn_entity(
            EntitySpec(
                name=name,
                kind=Kind.STRUCTURAL,
                position=position,
                base_extents=extents,
                shape="plane",
            )
        )
    return scene
