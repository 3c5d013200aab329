from .entity import AssetRef, Entity, EntitySpec, Kind, PRIMITIVE_SHAPES
from .joints import JOINT_NAMES, JOINT_SET, JointPose, JointSet, require_joint
from .rooms import COURT_BOUNDS, COURT_END_LINE, build_court_scene, build_holodeck_scene
from .scene import (
    Box,
    BoundsEvent,
    CollisionEvent,
    GRAVITY,
    HOLODECK_BOUNDS,
    POSITION_QUANTUM,
    SceneGraph,
    TICK_RATE,
    aabb_overlap,
    quantize,
)
from .vectors import IDENTITY, Quat, Vec3

__all__ = [
    "AssetRef",
    "Entity",
    "EntitySpec",
    "Kind",
    "PRIMITIVE_SHAPES",
    "JOINT_NAMES",
    "JOINT_SET",
    "JointPose",
    "JointSet",
    "require_joint",
    "COURT_BOUNDS",
    "COURT_END_LINE",
    "build_court_scene",
    "build_holodeck_scene",
    "Box",
    "BoundsEvent",
    "CollisionEvent",
    "GRAVITY",
    "HOLODECK_BOUNDS",
    "POSITION_QUANTUM",
    "SceneGraph",
    "TICK_RATE",
    "aabb_overlap",
    "quantize",
    "IDENTITY",
    "Quat",
    "Vec3",
]
