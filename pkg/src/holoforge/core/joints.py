"""Hand joint vocabulary and per-owner joint pose sets.

The vocabulary is closed: it is loaded from the bundled data file and attach
operations reject anything outside it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

from ..errors import UnknownJointError
from .vectors import IDENTITY, Quat, Vec3


def _load_joint_names() -> tuple[str, ...]:
    text = resources.files("holoforge.data").joinpath("hand_joints.txt").read_text("utf-8")
    return tuple(line.strip() for line in text.splitlines() if line.strip())


JOINT_NAMES: tuple[str, ...] = _load_joint_names()
JOINT_SET: frozenset[str] = frozenset(JOINT_NAMES)


def require_joint(name: str) -> str:
    if name not in JOINT_SET:
        raise UnknownJointError(f"unknown joint {name!r}")
    return name


@dataclass
class JointPose:
    position: Vec3 = Vec3()
    rotation: Quat = IDENTITY


@dataclass
class JointSet:
    """Pose table for one owner's two hands; poses are written by client
    input or a server-side script, never by the physics step."""

    owner: str
    poses: dict[str, JointPose] = field(default_factory=dict)

    def set_pose(self, joint: str, position: Vec3, rotation: Quat = IDENTITY) -> None:
        require_joint(joint)
        self.poses[joint] = JointPose(position, rotation)

    def pose(self, joint: str) -> JointPose:
        require_joint(joint)
        return self.poses.get(joint, JointPose())
