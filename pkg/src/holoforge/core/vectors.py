"""Minimal 3-vector and quaternion value types.

Scenes hold at most a few hundred entities, so plain scalar dataclasses beat
array libraries here; everything stays in double precision for determinism.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class Vec3:
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def __post_init__(self):
        for c in (self.x, self.y, self.z):
            if not math.isfinite(c):
                raise ValueError(f"non-finite vector component: {c!r}")

    def __add__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def scaled(self, k: float) -> "Vec3":
        return Vec3(self.x * k, self.y * k, self.z * k)

    def hadamard(self, other: "Vec3") -> "Vec3":
        """Componentwise product; used by the next-to placement offset."""
        return Vec3(self.x * other.x, self.y * other.y, self.z * other.z)

    def dot(self, other: "Vec3") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def length(self) -> float:
        return math.sqrt(self.dot(self))

    def max_component(self) -> float:
        return max(self.x, self.y, self.z)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)

    @staticmethod
    def from_any(value) -> "Vec3":
        if isinstance(value, Vec3):
            return value
        x, y, z = value
        return Vec3(float(x), float(y), float(z))


ZERO = Vec3(0.0, 0.0, 0.0)


@dataclass(frozen=True)
class Quat:
    """Orientation as (w, x, y, z). Assets keep the orientation they were
    delivered with, so no rotation algebra is needed beyond storage."""

    w: float = 1.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.w, self.x, self.y, self.z)

    @staticmethod
    def from_any(value) -> "Quat":
        if isinstance(value, Quat):
            return value
        w, x, y, z = value
        return Quat(float(w), float(x), float(y), float(z))


IDENTITY = Quat()
