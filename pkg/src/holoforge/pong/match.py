"""Surreal tennis ruleset: command grammar, ball/paddle kinematics,
collision-triggered transformation events, scoring.

The ball flies without gravity and reflects elastically; paddles ride the
owner's right palm anchor, so moving the joint pose moves the paddle. A hit
emits a transformation request only when at least one side has been
transformed away from its default label.
"""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass, field
from typing import Optional

from ..core.entity import AssetRef, EntitySpec, Kind
from ..core.rooms import COURT_END_LINE, build_court_scene
from ..core.scene import SceneGraph, aabb_overlap
from ..core.vectors import Vec3
from ..errors import EmptyCompletionError
from ..resolver.resolver import parse_completion

DEFAULT_BALL_LABEL = "ball"
DEFAULT_PADDLE_LABEL = "paddle"
BALL_MIN_EXTENT = 0.1
BALL_MAX_EXTENT = 0.5
BALL_DEFAULT_EXTENT = 0.2
PADDLE_EXTENT = 0.3
SERVE_SPEED = 2.0
SERVE_JITTER_DEG = 15.0
PADDLE_JOINT = "R_Palm"
PADDLE_AI_SPEED = 3.0
PADDLE_PLAY_Y = 1.0
PADDLE_PARK_Y = 0.15  # out of the ball plane; empty seats never block the ball


# ------------------------------------------------------------------ commands


@dataclass(frozen=True)
class ChangeBall:
    label: str


@dataclass(frozen=True)
class ChangePaddle:
    label: str


@dataclass(frozen=True)
class NoCommand:
    pass


PlayerCommand = ChangeBall | ChangePaddle | NoCommand

_BALL_RE = re.compile(r"^\s*change\s+ball\s+to\s+(.+?)\s*$", re.IGNORECASE)
_PADDLE_RE = re.compile(r"^\s*change\s+paddle\s+to\s+(.+?)\s*$", re.IGNORECASE)


def parse_player_command(text: str) -> PlayerCommand:
    m = _BALL_RE.match(text or "")
    if m:
        try:
            return ChangeBall(parse_completion(m.group(1)))
        except EmptyCompletionError:
            return NoCommand()
    m = _PADDLE_RE.match(text or "")
    if m:
        try:
            return ChangePaddle(parse_completion(m.group(1)))
        except EmptyCompletionError:
            return NoCommand()
    return NoCommand()


# ------------------------------------------------------------------ events


@dataclass(frozen=True)
class HitEvent:
    player: str


@dataclass(frozen=True)
class TransformRequested:
    player: str
    ball_label: str
    paddle_label: str


@dataclass(frozen=True)
class ScoreEvent:
    scorer: str
    scores: dict


@dataclass(frozen=True)
class ServeEvent:
    toward: str
    velocity: tuple


MatchEvent = HitEvent | TransformRequested | ScoreEvent | ServeEvent


# ------------------------------------------------------------------ state


@dataclass
class PlayerSlot:
    player: str
    end_sign: float  # sign of the player's end-line z
    paddle_id: int
    paddle_label: str = DEFAULT_PADDLE_LABEL

    @property
    def normal(self) -> Vec3:
        # Paddles face the court center.
        return Vec3(0.0, 0.0, -self.end_sign)


@dataclass
class MatchState:
    scene: SceneGraph
    ball_id: int
    players: dict[str, PlayerSlot]
    scores: dict[str, int]
    serving: str
    rng: random.Random
    ball_label: str = DEFAULT_BALL_LABEL
    paddle_ai: bool = True
    _last_hit_player: Optional[str] = field(default=None, repr=False)

    @property
    def ball(self):
        return self.scene.entity(self.ball_id)

    def paddle(self, player: str):
        return self.scene.entity(self.players[player].paddle_id)


def build_match(seed: int = 0, scene: Optional[SceneGraph] = None) -> MatchState:
    scene = scene if scene is not None else build_court_scene(seed)
    rng = random.Random(seed)
    ball_id = scene.spawn_entity(
        EntitySpec(
            name=DEFAULT_BALL_LABEL,
            kind=Kind.PRIMITIVE,
            shape="sphere",
            position=Vec3(0.0, 1.0, 0.0),
            scale=BALL_DEFAULT_EXTENT,
        )
    )
    players: dict[str, PlayerSlot] = {}
    for player, end_sign in (("p1", -1.0), ("p2", 1.0)):
        anchor_pos = Vec3(0.0, 1.0, 1.8 * end_sign)
        scene.joint_set(player).set_pose(PADDLE_JOINT, anchor_pos)
        paddle_id = scene.spawn_entity(
            EntitySpec(
                name=f"{player} {DEFAULT_PADDLE_LABEL}",
                kind=Kind.PRIMITIVE,
                shape="cube",
                position=anchor_pos,
                scale=PADDLE_EXTENT,
            )
        )
        scene.attach_to_joint(paddle_id, PADDLE_JOINT, owner=player)
        players[player] = PlayerSlot(player, end_sign, paddle_id)
    match = MatchState(
        scene=scene,
        ball_id=ball_id,
        players=players,
        scores={"p1": 0, "p2": 0},
        serving="p1",
        rng=rng,
    )
    serve(match, toward="p1")
    return match


# ------------------------------------------------------------------ mechanics


def serve(match: MatchState, toward: str) -> ServeEvent:
    theta = math.radians(match.rng.uniform(-SERVE_JITTER_DEG, SERVE_JITTER_DEG))
    sign = match.players[toward].end_sign
    velocity = Vec3(
        SERVE_SPEED * math.sin(theta), 0.0, sign * SERVE_SPEED * math.cos(theta)
    )
    ball = match.ball
    ball.position = Vec3(0.0, 1.0, 0.0)
    ball.velocity = velocity
    match.serving = toward
    match._last_hit_player = None
    return ServeEvent(toward=toward, velocity=velocity.as_tuple())


def on_paddle_hit(match: MatchState, player: str) -> Optional[TransformRequested]:
    """Reflect the ball off this player's paddle; emit a transformation
    request when either side is non-default."""
    slot = match.players[player]
    ball = match.ball
    n = slot.normal
    v = ball.velocity
    vn = v.dot(n)
    if vn < 0.0:
        ball.velocity = v - n.scaled(2.0 * vn)
    if match.ball_label != DEFAULT_BALL_LABEL or slot.paddle_label != DEFAULT_PADDLE_LABEL:
        return TransformRequested(player, match.ball_label, slot.paddle_label)
    return None


def _track_paddles(match: MatchState, dt_eff: float) -> None:
    ball = match.ball
    for player in sorted(match.players):
        joints = match.scene.joint_set(player)
        pose = joints.pose(PADDLE_JOINT)
        delta = ball.position.x - pose.position.x
        step = max(-PADDLE_AI_SPEED * dt_eff, min(PADDLE_AI_SPEED * dt_eff, delta))
        joints.set_pose(PADDLE_JOINT, Vec3(pose.position.x + step, pose.position.y, pose.position.z))


def drive_paddles(match: MatchState, seated: set[str], dt_eff: float) -> None:
    """Server-side paddle script: seated players' paddles track the ball at
    play height; empty seats park low, out of the ball plane."""
    ball = match.ball
    for player, slot in sorted(match.players.items()):
        joints = match.scene.joint_set(player)
        pose = joints.pose(PADDLE_JOINT)
        z = 1.8 * slot.end_sign
        if player not in seated:
            joints.set_pose(PADDLE_JOINT, Vec3(pose.position.x, PADDLE_PARK_Y, z))
            continue
        delta = ball.position.x - pose.position.x
        step = max(-PADDLE_AI_SPEED * dt_eff, min(PADDLE_AI_SPEED * dt_eff, delta))
        joints.set_pose(PADDLE_JOINT, Vec3(pose.position.x + step, PADDLE_PLAY_Y, z))


def step_match(match: MatchState, dt: float) -> list[MatchEvent]:
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    events: list[MatchEvent] = []
    if match.paddle_ai:
        _track_paddles(match, dt * match.scene.time_scale)
    match.scene.step(dt)
    ball = match.ball

    # End-line crossings score for the opposite player and re-serve.
    if ball.position.z >= COURT_END_LINE or ball.position.z <= -COURT_END_LINE:
        crossed_sign = 1.0 if ball.position.z >= COURT_END_LINE else -1.0
        scorer = next(
            p for p, slot in sorted(match.players.items()) if slot.end_sign == -crossed_sign
        )
        match.scores[scorer] += 1
        events.append(ScoreEvent(scorer=scorer, scores=dict(match.scores)))
        events.append(serve(match, toward=scorer))
        return events

    for player in sorted(match.players):
        slot = match.players[player]
        paddle = match.paddle(player)
        if not aabb_overlap(ball.aabb(), paddle.aabb()):
            if match._last_hit_player == player:
                match._last_hit_player = None
            continue
        if ball.velocity.dot(slot.normal) >= 0.0 or match._last_hit_player == player:
            continue
        match._last_hit_player = player
        events.append(HitEvent(player))
        request = on_paddle_hit(match, player)
        if request is not None:
            events.append(request)
    return events


# ------------------------------------------------------------------ transformations


def apply_ball_transformation(match: MatchState, record, label: str):
    """Swap the ball's asset and label; position and velocity are preserved
    bitwise and the max extent is clamped into the play-size window."""
    ball = match.ball
    target = min(max(ball.extents().max_component(), BALL_MIN_EXTENT), BALL_MAX_EXTENT)
    ball.kind = Kind.LOADED
    ball.shape = None
    ball.base_extents = Vec3.from_any(record.base_extents)
    ball.asset_ref = AssetRef(record.id, record.download_url)
    ball.vertex_count = record.vertex_count
    ball.scale = target / ball.base_extents.max_component()
    if label != match.ball_label:
        ball.name = match.scene.unique_name(label) if match.scene.find_by_name(label) else label
    match.ball_label = label
    return ball


def apply_paddle_transformation(match: MatchState, player: str, record, label: str):
    slot = match.players[player]
    paddle = match.paddle(player)
    paddle.kind = Kind.LOADED
    paddle.shape = None
    paddle.base_extents = Vec3.from_any(record.base_extents)
    paddle.asset_ref = AssetRef(record.id, record.download_url)
    paddle.vertex_count = record.vertex_count
    paddle.scale = PADDLE_EXTENT / paddle.base_extents.max_component()
    name = f"{player} {label}"
    if match.scene.find_by_name(name) is not None and match.scene.find_by_name(name).id != paddle.id:
        name = match.scene.unique_name(name)
    paddle.name = name
    slot.paddle_label = label
    return paddle
