from .match import (
    PADDLE_PARK_Y,
    PADDLE_PLAY_Y,
    drive_paddles,
    BALL_MAX_EXTENT,
    BALL_MIN_EXTENT,
    ChangeBall,
    ChangePaddle,
    DEFAULT_BALL_LABEL,
    DEFAULT_PADDLE_LABEL,
    HitEvent,
    MatchState,
    NoCommand,
    PADDLE_JOINT,
    PlayerCommand,
    PlayerSlot,
    ScoreEvent,
    ServeEvent,
    TransformRequested,
    apply_ball_transformation,
    apply_paddle_transformation,
    build_match,
    on_paddle_hit,
    parse_player_command,
    serve,
    step_match,
)

__all__ = [
    "BALL_MAX_EXTENT",
    "BALL_MIN_EXTENT",
    "ChangeBall",
    "ChangePaddle",
    "DEFAULT_BALL_LABEL",
    "DEFAULT_PADDLE_LABEL",
    "HitEvent",
    "MatchState",
    "NoCommand",
    "PADDLE_JOINT",
    "PlayerCommand",
    "PlayerSlot",
    "ScoreEvent",
    "ServeEvent",
    "TransformRequested",
    "apply_ball_transformation",
    "apply_paddle_transformation",
    "build_match",
    "on_paddle_hit",
    "parse_player_command",
    "serve",
    "step_match",
]
