from .messages import (
    AssetDirective,
    AssetReady,
    CommandRequest,
    Envelope,
    EventNotice,
    MESSAGE_TYPES,
    ORDERED_KINDS,
    ResolutionAnnounce,
    Snapshot,
    SpawnCommit,
    StateHash,
    StateHashReport,
    TimeScale,
    WIRE_VERSION,
    decode_frames,
    encode_frame,
    envelope_from_wire,
    message_from_wire,
)
from .netsim import (
    NetworkConfig,
    ScriptCommand,
    Simulation,
    SimulationResult,
    TICK_DT,
    run_to_convergence,
)
from .replica import Replica
from .session import (
    AUDIT_PERIOD_TICKS,
    BARRIER_TIMEOUT_TICKS,
    DILATED_TIME_SCALE,
    Pending,
    QueuedRequest,
    SNAPSHOT_PERIOD_TICKS,
    Session,
    Ticket,
)

__all__ = [
    "AssetDirective",
    "AssetReady",
    "CommandRequest",
    "Envelope",
    "EventNotice",
    "MESSAGE_TYPES",
    "ORDERED_KINDS",
    "ResolutionAnnounce",
    "Snapshot",
    "SpawnCommit",
    "StateHash",
    "StateHashReport",
    "TimeScale",
    "WIRE_VERSION",
    "decode_frames",
    "encode_frame",
    "envelope_from_wire",
    "message_from_wire",
    "NetworkConfig",
    "ScriptCommand",
    "Simulation",
    "SimulationResult",
    "TICK_DT",
    "run_to_convergence",
    "Replica",
    "AUDIT_PERIOD_TICKS",
    "BARRIER_TIMEOUT_TICKS",
    "DILATED_TIME_SCALE",
    "Pending",
    "QueuedRequest",
    "SNAPSHOT_PERIOD_TICKS",
    "Session",
    "Ticket",
]
