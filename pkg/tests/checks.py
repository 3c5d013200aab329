"""Exhaustive small-scale model check of the spawn-barrier state machine.

Explores every interleaving of `advance` steps and ack arrivals for a given
session setup, asserting at every transition that

  * a SpawnCommit is only ever emitted by an `advance` whose pre-state had an
    empty awaiting set (the barrier), and
  * the time-dilation invariant holds: time_scale == 0.01 exactly when a
    transformation is pending.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass

from holoforge.replication.session import DILATED_TIME_SCALE, Session


@dataclass
class ModelCheckResult:
    states_visited: int
    transitions: int
    commits_seen: int


def _state_key(session: Session):
    pending = None
    if session.pending is not None:
        pending = (
            session.pending.ticket_id,
            session.pending.kind,
            frozenset(session.pending.awaiting),
        )
    return (
        tuple(entry[3].ticket_id for entry in sorted(session.queue)),
        pending,
        session.scene.time_scale,
        tuple(sorted((t.id, t.state) for t in session.tickets.values())),
    )


def _check_invariants(session: Session) -> None:
    is_pending = session.pending is not None
    is_dilated = session.scene.time_scale == DILATED_TIME_SCALE
    assert is_pending == is_dilated, (
        f"time-scale invariant violated: pending={is_pending} "
        f"time_scale={session.scene.time_scale}"
    )


def _events(session: Session):
    yield ("advance",)
    if session.pending is not None:
        for client, asset in sorted(session.pending.awaiting):
            yield ("ack", client, asset)


def model_check_barrier(session: Session, max_states: int = 10_000) -> ModelCheckResult:
    _check_invariants(session)
    seen = {_state_key(session)}
    frontier = [session]
    transitions = 0
    commits = 0
    while frontier:
        state = frontier.pop()
        for event in list(_events(state)):
            branch = copy.deepcopy(state)
            had_empty_barrier = (
                branch.pending is not None and not branch.pending.awaiting
            )
            if event[0] == "advance":
                emitted = branch.advance()
                commit_count = sum(1 for e in emitted if e.kind == "spawn_commit")
                if commit_count:
                    commits += commit_count
                    assert had_empty_barrier, (
                        "SpawnCommit emitted before every client acked every asset"
                    )
            else:
                _, client, asset = event
                branch.deliver_asset_ready(client, asset)
                assert not any(
                    e.kind == "spawn_commit" for e in branch._outbox
                ), "ack delivery must not commit directly"
            _check_invariants(branch)
            transitions += 1
            key = _state_key(branch)
            if key not in seen:
                if len(seen) >= max_states:
                    raise AssertionError(f"state bound {max_states} exceeded")
                seen.add(key)
                frontier.append(branch)
    return ModelCheckResult(states_visited=len(seen), transitions=transitions, commits_seen=commits)
