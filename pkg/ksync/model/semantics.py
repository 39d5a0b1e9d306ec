# ksync/model/semantics.py
"""Asynchronous operational semantics (send appends, receive pops the FIFO head)."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Iterator

from ksync.errors import BufferHeadMismatch, NotEnabled, StepError
from ksync.model.system import (
    Action,
    Configuration,
    Execution,
    System,
    Transition,
    buffer_key,
    compute_matching,
)

logger = logging.getLogger(__name__)


def fire(system: System, config: Configuration, action: Action, target: str) -> Configuration:
    key = buffer_key(system.comm, action.sender, action.receiver)
    content = config.buffer(key)
    envelope = (action.sender, action.message)
    if action.is_send:
        content = content + (envelope,)
    else:
        if not content or content[0] != envelope:
            head = f"{content[0][1]} from {content[0][0]}" if content else "empty buffer"
            raise BufferHeadMismatch(f"{action} does not match the head of {key}: {head}", action=action)
        content = content[1:]
    return config.with_local(system.index(action.actor), target).with_buffer(key, content)


def step(
    system: System,
    config: Configuration,
    action: Action,
    *,
    target: str | None = None,
) -> Configuration:
    """One SEND/RECEIVE move.

    For nondeterministic automata the lexicographically first target is used
    unless ``target`` picks one explicitly.
    """
    idx = system.index(action.actor)
    local = config.global_state[idx]
    candidates = system.automaton(action.actor).targets(local, action)
    if not candidates:
        raise NotEnabled(f"{action.actor} has no {action} transition from {local}", action=action)
    if target is None:
        target = candidates[0]
    elif target not in candidates:
        raise NotEnabled(f"{action.actor} cannot reach {target} with {action} from {local}", action=action)
    return fire(system, config, action, target)


@dataclass(frozen=True, slots=True)
class RunResult:
    final: Configuration
    matching: dict[int, int]
    peak_buffer: int
    execution: Execution


def run(system: System, actions: Iterable[Action], *, initial: Configuration | None = None) -> RunResult:
    actions = tuple(actions)
    config = initial if initial is not None else Configuration.initial(system)
    peak = config.max_buffer
    for i, a in enumerate(actions):
        try:
            config = step(system, config, a)
        except StepError as exc:
            exc.index = i
            raise
        peak = max(peak, config.max_buffer)
    matching = compute_matching(actions)
    return RunResult(final=config, matching=matching, peak_buffer=peak, execution=Execution(actions, matching))


def enabled(system: System, config: Configuration) -> Iterator[tuple[str, Transition]]:
    """Transitions that can fire from ``config`` (canonical process order)."""
    for idx, p in enumerate(system.processes):
        for t in system.automaton(p).outgoing(config.global_state[idx]):
            a = t.action
            if a.is_send:
                yield p, t
                continue
            content = config.buffer(buffer_key(system.comm, a.sender, a.receiver))
            if content and content[0] == (a.sender, a.message):
                yield p, t


def bounded_executions(
    system: System,
    max_length: int,
    buffer_cap: int | None = None,
) -> Iterator[tuple[Execution, Configuration]]:
    """Every execution of length <= ``max_length`` (the empty one included).

    Sends that would push a buffer above ``buffer_cap`` are skipped.
    """
    start = Configuration.initial(system)

    def dfs(config: Configuration, prefix: tuple[Action, ...]) -> Iterator[tuple[Execution, Configuration]]:
        yield Execution.of(prefix), config
        if len(prefix) >= max_length:
            return
        for _, t in enabled(system, config):
            nxt = fire(system, config, t.action, t.target)
            if buffer_cap is not None and nxt.max_buffer > buffer_cap:
                continue
            yield from dfs(nxt, prefix + (t.action,))

    yield from dfs(start, ())


def peak_buffer(system: System, actions: Iterable[Action]) -> int:
    return run(system, actions).peak_buffer


__all__ = ["RunResult", "bounded_executions", "enabled", "fire", "peak_buffer", "run", "step"]
