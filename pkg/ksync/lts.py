# ksync/lts.py
"""Finite LTS of abstract configurations, built breadth-first."""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable, Generic, Hashable, TypeVar

import pydot

from ksync.errors import ExplosionLimit, TransitionRejected
from ksync.exchange import AbstractConfig, KExchange, distinct_exchanges, enumerate_k_exchanges, step_k
from ksync.model.system import GlobalState, System
from ksync.schemas import LtsDoc, action_to_doc, dump_document

logger = logging.getLogger(__name__)


# states expose .global_state and .book_document()
S = TypeVar("S", bound=Hashable)


@dataclass
class Lts(Generic[S]):
    states: list[S] = field(default_factory=list)
    index: dict[S, int] = field(default_factory=dict)
    transitions: list[tuple[int, int, KExchange]] = field(default_factory=list)
    violations: list[tuple[int, KExchange, str]] = field(default_factory=list)
    parent: dict[int, tuple[int, KExchange]] = field(default_factory=dict)

    def add_state(self, state: S, *, via: tuple[int, KExchange] | None = None) -> tuple[int, bool]:
        existing = self.index.get(state)
        if existing is not None:
            return existing, False
        sid = len(self.states)
        self.states.append(state)
        self.index[state] = sid
        if via is not None:
            self.parent[sid] = via
        return sid, True

    def path_to(self, state_id: int) -> list[KExchange]:
        """Exchanges along the BFS tree from the initial state."""
        path: list[KExchange] = []
        while state_id in self.parent:
            state_id, e = self.parent[state_id]
            path.append(e)
        path.reverse()
        return path

    def global_states(self) -> set[GlobalState]:
        return {s.global_state for s in self.states}

    def to_document(self, system: System) -> dict[str, Any]:
        return dump_document(self.to_model(system))

    def to_model(self, system: System) -> LtsDoc:
        return LtsDoc.model_validate({
            "states": [
                {"id": i, "global": system.describe(s.global_state), "book": s.book_document()}
                for i, s in enumerate(self.states)
            ],
            "transitions": [
                {"from": src, "to": dst, "exchange": [action_to_doc(a) for a in e.actions]}
                for src, dst, e in self.transitions
            ],
            "violations": [
                {"from": src, "exchange": [action_to_doc(a) for a in e.actions], "reason": reason}
                for src, e, reason in self.violations
            ],
        })


def explore_configs(
    system: System,
    k: int,
    initial: S,
    stepper: Callable[[S, KExchange], S],
    *,
    max_states: int | None = None,
    max_exchanges: int | None = None,
    stop: Callable[[S], bool] | None = None,
) -> tuple[Lts[S], int | None]:
    """BFS closing ``initial`` under ``stepper``; rejected steps are kept as violations.

    Returns the LTS and the id of the first state satisfying ``stop`` (if any).
    """
    lts: Lts[S] = Lts()
    root, _ = lts.add_state(initial)
    if stop is not None and stop(initial):
        return lts, root
    queue: deque[int] = deque([root])
    while queue:
        sid = queue.popleft()
        state = lts.states[sid]
        exchanges = enumerate_k_exchanges(system, state.global_state, k, limit=max_exchanges)
        for e in distinct_exchanges(exchanges):
            try:
                nxt = stepper(state, e)
            except TransitionRejected as exc:
                lts.violations.append((sid, e, str(exc)))
                continue
            nid, fresh = lts.add_state(nxt, via=(sid, e))
            lts.transitions.append((sid, nid, e))
            if not fresh:
                continue
            if max_states is not None and len(lts.states) > max_states:
                raise ExplosionLimit(
                    f"more than {max_states} abstract configurations",
                    stats={"states": len(lts.states), "transitions": len(lts.transitions)},
                )
            if stop is not None and stop(nxt):
                return lts, nid
            queue.append(nid)
    logger.info(
        "explored %s states, %s transitions, %s violations",
        len(lts.states),
        len(lts.transitions),
        len(lts.violations),
    )
    return lts, None


@dataclass(frozen=True, slots=True)
class Reachability:
    reachable: bool
    witness: list[KExchange] | None
    states_explored: int

    def to_dict(self, system: System) -> dict[str, Any]:
        return {
            "reachable": self.reachable,
            "witness": None
            if self.witness is None
            else [
                {
                    "from": system.describe(e.source) if e.source is not None else None,
                    "to": system.describe(e.target) if e.target is not None else None,
                    "actions": [action_to_doc(a) for a in e.actions],
                }
                for e in self.witness
            ],
            "statesExplored": self.states_explored,
        }


def reach(
    system: System,
    k: int,
    initial: S,
    stepper: Callable[[S, KExchange], S],
    goal: GlobalState,
    *,
    max_states: int | None = None,
    max_exchanges: int | None = None,
) -> Reachability:
    lts, hit = explore_configs(
        system,
        k,
        initial,
        stepper,
        max_states=max_states,
        max_exchanges=max_exchanges,
        stop=lambda s: s.global_state == goal,
    )
    if hit is None:
        return Reachability(False, None, len(lts.states))
    return Reachability(True, lts.path_to(hit), len(lts.states))


def explore(
    system: System,
    k: int,
    *,
    max_states: int | None = None,
    max_exchanges: int | None = None,
) -> Lts[AbstractConfig]:
    """Mailbox LTS from (l0, B0)."""
    lts, _ = explore_configs(
        system,
        k,
        AbstractConfig.initial(system),
        lambda cfg, e: step_k(cfg, e, k),
        max_states=max_states,
        max_exchanges=max_exchanges,
    )
    return lts


def decide_reachability(
    system: System,
    k: int,
    goal: GlobalState,
    *,
    max_states: int | None = None,
    max_exchanges: int | None = None,
) -> Reachability:
    """Reachability of ``goal`` through k-exchanges (meaningful for k-synchronizable systems)."""
    return reach(
        system,
        k,
        AbstractConfig.initial(system),
        lambda cfg, e: step_k(cfg, e, k),
        goal,
        max_states=max_states,
        max_exchanges=max_exchanges,
    )


def to_dot(lts: Lts, system: System, *, name: str = "lts") -> str:
    graph = pydot.Dot(name, graph_type="digraph")
    for i, s in enumerate(lts.states):
        label = ",".join(f"{p}={l}" for p, l in system.describe(s.global_state).items())
        graph.add_node(pydot.Node(f"s{i}", label=f'"{label}"'))
    for src, dst, e in lts.transitions:
        graph.add_edge(pydot.Edge(f"s{src}", f"s{dst}", label=f'"{e}"'))
    for j, (src, e, _) in enumerate(lts.violations):
        graph.add_node(pydot.Node(f"x{j}", label='"violation"', shape="octagon"))
        graph.add_edge(pydot.Edge(f"s{src}", f"x{j}", label=f'"{e}"', style="dashed"))
    return graph.to_string()


__all__ = ["Lts", "Reachability", "decide_reachability", "explore", "explore_configs", "reach", "to_dot"]
