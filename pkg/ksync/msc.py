# ksync/msc.py
"""Message sequence charts, their linearizations and the brute-force oracles."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Mapping, Sequence

import networkx as nx

from ksync.errors import CyclicOrder, SchemaError
from ksync.model.system import MAILBOX, Action, Execution

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class Event:
    id: int
    process: str
    action: Action


@dataclass(frozen=True, slots=True, order=True)
class MessageExchange:
    """A send event plus its receive event, if any (a conflict-graph vertex)."""

    send: int
    receive: int | None
    action: Action

    @property
    def matched(self) -> bool:
        return self.receive is not None

    @property
    def sender(self) -> str:
        return self.action.sender

    @property
    def receiver(self) -> str:
        return self.action.receiver

    @property
    def message(self) -> str:
        return self.action.message

    def __str__(self) -> str:
        return f"{self.sender}->{self.receiver}:{self.message}" + ("" if self.matched else " (unmatched)")


@dataclass(frozen=True)
class Msc:
    """Events in listing order; the per-process order is the listing order."""

    events: tuple[Event, ...]
    src: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        by_id: dict[int, Event] = {}
        for ev in self.events:
            if ev.id in by_id:
                raise SchemaError(f"duplicate event id {ev.id}", location="events")
            if ev.action.actor != ev.process:
                raise SchemaError(f"{ev.action} is not an action of {ev.process}", location=f"events.{ev.id}")
            by_id[ev.id] = ev
        receives_seen: set[int] = set()
        for s, r in self.src.items():
            if s not in by_id or r not in by_id:
                raise SchemaError(f"match {s}->{r} references an unknown event", location=f"events.{s}.match")
            if not by_id[s].action.is_send or not by_id[r].action.is_recv:
                raise SchemaError("a match must pair a send with a receive", location=f"events.{s}.match")
            if by_id[s].action.channel != by_id[r].action.channel:
                raise SchemaError("matched events disagree on sender/receiver/message", location=f"events.{s}.match")
            if r in receives_seen:
                raise SchemaError(f"receive {r} is matched twice", location=f"events.{s}.match")
            receives_seen.add(r)
        for ev in self.events:
            if ev.action.is_recv and ev.id not in receives_seen:
                raise SchemaError(f"receive {ev.id} has no matching send", location=f"events.{ev.id}")
        object.__setattr__(self, "src", dict(self.src))

    @cached_property
    def _by_id(self) -> dict[int, Event]:
        return {ev.id: ev for ev in self.events}

    def event(self, event_id: int) -> Event:
        return self._by_id[event_id]

    @cached_property
    def processes(self) -> tuple[str, ...]:
        return tuple(sorted({ev.process for ev in self.events}))

    @cached_property
    def process_order(self) -> dict[str, tuple[int, ...]]:
        order: dict[str, list[int]] = {}
        for ev in self.events:
            order.setdefault(ev.process, []).append(ev.id)
        return {p: tuple(order[p]) for p in sorted(order)}

    def actions_of(self, process: str) -> tuple[Action, ...]:
        return tuple(self.event(i).action for i in self.process_order.get(process, ()))

    def exchanges(self) -> tuple[MessageExchange, ...]:
        return tuple(
            MessageExchange(ev.id, self.src.get(ev.id), ev.action) for ev in self.events if ev.action.is_send
        )

    def order_graph(self) -> nx.DiGraph:
        """Process order plus send->receive edges; its transitive closure is the causal order."""
        g = nx.DiGraph()
        for p, ids in self.process_order.items():
            g.add_nodes_from(ids)
            g.add_edges_from(zip(ids, ids[1:]))
        g.add_edges_from(self.src.items())
        return g

    def is_acyclic(self) -> bool:
        return nx.is_directed_acyclic_graph(self.order_graph())

    def __len__(self) -> int:
        return len(self.events)


def msc_from_sequence(actions: Sequence[Action], matching: Mapping[int, int]) -> Msc:
    events = tuple(Event(i, a.actor, a) for i, a in enumerate(actions))
    return Msc(events, dict(matching))


def msc_of(execution: Execution) -> Msc:
    return msc_from_sequence(execution.actions, execution.matching)


def linearizations(msc: Msc) -> Iterator[Execution]:
    """Topological sorts of the causal order, lazily, as executions with their matching."""
    graph = msc.order_graph()
    if not nx.is_directed_acyclic_graph(graph):
        raise CyclicOrder("the causal order of the MSC has a cycle")
    if not msc.events:
        yield Execution((), {})
        return
    for order in nx.all_topological_sorts(graph):
        position = {ev_id: i for i, ev_id in enumerate(order)}
        actions = tuple(msc.event(ev_id).action for ev_id in order)
        yield Execution(actions, {position[s]: position[r] for s, r in msc.src.items()})


def canonical_form(msc: Msc) -> tuple:
    """Per-process event lists with cross-references by (process, index); equal iff isomorphic."""
    index: dict[int, tuple[str, int]] = {}
    for p, ids in msc.process_order.items():
        for i, ev_id in enumerate(ids):
            index[ev_id] = (p, i)
    partner = dict(msc.src)
    partner.update({r: s for s, r in msc.src.items()})
    rows = []
    for p, ids in msc.process_order.items():
        row = []
        for ev_id in ids:
            a = msc.event(ev_id).action
            other = partner.get(ev_id)
            row.append((a.kind, a.peer, a.message, index[other] if other is not None else None))
        rows.append((p, tuple(row)))
    return tuple(rows)


def msc_equal(a: Msc, b: Msc) -> bool:
    return canonical_form(a) == canonical_form(b)


def _queue_key(comm: str, action: Action) -> str | tuple[str, str]:
    return action.receiver if comm == MAILBOX else (action.sender, action.receiver)


def _predecessors(msc: Msc) -> dict[int, frozenset[int]]:
    graph = msc.order_graph()
    return {n: frozenset(graph.predecessors(n)) for n in graph}


def causal_delivery_oracle(msc: Msc, comm: str = MAILBOX) -> bool:
    """Some linearization replays through FIFO queues (mailbox: per receiver, p2p: per pair).

    A matched send placed behind an unmatched send of the same queue can never
    be received, so such prefixes are cut immediately.
    """
    if not msc.is_acyclic():
        return False
    preds = _predecessors(msc)
    send_of = {r: s for s, r in msc.src.items()}
    total = len(msc.events)
    failed: set[tuple] = set()

    def search(consumed: frozenset[int], queues: tuple) -> bool:
        if len(consumed) == total:
            return True
        key = (consumed, queues)
        if key in failed:
            return False
        current = dict(queues)
        for ev in msc.events:
            if ev.id in consumed or not preds[ev.id] <= consumed:
                continue
            a = ev.action
            qk = _queue_key(comm, a)
            pending, blocked = current.get(qk, ((), False))
            if a.is_send:
                if ev.id in msc.src:
                    if blocked:
                        continue
                    updated = (pending + (ev.id,), blocked)
                else:
                    updated = (pending, True)
            else:
                if not pending or pending[0] != send_of[ev.id]:
                    continue
                updated = (pending[1:], blocked)
            nxt = dict(current)
            nxt[qk] = updated
            if search(consumed | {ev.id}, tuple(sorted(nxt.items()))):
                return True
        failed.add(key)
        return False

    return search(frozenset(), ())


def k_synchronous_oracle(msc: Msc, k: int, comm: str = MAILBOX) -> bool:
    """Causal delivery plus a linearization cut into blocks S^<=k R^<=k with matched pairs inside one block."""
    if k < 1:
        raise ValueError("k must be positive")
    if not causal_delivery_oracle(msc, comm):
        return False
    preds = _predecessors(msc)
    send_of = {r: s for s, r in msc.src.items()}
    total = len(msc.events)
    failed: set[tuple] = set()

    def search(consumed: frozenset[int], receiving: bool, nsends: int, nrecvs: int, open_: frozenset[int]) -> bool:
        if len(consumed) == total:
            return not open_
        key = (consumed, receiving, nsends, nrecvs, open_)
        if key in failed:
            return False
        for ev in msc.events:
            if ev.id in consumed or not preds[ev.id] <= consumed:
                continue
            done = consumed | {ev.id}
            if ev.action.is_send:
                opened = frozenset({ev.id}) if ev.id in msc.src else frozenset()
                if not receiving and nsends < k:
                    if search(done, False, nsends + 1, 0, open_ | opened):
                        return True
                if nsends > 0 and not open_:
                    if search(done, False, 1, 0, opened):
                        return True
            else:
                s = send_of[ev.id]
                if s in open_ and nrecvs < k:
                    if search(done, True, nsends, nrecvs + 1, open_ - {s}):
                        return True
        failed.add(key)
        return False

    return search(frozenset(), False, 0, 0, frozenset())


def minimal_k(msc: Msc, k_max: int, comm: str = MAILBOX) -> int | None:
    for k in range(1, k_max + 1):
        if k_synchronous_oracle(msc, k, comm):
            return k
    return None


__all__ = [
    "Event",
    "MessageExchange",
    "Msc",
    "canonical_form",
    "causal_delivery_oracle",
    "k_synchronous_oracle",
    "linearizations",
    "minimal_k",
    "msc_equal",
    "msc_from_sequence",
    "msc_of",
]
