# ksync/exchange.py
"""k-exchanges, summary-node bookkeeping and the mailbox abstract step."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from ksync.conflict_graph import (
    ConflictGraph,
    Edge,
    SummaryNode,
    Vertex,
    actor,
    actors,
    build,
    extend,
)
from ksync.errors import CausalDeliveryViolation, ExplosionLimit, InputError, StepError
from ksync.model.semantics import fire
from ksync.model.system import (
    MAILBOX,
    Action,
    Configuration,
    GlobalState,
    System,
    buffer_key,
    compute_matching,
)
from ksync.msc import MessageExchange, Msc, canonical_form, msc_from_sequence

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class KExchange:
    """s1..sm r1..rm' with every receive matching a send of the same block."""

    actions: tuple[Action, ...]
    matching: tuple[tuple[int, int], ...]
    source: GlobalState | None = None
    target: GlobalState | None = None

    @classmethod
    def from_actions(cls, actions: Iterable[Action], *, comm: str = MAILBOX) -> "KExchange":
        """Free-standing exchange; checks shape and FIFO executability from empty buffers."""
        actions = tuple(actions)
        seen_receive = False
        queues: dict[object, list[tuple[str, str]]] = {}
        for i, a in enumerate(actions):
            if a.is_send:
                if seen_receive:
                    raise InputError(f"action #{i}: send {a} after a receive in one exchange")
                queues.setdefault(buffer_key(comm, a.sender, a.receiver), []).append((a.sender, a.message))
                continue
            seen_receive = True
            queue = queues.get(buffer_key(comm, a.sender, a.receiver), [])
            if not queue or queue[0] != (a.sender, a.message):
                raise InputError(f"action #{i}: {a} is not at the head of its buffer")
            queue.pop(0)
        return cls(actions, tuple(sorted(compute_matching(actions).items())))

    @property
    def sends(self) -> tuple[Action, ...]:
        return tuple(a for a in self.actions if a.is_send)

    @property
    def receives(self) -> tuple[Action, ...]:
        return tuple(a for a in self.actions if a.is_recv)

    @property
    def msc(self) -> Msc:
        return msc_from_sequence(self.actions, dict(self.matching))

    def __len__(self) -> int:
        return len(self.actions)

    def __str__(self) -> str:
        return " . ".join(str(a) for a in self.actions)


def enumerate_k_exchanges(
    system: System,
    global_state: GlobalState,
    k: int,
    *,
    limit: int | None = None,
) -> Iterator[KExchange]:
    """Every non-empty exchange runnable from ``global_state`` with empty buffers."""
    if k < 1:
        raise ValueError("k must be positive")
    start = Configuration(global_state, tuple((key, ()) for key in system.buffer_keys()))
    produced = 0

    def emit(actions: tuple[Action, ...], config: Configuration) -> KExchange:
        nonlocal produced
        produced += 1
        if limit is not None and produced > limit:
            raise ExplosionLimit(
                f"more than {limit} exchanges from one global state",
                stats={"exchanges": produced - 1},
            )
        matching = tuple(sorted(compute_matching(actions).items()))
        return KExchange(actions, matching, source=global_state, target=config.global_state)

    def receives(actions: tuple[Action, ...], config: Configuration, budget: int) -> Iterator[KExchange]:
        yield emit(actions, config)
        if budget == 0:
            return
        for idx, p in enumerate(system.processes):
            for t in system.automaton(p).outgoing(config.global_state[idx]):
                if not t.action.is_recv:
                    continue
                try:
                    nxt = fire(system, config, t.action, t.target)
                except StepError:
                    continue
                yield from receives(actions + (t.action,), nxt, budget - 1)

    def sends(actions: tuple[Action, ...], config: Configuration) -> Iterator[KExchange]:
        if actions:
            yield from receives(actions, config, len(actions))
        if len(actions) == k:
            return
        for idx, p in enumerate(system.processes):
            for t in system.automaton(p).outgoing(config.global_state[idx]):
                if t.action.is_send:
                    yield from sends(actions + (t.action,), fire(system, config, t.action, t.target))

    yield from sends((), start)


def distinct_exchanges(exchanges: Iterable[KExchange]) -> Iterator[KExchange]:
    """Drop exchanges whose MSC and target state repeat an earlier one."""
    seen: set[tuple] = set()
    for e in exchanges:
        key = (canonical_form(e.msc), e.target)
        if key in seen:
            continue
        seen.add(key)
        yield e


@dataclass(frozen=True, slots=True)
class CausalBookkeeping:
    """Per process p: (C_S,p, C_R,p)."""

    entries: tuple[tuple[str, frozenset[str], frozenset[str]], ...]

    @classmethod
    def empty(cls, processes: Iterable[str]) -> "CausalBookkeeping":
        return cls(tuple((p, frozenset(), frozenset()) for p in sorted(processes)))

    @classmethod
    def from_sets(cls, sets: Mapping[str, tuple[Iterable[str], Iterable[str]]]) -> "CausalBookkeeping":
        return cls(tuple((p, frozenset(cs), frozenset(cr)) for p, (cs, cr) in sorted(sets.items())))

    @property
    def processes(self) -> tuple[str, ...]:
        return tuple(p for p, _, _ in self.entries)

    def _entry(self, p: str) -> tuple[str, frozenset[str], frozenset[str]]:
        for entry in self.entries:
            if entry[0] == p:
                return entry
        raise KeyError(p)

    def send_set(self, p: str) -> frozenset[str]:
        return self._entry(p)[1]

    def recv_set(self, p: str) -> frozenset[str]:
        return self._entry(p)[2]

    def sets(self, p: str, side: str) -> frozenset[str]:
        return self.send_set(p) if side == "S" else self.recv_set(p)

    def covers(self, other: "CausalBookkeeping") -> bool:
        """Pointwise superset of ``other``."""
        return all(
            self.send_set(p) >= cs and self.recv_set(p) >= cr for p, cs, cr in other.entries
        )

    def as_dict(self) -> dict[str, dict[str, list[str]]]:
        return {p: {"S": sorted(cs), "R": sorted(cr)} for p, cs, cr in self.entries}


@dataclass(frozen=True, slots=True)
class AbstractConfig:
    global_state: GlobalState
    book: CausalBookkeeping

    @classmethod
    def initial(cls, system: System) -> "AbstractConfig":
        return cls(system.initial_state, CausalBookkeeping.empty(system.processes))

    def book_document(self) -> dict:
        return self.book.as_dict()


def summary_edges(vertices: Sequence[MessageExchange], book: CausalBookkeeping) -> list[Edge]:
    """Edges between the summary nodes and the exchange's vertices."""
    edges: list[Edge] = []
    for p in book.processes:
        node = SummaryNode(p)
        c_send, c_recv = book.send_set(p), book.recv_set(p)
        for v in vertices:
            for side in ("S", "R"):
                a = actor(v, side)
                if a is not None and a in c_send:
                    edges.append((node, "S" + side, v))
            if v.matched and actors(v) & c_recv:
                edges.append((node, "SS", v))
            if not v.matched and v.receiver in c_recv:
                edges.append((node, "SS", v))
            if v.matched and v.receiver == p:
                edges.append((v, "SS", node))
        for q in book.processes:
            if p in book.recv_set(q):
                edges.append((SummaryNode(q), "SS", node))
    return edges


def local_graph(e: KExchange, book: CausalBookkeeping) -> ConflictGraph:
    """Extended conflict graph of ``e`` enlarged with one summary node per process."""
    cg = build(e.msc)
    lambdas = tuple(SummaryNode(p) for p in book.processes)
    cg = ConflictGraph(vertices=cg.vertices + lambdas, base=cg.base)
    return extend(cg, summary_edges(cg.real_vertices(), book))


def unmatched_towards(cg: ConflictGraph, p: str) -> list[Vertex]:
    """Unm_p: the summary node of p plus the unmatched vertices of the exchange sent to p."""
    return [SummaryNode(p), *(v for v in cg.real_vertices() if not v.matched and v.receiver == p)]


def closure_sets(
    cg: ConflictGraph,
    sources: Iterable[Vertex],
    book: CausalBookkeeping,
    side: str,
) -> set[str]:
    """X-actors of real SS-successors of ``sources``, plus inherited C_X,q for summary successors."""
    found: set[str] = set()
    for v in sources:
        for w in cg.ext_successors(v, "SS"):
            if isinstance(w, MessageExchange):
                a = actor(w, side)
                if a is not None:
                    found.add(a)
            elif not w.deviated and w.owner in book.processes:
                found |= book.sets(w.owner, side)
    return found


def update_bookkeeping(book: CausalBookkeeping, cg: ConflictGraph) -> CausalBookkeeping:
    entries = []
    for p in book.processes:
        unm = unmatched_towards(cg, p)
        c_send = set(book.send_set(p))
        c_send |= {v.sender for v in unm if isinstance(v, MessageExchange)}
        c_send |= closure_sets(cg, unm, book, "S")
        c_recv = set(book.recv_set(p)) | closure_sets(cg, unm, book, "R")
        entries.append((p, frozenset(c_send), frozenset(c_recv)))
    return CausalBookkeeping(tuple(entries))


def check_exchange_shape(e: KExchange, k: int) -> None:
    if k < 1:
        raise ValueError("k must be positive")
    if not e.actions:
        raise InputError("a k-exchange has at least one send")
    nsends = len(e.sends)
    if nsends > k:
        raise InputError(f"exchange has {nsends} sends, more than k={k}")
    if any(a.is_send for a in e.actions[nsends:]):
        raise InputError("sends must precede receives in an exchange")


def step_k(cfg: AbstractConfig, e: KExchange, k: int) -> AbstractConfig:
    """(l, B) -e-> (l', B'): fails with CausalDeliveryViolation(p) when p lands in C'_R,p."""
    check_exchange_shape(e, k)
    if e.source is not None and e.source != cfg.global_state:
        raise InputError("exchange does not start from the configuration's global state")
    book = update_bookkeeping(cfg.book, local_graph(e, cfg.book))
    for p in book.processes:
        if p in book.recv_set(p):
            logger.debug("causal delivery violated towards %s by %s", p, e)
            raise CausalDeliveryViolation(p, book=book)
    target = e.target if e.target is not None else cfg.global_state
    return AbstractConfig(target, book)


def run_exchanges(cfg: AbstractConfig, exchanges: Iterable[KExchange], k: int) -> AbstractConfig:
    for e in exchanges:
        cfg = step_k(cfg, e, k)
    return cfg


def concatenate(exchanges: Sequence[KExchange]) -> tuple[tuple[Action, ...], dict[int, int]]:
    """Actions of a run of exchanges with the matching kept inside each exchange."""
    actions: list[Action] = []
    matching: dict[int, int] = {}
    for e in exchanges:
        offset = len(actions)
        actions.extend(e.actions)
        matching.update({s + offset: r + offset for s, r in e.matching})
    return tuple(actions), matching


__all__ = [
    "AbstractConfig",
    "CausalBookkeeping",
    "KExchange",
    "check_exchange_shape",
    "closure_sets",
    "concatenate",
    "distinct_exchanges",
    "enumerate_k_exchanges",
    "local_graph",
    "run_exchanges",
    "step_k",
    "summary_edges",
    "unmatched_towards",
    "update_bookkeeping",
]
