# ksync/membership.py
"""k-synchronizability of mailbox systems: feasible and bad runs of the instrumented system."""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Iterable, Iterator, Protocol, Sequence

import networkx as nx

from ksync.conflict_graph import ConflictGraph, Edge, SummaryNode, actor, actors, build, extend
from ksync.errors import (
    ExplosionLimit,
    FeasibilityViolation,
    InconsistentGuess,
    PiSendsEarly,
    SecondDeviation,
    TransitionRejected,
    UnmatchedDeviation,
)
from ksync.exchange import (
    AbstractConfig,
    CausalBookkeeping,
    KExchange,
    closure_sets,
    concatenate,
    distinct_exchanges,
    enumerate_k_exchanges,
    step_k,
    summary_edges,
)
from ksync.model.instrument import instrument, undeviate
from ksync.model.semantics import fire
from ksync.model.system import MAILBOX, PI, Configuration, Execution, GlobalState, System, recv, unpack_payload
from ksync.msc import MessageExchange, Msc, msc_of
from ksync.schemas import MscDoc, VerdictDoc, action_to_doc, dump_document

logger = logging.getLogger(__name__)

PI_HAT = SummaryNode(PI, deviated=True)


# --- feasibility -------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class FeasState:
    base: AbstractConfig
    c_pi_send: frozenset[str] = frozenset()
    c_pi_recv: frozenset[str] = frozenset()
    dest: str | None = None

    @classmethod
    def initial(cls, system: System) -> "FeasState":
        return cls(AbstractConfig.initial(system))

    @property
    def global_state(self) -> GlobalState:
        return self.base.global_state


def _pi_hat_edges(vertices: Sequence[MessageExchange], book: CausalBookkeeping, c_send, c_recv) -> list[Edge]:
    edges: list[Edge] = []
    for v in vertices:
        for side in ("S", "R"):
            a = actor(v, side)
            if a is not None and a in c_send:
                edges.append((PI_HAT, "S" + side, v))
        if v.matched and actors(v) & c_recv:
            edges.append((PI_HAT, "SS", v))
        if not v.matched and v.receiver in c_recv:
            edges.append((PI_HAT, "SS", v))
    for p in sorted(c_recv):
        if p in book.processes:
            edges.append((PI_HAT, "SS", SummaryNode(p)))
    return edges


def pi_local_graph(e: KExchange, book: CausalBookkeeping, c_send: Iterable[str], c_recv: Iterable[str]) -> ConflictGraph:
    """Local graph of ``e`` with the summary nodes and the node standing for the deviated message."""
    c_send, c_recv = frozenset(c_send), frozenset(c_recv)
    cg = build(e.msc)
    summaries = tuple(SummaryNode(p) for p in book.processes) + (PI_HAT,)
    cg = ConflictGraph(vertices=cg.vertices + summaries, base=cg.base)
    real = cg.real_vertices()
    return extend(cg, summary_edges(real, book) + _pi_hat_edges(real, book, c_send, c_recv))


def deviation_of(e: KExchange) -> list[MessageExchange]:
    return [v for v in e.msc.exchanges() if v.receiver == PI]


def feas_step(fs: FeasState, e: KExchange, k: int) -> FeasState:
    if any(a.is_send and a.sender == PI for a in e.actions):
        raise PiSendsEarly("pi only forwards in the final exchange")
    deviations = deviation_of(e)
    if len(deviations) > 1 or (deviations and fs.dest is not None):
        raise SecondDeviation("at most one message is sent to pi")
    if deviations and not deviations[0].matched:
        raise UnmatchedDeviation("pi must receive the intercepted message in the same exchange")
    base = step_k(fs.base, e, k)

    old_book = fs.base.book
    cg = pi_local_graph(e, old_book, fs.c_pi_send, fs.c_pi_recv)
    sources = [PI_HAT, *(v for v in cg.real_vertices() if v.receiver == PI)]
    c_send = set(fs.c_pi_send) | {v.sender for v in sources if isinstance(v, MessageExchange)}
    c_send |= closure_sets(cg, sources, old_book, "S")
    c_recv = set(fs.c_pi_recv) | closure_sets(cg, sources, old_book, "R")

    dest = fs.dest
    if deviations:
        dest, _ = unpack_payload(deviations[0].message)
    nxt = FeasState(base, frozenset(c_send), frozenset(c_recv), dest)
    if dest is not None and dest in c_recv:
        logger.debug("deviation towards %s overtaken in %s", dest, e)
        raise FeasibilityViolation(dest, state=nxt)
    return nxt


def feas_accept(fs: FeasState, final: KExchange | None = None) -> bool:
    """The forwarded message can be delivered last: pi is not in C_R,dest."""
    if fs.dest is None:
        return False
    if final is not None:
        sends = final.sends
        if len(sends) != 1 or sends[0].sender != PI or sends[0].receiver != fs.dest:
            return False
    return PI not in fs.base.book.recv_set(fs.dest)


def final_exchanges(system: System, global_state: GlobalState) -> Iterator[KExchange]:
    """send(pi,q,m).rec(pi,q,m) enabled from ``global_state`` with empty buffers."""
    config = Configuration(global_state, tuple((key, ()) for key in system.buffer_keys()))
    pi_local = global_state[system.index(PI)]
    for t in system.automaton(PI).outgoing(pi_local):
        a = t.action
        if not a.is_send:
            continue
        sent = fire(system, config, a, t.target)
        q_local = sent.global_state[system.index(a.receiver)]
        for t2 in system.automaton(a.receiver).outgoing(q_local):
            if t2.action != recv(PI, a.receiver, a.message):
                continue
            done = fire(system, sent, t2.action, t2.target)
            yield KExchange((a, t2.action), ((0, 1),), source=global_state, target=done.global_state)


# --- bad runs ----------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class BadState:
    p_set: frozenset[str]
    q_set: frozenset[str]
    count: int = 0
    saw_rs: bool = False
    last_is_rec: frozenset[str] = frozenset()

    @classmethod
    def initial(cls, q_guess: Iterable[str]) -> "BadState":
        return cls(frozenset({PI}), frozenset(q_guess))

    def is_bad(self, k: int) -> bool:
        return self.saw_rs or self.count >= k + 2


def succ_pred_local(
    e: KExchange,
    p_set: Iterable[str],
    q_next: Iterable[str],
) -> tuple[set[MessageExchange], set[MessageExchange], set[MessageExchange]]:
    """(Post* of vertices touching P, Pre* of vertices touching Q', their intersection) over e's base edges."""
    p_set, q_next = set(p_set), set(q_next)
    cg = build(e.msc)
    g = cg.base_digraph()
    post: set[MessageExchange] = set()
    pre: set[MessageExchange] = set()
    for v in cg.real_vertices():
        if actors(v) & p_set:
            post |= nx.descendants(g, v) | {v}
        if actors(v) & q_next:
            pre |= nx.ancestors(g, v) | {v}
    return post, pre, post & pre


def _procs(vertices: Iterable[MessageExchange]) -> set[str]:
    found: set[str] = set()
    for v in vertices:
        found |= actors(v)
    return found


def coreachable_before(e: KExchange, q_next: Iterable[str]) -> frozenset[str]:
    q_next = frozenset(q_next)
    _, pre, _ = succ_pred_local(e, (), q_next)
    return q_next | frozenset(_procs(pre))


def bad_step(bs: BadState, e: KExchange, q_next: Iterable[str], k: int) -> BadState:
    q_next = frozenset(q_next)
    post, pre, scc = succ_pred_local(e, bs.p_set, q_next)
    if q_next | frozenset(_procs(pre)) != bs.q_set:
        raise InconsistentGuess(f"guess {sorted(q_next)} does not lead back to {sorted(bs.q_set)}")
    senders = {v.sender for v in e.msc.exchanges()}
    received_in_scc = {v.receiver for v in scc if v.matched}
    last_is_rec = frozenset(received_in_scc | {q for q in bs.last_is_rec if q not in senders})
    entry = bs.p_set & bs.q_set
    saw_rs = bs.saw_rs or any(
        v.sender != PI and v.sender in bs.last_is_rec and v.sender in entry for v in scc
    )
    return BadState(
        p_set=bs.p_set | frozenset(_procs(post)),
        q_set=q_next,
        count=min(k + 2, bs.count + len(scc)),
        saw_rs=saw_rs,
        last_is_rec=last_is_rec,
    )


def bad_run(exchanges: Sequence[KExchange], k: int) -> BadState:
    """Fold bad_step over a complete deviated run with the co-reachable sets computed backwards."""
    chain = [frozenset({PI})]
    for e in reversed(exchanges):
        chain.append(coreachable_before(e, chain[-1]))
    chain.reverse()
    bs = BadState.initial(chain[0])
    for i, e in enumerate(exchanges):
        bs = bad_step(bs, e, chain[i + 1], k)
    return bs


def q_guesses(q_set: Iterable[str]) -> Iterator[frozenset[str]]:
    """Subsets of ``q_set`` that keep pi."""
    rest = sorted(set(q_set) - {PI})
    for size in range(len(rest) + 1):
        for combo in combinations(rest, size):
            yield frozenset({PI, *combo})


# --- decision procedure -------------------------------------------------------


class Mode(Protocol):
    comm: str

    def initial(self, system: System) -> Any: ...

    def step(self, fs: Any, e: KExchange, k: int) -> Any: ...

    def accept(self, fs: Any, final: KExchange) -> bool: ...

    def dest(self, fs: Any) -> str | None: ...


class MailboxMode:
    comm = MAILBOX

    def initial(self, system: System) -> FeasState:
        return FeasState.initial(system)

    def step(self, fs: FeasState, e: KExchange, k: int) -> FeasState:
        return feas_step(fs, e, k)

    def accept(self, fs: FeasState, final: KExchange) -> bool:
        return feas_accept(fs, final)

    def dest(self, fs: FeasState) -> str | None:
        return fs.dest


@dataclass
class Verdict:
    k: int
    synchronizable: bool
    comm: str = MAILBOX
    counterexample: Msc | None = None
    deviated_run: list[KExchange] = field(default_factory=list)
    states_explored: int = 0

    def to_document(self) -> VerdictDoc:
        return VerdictDoc(
            k=self.k,
            synchronizable=self.synchronizable,
            counterexample=None if self.counterexample is None else MscDoc.from_msc(self.counterexample),
            statesExplored=self.states_explored,
        )

    def to_dict(self) -> dict[str, Any]:
        return dump_document(self.to_document())

    def run_document(self) -> list[list[dict[str, str]]]:
        return [[action_to_doc(a) for a in e.actions] for e in self.deviated_run]


def counterexample_msc(run: Sequence[KExchange]) -> Msc:
    """MSC of the un-deviated execution e.r behind a deviated run."""
    actions, matching = concatenate(run)
    return msc_of(undeviate(Execution(actions, matching)))


def search_bad_run(
    system: System,
    k: int,
    mode: Mode,
    *,
    max_states: int | None = None,
    max_exchanges: int | None = None,
) -> Verdict:
    """BFS over (feasibility state, bad state) pairs of the instrumented system."""
    if k < 1:
        raise ValueError("k must be positive")
    instrumented = system if system.instrumented else instrument(system)
    start = mode.initial(instrumented)
    everyone = frozenset(instrumented.processes)

    index: dict[tuple, int] = {}
    parent: dict[int, tuple[int, KExchange]] = {}
    states: list[tuple] = []

    def add(state: tuple, via: tuple[int, KExchange] | None) -> int | None:
        if state in index:
            return None
        sid = len(states)
        states.append(state)
        index[state] = sid
        if via is not None:
            parent[sid] = via
        if max_states is not None and len(states) > max_states:
            raise ExplosionLimit(
                f"more than {max_states} product states",
                stats={"states": len(states)},
            )
        return sid

    queue: deque[int] = deque()
    for guess in q_guesses(everyone):
        sid = add((start, BadState.initial(guess)), None)
        if sid is not None:
            queue.append(sid)

    def path_to(sid: int) -> list[KExchange]:
        path: list[KExchange] = []
        while sid in parent:
            sid, e = parent[sid]
            path.append(e)
        path.reverse()
        return path

    while queue:
        sid = queue.popleft()
        fs, bs = states[sid]
        if mode.dest(fs) is not None:
            for final in final_exchanges(instrumented, fs.global_state):
                if final.sends[0].receiver != mode.dest(fs) or not mode.accept(fs, final):
                    continue
                try:
                    closing = bad_step(bs, final, {PI}, k)
                except InconsistentGuess:
                    continue
                if closing.is_bad(k):
                    run = path_to(sid) + [final]
                    logger.info("k=%s: bad run of %s exchanges after %s states", k, len(run), len(states))
                    return Verdict(
                        k=k,
                        synchronizable=False,
                        comm=mode.comm,
                        counterexample=counterexample_msc(run),
                        deviated_run=run,
                        states_explored=len(states),
                    )
        exchanges = enumerate_k_exchanges(instrumented, fs.global_state, k, limit=max_exchanges)
        for e in distinct_exchanges(exchanges):
            try:
                fs2 = mode.step(fs, e, k)
            except TransitionRejected:
                continue
            for guess in q_guesses(bs.q_set):
                try:
                    bs2 = bad_step(bs, e, guess, k)
                except InconsistentGuess:
                    continue
                nid = add((fs2, bs2), (sid, e))
                if nid is not None:
                    queue.append(nid)

    logger.info("k=%s: synchronizable, %s states explored", k, len(states))
    return Verdict(k=k, synchronizable=True, comm=mode.comm, states_explored=len(states))


def decide_k_synchronizability(
    system: System,
    k: int,
    *,
    max_states: int | None = None,
    max_exchanges: int | None = None,
) -> Verdict:
    return search_bad_run(
        system.with_comm(MAILBOX),
        k,
        MailboxMode(),
        max_states=max_states,
        max_exchanges=max_exchanges,
    )


__all__ = [
    "BadState",
    "FeasState",
    "MailboxMode",
    "PI_HAT",
    "Verdict",
    "bad_run",
    "bad_step",
    "coreachable_before",
    "counterexample_msc",
    "decide_k_synchronizability",
    "deviation_of",
    "feas_accept",
    "feas_step",
    "final_exchanges",
    "pi_local_graph",
    "q_guesses",
    "search_bad_run",
    "succ_pred_local",
]
