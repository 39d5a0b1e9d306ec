# ksync/p2p.py
"""Peer-to-peer variants: forbidden-sender bookkeeping, feasibility and the decision procedures."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable

from ksync.errors import (
    P2pCausalDeliveryViolation,
    P2pFeasibilityViolation,
    PiSendsEarly,
    SecondDeviation,
    UnmatchedDeviation,
)
from ksync.exchange import KExchange, check_exchange_shape
from ksync.lts import Lts, Reachability, explore_configs, reach
from ksync.membership import Verdict, search_bad_run
from ksync.model.system import P2P, PI, GlobalState, System, unpack_payload

logger = logging.getLogger(__name__)

Forbidden = tuple[tuple[str, frozenset[str]], ...]


def _forbidden_of(forbidden: Forbidden, q: str) -> frozenset[str]:
    for receiver, senders in forbidden:
        if receiver == q:
            return senders
    return frozenset()


def _with_sender(forbidden: Forbidden, q: str, p: str) -> Forbidden:
    table = dict(forbidden)
    table[q] = table.get(q, frozenset()) | {p}
    return tuple(sorted(table.items()))


@dataclass(frozen=True, slots=True)
class P2pConfig:
    """Global state plus, per receiver, the senders of earlier unmatched messages."""

    global_state: GlobalState
    forbidden: Forbidden = ()

    @classmethod
    def initial(cls, system: System) -> "P2pConfig":
        return cls(system.initial_state)

    def senders_blocked(self, q: str) -> frozenset[str]:
        return _forbidden_of(self.forbidden, q)

    def book_document(self) -> dict[str, list[str]]:
        return {q: sorted(senders) for q, senders in self.forbidden}


def _scan(forbidden: Forbidden, e: KExchange, until: int | None = None) -> Forbidden:
    """Walk the sends of ``e`` (up to position ``until``), growing ``forbidden``."""
    matched = {s for s, _ in e.matching}
    for i, a in enumerate(e.actions):
        if until is not None and i >= until:
            break
        if not a.is_send:
            continue
        if i in matched:
            if a.sender in _forbidden_of(forbidden, a.receiver):
                raise P2pCausalDeliveryViolation(a.sender, a.receiver)
        else:
            forbidden = _with_sender(forbidden, a.receiver, a.sender)
    return forbidden


def p2p_step(cfg: P2pConfig, e: KExchange, k: int) -> P2pConfig:
    check_exchange_shape(e, k)
    forbidden = _scan(cfg.forbidden, e)
    target = e.target if e.target is not None else cfg.global_state
    return P2pConfig(target, forbidden)


def p2p_run(cfg: P2pConfig, exchanges: Iterable[KExchange], k: int) -> P2pConfig:
    for e in exchanges:
        cfg = p2p_step(cfg, e, k)
    return cfg


@dataclass(frozen=True, slots=True)
class P2pFeasState:
    base: P2pConfig
    exp: str | None = None
    dest: str | None = None

    @classmethod
    def initial(cls, system: System) -> "P2pFeasState":
        return cls(P2pConfig.initial(system))

    @property
    def global_state(self) -> GlobalState:
        return self.base.global_state


def p2p_feas_step(fs: P2pFeasState, e: KExchange, k: int) -> P2pFeasState:
    if any(a.is_send and a.sender == PI for a in e.actions):
        raise PiSendsEarly("pi only forwards in the final exchange")
    deviations = [i for i, a in enumerate(e.actions) if a.is_send and a.receiver == PI]
    if len(deviations) > 1 or (deviations and fs.dest is not None):
        raise SecondDeviation("at most one message is sent to pi")
    if deviations and deviations[0] not in {s for s, _ in e.matching}:
        raise UnmatchedDeviation("pi must receive the intercepted message in the same exchange")
    base = p2p_step(fs.base, e, k)

    exp, dest, after = fs.exp, fs.dest, 0
    if deviations:
        d = deviations[0]
        exp = e.actions[d].sender
        dest, _ = unpack_payload(e.actions[d].message)
        # an older unmatched exp->dest message would stay ahead of the deviated one
        if exp in _forbidden_of(_scan(fs.base.forbidden, e, until=d), dest):
            raise P2pFeasibilityViolation(f"{exp} already left an unmatched message for {dest}")
        after = d + 1
    if exp is not None:
        for s, _ in e.matching:
            a = e.actions[s]
            if s >= after and a.sender == exp and a.receiver == dest:
                raise P2pFeasibilityViolation(f"matched {exp}->{dest} message sent after the deviation")
    return P2pFeasState(base, exp, dest)


class P2pMode:
    comm = P2P

    def initial(self, system: System) -> P2pFeasState:
        return P2pFeasState.initial(system)

    def step(self, fs: P2pFeasState, e: KExchange, k: int) -> P2pFeasState:
        return p2p_feas_step(fs, e, k)

    def accept(self, fs: P2pFeasState, final: KExchange) -> bool:
        return fs.dest is not None

    def dest(self, fs: P2pFeasState) -> str | None:
        return fs.dest


def p2p_explore(
    system: System,
    k: int,
    *,
    max_states: int | None = None,
    max_exchanges: int | None = None,
) -> Lts[P2pConfig]:
    lts, _ = explore_configs(
        system.with_comm(P2P),
        k,
        P2pConfig.initial(system),
        lambda cfg, e: p2p_step(cfg, e, k),
        max_states=max_states,
        max_exchanges=max_exchanges,
    )
    return lts


def p2p_decide_reachability(
    system: System,
    k: int,
    goal: GlobalState,
    *,
    max_states: int | None = None,
    max_exchanges: int | None = None,
) -> Reachability:
    return reach(
        system.with_comm(P2P),
        k,
        P2pConfig.initial(system),
        lambda cfg, e: p2p_step(cfg, e, k),
        goal,
        max_states=max_states,
        max_exchanges=max_exchanges,
    )


def p2p_decide_k_synchronizability(
    system: System,
    k: int,
    *,
    max_states: int | None = None,
    max_exchanges: int | None = None,
) -> Verdict:
    return search_bad_run(
        system.with_comm(P2P),
        k,
        P2pMode(),
        max_states=max_states,
        max_exchanges=max_exchanges,
    )


__all__ = [
    "P2pConfig",
    "P2pFeasState",
    "P2pMode",
    "p2p_decide_k_synchronizability",
    "p2p_decide_reachability",
    "p2p_explore",
    "p2p_feas_step",
    "p2p_run",
    "p2p_step",
]
