# ksync/model/instrument.py
"""Instrumented system with the interceptor process ``pi`` and (un)deviation of executions."""

from __future__ import annotations

from typing import Sequence

from ksync.errors import InputError, LastActionNotReceive, ReservedName, UnmatchedFinalReceive
from ksync.model.system import (
    PI,
    Action,
    Automaton,
    Execution,
    System,
    Transition,
    compute_matching,
    pack_payload,
    recv,
    send,
    unpack_payload,
)

PI_INITIAL = "init"
PI_DONE = "done"


def pi_holding_state(dest: str, message: str) -> str:
    return f"hold[{dest},{message}]"


def instrument(system: System) -> System:
    """S': every send gains a sibling towards ``pi``, every receive a sibling from ``pi``."""
    if PI in system.automata:
        raise ReservedName(f"process name {PI!r} is already used")

    automata: dict[str, Automaton] = {}
    for name, automaton in system.automata.items():
        siblings: list[Transition] = []
        for t in automaton.transitions:
            a = t.action
            if a.is_send:
                sibling = send(name, PI, pack_payload(a.receiver, a.message))
            else:
                sibling = recv(PI, name, a.message)
            siblings.append(Transition(t.source, sibling, t.target))
        automata[name] = Automaton(
            initial=automaton.initial,
            states=automaton.states,
            transitions=automaton.transitions + tuple(siblings),
        )

    sent = sorted({t.action for _, t in system.transitions() if t.action.is_send})
    pi_transitions: list[Transition] = []
    holding: set[tuple[str, str]] = set()
    for a in sent:
        payload = pack_payload(a.receiver, a.message)
        hold = pi_holding_state(a.receiver, a.message)
        pi_transitions.append(Transition(PI_INITIAL, recv(a.sender, PI, payload), hold))
        holding.add((a.receiver, a.message))
    for dest, message in sorted(holding):
        pi_transitions.append(
            Transition(pi_holding_state(dest, message), send(PI, dest, message), PI_DONE)
        )
    automata[PI] = Automaton.build(PI_INITIAL, pi_transitions)
    return System(automata, comm=system.comm, instrumented=True)


def project(system: System) -> System:
    """Inverse of ``instrument``: drops ``pi`` and every transition mentioning it."""
    automata: dict[str, Automaton] = {}
    for name, automaton in system.automata.items():
        if name == PI:
            continue
        kept = tuple(t for t in automaton.transitions if PI not in (t.action.sender, t.action.receiver))
        automata[name] = Automaton(initial=automaton.initial, states=automaton.states, transitions=kept)
    return System(automata, comm=system.comm)


def deviate(actions: Sequence[Action] | Execution) -> Execution:
    """e1 . s . e2 . r  ->  e1 . s(p,pi,(q,m)) . r(p,pi,(q,m)) . e2 . s(pi,q,m) . r(pi,q,m)."""
    if isinstance(actions, Execution):
        seq, matching = actions.actions, dict(actions.matching)
    else:
        seq = tuple(actions)
        matching = compute_matching(seq)
    if not seq or not seq[-1].is_recv:
        raise LastActionNotReceive("the execution must end with a receive")
    last = len(seq) - 1
    sends = [s for s, r in matching.items() if r == last]
    if not sends:
        raise UnmatchedFinalReceive(f"final receive {seq[-1]} has no matching send")
    s = sends[0]
    final = seq[-1]
    payload = pack_payload(final.receiver, final.message)
    deviated = (
        seq[:s]
        + (send(final.sender, PI, payload), recv(final.sender, PI, payload))
        + seq[s + 1 : last]
        + (send(PI, final.receiver, final.message), recv(PI, final.receiver, final.message))
    )
    return Execution.of(deviated)


def undeviate(execution: Execution) -> Execution:
    """Inverse of ``deviate`` with an explicit matching.

    The send towards ``pi`` is restored in place and paired with the final
    receive; ``pi``'s own receive and forward are dropped.
    """
    seq = execution.actions
    to_pi = [i for i, a in enumerate(seq) if a.is_send and a.receiver == PI]
    from_pi = [i for i, a in enumerate(seq) if a.is_recv and a.sender == PI]
    if len(to_pi) != 1 or len(from_pi) != 1:
        raise InputError("a deviated execution has exactly one send to pi and one receive from pi")
    dev = seq[to_pi[0]]
    dest, message = unpack_payload(dev.message)

    kept: list[int] = []
    actions: list[Action] = []
    for i, a in enumerate(seq):
        if i == to_pi[0]:
            actions.append(send(dev.sender, dest, message))
        elif PI in (a.sender, a.receiver):
            continue
        elif i > from_pi[0]:
            continue
        else:
            actions.append(a)
        kept.append(i)
    actions.append(recv(dev.sender, dest, message))

    position = {old: new for new, old in enumerate(kept)}
    matching = {position[s]: position[r] for s, r in execution.matching.items() if s in position and r in position}
    matching[position[to_pi[0]]] = len(actions) - 1
    return Execution(tuple(actions), matching)


__all__ = ["PI_DONE", "PI_INITIAL", "deviate", "instrument", "pi_holding_state", "project", "undeviate"]
