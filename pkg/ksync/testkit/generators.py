# ksync/testkit/generators.py
"""Seeded random MSCs, systems and runs of k-exchanges."""

from __future__ import annotations

import random
from itertools import count
from typing import Iterator

from ksync.exchange import KExchange
from ksync.model.system import (
    MAILBOX,
    PI,
    Action,
    Automaton,
    System,
    Transition,
    buffer_key,
    pack_payload,
    recv,
    send,
    unpack_payload,
)
from ksync.msc import Msc, msc_from_sequence

PROCESS_NAMES = ("p", "q", "r", "s", "t", "u")
MESSAGES = ("a", "b")
MATCH_RATE = 0.6


def _processes(rng: random.Random, max_procs: int) -> tuple[str, ...]:
    n = rng.randint(2, max(2, min(max_procs, len(PROCESS_NAMES))))
    return PROCESS_NAMES[:n]


def _names() -> Iterator[str]:
    return (f"m{i}" for i in count(1))


def gen_msc(seed: int, max_msgs: int = 6, max_procs: int = 4) -> Msc:
    """Messages inserted into one global sequence, receives after their sends; the order is always acyclic."""
    rng = random.Random(seed)
    procs = _processes(rng, max_procs)
    seq: list[tuple[int, Action]] = []
    for i in range(rng.randint(1, max(1, max_msgs))):
        sender = rng.choice(procs)
        receiver = rng.choice([p for p in procs if p != sender])
        a = send(sender, receiver, f"m{i + 1}")
        pos = rng.randint(0, len(seq))
        seq.insert(pos, (i, a))
        if rng.random() < MATCH_RATE:
            seq.insert(rng.randint(pos + 1, len(seq)), (i, a.counterpart()))

    send_at: dict[int, int] = {}
    matching: dict[int, int] = {}
    for idx, (msg_id, a) in enumerate(seq):
        if a.is_send:
            send_at[msg_id] = idx
        else:
            matching[send_at[msg_id]] = idx
    return msc_from_sequence([a for _, a in seq], matching)


def gen_system(
    seed: int,
    max_procs: int = 3,
    max_states: int = 4,
    *,
    single_sender: bool = False,
    comm: str = MAILBOX,
) -> System:
    """Random automata over the messages ``a``/``b``.

    With ``single_sender`` every process receives from one fixed peer only,
    so mailbox and peer-to-peer buffers coincide.
    """
    rng = random.Random(seed)
    procs = _processes(rng, max_procs)
    sender_of = {q: rng.choice([p for p in procs if p != q]) for q in procs}
    automata: dict[str, Automaton] = {}
    for p in procs:
        others = [q for q in procs if q != p]
        states = [f"{p}{i}" for i in range(rng.randint(1, max(1, max_states)))]
        transitions: dict[Transition, None] = {}
        for source in states:
            for _ in range(rng.randint(0, 2)):
                target = rng.choice(states)
                message = rng.choice(MESSAGES)
                if rng.random() < 0.5:
                    peers = [q for q in others if not single_sender or sender_of[q] == p]
                    if not peers:
                        continue
                    action = send(p, rng.choice(peers), message)
                else:
                    peer = sender_of[p] if single_sender else rng.choice(others)
                    action = recv(peer, p, message)
                transitions[Transition(source, action, target)] = None
        automata[p] = Automaton.build(states[0], transitions, states=states)
    return System(automata, comm=comm)


def _random_exchange(
    rng: random.Random,
    procs: tuple[str, ...],
    k: int,
    comm: str,
    names: Iterator[str],
    *,
    deviate: bool = False,
) -> KExchange:
    nsends = rng.randint(1, k)
    deviation = rng.randrange(nsends) if deviate else None
    blocked: set[object] = set()
    sends: list[Action] = []
    queues: dict[object, list[Action]] = {}
    for i in range(nsends):
        sender = rng.choice(procs)
        receiver = rng.choice([p for p in procs if p != sender])
        message = next(names)
        if i == deviation:
            a = send(sender, PI, pack_payload(receiver, message))
        else:
            a = send(sender, receiver, message)
        key = buffer_key(comm, a.sender, a.receiver)
        # a receive can only follow earlier matched sends on the same buffer
        if i == deviation or (key not in blocked and rng.random() < MATCH_RATE):
            queues.setdefault(key, []).append(a.counterpart())
        else:
            blocked.add(key)
        sends.append(a)

    receives: list[Action] = []
    while queues:
        key = rng.choice(sorted(queues, key=str))
        receives.append(queues[key].pop(0))
        if not queues[key]:
            del queues[key]
    return KExchange.from_actions(sends + receives, comm=comm)


def gen_run(
    seed: int,
    max_procs: int = 3,
    max_exchanges: int = 4,
    k: int = 2,
    comm: str = MAILBOX,
) -> list[KExchange]:
    rng = random.Random(seed)
    procs = _processes(rng, max_procs)
    names = _names()
    return [_random_exchange(rng, procs, k, comm, names) for _ in range(rng.randint(1, max(1, max_exchanges)))]


def gen_deviated_run(
    seed: int,
    max_procs: int = 3,
    max_exchanges: int = 4,
    k: int = 2,
    comm: str = MAILBOX,
) -> list[KExchange]:
    """Exchanges of an instrumented system: one send goes to ``pi``, the last exchange forwards it."""
    rng = random.Random(seed)
    procs = _processes(rng, max_procs)
    names = _names()
    n = rng.randint(1, max(1, max_exchanges))
    at = rng.randrange(n)
    run = [_random_exchange(rng, procs, k, comm, names, deviate=(i == at)) for i in range(n)]
    deviated = next(a for a in run[at].sends if a.receiver == PI)
    dest, message = unpack_payload(deviated.message)
    run.append(KExchange.from_actions((send(PI, dest, message), recv(PI, dest, message)), comm=comm))
    return run


def run_processes(run: list[KExchange]) -> tuple[str, ...]:
    found: set[str] = set()
    for e in run:
        for a in e.actions:
            found.update((a.sender, a.receiver))
    return tuple(sorted(found))


__all__ = ["MATCH_RATE", "gen_deviated_run", "gen_msc", "gen_run", "gen_system", "run_processes"]
