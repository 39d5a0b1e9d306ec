# ksync/model/system.py
"""Systems of communicating automata and the values the semantics works on."""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence

from ksync.errors import InputError, ReservedName, SchemaError, UnknownState

PI = "pi"
SEND = "send"
RECV = "recv"
MAILBOX = "mailbox"
P2P = "p2p"
COMM_MODES = (MAILBOX, P2P)

PAYLOAD_SEP = ":"
_PROCESS_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_.\-]*$")

GlobalState = tuple[str, ...]
# (sender, message): mailbox buffers keep the sender so that a receive
# rec(p,q,m) only consumes a message that p actually sent.
Envelope = tuple[str, str]
BufferKey = str | tuple[str, str]


def is_valid_process_name(name: str) -> bool:
    return bool(_PROCESS_NAME_RE.match(name or ""))


@dataclass(frozen=True, slots=True, order=True)
class Action:
    kind: str
    sender: str
    receiver: str
    message: str

    @property
    def is_send(self) -> bool:
        return self.kind == SEND

    @property
    def is_recv(self) -> bool:
        return self.kind == RECV

    @property
    def actor(self) -> str:
        return self.sender if self.kind == SEND else self.receiver

    @property
    def peer(self) -> str:
        return self.receiver if self.kind == SEND else self.sender

    @property
    def channel(self) -> tuple[str, str, str]:
        return (self.sender, self.receiver, self.message)

    def counterpart(self) -> "Action":
        kind = RECV if self.kind == SEND else SEND
        return Action(kind, self.sender, self.receiver, self.message)

    def __str__(self) -> str:
        return f"{self.kind}({self.sender},{self.receiver},{self.message})"


def send(sender: str, receiver: str, message: str) -> Action:
    return Action(SEND, sender, receiver, message)


def recv(sender: str, receiver: str, message: str) -> Action:
    return Action(RECV, sender, receiver, message)


def pack_payload(dest: str, message: str) -> str:
    """Composite id of a message routed through ``pi``: original destination + message."""
    return f"{dest}{PAYLOAD_SEP}{message}"


def unpack_payload(message: str) -> tuple[str, str]:
    dest, sep, original = message.partition(PAYLOAD_SEP)
    if not sep or not dest:
        raise InputError(f"{message!r} is not a deviated payload")
    return dest, original


@dataclass(frozen=True, slots=True)
class Transition:
    source: str
    action: Action
    target: str


@dataclass(frozen=True, slots=True)
class Automaton:
    initial: str
    states: frozenset[str]
    transitions: tuple[Transition, ...]
    _outgoing: dict[str, tuple[Transition, ...]] = field(
        init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self) -> None:
        outgoing: dict[str, list[Transition]] = {}
        for t in self.transitions:
            outgoing.setdefault(t.source, []).append(t)
        object.__setattr__(self, "_outgoing", {s: tuple(ts) for s, ts in outgoing.items()})

    @classmethod
    def build(cls, initial: str, transitions: Iterable[Transition], *, states: Iterable[str] = ()) -> "Automaton":
        transitions = tuple(transitions)
        all_states = {initial, *states}
        for t in transitions:
            all_states.add(t.source)
            all_states.add(t.target)
        return cls(initial=initial, states=frozenset(all_states), transitions=transitions)

    def outgoing(self, state: str) -> tuple[Transition, ...]:
        return self._outgoing.get(state, ())

    def targets(self, state: str, action: Action) -> tuple[str, ...]:
        return tuple(sorted({t.target for t in self.outgoing(state) if t.action == action}))


@dataclass(frozen=True, slots=True)
class System:
    automata: Mapping[str, Automaton]
    comm: str = MAILBOX
    instrumented: bool = False

    def __post_init__(self) -> None:
        if self.comm not in COMM_MODES:
            raise SchemaError(f"unknown communication mode {self.comm!r}", location="comm")
        ordered = dict(sorted(self.automata.items()))
        object.__setattr__(self, "automata", ordered)
        for name, automaton in ordered.items():
            if not is_valid_process_name(name):
                raise SchemaError(f"invalid process name {name!r}", location=f"processes.{name}")
            if name == PI and not self.instrumented:
                raise ReservedName(f"process name {PI!r} is reserved")
            if automaton.initial not in automaton.states:
                raise SchemaError("initial state is not a state", location=f"processes.{name}.initial")
            for i, t in enumerate(automaton.transitions):
                where = f"processes.{name}.transitions.{i}"
                if t.source not in automaton.states or t.target not in automaton.states:
                    raise SchemaError("transition references an unknown state", location=where)
                if t.action.actor != name:
                    raise SchemaError(f"{t.action} is not an action of {name}", location=where)
                if t.action.peer not in ordered:
                    raise SchemaError(f"unknown peer {t.action.peer!r}", location=f"{where}.action.peer")

    @property
    def processes(self) -> tuple[str, ...]:
        return tuple(self.automata)

    @property
    def initial_state(self) -> GlobalState:
        return tuple(a.initial for a in self.automata.values())

    def index(self, process: str) -> int:
        try:
            return self.processes.index(process)
        except ValueError:
            raise UnknownState(f"unknown process {process!r}") from None

    def automaton(self, process: str) -> Automaton:
        try:
            return self.automata[process]
        except KeyError:
            raise UnknownState(f"unknown process {process!r}") from None

    def transitions(self) -> Iterator[tuple[str, Transition]]:
        for name, automaton in self.automata.items():
            for t in automaton.transitions:
                yield name, t

    def actions(self) -> set[Action]:
        return {t.action for _, t in self.transitions()}

    def with_comm(self, comm: str) -> "System":
        return replace(self, comm=comm)

    def global_state(self, mapping: Mapping[str, str]) -> GlobalState:
        """Vector of local states from a ``{process: state}`` mapping (all processes required)."""
        missing = [p for p in self.processes if p not in mapping]
        extra = [p for p in mapping if p not in self.automata]
        if missing or extra:
            raise UnknownState(f"goal must name every process; missing={missing} unknown={extra}")
        vector = []
        for p in self.processes:
            state = mapping[p]
            if state not in self.automata[p].states:
                raise UnknownState(f"{p} has no state {state!r}")
            vector.append(state)
        return tuple(vector)

    def describe(self, state: Sequence[str]) -> dict[str, str]:
        return dict(zip(self.processes, state))

    def buffer_keys(self) -> tuple[BufferKey, ...]:
        if self.comm == MAILBOX:
            return self.processes
        return tuple(product(self.processes, repeat=2))


def buffer_key(comm: str, sender: str, receiver: str) -> BufferKey:
    return receiver if comm == MAILBOX else (sender, receiver)


@dataclass(frozen=True, slots=True)
class Configuration:
    global_state: GlobalState
    buffers: tuple[tuple[BufferKey, tuple[Envelope, ...]], ...]

    @classmethod
    def initial(cls, system: System) -> "Configuration":
        return cls(system.initial_state, tuple((key, ()) for key in system.buffer_keys()))

    def buffer(self, key: BufferKey) -> tuple[Envelope, ...]:
        for k, content in self.buffers:
            if k == key:
                return content
        raise KeyError(key)

    def with_buffer(self, key: BufferKey, content: tuple[Envelope, ...]) -> "Configuration":
        return replace(self, buffers=tuple((k, content if k == key else c) for k, c in self.buffers))

    def with_local(self, index: int, state: str) -> "Configuration":
        vector = list(self.global_state)
        vector[index] = state
        return replace(self, global_state=tuple(vector))

    @property
    def max_buffer(self) -> int:
        return max((len(c) for _, c in self.buffers), default=0)


def compute_matching(actions: Sequence[Action]) -> dict[int, int]:
    """Pair the l-th send of (p,q,m) with the l-th receive of (p,q,m)."""
    sends: dict[tuple[str, str, str], list[int]] = {}
    seen_receives: dict[tuple[str, str, str], int] = {}
    matching: dict[int, int] = {}
    for i, a in enumerate(actions):
        if a.is_send:
            sends.setdefault(a.channel, []).append(i)
            continue
        nth = seen_receives.get(a.channel, 0)
        seen_receives[a.channel] = nth + 1
        pending = sends.get(a.channel, [])
        if nth >= len(pending):
            raise InputError(f"action #{i} {a} has no earlier matching send")
        matching[pending[nth]] = i
    return matching


@dataclass(frozen=True, slots=True)
class Execution:
    actions: tuple[Action, ...]
    matching: Mapping[int, int]

    @classmethod
    def of(cls, actions: Iterable[Action]) -> "Execution":
        actions = tuple(actions)
        return cls(actions, compute_matching(actions))

    def __len__(self) -> int:
        return len(self.actions)

    def concat(self, other: "Execution") -> "Execution":
        offset = len(self.actions)
        matching = dict(self.matching)
        matching.update({s + offset: r + offset for s, r in other.matching.items()})
        return Execution(self.actions + other.actions, matching)


__all__ = [
    "Action",
    "Automaton",
    "BufferKey",
    "COMM_MODES",
    "Configuration",
    "Envelope",
    "Execution",
    "GlobalState",
    "MAILBOX",
    "P2P",
    "PI",
    "RECV",
    "SEND",
    "System",
    "Transition",
    "buffer_key",
    "compute_matching",
    "is_valid_process_name",
    "pack_payload",
    "recv",
    "send",
    "unpack_payload",
]
