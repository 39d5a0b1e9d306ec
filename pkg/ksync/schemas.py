# ksync/schemas.py
"""JSON documents (pydantic v2) for systems, MSCs, runs, LTS dumps and verdicts."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Literal, Optional, Type, TypeVar

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from ksync.errors import SchemaError
from ksync.model.system import (
    MAILBOX,
    SEND,
    Action,
    Automaton,
    System,
    Transition,
    recv,
    send,
)
from ksync.msc import Event, Msc

M = TypeVar("M", bound=BaseModel)

Kind = Literal["send", "recv"]
Comm = Literal["mailbox", "p2p"]


class _Doc(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


# --- systems ----------------------------------------------------------------


class ActionDoc(_Doc):
    """``peer`` is the receiver of a send and the sender of a receive."""

    kind: Kind
    peer: str = Field(min_length=1)
    msg: str = Field(min_length=1)


class TransitionDoc(_Doc):
    source: str = Field(alias="from", min_length=1)
    target: str = Field(alias="to", min_length=1)
    action: ActionDoc


class ProcessDoc(_Doc):
    initial: str = Field(min_length=1)
    transitions: list[TransitionDoc] = Field(default_factory=list)
    # extra states without transitions (e.g. reachability goals)
    states: list[str] = Field(default_factory=list)


class SystemDoc(_Doc):
    comm: Comm = MAILBOX
    processes: dict[str, ProcessDoc] = Field(default_factory=dict)

    def to_system(self) -> System:
        automata: dict[str, Automaton] = {}
        for name, proc in self.processes.items():
            transitions = []
            for t in proc.transitions:
                a = t.action
                action = send(name, a.peer, a.msg) if a.kind == SEND else recv(a.peer, name, a.msg)
                transitions.append(Transition(t.source, action, t.target))
            automata[name] = Automaton.build(proc.initial, transitions, states=proc.states)
        return System(automata, comm=self.comm)

    @classmethod
    def from_system(cls, system: System) -> "SystemDoc":
        processes = {}
        for name, automaton in system.automata.items():
            used = {automaton.initial} | {t.source for t in automaton.transitions} | {t.target for t in automaton.transitions}
            processes[name] = ProcessDoc(
                initial=automaton.initial,
                transitions=[
                    TransitionDoc(
                        source=t.source,
                        target=t.target,
                        action=ActionDoc(kind=t.action.kind, peer=t.action.peer, msg=t.action.message),
                    )
                    for t in automaton.transitions
                ],
                states=sorted(automaton.states - used),
            )
        return cls(comm=system.comm, processes=processes)


# --- MSCs -------------------------------------------------------------------


class EventDoc(_Doc):
    id: int
    proc: str = Field(min_length=1)
    kind: Kind
    peer: str = Field(min_length=1)
    msg: str = Field(min_length=1)
    match: Optional[int] = None


class MscDoc(_Doc):
    """Per-process order is the listing order; ``match`` on a send names its receive."""

    events: list[EventDoc] = Field(default_factory=list)

    def to_msc(self) -> Msc:
        events = []
        src: dict[int, int] = {}
        by_id = {ev.id: ev for ev in self.events}
        for i, ev in enumerate(self.events):
            action = send(ev.proc, ev.peer, ev.msg) if ev.kind == SEND else recv(ev.peer, ev.proc, ev.msg)
            events.append(Event(ev.id, ev.proc, action))
            if ev.match is None:
                continue
            if ev.match not in by_id:
                raise SchemaError(f"unknown event {ev.match}", location=f"events.{i}.match")
            if ev.kind == SEND:
                src[ev.id] = ev.match
            elif by_id[ev.match].match != ev.id:
                raise SchemaError("receive names a send that does not name it back", location=f"events.{i}.match")
        return Msc(tuple(events), src)

    @classmethod
    def from_msc(cls, msc: Msc) -> "MscDoc":
        back = {r: s for s, r in msc.src.items()}
        return cls(
            events=[
                EventDoc(
                    id=ev.id,
                    proc=ev.process,
                    kind=ev.action.kind,
                    peer=ev.action.peer,
                    msg=ev.action.message,
                    match=msc.src.get(ev.id) if ev.action.is_send else back.get(ev.id),
                )
                for ev in msc.events
            ]
        )


# --- runs of exchanges, LTS dumps and verdicts --------------------------------


class ActionRecordDoc(_Doc):
    kind: Kind
    sender: str = Field(min_length=1)
    receiver: str = Field(min_length=1)
    msg: str = Field(min_length=1)

    def to_action(self) -> Action:
        return Action(self.kind, self.sender, self.receiver, self.msg)


def action_to_doc(a: Action) -> dict[str, str]:
    return {"kind": a.kind, "sender": a.sender, "receiver": a.receiver, "msg": a.message}


class RunDoc(_Doc):
    """A sequence of exchanges, each a list of actions (sends first)."""

    processes: list[str] = Field(default_factory=list)
    exchanges: list[list[ActionRecordDoc]] = Field(default_factory=list)

    def to_actions(self) -> list[list[Action]]:
        return [[a.to_action() for a in e] for e in self.exchanges]


class LtsStateDoc(_Doc):
    id: int
    global_: dict[str, str] = Field(alias="global")
    book: dict[str, Any]


class LtsTransitionDoc(_Doc):
    source: int = Field(alias="from")
    target: int = Field(alias="to")
    exchange: list[ActionRecordDoc]


class LtsViolationDoc(_Doc):
    source: int = Field(alias="from")
    exchange: list[ActionRecordDoc]
    reason: str = ""


class LtsDoc(_Doc):
    states: list[LtsStateDoc]
    transitions: list[LtsTransitionDoc] = Field(default_factory=list)
    violations: list[LtsViolationDoc] = Field(default_factory=list)


class VerdictDoc(_Doc):
    k: int = Field(ge=1)
    synchronizable: bool
    counterexample: Optional[MscDoc] = None
    statesExplored: int = Field(ge=0)


# --- loading ----------------------------------------------------------------


def _location(err: ValidationError) -> str:
    first = err.errors()[0]
    return ".".join(str(part) for part in first.get("loc", ()))


def parse_document(model: Type[M], text: str) -> M:
    """JSON text -> model; decode and validation problems become SchemaError."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(exc.msg, location=f"line {exc.lineno}, column {exc.colno}") from None
    try:
        return model.model_validate(data)
    except ValidationError as exc:
        raise SchemaError(exc.errors()[0].get("msg", "invalid value"), location=_location(exc)) from None


def read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror or exc}") from None


def parse_system(text: str) -> System:
    return parse_document(SystemDoc, text).to_system()


def parse_msc(text: str) -> Msc:
    return parse_document(MscDoc, text).to_msc()


def dump_document(doc: BaseModel) -> dict[str, Any]:
    return doc.model_dump(mode="json", by_alias=True)


__all__ = [
    "ActionDoc",
    "ActionRecordDoc",
    "EventDoc",
    "LtsDoc",
    "MscDoc",
    "ProcessDoc",
    "RunDoc",
    "SystemDoc",
    "TransitionDoc",
    "VerdictDoc",
    "action_to_doc",
    "dump_document",
    "parse_document",
    "parse_msc",
    "parse_system",
    "read_text",
]
