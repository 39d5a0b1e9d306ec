# ksync/testkit/fixtures.py
"""Hand-written MSCs, systems and runs with their expected classification."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from ksync.errors import SchemaError
from ksync.exchange import KExchange
from ksync.model.system import MAILBOX, PI, Action, System
from ksync.msc import Msc
from ksync.schemas import ActionRecordDoc, MscDoc, RunDoc, SystemDoc, parse_document

DATA_DIR = Path(__file__).resolve().parent / "data"


class FixtureDoc(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["msc", "system", "run"]
    description: str = ""
    k: Optional[int] = Field(default=None, ge=1)
    comm: Literal["mailbox", "p2p"] = MAILBOX
    msc: Optional[MscDoc] = None
    system: Optional[SystemDoc] = None
    run: Optional[RunDoc] = None
    execution: Optional[list[ActionRecordDoc]] = None
    expect: dict[str, Any] = Field(default_factory=dict)


@dataclass(frozen=True)
class Fixture:
    name: str
    doc: FixtureDoc

    @property
    def kind(self) -> str:
        return self.doc.kind

    @property
    def expect(self) -> dict[str, Any]:
        return self.doc.expect

    @property
    def k(self) -> int:
        return self.doc.k or 1

    def msc(self) -> Msc:
        if self.doc.msc is None:
            raise SchemaError(f"fixture {self.name} has no msc")
        return self.doc.msc.to_msc()

    def system(self) -> System:
        if self.doc.system is None:
            raise SchemaError(f"fixture {self.name} has no system")
        return self.doc.system.to_system()

    def execution(self) -> tuple[Action, ...]:
        return tuple(a.to_action() for a in self.doc.execution or ())

    def processes(self) -> tuple[str, ...]:
        """Run processes plus ``pi`` when the run is deviated."""
        if self.doc.run is None:
            return ()
        procs = set(self.doc.run.processes)
        if any(PI in (a.sender, a.receiver) for e in self.doc.run.to_actions() for a in e):
            procs.add(PI)
        return tuple(sorted(procs))

    def run(self) -> list[KExchange]:
        if self.doc.run is None:
            raise SchemaError(f"fixture {self.name} has no run")
        return [KExchange.from_actions(e, comm=self.doc.comm) for e in self.doc.run.to_actions()]


def fixture_names() -> list[str]:
    return sorted(p.stem for p in DATA_DIR.glob("*.json"))


@lru_cache(maxsize=None)
def load_fixture(name: str) -> Fixture:
    path = DATA_DIR / f"{name}.json"
    if not path.is_file():
        raise SchemaError(f"unknown fixture {name!r}")
    return Fixture(name, parse_document(FixtureDoc, path.read_text(encoding="utf-8")))


def load_fixtures(kind: str | None = None) -> list[Fixture]:
    found = [load_fixture(name) for name in fixture_names()]
    return [f for f in found if kind is None or f.kind == kind]


__all__ = ["DATA_DIR", "Fixture", "FixtureDoc", "fixture_names", "load_fixture", "load_fixtures"]
