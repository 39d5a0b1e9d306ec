from ksync.model.instrument import deviate, instrument, project, undeviate
from ksync.model.semantics import RunResult, bounded_executions, enabled, run, step
from ksync.model.system import (
    MAILBOX,
    P2P,
    PI,
    Action,
    Automaton,
    Configuration,
    Execution,
    System,
    Transition,
    compute_matching,
    pack_payload,
    recv,
    send,
    unpack_payload,
)

__all__ = [
    "Action",
    "Automaton",
    "Configuration",
    "Execution",
    "MAILBOX",
    "P2P",
    "PI",
    "RunResult",
    "System",
    "Transition",
    "bounded_executions",
    "compute_matching",
    "deviate",
    "enabled",
    "instrument",
    "pack_payload",
    "project",
    "recv",
    "run",
    "send",
    "step",
    "undeviate",
    "unpack_payload",
]
