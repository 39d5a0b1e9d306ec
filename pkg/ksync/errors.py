# ksync/errors.py
from __future__ import annotations

from typing import Any


class KSyncError(RuntimeError):
    """Базовая ошибка верификатора."""


# --- operational semantics -------------------------------------------------


class StepError(KSyncError):
    """An action cannot be applied to a configuration.

    ``index`` is filled in by ``run`` with the position of the failing action.
    """

    def __init__(self, message: str, *, action: Any = None, index: int | None = None):
        super().__init__(message)
        self.action = action
        self.index = index

    def __str__(self) -> str:
        base = super().__str__()
        if self.index is None:
            return base
        return f"action #{self.index}: {base}"


class NotEnabled(StepError):
    """No transition labeled with the action leaves the current local state."""


class BufferHeadMismatch(StepError):
    """The receive does not match the head of its FIFO buffer."""


# --- input problems --------------------------------------------------------


class InputError(KSyncError):
    """Входные данные некорректны (exit code 2 / HTTP 422)."""


class SchemaError(InputError):
    def __init__(self, message: str, *, location: str = ""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


class ReservedName(InputError):
    """The process name ``pi`` is reserved for the instrumented system."""


class UnknownState(InputError):
    pass


class LastActionNotReceive(InputError):
    pass


class UnmatchedFinalReceive(InputError):
    pass


class MissingDeviationVertices(InputError):
    pass


class CyclicOrder(InputError):
    """The causal order of an MSC has a cycle, so no linearization exists."""


class NotCausalDelivery(InputError):
    pass


# --- rejected abstract transitions ----------------------------------------


class TransitionRejected(KSyncError):
    """An abstract k-exchange transition is not allowed from this state."""


class CausalDeliveryViolation(TransitionRejected):
    def __init__(self, process: str, *, book: Any = None):
        super().__init__(f"causal delivery violated towards {process}")
        self.process = process
        self.book = book


class SecondDeviation(TransitionRejected):
    pass


class UnmatchedDeviation(TransitionRejected):
    """The send towards ``pi`` is not received by ``pi`` in its exchange."""


class PiSendsEarly(TransitionRejected):
    pass


class FeasibilityViolation(TransitionRejected):
    def __init__(self, dest: str, *, state: Any = None):
        super().__init__(f"a message to {dest} sent after the deviation is received before it")
        self.dest = dest
        self.state = state


class InconsistentGuess(TransitionRejected):
    pass


class P2pCausalDeliveryViolation(TransitionRejected):
    def __init__(self, sender: str, receiver: str):
        super().__init__(f"matched {sender}->{receiver} message after an unmatched one on the same channel")
        self.sender = sender
        self.receiver = receiver


class P2pFeasibilityViolation(TransitionRejected):
    pass


# --- resources -------------------------------------------------------------


class ExplosionLimit(KSyncError):
    def __init__(self, message: str, *, stats: dict[str, int] | None = None):
        super().__init__(message)
        self.stats = dict(stats or {})


__all__ = [
    "BufferHeadMismatch",
    "CausalDeliveryViolation",
    "CyclicOrder",
    "ExplosionLimit",
    "FeasibilityViolation",
    "InconsistentGuess",
    "InputError",
    "KSyncError",
    "LastActionNotReceive",
    "MissingDeviationVertices",
    "NotCausalDelivery",
    "NotEnabled",
    "P2pCausalDeliveryViolation",
    "P2pFeasibilityViolation",
    "PiSendsEarly",
    "ReservedName",
    "SchemaError",
    "SecondDeviation",
    "StepError",
    "TransitionRejected",
    "UnknownState",
    "UnmatchedDeviation",
    "UnmatchedFinalReceive",
]
