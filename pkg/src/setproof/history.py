"""Unlimited undo/redo over immutable snapshots.

The current value lives outside the history; ``undo``/``redo`` exchange it
against the stacks and return the replacement value with the new history.
Pushing a snapshot clears the redo side.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Generic, TypeVar

from .errors import NothingToRedo, NothingToUndo

T = TypeVar("T")


@dataclass(frozen=True)
class History(Generic[T]):
    past: tuple[T, ...] = ()
    future: tuple[T, ...] = ()

    @property
    def can_undo(self) -> bool:
        return bool(self.past)

    @property
    def can_redo(self) -> bool:
        return bool(self.future)

    def push(self, snapshot: T) -> "History[T]":
        return History(self.past + (snapshot,), ())

    def undo(self, current: T) -> tuple[T, "History[T]"]:
        if not self.past:
            raise NothingToUndo("nothing to undo")
        return self.past[-1], History(self.past[:-1], self.future + (current,))

    def redo(self, current: T) -> tuple[T, "History[T]"]:
        if not self.future:
            raise NothingToRedo("nothing to redo")
        return self.future[-1], History(self.past + (current,), self.future[:-1])
