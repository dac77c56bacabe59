"""Group-operation tallies, grouped by protocol phase.

Counting is opt-in::

    with counting() as counter:
        query = pe_probgen(sk, pk, 3, rng)
    counter.as_dict()   # {"probgen": {"muls": ..., "pows": ..., "pairings": ...}}

Protocol functions tag their work with :func:`phase`; the group backend calls
:func:`tally` for every multiplication, exponentiation and pairing.
"""

from __future__ import annotations

from collections import defaultdict
from contextlib import contextmanager
from contextvars import ContextVar
from typing import Iterator

KINDS = ("muls", "pows", "pairings")

_counter: ContextVar["OpCounter | None"] = ContextVar("mlvc_counter", default=None)
_phase: ContextVar[str] = ContextVar("mlvc_phase", default="other")


class OpCounter:
    """Per-phase tallies of muls, pows and pairings."""

    def __init__(self) -> None:
        self._tallies: dict[str, dict[str, int]] = defaultdict(
            lambda: dict.fromkeys(KINDS, 0)
        )

    def add(self, kind: str, phase_name: str, amount: int = 1) -> None:
        self._tallies[phase_name][kind] += amount

    def get(self, phase_name: str, kind: str | None = None) -> int:
        row = self._tallies.get(phase_name)
        if row is None:
            return 0
        if kind is None:
            return sum(row.values())
        return row[kind]

    def total(self, *phases: str, kind: str | None = None) -> int:
        """Sum over the given phases (all phases if none given)."""
        names = phases or tuple(self._tallies)
        return sum(self.get(name, kind) for name in names)

    def as_dict(self) -> dict[str, dict[str, int]]:
        return {name: dict(row) for name, row in self._tallies.items()}

    def __repr__(self) -> str:
        return f"OpCounter({self.as_dict()!r})"


def tally(kind: str, amount: int = 1) -> None:
    counter = _counter.get()
    if counter is not None:
        counter.add(kind, _phase.get(), amount)


@contextmanager
def counting(counter: OpCounter | None = None) -> Iterator[OpCounter]:
    """Activate ``counter`` (or a fresh one) for the enclosed block."""
    counter = counter if counter is not None else OpCounter()
    token = _counter.set(counter)
    try:
        yield counter
    finally:
        _counter.reset(token)


@contextmanager
def phase(name: str) -> Iterator[None]:
    token = _phase.set(name)
    try:
        yield
    finally:
        _phase.reset(token)
