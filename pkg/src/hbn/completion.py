"""Balanced completion of a splitting sequence below a level.

For an integer level ``lvl`` the completion keeps every entry e_j >= lvl in
place and replaces the entries below it by the balanced tuple with the same
sum.  The open set attached to a completion is tracked only through the
membership predicate :func:`in_open_stratum`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import SplittingSequence, check_same_params, dominates


@dataclass(frozen=True)
class CompletionResult:
    level: int
    threshold_index: int
    completed: SplittingSequence

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "threshold_index": self.threshold_index,
            "completed": self.completed.to_list(),
        }


def threshold_index(e: SplittingSequence, lvl: int) -> int:
    """1-based index of the first entry >= lvl, or k+1 if there is none."""
    for i, x in enumerate(e.entries, start=1):
        if lvl <= x:
            return i
    return len(e.entries) + 1


def balanced_fill(total: int, slots: int) -> tuple:
    if slots < 1:
        raise ValueError("slots must be >= 1")
    q, rem = divmod(total, slots)
    return (q,) * (slots - rem) + (q + 1,) * rem


def complete(e: SplittingSequence, lvl: int) -> CompletionResult:
    i = threshold_index(e, lvl)
    if i == 1:
        return CompletionResult(lvl, i, e)
    head = e.entries[: i - 1]
    filled = balanced_fill(sum(head), i - 1) + e.entries[i - 1 :]
    return CompletionResult(lvl, i, SplittingSequence(filled, e.params))


def completed(e: SplittingSequence, lvl: int) -> SplittingSequence:
    return complete(e, lvl).completed


def completion_threshold_E(e: SplittingSequence) -> Optional[int]:
    """Smallest entry at least two above e_1; None if every entry is within
    one of e_1 (then no completion changes ``e``)."""
    floor = e.first + 2
    for x in e.entries:
        if x >= floor:
            return x
    return None


def in_open_stratum(e: SplittingSequence, lvl: int, p: SplittingSequence) -> bool:
    """Is the stratum of ``p`` inside the open part of the closure of e[lvl]?

    Conditions: p <= e[lvl], p agrees with e from the threshold index on, and
    every entry of p before the threshold index is < lvl.
    """
    check_same_params(p, e)
    res = complete(e, lvl)
    cut = res.threshold_index - 1
    if p.entries[cut:] != e.entries[cut:]:
        return False
    if any(x >= lvl for x in p.entries[:cut]):
        return False
    return dominates(p, res.completed)
