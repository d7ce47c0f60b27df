"""Splitting sequences and their numeric invariants.

A splitting sequence for a line bundle L of degree d on a k-gonal curve of
genus g is the multidegree (e_1 <= ... <= e_k) of the pushforward of L along
the degree-k pencil.  It always sums to d - g + 1 - k.  Everything in this
module is a pure function of such sequences; h0/h1 are the values attained at
a general point of the corresponding stratum, not a cohomology engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate
from typing import Iterable, Optional

from .errors import LengthMismatch, ParamMismatch, SumMismatch


@dataclass(frozen=True, order=True)
class CurveParams:
    g: int
    k: int
    d: int

    def __post_init__(self):
        for name in ("g", "k", "d"):
            if not isinstance(getattr(self, name), int):
                raise TypeError(f"{name} must be an int")
        if self.g < 0:
            raise ValueError("genus must be non-negative")
        if self.k < 2:
            raise ValueError("covering degree k must be >= 2")

    @property
    def total(self) -> int:
        """Common sum of every splitting sequence for these parameters."""
        return self.d - self.g + 1 - self.k

    @property
    def general(self) -> bool:
        """True when k < floor((g+3)/2), the range where general k-gonal
        curves behave as the stratification results require.  Outside it the
        combinatorics still work; callers may want to warn."""
        return self.k < (self.g + 3) // 2

    def shifted(self, c: int) -> "CurveParams":
        return CurveParams(self.g, self.k, self.d + c * self.k)

    def to_dict(self) -> dict:
        return {"g": self.g, "k": self.k, "d": self.d}


@dataclass(frozen=True)
class SplittingSequence:
    """Sorted integer k-tuple.  Build through :func:`make_sequence`."""

    entries: tuple
    params: CurveParams

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __str__(self):
        return "(" + ",".join(str(x) for x in self.entries) + ")"

    @property
    def k(self) -> int:
        return self.params.k

    @property
    def first(self) -> int:
        return self.entries[0]

    @property
    def last(self) -> int:
        return self.entries[-1]

    def at(self, i: int) -> int:
        """1-based access, matching the usual e_1..e_k indexing."""
        if not 1 <= i <= len(self.entries):
            raise IndexError(i)
        return self.entries[i - 1]

    def prefix_sums(self) -> tuple:
        return tuple(accumulate(self.entries))

    def shift(self, c: int) -> "SplittingSequence":
        """Twist by c times the pencil: every entry +c, degree d + c*k."""
        return SplittingSequence(tuple(x + c for x in self.entries), self.params.shifted(c))

    def replace(self, entries: Iterable[int]) -> "SplittingSequence":
        return make_sequence(entries, self.params)

    def to_list(self) -> list:
        return list(self.entries)


def make_sequence(entries: Iterable[int], params: CurveParams) -> SplittingSequence:
    """Canonicalize ``entries`` (a multiset) into a splitting sequence.

    Raises LengthMismatch if there are not exactly k entries and SumMismatch
    if they do not add up to d - g + 1 - k.
    """
    values = [int(x) for x in entries]
    if len(values) != params.k:
        raise LengthMismatch(f"expected {params.k} entries, got {len(values)}")
    s = sum(values)
    if s != params.total:
        raise SumMismatch(
            f"entries sum to {s}, but d-g+1-k = {params.total} for {params.to_dict()}"
        )
    return SplittingSequence(tuple(sorted(values)), params)


def check_same_params(p: SplittingSequence, e: SplittingSequence):
    if p.params != e.params:
        raise ParamMismatch(f"{p.params.to_dict()} != {e.params.to_dict()}")


def u_invariant(e: SplittingSequence) -> int:
    # Sorted input: for i < j only e_j - e_i - 1 can be positive.
    xs = e.entries
    total = 0
    for j in range(1, len(xs)):
        ej = xs[j]
        for i in range(j):
            gap = ej - xs[i] - 1
            if gap > 0:
                total += gap
    return total


def h0(e: SplittingSequence, n: int) -> int:
    """Sections of L + nM at a general point of the stratum of ``e``."""
    return sum(max(0, x + n + 1) for x in e.entries)


def h1(e: SplittingSequence, n: int) -> int:
    return sum(max(0, -(x + n + 1)) for x in e.entries)


def r_of_n(e: SplittingSequence, n: int) -> int:
    return h0(e, n) - 1


def dominates(p: SplittingSequence, e: SplittingSequence) -> bool:
    """True iff p <= e: every prefix sum of p is at most that of e.

    Read as "p specializes to e": the stratum of p lies in the closure of the
    stratum of e.
    """
    check_same_params(p, e)
    sp = se = 0
    for a, b in zip(p.entries, e.entries):
        sp += a
        se += b
        if sp > se:
            return False
    return True


def rho(g: int, r: int, d: int) -> int:
    """Brill-Noether number g - (r+1)(g-d+r)."""
    if r < 0:
        raise ValueError("r must be non-negative")
    return g - (r + 1) * (g - d + r)


def dim_sigma(e: SplittingSequence) -> Optional[int]:
    """Dimension g - u(e) of the stratum, or None when it is empty (u > g)."""
    u = u_invariant(e)
    if u > e.params.g:
        return None
    return e.params.g - u


def petri_injective(e: SplittingSequence) -> bool:
    # h0(L-M) = 0  <=>  e_k <= 0 ;  h0(K-L-M) = 0  <=>  e_1 >= -2
    return e.last <= 0 or e.first >= -2


def pencil_trick_image_dim(e: SplittingSequence, m: int) -> int:
    """Rank of H0(L) (x) Sym^m H0(M) -> H0(L+mM) at a general point.

    The kernel is H0(L-M)^m, so the rank is (m+1) h0(L) - m h0(L-M).
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    return (m + 1) * h0(e, 0) - m * h0(e, -1)
