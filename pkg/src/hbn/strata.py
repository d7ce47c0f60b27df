"""Enumeration of splitting types and the dominance poset on them."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .core import CurveParams, SplittingSequence, dominates, u_invariant


@dataclass(frozen=True)
class StratificationTable:
    params: CurveParams
    types: tuple
    u_values: tuple
    u_max: int

    @property
    def dims(self) -> tuple:
        return tuple(self.params.g - u for u in self.u_values)

    def __len__(self):
        return len(self.types)

    def index(self, e: SplittingSequence) -> int:
        return self.types.index(e)

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "u_max": self.u_max,
            "types": [e.to_list() for e in self.types],
            "u": list(self.u_values),
            "dim": list(self.dims),
        }

    def to_table(self) -> str:
        lines = [f"# g={self.params.g} k={self.params.k} d={self.params.d} u_max={self.u_max}"]
        lines.append(f"{'type':<32} {'u':>5} {'dim':>5}")
        for e, u, dim in zip(self.types, self.u_values, self.dims):
            lines.append(f"{str(e):<32} {u:>5} {dim:>5}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class HasseDiagram:
    table: StratificationTable
    edges: tuple = field(default=())  # (p, e) index pairs, p covered by e

    @property
    def nodes(self) -> range:
        return range(len(self.table))

    def to_dict(self) -> dict:
        return {
            "params": self.table.params.to_dict(),
            "nodes": [e.to_list() for e in self.table.types],
            "dim": list(self.table.dims),
            "edges": [list(pair) for pair in self.edges],
        }

    def to_dot(self) -> str:
        p = self.table.params
        out = [f'digraph "hasse_g{p.g}_k{p.k}_d{p.d}" {{', "  node [shape=box];"]
        for i, (e, dim) in enumerate(zip(self.table.types, self.table.dims)):
            out.append(f'  n{i} [label="{e}\\ndim {dim}"];')
        # arrows point from a type down to the types it specializes to
        for lo, hi in self.edges:
            out.append(f"  n{hi} -> n{lo};")
        out.append("}")
        return "\n".join(out) + "\n"

    def to_table(self) -> str:
        lines = []
        for lo, hi in self.edges:
            lines.append(f"{self.table.types[lo]} < {self.table.types[hi]}")
        return "\n".join(lines) + ("\n" if lines else "")


def _branch(args):
    """All sorted tuples starting with ``first``; runs in worker processes."""
    first, k, total, u_max = args
    hi = first + u_max + 1
    found = []
    prefix = [first]

    def rec(rem, slots, u_sofar):
        if slots == 0:
            if rem == 0:
                found.append(tuple(prefix))
            return
        last = prefix[-1]
        # the slots after x hold values in [x, hi]
        for x in range(max(last, rem - hi * (slots - 1)), hi + 1):
            if x * slots > rem:
                break
            gain = sum(max(0, x - p - 1) for p in prefix)
            u_new = u_sofar + gain
            # every later entry y >= x adds at least `gain` again
            if u_new + (slots - 1) * gain > u_max:
                break
            prefix.append(x)
            rec(rem - x, slots - 1, u_new)
            prefix.pop()

    rec(total - first, k - 1, 0)
    return found


def enumerate_types(
    params: CurveParams, u_max: Optional[int] = None, threads: int = 1
) -> StratificationTable:
    """All splitting sequences for ``params`` with u <= u_max (default g).

    Entries live in a window of width u_max + 1 above e_1, since a single gap
    e_k - e_1 - 1 > u_max already forces u > u_max; within it the search keeps
    the suffix nondecreasing and prunes on a lower bound for u.
    Output is sorted lexicographically.
    """
    if u_max is None:
        u_max = params.g
    k, total = params.k, params.total
    if u_max < 0:
        return StratificationTable(params, (), (), u_max)
    ceil_avg = -((-total) // k)
    firsts = range(ceil_avg - u_max - 1, total // k + 1)
    jobs = [(f, k, total, u_max) for f in firsts]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(_branch, jobs))
    else:
        chunks = [_branch(j) for j in jobs]
    tuples = sorted(t for chunk in chunks for t in chunk)
    types = tuple(SplittingSequence(t, params) for t in tuples)
    return StratificationTable(params, types, tuple(u_invariant(e) for e in types), u_max)


def in_closure(p: SplittingSequence, e: SplittingSequence) -> bool:
    """Does the stratum of ``p`` lie in the closure of the stratum of ``e``?"""
    return dominates(p, e)


def hasse_diagram(table: StratificationTable) -> HasseDiagram:
    """Covering relations of the dominance order restricted to ``table``.

    Lexicographic order is a linear extension of dominance, so every strictly
    smaller type has a smaller index.  Down-sets are kept as int bitmasks;
    cost is O(n^2) comparisons.
    """
    types = table.types
    n = len(types)
    below = [0] * n
    for j in range(n):
        mask = 0
        for i in range(j):
            if dominates(types[i], types[j]):
                mask |= 1 << i
        below[j] = mask
    edges = []
    for j in range(n):
        mask = below[j]
        reach = 0
        m = mask
        while m:
            low = m & -m
            reach |= below[low.bit_length() - 1]
            m ^= low
        covers = mask & ~reach
        while covers:
            low = covers & -covers
            edges.append((low.bit_length() - 1, j))
            covers ^= low
    edges.sort()
    return HasseDiagram(table, tuple(edges))


def specializations(e: SplittingSequence, u_max: int) -> list:
    """Types p <= e with u(p) <= u_max, in lexicographic order."""
    table = enumerate_types(e.params, u_max)
    return [p for p in table.types if dominates(p, e)]
