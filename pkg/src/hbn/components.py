"""Irreducible components of W^r_d on a general k-gonal curve.

Components are closures of strata whose type is "balanced plus balanced": a
negative block of entries within one of each other followed by a
non-negative block of entries within one of each other,

    ((-b-1)^x, (-b)^y, a^m1, (a+1)^m2),   x = k - y - m1 - m2.

(The multiplicities m1, m2 are often written u, v elsewhere; they are renamed
here so they cannot be confused with the u-invariant.)  Such a type gives a
component of W^r_d exactly when m1(a+1) + m2(a+2) = r + 1, u <= g, and
b >= 2 or (a, b, m2) = (0, 1, 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Optional

from .completion import balanced_fill, in_open_stratum
from .core import (
    CurveParams,
    SplittingSequence,
    check_same_params,
    dominates,
    h0,
    u_invariant,
)
from .errors import InternalEquivalenceViolation


class ComponentClass(str, Enum):
    I = "I"
    II = "II"
    III = "III"


@dataclass(frozen=True)
class BalancedType:
    a: int
    b: int
    x: int
    y: int
    m1: int
    m2: int

    @property
    def k(self) -> int:
        return self.x + self.y + self.m1 + self.m2

    @property
    def split_index(self) -> int:
        """1-based index of the first non-negative entry."""
        return self.x + self.y + 1

    def expand(self) -> tuple:
        return (
            (-self.b - 1,) * self.x
            + (-self.b,) * self.y
            + (self.a,) * self.m1
            + (self.a + 1,) * self.m2
        )

    def rank(self) -> int:
        """The r with m1(a+1) + m2(a+2) = r + 1."""
        return self.m1 * (self.a + 1) + self.m2 * (self.a + 2) - 1

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "x": self.x, "y": self.y, "m1": self.m1, "m2": self.m2}


@dataclass(frozen=True)
class Component:
    btype: BalancedType
    r: int
    params: CurveParams
    dim: int
    cls: ComponentClass
    l: int

    @property
    def sequence(self) -> SplittingSequence:
        return SplittingSequence(self.btype.expand(), self.params)

    @property
    def zero_dimensional(self) -> bool:
        return self.dim == 0

    def to_dict(self) -> dict:
        return {
            "sequence": list(self.btype.expand()),
            "B": self.btype.to_dict(),
            "dim": self.dim,
            "class": self.cls.value,
            "l": self.l,
        }


def balanced_plus_balanced(e: SplittingSequence) -> Optional[BalancedType]:
    xs = e.entries
    c = next((i for i, x in enumerate(xs) if x >= 0), None)
    if c is None or c == 0:
        return None
    if xs[c - 1] - xs[0] > 1 or xs[-1] - xs[c] > 1:
        return None
    b, a = -xs[c - 1], xs[c]
    return BalancedType(
        a=a,
        b=b,
        x=xs.count(-b - 1),
        y=xs.count(-b),
        m1=xs.count(a),
        m2=xs.count(a + 1),
    )


def classify_btype(bt: BalancedType) -> ComponentClass:
    if bt.a == 0 and bt.m2 == 0:
        return ComponentClass.I
    if bt.a == 0:
        return ComponentClass.II
    return ComponentClass.III


def component_class(c: Component) -> ComponentClass:
    return classify_btype(c.btype)


def _is_component_type(bt: BalancedType, r: int, g: int, seq: SplittingSequence) -> bool:
    if bt.rank() != r:
        return False
    if not (bt.b >= 2 or (bt.a, bt.b, bt.m2) == (0, 1, 0)):
        return False
    return u_invariant(seq) <= g


def make_component(e: SplittingSequence, r: int) -> Optional[Component]:
    """Wrap ``e`` as a component of W^r_d, or None if it is not one."""
    bt = balanced_plus_balanced(e)
    if bt is None or not _is_component_type(bt, r, e.params.g, e):
        return None
    return Component(
        btype=bt,
        r=r,
        params=e.params,
        dim=e.params.g - u_invariant(e),
        cls=classify_btype(bt),
        l=bt.a * bt.m1 + (bt.a + 1) * bt.m2,
    )


@lru_cache(maxsize=4096)
def _components(params: CurveParams, r: int) -> tuple:
    # Build candidates directly from the tail (a, m1, m2); the negative block
    # is then forced to be the balanced fill of what is left of the sum.
    out = []
    k = params.k
    for a in range(0, r + 1):
        for m2 in range(0, (r + 1) // (a + 2) + 1):
            rest = r + 1 - m2 * (a + 2)
            if rest <= 0 or rest % (a + 1):
                continue
            m1 = rest // (a + 1)
            neg = k - m1 - m2
            if neg < 1:
                continue
            head = balanced_fill(params.total - m1 * a - m2 * (a + 1), neg)
            if head[-1] >= 0:
                continue
            seq = SplittingSequence(head + (a,) * m1 + (a + 1,) * m2, params)
            comp = make_component(seq, r)
            if comp is not None:
                out.append(comp)
    out.sort(key=lambda c: c.btype.expand())
    return tuple(out)


def components_of_W(params: CurveParams, r: int) -> list:
    """All irreducible components of W^r_d, ordered by their type."""
    if r < 0:
        raise ValueError("r must be non-negative")
    return list(_components(params, r))


def components_containing(p: SplittingSequence, r: int) -> list:
    return [c for c in components_of_W(p.params, r) if dominates(p, c.sequence)]


def v_parameters(c: Component) -> tuple:
    """(r, d, l) labelling the open locus V^r_{d,l} dense in ``c``."""
    return (c.r, c.params.d, c.l)


def threshold(c: Component) -> int:
    """Generic value 2r + 2 - l of h0(L+M) on the component."""
    return 2 * c.r + 2 - c.l


def _v_conditions(p: SplittingSequence, c: Component) -> bool:
    bt = c.btype
    return (
        h0(p, 0) == c.r + 1
        and h0(p, -(bt.a + 1)) == bt.m2
        and h0(p, -bt.a) == bt.m1 + 2 * bt.m2
        and h0(p, -(bt.a + 2)) == 0
    )


def in_V(p: SplittingSequence, c: Component) -> bool:
    """Membership of the stratum of ``p`` in V^r_{d,l}.

    Decided by the section counts h0(L) = r+1, h0(L-(a+1)M) = m2,
    h0(L-aM) = m1 + 2 m2 and h0(L-(a+2)M) = 0, and cross-checked against
    membership in the open part of the closure of the component's type at
    level 0.  Without the last count the two disagree once m2 >= 2.
    """
    check_same_params(p, c.sequence)
    by_sections = _v_conditions(p, c)
    by_stratum = in_open_stratum(c.sequence, 0, p)
    if by_sections != by_stratum:
        raise InternalEquivalenceViolation(
            f"V membership of {p} in component {c.sequence}: "
            f"sections say {by_sections}, open stratum says {by_stratum}"
        )
    return by_sections


def w_membership(p: SplittingSequence, r: int) -> bool:
    if r < 0:
        raise ValueError("r must be non-negative")
    return h0(p, 0) >= r + 1


def component_report(params: CurveParams, r: int) -> dict:
    return {
        "params": params.to_dict(),
        "r": r,
        "components": [c.to_dict() for c in components_of_W(params, r)],
    }
