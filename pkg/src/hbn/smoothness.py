"""Three-valued smoothness verdicts and the constructions behind them.

Every verdict names the scheme it is about, because the same point can be a
smooth point of a degeneracy scheme (closure of a stratum) and a singular
point of W^r_d.  ``Unknown`` is returned whenever none of the implemented
criteria applies; it is never coerced to either side.

Justification tags, by what they certify:

    petri_criterion          Petri map injective iff h0(L-M) h0(K-L-M) = 0
    free_from_pencil         points with h0(L-M) = 0 are smooth off W^{r+1}
    higher_rank              W^{r+1}_d lies in the singular locus of W^r_d
    open_stratum_smooth      open part of closure of e[lvl] is smooth (lvl >= e_1+2)
    v_locus_smooth           the locus V^r_{d,l} is smooth in its closure
    run_splitting            splitting an isolated run keeps closure smooth
    type_i_petri             on a type I component, smooth iff Petri injective
    residual_component       second component through non-free points of type I
    unique_component_witness singular point lying on a single type I component
    v_threshold              on V, smooth iff h0(L+M) equals 2r+2-l
    type_ii_gap              type II point with entry k-m1-m2 <= -2 is smooth
    pencil_translate         L smooth and no -1, -2 entries => L+M smooth
    translate_dichotomy      -2 but no -1 entries: non-component or two components
    translate_rank_jump      a -1 entry makes L+M a point of higher rank
    multiple_components      point on two components is singular
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .completion import (
    balanced_fill,
    completion_threshold_E,
    completed,
    in_open_stratum,
)
from .components import (
    Component,
    ComponentClass,
    balanced_plus_balanced,
    components_containing,
    in_V,
    make_component,
    threshold,
)
from .core import (
    SplittingSequence,
    check_same_params,
    dominates,
    h0,
    make_sequence,
    petri_injective,
    u_invariant,
)
from .errors import (
    DegenerateSequence,
    InternalError,
    InternalThresholdViolation,
    NotInV,
    PreconditionFail,
    RangeError,
    RankTooLow,
    WrongClass,
)


class Status(str, Enum):
    SMOOTH = "CertifiedSmooth"
    SINGULAR = "CertifiedSingular"
    UNKNOWN = "Unknown"


class Reason(str, Enum):
    MULTIPLE_COMPONENTS = "MultipleComponents"
    HIGHER_RANK = "HigherRank"
    PETRI_KERNEL = "PetriKernel"


class Justification(str, Enum):
    PETRI_CRITERION = "petri_criterion"
    FREE_FROM_PENCIL = "free_from_pencil"
    HIGHER_RANK = "higher_rank"
    OPEN_STRATUM_SMOOTH = "open_stratum_smooth"
    V_LOCUS_SMOOTH = "v_locus_smooth"
    RUN_SPLITTING = "run_splitting"
    TYPE_I_PETRI = "type_i_petri"
    RESIDUAL_COMPONENT = "residual_component"
    UNIQUE_COMPONENT_WITNESS = "unique_component_witness"
    V_THRESHOLD = "v_threshold"
    TYPE_II_GAP = "type_ii_gap"
    PENCIL_TRANSLATE = "pencil_translate"
    TRANSLATE_DICHOTOMY = "translate_dichotomy"
    TRANSLATE_RANK_JUMP = "translate_rank_jump"
    MULTIPLE_COMPONENTS = "multiple_components"


@dataclass(frozen=True)
class Ambient:
    """Either the degeneracy scheme of a type or the scheme W^r_d."""

    kind: str  # "degeneracy" | "brill_noether"
    sequence: Optional[SplittingSequence] = None
    r: Optional[int] = None
    d: Optional[int] = None

    @classmethod
    def degeneracy(cls, e: SplittingSequence) -> "Ambient":
        return cls("degeneracy", sequence=e)

    @classmethod
    def brill_noether(cls, r: int, d: int) -> "Ambient":
        return cls("brill_noether", r=r, d=d)

    def label(self) -> str:
        if self.kind == "degeneracy":
            return f"DegeneracyScheme{self.sequence}"
        return f"BrillNoetherScheme(r={self.r},d={self.d})"

    def to_dict(self) -> dict:
        if self.kind == "degeneracy":
            return {"kind": "DegeneracyScheme", "sequence": self.sequence.to_list()}
        return {"kind": "BrillNoetherScheme", "r": self.r, "d": self.d}


@dataclass(frozen=True)
class Verdict:
    point: SplittingSequence
    status: Status
    ambient: Ambient
    justification: Optional[Justification] = None
    reason: Optional[Reason] = None
    witnesses: tuple = ()
    notes: tuple = ()

    def __post_init__(self):
        if self.status is Status.SINGULAR and self.reason is None:
            raise InternalError("a singular verdict needs a reason")
        if self.status is not Status.UNKNOWN and self.justification is None:
            raise InternalError("a certified verdict needs a justification")

    @property
    def smooth(self) -> bool:
        return self.status is Status.SMOOTH

    @property
    def singular(self) -> bool:
        return self.status is Status.SINGULAR

    def to_dict(self) -> dict:
        return {
            "point": self.point.to_list(),
            "ambient": self.ambient.to_dict(),
            "status": self.status.value,
            "justification": self.justification.value if self.justification else None,
            "reason": self.reason.value if self.reason else None,
            "witnesses": [w.to_list() for w in self.witnesses],
            "notes": list(self.notes),
        }


def _unknown(p, ambient, *notes) -> Verdict:
    return Verdict(p, Status.UNKNOWN, ambient, notes=tuple(notes))


# --------------------------------------------------------------------------
# Local equations of degeneracy schemes


@dataclass(frozen=True)
class FittingLevels:
    levels: frozenset
    top: int  # -e_k; the lowest level not trivially satisfied

    @property
    def includes_top_level(self) -> bool:
        return self.top in self.levels

    def sorted(self) -> list:
        return sorted(self.levels)


def local_fitting_levels(e: SplittingSequence) -> FittingLevels:
    """Twists n whose determinantal conditions cut out the closure of ``e``
    near points of the open part of the closure of e[E]: n <= -E with -n one
    of e_2, ..., e_k."""
    big_e = completion_threshold_E(e)
    if big_e is None:
        raise DegenerateSequence(f"{e}: every entry is within one of e_1")
    levels = frozenset(-x for x in e.entries[1:] if -x <= -big_e)
    return FittingLevels(levels, -e.last)


def local_equation_count(e: SplittingSequence, lvl_lo: int, lvl_hi: int) -> int:
    """Equations cutting the closure of e[lvl_lo] out of that of e[lvl_hi]."""
    if not (e.first + 2 <= lvl_lo < lvl_hi <= e.last):
        raise RangeError(
            f"need {e.first + 2} <= lvl_lo < lvl_hi <= {e.last}, got {lvl_lo}, {lvl_hi}"
        )
    return u_invariant(completed(e, lvl_lo)) - u_invariant(completed(e, lvl_hi))


def level_step_equations(e: SplittingSequence, lvl: int) -> int:
    """Closed form for u(e[lvl-1]) - u(e[lvl]).

    With t the number of entries equal to lvl-1 this is
    t * (sum_{e_j >= lvl} (e_j - lvl + 2) + t - d + k(lvl-1) + g - 1).
    Valid for e_1 + 2 <= lvl.
    """
    p = e.params
    t = e.entries.count(lvl - 1)
    if t == 0:
        return 0
    upper = sum(x - lvl + 2 for x in e.entries if x >= lvl)
    return t * (upper + t - p.d + p.k * (lvl - 1) + p.g - 1)


# --------------------------------------------------------------------------
# Smoothness of degeneracy schemes


def run_smoothing_pairs(e: SplittingSequence) -> list:
    """Types obtained by splitting an isolated run of equal entries.

    For each maximal run e_i = ... = e_{i+k'-1} = a with k' >= 2 whose
    neighbours differ from a by at least 2, and each 1 <= l <= k'//2, lower
    l entries of the run to a-1 and raise l entries to a+1.  Returns
    (sequence, l) pairs; the u-invariant goes up by exactly l*l, and the
    resulting stratum is in the smooth locus of the closure of ``e`` whenever
    it is non-empty.
    """
    xs = e.entries
    n = len(xs)
    out = []
    i = 0
    while i < n:
        j = i
        while j + 1 < n and xs[j + 1] == xs[i]:
            j += 1
        run = j - i + 1
        a = xs[i]
        isolated = (i == 0 or xs[i - 1] < a - 1) and (j == n - 1 or xs[j + 1] > a + 1)
        if run >= 2 and isolated:
            for l in range(1, run // 2 + 1):
                new = list(xs)
                new[i : i + l] = [a - 1] * l
                new[j - l + 1 : j + 1] = [a + 1] * l
                out.append((SplittingSequence(tuple(new), e.params), l))
        i = j + 1
    return out


def certified_smooth_in_closure(e: SplittingSequence, lvl: int, p: SplittingSequence) -> Verdict:
    """Is the stratum of ``p`` in the smooth locus of the closure of e[lvl]?"""
    check_same_params(p, e)
    target = completed(e, lvl)
    if not dominates(p, target):
        raise PreconditionFail(f"{p} is not <= {target}")
    ambient = Ambient.degeneracy(target)
    if lvl >= e.first + 2 and in_open_stratum(e, lvl, p):
        tag = Justification.OPEN_STRATUM_SMOOTH
        if lvl == 0 and target == e and balanced_plus_balanced(e) is not None:
            tag = Justification.V_LOCUS_SMOOTH
        return Verdict(p, Status.SMOOTH, ambient, tag)
    if p == target:
        # a stratum is always smooth inside its own closure
        return Verdict(p, Status.SMOOTH, ambient, Justification.OPEN_STRATUM_SMOOTH)
    if u_invariant(p) <= p.params.g:
        for q, l in run_smoothing_pairs(target):
            if q == p:
                return Verdict(p, Status.SMOOTH, ambient, Justification.RUN_SPLITTING, notes=(f"l={l}",))
    return _unknown(p, ambient)


# --------------------------------------------------------------------------
# Points of W^r_d


def _witness_marks(p: SplittingSequence, c: Component) -> bool:
    try:
        return type_i_unique_singular_witness(c) == p
    except PreconditionFail:
        return False


def classify_in_W(p: SplittingSequence, r: int) -> Verdict:
    """Smoothness of W^r_d at a general point of the stratum of ``p``.

    Checks run in a fixed order: higher rank, the Petri criterion, number of
    components through the point, then the component-specific criteria (type
    I Petri failure, the h0(L+M) threshold on V).  Anything left is Unknown.
    """
    if r < 0:
        raise ValueError("r must be non-negative")
    n_sections = h0(p, 0)
    if n_sections <= r:
        raise RankTooLow(f"h0 = {n_sections} < r+1 = {r + 1}")
    ambient = Ambient.brill_noether(r, p.params.d)
    if n_sections >= r + 2:
        return Verdict(p, Status.SINGULAR, ambient, Justification.HIGHER_RANK, Reason.HIGHER_RANK)
    if petri_injective(p):
        tag = Justification.FREE_FROM_PENCIL if p.last <= 0 else Justification.PETRI_CRITERION
        return Verdict(p, Status.SMOOTH, ambient, tag)
    comps = components_containing(p, r)
    if len(comps) >= 2:
        return Verdict(
            p,
            Status.SINGULAR,
            ambient,
            Justification.MULTIPLE_COMPONENTS,
            Reason.MULTIPLE_COMPONENTS,
            witnesses=tuple(c.sequence for c in comps),
        )
    if not comps:
        return _unknown(p, ambient, "no component of W contains this type")
    (c,) = comps
    if c.cls is ComponentClass.I:
        tag = Justification.UNIQUE_COMPONENT_WITNESS if _witness_marks(p, c) else Justification.TYPE_I_PETRI
        return Verdict(p, Status.SINGULAR, ambient, tag, Reason.PETRI_KERNEL, witnesses=(c.sequence,))
    if c.btype.b >= 2 and in_V(p, c):
        return classify_on_v_locus(c, p)
    return _unknown(p, ambient)


def classify_on_v_locus(c: Component, p: SplittingSequence) -> Verdict:
    """Smoothness of W^r_d at p in V^r_{d,l}, for a type II or III component.

    Smooth iff h0(L+M) = 2r+2-l; above that value p lies on a second
    component.  Type I components are refused: there l = 0 and points with a
    -1 entry exceed the threshold yet are smooth by the Petri criterion.
    """
    if c.cls is ComponentClass.I or c.btype.b < 2:
        raise WrongClass("threshold criterion needs a type II or III component")
    if not in_V(p, c):
        raise NotInV(f"{p} is not in V for component {c.sequence}")
    thr = threshold(c)
    value = h0(p, 1)
    ambient = Ambient.brill_noether(c.r, c.params.d)
    if value < thr:
        raise InternalThresholdViolation(f"h0(L+M) = {value} below generic value {thr}")
    if value == thr:
        return Verdict(p, Status.SMOOTH, ambient, Justification.V_THRESHOLD)
    others = [z.sequence for z in components_containing(p, c.r)]
    return Verdict(
        p,
        Status.SINGULAR,
        ambient,
        Justification.V_THRESHOLD,
        Reason.MULTIPLE_COMPONENTS,
        witnesses=tuple(others),
        notes=(f"h0(L+M) = {value} > {thr}",),
    )


def type_i_smooth_locus(c: Component, p: SplittingSequence) -> Verdict:
    if c.cls is not ComponentClass.I:
        raise WrongClass(f"component {c.sequence} is of type {c.cls.value}")
    if not dominates(p, c.sequence):
        raise PreconditionFail(f"{p} is not in the closure of {c.sequence}")
    ambient = Ambient.brill_noether(c.r, c.params.d)
    if h0(p, 0) >= c.r + 2:
        return Verdict(p, Status.SINGULAR, ambient, Justification.HIGHER_RANK, Reason.HIGHER_RANK)
    if petri_injective(p):
        return Verdict(p, Status.SMOOTH, ambient, Justification.TYPE_I_PETRI)
    return Verdict(p, Status.SINGULAR, ambient, Justification.TYPE_I_PETRI, Reason.PETRI_KERNEL)


def type_i_second_component(c: Component) -> Optional[Component]:
    """Second component through the non-free, non-higher-rank part of a type I
    component whose general point has e_1 < -2.

    Keep e_1..e_{k-r-1}, put (-1, 0, ..., 0, 1) in the last r+1 slots, then
    rebalance the first k-r slots.  None when e_1 >= -2, when r = 0, or when
    the resulting stratum is empty.
    """
    if c.cls is not ComponentClass.I:
        raise WrongClass(f"component {c.sequence} is of type {c.cls.value}")
    e = c.sequence
    k, r = len(e), c.r
    if e.first >= -2 or r < 1:
        return None
    raised = list(e.entries[: k - r - 1]) + [-1] + [0] * (r - 1) + [1]
    head = list(balanced_fill(sum(raised[: k - r]), k - r))
    rebalanced = make_sequence(head + raised[k - r :], e.params)
    before = SplittingSequence(tuple(raised), e.params)
    if not dominates(before, rebalanced) or rebalanced.at(k - r) >= -1:
        raise InternalError(f"second-component construction failed for {e}")
    if u_invariant(rebalanced) > e.params.g:
        return None
    comp = make_component(rebalanced, r)
    if comp is None:
        raise InternalError(f"{rebalanced} is not a component of W^{r}")
    return comp


def type_i_unique_singular_witness(c: Component) -> Optional[SplittingSequence]:
    """A singular point of W^r_d lying on no component but ``c``.

    Needs a type I component whose general point has e_1 = e_2 = -2.  With
    l the last index where e_l = -2 the witness is
    (-3, -2^{l-2}, -1^{k-r-l+1}, 0^{r-1}, 1).  Returns None when its stratum
    is empty (u > g).
    """
    if c.cls is not ComponentClass.I:
        raise WrongClass(f"component {c.sequence} is of type {c.cls.value}")
    e = c.sequence
    k, r = len(e), c.r
    if e.at(1) != -2 or e.at(2) != -2:
        raise PreconditionFail(f"{e} does not start with -2, -2")
    last_two = max(i for i in range(1, k + 1) if e.at(i) == -2)
    w = [-3] + [-2] * (last_two - 2) + [-1] * (k - r - last_two + 1) + [0] * (r - 1) + [1]
    witness = make_sequence(w, e.params)
    if u_invariant(witness) > e.params.g:
        return None
    if not dominates(witness, e) or petri_injective(witness):
        raise InternalError(f"witness {witness} fails its defining properties")
    if len(components_containing(witness, r)) != 1:
        raise InternalError(f"witness {witness} lies on several components")
    return witness


def type_ii_smooth(c: Component, p: SplittingSequence) -> Verdict:
    if c.cls is not ComponentClass.II:
        raise WrongClass(f"component {c.sequence} is of type {c.cls.value}")
    e = c.sequence
    big_e = completion_threshold_E(e)
    if big_e is None or not in_open_stratum(e, big_e, p):
        raise PreconditionFail(f"{p} is not in the open part of the closure of {e}")
    ambient = Ambient.brill_noether(c.r, c.params.d)
    idx = len(e) - c.btype.m1 - c.btype.m2
    if p.at(idx) <= -2:
        return Verdict(p, Status.SMOOTH, ambient, Justification.TYPE_II_GAP)
    return _unknown(p, ambient, f"entry {idx} of {p} is {p.at(idx)} > -2")


# --------------------------------------------------------------------------
# Translation by the pencil


@dataclass(frozen=True)
class TranslateDichotomy:
    """Outcome when p has a -2 entry but no -1 entry: the translate of the
    component through p is not a component of W^s_{d+k}, or p+1 lies on two
    components.  ``alternative`` is the type whose translate contains p+1 but
    not the translated component."""

    point: SplittingSequence
    ambient: Ambient
    alternative: SplittingSequence
    alternative_translate: SplittingSequence
    i0: int
    j0: int
    alternatives: tuple = field(
        default=(
            "the translated component is not an irreducible component of W^s_{d+k}",
            "the translated point lies on two irreducible components of W^s_{d+k}",
        )
    )

    def to_dict(self) -> dict:
        return {
            "point": self.point.to_list(),
            "ambient": self.ambient.to_dict(),
            "status": "Dichotomy",
            "justification": Justification.TRANSLATE_DICHOTOMY.value,
            "alternative": self.alternative.to_list(),
            "alternative_translate": self.alternative_translate.to_list(),
            "i0": self.i0,
            "j0": self.j0,
            "alternatives": list(self.alternatives),
        }


def translate_smoothness(p: SplittingSequence, r: int):
    """What smoothness of W^r_d at p says about W^s_{d+k} at p + 1.

    Requires r > d - g and a certified smooth verdict for p in W^r_d.
    Returns a Verdict about the translate, or a TranslateDichotomy.
    """
    params = p.params
    if r <= params.d - params.g:
        raise PreconditionFail(f"need r > d - g = {params.d - params.g}")
    base = classify_in_W(p, r)
    if not base.smooth:
        raise PreconditionFail(f"{p} is not certified smooth in W^{r}_{params.d}")
    moved = p.shift(1)
    d_new = params.d + params.k
    if -1 in p.entries:
        nonneg = sum(1 for x in p.entries if x >= 0)
        return Verdict(
            moved,
            Status.SINGULAR,
            Ambient.brill_noether(r + nonneg, d_new),
            Justification.TRANSLATE_RANK_JUMP,
            Reason.HIGHER_RANK,
            notes=(f"h0(L+M) = {h0(p, 1)} > r+1+#{{e_i >= 0}} = {r + 1 + nonneg}",),
        )
    s = h0(p, 1) - 1
    if -2 in p.entries:
        k = len(p)
        i0 = max(i for i in range(1, k + 1) if p.at(i) == -2)
        j0 = min(i for i in range(1, k + 1) if p.at(i) == p.last)
        alt = list(p.entries)
        alt[i0 - 1] = -1
        alt[j0 - 1] = p.last - 1
        alternative = make_sequence(alt, params)
        return TranslateDichotomy(
            point=moved,
            ambient=Ambient.brill_noether(s, d_new),
            alternative=alternative,
            alternative_translate=alternative.shift(1),
            i0=i0,
            j0=j0,
        )
    return Verdict(moved, Status.SMOOTH, Ambient.brill_noether(s, d_new), Justification.PENCIL_TRANSLATE)
