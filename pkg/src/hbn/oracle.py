"""Brute-force cross-checks of the formula modules.

Each suite recomputes its expected values from definitions only: pairwise
gap sums, prefix sums, exhaustive search over candidate fills.  None of the
helpers below import from the modules they check; the functions under test
are called only to obtain the value being checked.  Everything is naive on
purpose.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from . import completion, components, core, smoothness, strata
from .core import CurveParams, SplittingSequence


@dataclass
class VerificationReport:
    suite: str
    cases: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, label, expected, got):
        self.cases += 1
        if expected != got:
            self.failures.append((label, expected, got))

    def merge(self, other: "VerificationReport"):
        self.cases += other.cases
        self.failures.extend((f"{other.suite}: {lbl}", exp, got) for lbl, exp, got in other.failures)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "cases": self.cases,
            "passed": self.passed,
            "failures": [
                {"input": str(lbl), "expected": _plain(exp), "got": _plain(got)}
                for lbl, exp, got in self.failures
            ],
        }


def _plain(v):
    if isinstance(v, SplittingSequence):
        return v.to_list()
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, (int, str, bool)) or v is None:
        return v
    return str(v)


# ---------------------------------------------------------------- naive helpers


def naive_u(xs) -> int:
    # h1 of the endomorphism bundle: every ordered pair, no sorting assumed
    return sum(max(0, a - b - 1) for a in xs for b in xs)


def naive_h0(xs, n: int) -> int:
    total = 0
    for x in xs:
        if x + n >= 0:
            total += x + n + 1
    return total


def naive_leq(p, e) -> bool:
    return all(sum(p[:l]) <= sum(e[:l]) for l in range(1, len(p) + 1))


@lru_cache(maxsize=None)
def naive_types(k: int, total: int, g: int, u_max: int) -> tuple:
    """Sorted tuples with the given sum and u <= u_max.

    Every nondecreasing tuple in a generous window is generated (a gap
    e_k - e_1 > u_max + 1 already forces u > u_max) and then filtered by u;
    the only pruning is on the sum.
    """
    mean = total // k
    lo, hi = mean - u_max - 2, mean + u_max + 3
    out = []

    def rec(prefix, rem, slots):
        if slots == 0:
            if rem == 0 and naive_u(prefix) <= u_max:
                out.append(tuple(prefix))
            return
        start = prefix[-1] if prefix else lo
        for x in range(start, hi + 1):
            if x * slots > rem:
                break
            if rem - x < (slots - 1) * x or rem - x > (slots - 1) * hi:
                continue
            rec(prefix + [x], rem - x, slots - 1)

    rec([], total, k)
    return tuple(sorted(out))


def naive_completion(xs, lvl: int) -> tuple:
    """Balanced completion found by search: every way to rewrite the entries
    below ``lvl`` as a nondecreasing tuple with the same sum and spread <= 1."""
    keep = [x for x in xs if x >= lvl]
    low = [x for x in xs if x < lvl]
    if not low:
        return tuple(xs)
    s, n = sum(low), len(low)
    hits = set()
    for base in range(min(low), max(low) + 1):
        for ups in range(n + 1):
            cand = (base,) * (n - ups) + (base + 1,) * ups
            if sum(cand) == s:
                hits.add(cand)
    assert len(hits) == 1, hits
    return hits.pop() + tuple(keep)


def naive_open_member(e, lvl: int, p) -> bool:
    idx = next((i for i, x in enumerate(e) if x >= lvl), len(e))
    target = naive_completion(e, lvl)
    return (
        naive_leq(p, target)
        and tuple(p[idx:]) == tuple(e[idx:])
        and all(x < lvl for x in p[:idx])
    )


def naive_balanced_plus_balanced(xs):
    neg = [x for x in xs if x < 0]
    pos = [x for x in xs if x >= 0]
    if not neg or not pos or max(neg) - min(neg) > 1 or max(pos) - min(pos) > 1:
        return None
    return -max(neg), min(pos), pos.count(min(pos)), pos.count(min(pos) + 1)


def naive_components(k, total, g, r) -> list:
    out = []
    for xs in naive_types(k, total, g, g):
        parsed = naive_balanced_plus_balanced(xs)
        if parsed is None:
            continue
        b, a, m1, m2 = parsed
        if m1 * (a + 1) + m2 * (a + 2) != r + 1:
            continue
        if b >= 2 or (a, b, m2) == (0, 1, 0):
            out.append(xs)
    return out


# ---------------------------------------------------------------- suites


def verify_level_steps(params: CurveParams, u_max: int, rhs=None) -> VerificationReport:
    """u(e[lvl-1]) - u(e[lvl]) from explicit completions versus the closed
    form, for every type and every level e_1 + 2 <= lvl <= e_k."""
    rhs = rhs or smoothness.level_step_equations
    rep = VerificationReport("level_steps")
    for xs in naive_types(params.k, params.total, params.g, u_max):
        e = SplittingSequence(xs, params)
        for lvl in range(xs[0] + 2, xs[-1] + 1):
            expected = naive_u(naive_completion(xs, lvl - 1)) - naive_u(naive_completion(xs, lvl))
            rep.check((xs, lvl), expected, rhs(e, lvl))
    return rep


def verify_completions(params: CurveParams, u_max: int) -> VerificationReport:
    rep = VerificationReport("completions")
    for xs in naive_types(params.k, params.total, params.g, u_max):
        e = SplittingSequence(xs, params)
        for lvl in range(xs[0] - 1, xs[-1] + 3):
            rep.check((xs, lvl), naive_completion(xs, lvl), completion.completed(e, lvl).entries)
    return rep


def verify_enumeration(params: CurveParams, u_max: int) -> VerificationReport:
    rep = VerificationReport("enumeration")
    expected = list(naive_types(params.k, params.total, params.g, u_max))
    got = [e.entries for e in strata.enumerate_types(params, u_max).types]
    rep.check(params.to_dict(), expected, got)
    return rep


def verify_v_equivalence(params: CurveParams, r: int, u_max=None) -> VerificationReport:
    """Section-count description of V against open-stratum membership, over
    every component of W^r_d and every type with u <= u_max."""
    u_max = params.g if u_max is None else u_max
    rep = VerificationReport("v_equivalence")
    comps = naive_components(params.k, params.total, params.g, r)
    rep.check(("components", r), comps, [c.btype.expand() for c in components.components_of_W(params, r)])
    types = naive_types(params.k, params.total, params.g, u_max)
    for c in components.components_of_W(params, r):
        e = c.sequence.entries
        for xs in types:
            p = SplittingSequence(xs, params)
            expected = naive_open_member(e, 0, xs)
            try:
                got = components.in_V(p, c)
            except Exception as exc:  # an internal mismatch is a failure, not a crash
                got = f"{type(exc).__name__}: {exc}"
            rep.check((e, xs), expected, got)
    return rep


def verify_dominance_axioms(params: CurveParams, u_max: int) -> VerificationReport:
    rep = VerificationReport("dominance_axioms")
    seqs = [SplittingSequence(xs, params) for xs in naive_types(params.k, params.total, params.g, u_max)]
    n = len(seqs)
    leq = [[core.dominates(seqs[i], seqs[j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        rep.check(("reflexive", seqs[i].entries), True, leq[i][i])
        for j in range(n):
            rep.check(("matches prefix sums", seqs[i].entries, seqs[j].entries),
                      naive_leq(seqs[i].entries, seqs[j].entries), leq[i][j])
            if i != j and leq[i][j]:
                rep.check(("antisymmetric", seqs[i].entries, seqs[j].entries), False, leq[j][i])
                for m in range(n):
                    if leq[j][m] and not leq[i][m]:
                        rep.check(("transitive", seqs[i].entries, seqs[j].entries, seqs[m].entries), True, False)
    # down-set closure of specializations
    for e in seqs:
        down = set(p.entries for p in strata.specializations(e, u_max))
        for p in seqs:
            if p.entries in down:
                for q in seqs:
                    if naive_leq(q.entries, p.entries):
                        rep.check(("down-set", e.entries, p.entries, q.entries), True, q.entries in down)
    return rep


def verify_pencil_inequality(params: CurveParams, u_max: int, m_max: int) -> VerificationReport:
    """Image rank of the multiplication map never exceeds h0(L+mM); it is
    equal exactly when no entry lies in [-m, -1]."""
    rep = VerificationReport("pencil_inequality")
    for xs in naive_types(params.k, params.total, params.g, u_max):
        e = SplittingSequence(xs, params)
        for m in range(1, m_max + 1):
            got = core.pencil_trick_image_dim(e, m)
            bound = naive_h0(xs, m)
            rep.check((xs, m, "<= h0"), True, got <= bound)
            equal_expected = not any(-m <= x <= -1 for x in xs)
            rep.check((xs, m, "equality"), equal_expected, got == bound)
    return rep


def verify_run_splitting(params: CurveParams, u_max: int) -> VerificationReport:
    rep = VerificationReport("run_splitting")
    for xs in naive_types(params.k, params.total, params.g, u_max):
        e = SplittingSequence(xs, params)
        for p, l in smoothness.run_smoothing_pairs(e):
            rep.check((xs, p.entries, l), l * l, naive_u(p.entries) - naive_u(xs))
            rep.check((xs, p.entries, "below"), True, naive_leq(p.entries, xs))
    return rep


def verify_threshold(params: CurveParams, r: int, include_type_i: bool = True) -> VerificationReport:
    """On V of a component with b >= 2, h0(L+M) >= 2r+2-l, with strict
    inequality exactly when a second component contains the point.

    Type I components with b >= 2 are included by default.  The equivalence
    fails on them: a point with a -1 entry sits above the threshold while
    lying on one component.  Pass ``include_type_i=False`` to restrict to
    types II and III.
    """
    rep = VerificationReport("v_threshold")
    types = naive_types(params.k, params.total, params.g, params.g)
    comps = naive_components(params.k, params.total, params.g, r)
    for c in components.components_of_W(params, r):
        if c.btype.b < 2:
            continue
        if c.cls is components.ComponentClass.I and not include_type_i:
            continue
        thr = 2 * r + 2 - c.l
        for xs in types:
            if not naive_open_member(c.sequence.entries, 0, xs):
                continue
            value = naive_h0(xs, 1)
            n_comp = sum(1 for z in comps if naive_leq(xs, z))
            rep.check((c.sequence.entries, xs, ">= threshold"), True, value >= thr)
            rep.check((c.sequence.entries, xs, "above iff two"), value > thr, n_comp >= 2)
    return rep


# ---------------------------------------------------------------- worked examples


def _seq(xs, g, k, d) -> SplittingSequence:
    return core.make_sequence(xs, CurveParams(g, k, d))


def _block_completions(rep):
    e = _seq((-4, -3, -1, -1, 1, 3), 20, 6, 20)
    cases = [
        (4, 7, (-1, -1, -1, -1, -1, 0)),
        (2, 6, (-2, -2, -2, -1, -1, 3)),
        (0, 5, (-3, -2, -2, -2, 1, 3)),
        (-1, 3, (-4, -3, -1, -1, 1, 3)),
        (-3, 2, (-4, -3, -1, -1, 1, 3)),
        (-4, 1, (-4, -3, -1, -1, 1, 3)),
    ]
    for lvl, idx, expected in cases:
        res = completion.complete(e, lvl)
        rep.check(("completion", lvl), expected, res.completed.entries)
        rep.check(("threshold index", lvl), idx, res.threshold_index)
    # levels sharing a completion
    for a, b in ((2, 3), (0, 1), (-2, -1), (5, 9)):
        rep.check(("same completion", a, b), completion.completed(e, a), completion.completed(e, b))


def _block_open_strata(rep):
    e = _seq((-4, -3, -1, -1, 1, 3), 20, 6, 20)
    primes = [
        ((-4, -2, -2, -1, 1, 3), True),
        ((-3, -3, -3, 0, 1, 3), True),
        ((-3, -2, -2, -2, 0, 4), False),
        ((-4, -2, -2, -2, 2, 3), False),
        ((-4, -3, -3, 1, 1, 3), False),
    ]
    target = completion.completed(e, 1)
    for xs, expected in primes:
        p = _seq(xs, 20, 6, 20)
        rep.check(("below e[1]", xs), True, core.dominates(p, target))
        rep.check(("open at level 1", xs), expected, completion.in_open_stratum(e, 1, p))


def _block_level_sensitivity(rep):
    e = _seq((-4, -3, -1, -1, 1, 3), 20, 6, 20)
    p = _seq((-3, -3, -3, 0, 1, 3), 20, 6, 20)
    rep.check("e[0] == e[1]", True, completion.completed(e, 0) == completion.completed(e, 1))
    rep.check("open at level 1", True, completion.in_open_stratum(e, 1, p))
    rep.check("open at level 0", False, completion.in_open_stratum(e, 0, p))


def _block_closure_smoothness(rep):
    e = _seq((-4, -3, -1, -1, 1, 3), 20, 6, 20)
    S = smoothness.Status
    rep.check("e == e[-1]", e, completion.completed(e, -1))
    cases = [
        (-1, (-5, -2, -1, -1, 1, 3), S.SMOOTH),
        (1, (-4, -2, -2, -1, 1, 3), S.SMOOTH),
        (1, (-3, -3, -3, 0, 1, 3), S.SMOOTH),
        (1, (-4, -3, -3, 1, 1, 3), S.UNKNOWN),
    ]
    for lvl, xs, expected in cases:
        v = smoothness.certified_smooth_in_closure(e, lvl, _seq(xs, 20, 6, 20))
        rep.check(("closure verdict", lvl, xs), expected, v.status)


def _block_theta_divisor(rep):
    for k in range(4, 11):
        witness_u = 2 * k - 1
        for g in range(max(4, witness_u - 2), witness_u + 3):
            params = CurveParams(g, k, g - 1)
            comps = components.components_of_W(params, 1)
            generic = (-2, -2) + (-1,) * (k - 4) + (0, 0)
            rep.check(("components", k, g), [generic], [c.btype.expand() for c in comps])
            rep.check(("dim", k, g), g - 4, comps[0].dim)
            rep.check(("type", k, g), components.ComponentClass.I, comps[0].cls)
            w = core.make_sequence((-3,) + (-1,) * (k - 2) + (1,), params)
            rep.check(("witness u", k), witness_u, core.u_invariant(w))
            nonempty = core.dim_sigma(w) is not None
            rep.check(("singular stratum nonempty", k, g), g >= witness_u, nonempty)
            if nonempty:
                v = smoothness.classify_in_W(w, 1)
                rep.check(("witness singular", k, g), smoothness.Reason.PETRI_KERNEL, v.reason)
                rep.check(("witness stratum dim", k, g), g - witness_u, core.dim_sigma(w))


def _block_second_example(rep):
    for k in range(5, 9):
        for g in (2 * k - 2, 2 * k - 1, 2 * k + 1):
            params = CurveParams(g, k, g - 2)
            generic = (-2, -2, -2) + (-1,) * (k - 5) + (0, 0)
            comp = components.make_component(core.make_sequence(generic, params), 1)
            rep.check(("component", k, g), True, comp is not None)
            if comp is None:
                continue
            rep.check(("dim", k, g), g - 6, comp.dim)
            rep.check(("type", k, g), components.ComponentClass.I, comp.cls)
            w = smoothness.type_i_unique_singular_witness(comp)
            expected = (-3, -2) + (-1,) * (k - 3) + (1,) if g >= 2 * k - 1 else None
            rep.check(("witness", k, g), expected, None if w is None else w.entries)
            if w is not None:
                rep.check(("witness dim", k, g), g - (2 * k - 1), core.dim_sigma(w))


def _block_third_example(rep):
    generic = (-2, -2, -2, -2, 0, 0, 0)
    for g in range(12, 20):
        params = CurveParams(g, 7, g - 2)
        comps = components.components_of_W(params, 2)
        found = [c for c in comps if c.btype.expand() == generic]
        rep.check(("component", g), 1, len(found))
        if not found:
            continue
        c = found[0]
        rep.check(("dim", g), g - 12, c.dim)
        rep.check(("type", g), components.ComponentClass.I, c.cls)
        w = smoothness.type_i_unique_singular_witness(c)
        expected = (-3, -2, -2, -1, -1, 0, 1) if g >= 15 else None
        rep.check(("witness", g), expected, None if w is None else w.entries)
        if w is not None:
            rep.check(("components through witness", g), 1, len(components.components_containing(w, 2)))


def _block_last_example(rep):
    g, k, d, r = 50, 6, 45, 4
    params = CurveParams(g, k, d)
    comps = {c.btype.expand(): c for c in components.components_of_W(params, r)}
    z = comps.get((-4, -3, -3, -3, 1, 2))
    z2 = comps.get((-4, -4, -4, 0, 1, 1))
    rep.check("main component present", True, z is not None)
    rep.check("second component present", True, z2 is not None)
    if z is None or z2 is None:
        return
    rep.check("dim main", 20, z.dim)
    rep.check("dim second", 17, z2.dim)
    rep.check("u main", 30, core.u_invariant(z.sequence))
    rep.check("u second", 33, core.u_invariant(z2.sequence))
    rep.check("h0(L)", 5, core.h0(z.sequence, 0))
    rep.check("h0(L+M)", 7, core.h0(z.sequence, 1))
    rep.check("h0(L-M)", 3, core.h0(z.sequence, -1))
    rep.check("l", 3, z.l)
    rep.check("threshold", 7, components.threshold(z))
    rep.check("V label", (4, 45, 3), components.v_parameters(z))

    singular = core.make_sequence((-4, -4, -4, -1, 1, 2), params)
    smooth = core.make_sequence((-4, -4, -3, -2, 1, 2), params)
    rep.check("h0(L'+M)", 8, core.h0(singular, 1))
    rep.check("h0(L''+M)", 7, core.h0(smooth, 1))
    rep.check("dim stratum e'", 14, core.dim_sigma(singular))
    rep.check("dim stratum e''", 18, core.dim_sigma(smooth))
    rep.check("e' in V", True, components.in_V(singular, z))
    rep.check("e'' in V", True, components.in_V(smooth, z))
    rep.check("e' below second component", True, core.dominates(singular, z2.sequence))

    v1 = smoothness.classify_on_v_locus(z, singular)
    rep.check("e' verdict", smoothness.Status.SINGULAR, v1.status)
    rep.check("e' witness", True, z2.sequence in v1.witnesses)
    v2 = smoothness.classify_on_v_locus(z, smooth)
    rep.check("e'' verdict", smoothness.Status.SMOOTH, v2.status)
    v3 = smoothness.certified_smooth_in_closure(z.sequence, 0, singular)
    rep.check("e' smooth in closure of e", smoothness.Status.SMOOTH, v3.status)
    rep.check("e' not in W^5", False, components.w_membership(singular, 5))


EXAMPLE_BLOCKS = {
    "completions": _block_completions,
    "open_strata": _block_open_strata,
    "level_sensitivity": _block_level_sensitivity,
    "closure_smoothness": _block_closure_smoothness,
    "theta_divisor": _block_theta_divisor,
    "second_example": _block_second_example,
    "third_example": _block_third_example,
    "last_example": _block_last_example,
}


def replay_worked_examples(block=None) -> VerificationReport:
    """Replay the fixed list of worked numerical examples.

    ``block`` selects one entry of EXAMPLE_BLOCKS; default runs all of them.
    """
    names = list(EXAMPLE_BLOCKS) if block is None else [block]
    rep = VerificationReport("replay" if block is None else f"replay:{block}")
    for name in names:
        sub = VerificationReport(name)
        EXAMPLE_BLOCKS[name](sub)
        rep.merge(sub)
    return rep


SUITES = {
    "levels": lambda p, r, u, m: verify_level_steps(p, u),
    "completions": lambda p, r, u, m: verify_completions(p, u),
    "enumeration": lambda p, r, u, m: verify_enumeration(p, u),
    "v": lambda p, r, u, m: _over_ranks(verify_v_equivalence, p, r, u),
    "dominance": lambda p, r, u, m: verify_dominance_axioms(p, u),
    "pencil": lambda p, r, u, m: verify_pencil_inequality(p, u, m),
    "runs": lambda p, r, u, m: verify_run_splitting(p, u),
    "threshold": lambda p, r, u, m: _over_ranks(verify_threshold, p, r, None),
}


def _ranks(params: CurveParams, r):
    if r is not None:
        return [r]
    top = max((naive_h0(xs, 0) for xs in naive_types(params.k, params.total, params.g, params.g)), default=0)
    return list(range(0, top))


def _over_ranks(fn, params, r, u_max):
    rep = VerificationReport(fn.__name__.replace("verify_", ""))
    for rr in _ranks(params, r):
        sub = fn(params, rr) if u_max is None else fn(params, rr, u_max)
        rep.merge(sub)
    return rep


def run_suite(name: str, params: CurveParams, r=None, u_max=None, m_max: int = 3) -> VerificationReport:
    if name not in SUITES:
        raise KeyError(name)
    u_max = params.g if u_max is None else u_max
    return SUITES[name](params, r, u_max, m_max)
