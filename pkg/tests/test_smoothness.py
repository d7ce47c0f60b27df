import pytest

from hbn import completion, components, core, smoothness, strata
from hbn.core import CurveParams
from hbn.errors import (
    DegenerateSequence,
    NotInV,
    PreconditionFail,
    RangeError,
    RankTooLow,
    WrongClass,
)
from hbn.smoothness import Justification, Reason, Status

from conftest import EX31, LAST, seq

THETA6 = CurveParams(20, 6, 19)


def component(xs, params, r):
    c = components.make_component(seq(xs, params), r)
    assert c is not None
    return c


class TestLocalEquations:
    def test_zero_step(self, ex31):
        # no entry equals 2, so levels 2 and 3 share a completion
        assert smoothness.level_step_equations(ex31, 3) == 0
        assert smoothness.local_equation_count(ex31, 2, 3) == 0

    def test_count_against_u(self, ex31):
        a = seq((-3, -2, -2, -2, 1, 3), EX31)
        b = seq((-2, -2, -2, -1, -1, 3), EX31)
        assert smoothness.local_equation_count(ex31, 0, 2) == core.u_invariant(a) - core.u_invariant(b)

    def test_telescoping(self, ex31):
        total = sum(smoothness.level_step_equations(ex31, lvl) for lvl in (0, 1, 2, 3))
        assert total == smoothness.local_equation_count(ex31, -1, 3)

    def test_range(self, ex31):
        with pytest.raises(RangeError):
            smoothness.local_equation_count(ex31, -3, 2)
        with pytest.raises(RangeError):
            smoothness.local_equation_count(ex31, 2, 2)

    def test_last_example_step(self):
        z = seq((-4, -3, -3, -3, 1, 2), LAST)
        u0 = core.u_invariant(completion.completed(z, 0))
        u1 = core.u_invariant(completion.completed(z, 1))
        assert smoothness.level_step_equations(z, 1) == u0 - u1

    def test_fitting_levels(self, ex31):
        levels = smoothness.local_fitting_levels(ex31)
        assert levels.sorted() == [-3, -1, 1]
        assert levels.includes_top_level
        with pytest.raises(DegenerateSequence):
            smoothness.local_fitting_levels(seq((-1, -1, -1, -1, -1, 0), EX31))


class TestRuns:
    def test_isolated_pair(self):
        params = CurveParams(20, 4, 19)
        e = seq((-4, -1, -1, 2), params)
        pairs = smoothness.run_smoothing_pairs(e)
        assert [(p.entries, l) for p, l in pairs] == [((-4, -2, 0, 2), 1)]
        assert core.u_invariant(pairs[0][0]) == core.u_invariant(e) + 1

    def test_not_isolated(self):
        params = CurveParams(20, 4, 21)
        assert smoothness.run_smoothing_pairs(seq((-2, -1, -1, 2), params)) == []

    def test_long_run(self):
        params = CurveParams(20, 5, 15)
        e = seq((-3, -3, -3, -3, 3), params)
        out = {(p.entries, l) for p, l in smoothness.run_smoothing_pairs(e)}
        assert out == {((-4, -3, -3, -2, 3), 1), ((-4, -4, -2, -2, 3), 2)}
        for p, l in out:
            assert core.u_invariant(seq(p, params)) - core.u_invariant(e) == l * l


class TestClosure:
    def test_worked_cases(self, ex31):
        v = smoothness.certified_smooth_in_closure(ex31, -1, seq((-5, -2, -1, -1, 1, 3), EX31))
        assert v.status is Status.SMOOTH and v.ambient.kind == "degeneracy"
        v = smoothness.certified_smooth_in_closure(ex31, 1, seq((-4, -3, -3, 1, 1, 3), EX31))
        assert v.status is Status.UNKNOWN and v.justification is None

    def test_v_locus(self):
        z = seq((-4, -3, -3, -3, 1, 2), LAST)
        v = smoothness.certified_smooth_in_closure(z, 0, seq((-4, -4, -4, -1, 1, 2), LAST))
        assert v.status is Status.SMOOTH
        assert v.justification is Justification.V_LOCUS_SMOOTH
        assert v.ambient.to_dict() == {"kind": "DegeneracyScheme", "sequence": [-4, -3, -3, -3, 1, 2]}

    def test_precondition(self, ex31):
        with pytest.raises(PreconditionFail):
            smoothness.certified_smooth_in_closure(ex31, 0, seq((-1, -1, -1, -1, -1, 0), EX31))


class TestClassifyInW:
    def test_theta_singular_point(self):
        params = CurveParams(11, 6, 10)
        v = smoothness.classify_in_W(seq((-3, -1, -1, -1, -1, 1), params), 1)
        assert v.status is Status.SINGULAR and v.reason is Reason.PETRI_KERNEL
        assert v.ambient.to_dict() == {"kind": "BrillNoetherScheme", "r": 1, "d": 10}

    def test_theta_generic(self):
        v = smoothness.classify_in_W(seq((-2, -2, -1, -1, 0, 0), THETA6), 1)
        assert v.status is Status.SMOOTH and v.justification is Justification.FREE_FROM_PENCIL

    def test_higher_rank(self):
        p = seq((-4, -4, -4, -1, 1, 2), LAST)
        v = smoothness.classify_in_W(p, 3)
        assert v.reason is Reason.HIGHER_RANK

    def test_rank_too_low(self):
        with pytest.raises(RankTooLow):
            smoothness.classify_in_W(seq((-4, -4, -4, -1, 1, 2), LAST), 5)

    def test_last_example(self):
        v = smoothness.classify_in_W(seq((-4, -4, -4, -1, 1, 2), LAST), 4)
        assert v.status is Status.SINGULAR and v.reason is Reason.MULTIPLE_COMPONENTS
        assert seq((-4, -4, -4, 0, 1, 1), LAST) in v.witnesses
        v = smoothness.classify_in_W(seq((-4, -4, -3, -2, 1, 2), LAST), 4)
        assert v.status is Status.SMOOTH and v.justification is Justification.V_THRESHOLD

    def test_unique_witness_tag(self):
        params = CurveParams(15, 7, 13)
        v = smoothness.classify_in_W(seq((-3, -2, -2, -1, -1, 0, 1), params), 2)
        assert v.status is Status.SINGULAR
        assert v.justification is Justification.UNIQUE_COMPONENT_WITNESS

    def test_verdict_json(self):
        v = smoothness.classify_in_W(seq((-2, -2, -1, -1, 0, 0), THETA6), 1)
        d = v.to_dict()
        assert set(d) >= {"point", "ambient", "status", "justification", "witnesses"}
        assert d["status"] == "CertifiedSmooth"


class TestThreshold:
    def test_examples(self):
        z = component((-4, -3, -3, -3, 1, 2), LAST, 4)
        v = smoothness.classify_on_v_locus(z, seq((-4, -4, -3, -2, 1, 2), LAST))
        assert v.status is Status.SMOOTH and v.ambient.kind == "brill_noether"
        v = smoothness.classify_on_v_locus(z, seq((-4, -4, -4, -1, 1, 2), LAST))
        assert v.status is Status.SINGULAR
        assert seq((-4, -4, -4, 0, 1, 1), LAST) in v.witnesses
        assert smoothness.classify_on_v_locus(z, z.sequence).status is Status.SMOOTH

    def test_errors(self):
        z = component((-4, -3, -3, -3, 1, 2), LAST, 4)
        with pytest.raises(NotInV):
            smoothness.classify_on_v_locus(z, seq((-4, -4, -4, 0, 1, 1), LAST))
        theta = component((-2, -2, -1, -1, 0, 0), THETA6, 1)
        with pytest.raises(WrongClass):
            smoothness.classify_on_v_locus(theta, theta.sequence)

    @pytest.mark.parametrize("g,k,d", [(12, 5, 10), (12, 4, 9), (14, 6, 11), (16, 5, 15)])
    def test_singular_iff_two_components(self, g, k, d):
        params = CurveParams(g, k, d)
        types = strata.enumerate_types(params).types
        for r in range(0, 8):
            for c in components.components_of_W(params, r):
                if c.cls is components.ComponentClass.I or c.btype.b < 2:
                    continue
                for p in types:
                    if not components.in_V(p, c):
                        continue
                    v = smoothness.classify_on_v_locus(c, p)
                    assert v.singular == (len(components.components_containing(p, r)) >= 2)


class TestTypeI:
    def test_smooth_locus(self):
        params = CurveParams(11, 6, 10)
        c = component((-2, -2, -1, -1, 0, 0), params, 1)
        assert smoothness.type_i_smooth_locus(c, c.sequence).status is Status.SMOOTH
        v = smoothness.type_i_smooth_locus(c, seq((-3, -1, -1, -1, -1, 1), params))
        assert v.reason is Reason.PETRI_KERNEL
        v = smoothness.type_i_smooth_locus(c, seq((-3, -2, -1, -1, 0, 1), params))
        assert v.reason is Reason.HIGHER_RANK
        z = component((-4, -3, -3, -3, 1, 2), LAST, 4)
        with pytest.raises(WrongClass):
            smoothness.type_i_smooth_locus(z, z.sequence)

    def test_second_component(self):
        assert smoothness.type_i_second_component(component((-2, -2, -1, -1, 0, 0), THETA6, 1)) is None
        c = component((-10, 0, 0, 0, 0, 0), LAST, 4)
        second = smoothness.type_i_second_component(c)
        assert second.btype.expand() == (-6, -5, 0, 0, 0, 1)
        assert second.r == 4 and second.dim == 12
        assert second.btype.m1 * (second.btype.a + 1) + second.btype.m2 * (second.btype.a + 2) == 5

    def test_unique_witness(self):
        for g in range(12, 19):
            params = CurveParams(g, 7, g - 2)
            c = component((-2, -2, -2, -2, 0, 0, 0), params, 2)
            w = smoothness.type_i_unique_singular_witness(c)
            if g >= 15:
                assert w.entries == (-3, -2, -2, -1, -1, 0, 1)
                assert len(components.components_containing(w, 2)) == 1
            else:
                assert w is None

    def test_second_example_witness(self):
        for k in range(5, 9):
            g = 2 * k - 1
            c = component((-2, -2, -2) + (-1,) * (k - 5) + (0, 0), CurveParams(g, k, g - 2), 1)
            w = smoothness.type_i_unique_singular_witness(c)
            assert w.entries == (-3, -2) + (-1,) * (k - 3) + (1,)

    def test_witness_precondition(self):
        c = component((-10, 0, 0, 0, 0, 0), LAST, 4)
        with pytest.raises(PreconditionFail):
            smoothness.type_i_unique_singular_witness(c)


class TestTypeII:
    def test_gap_criterion(self):
        c = component((-4, -4, -4, 0, 1, 1), LAST, 4)
        assert c.cls is components.ComponentClass.II
        v = smoothness.type_ii_smooth(c, c.sequence)
        assert v.status is Status.SMOOTH and v.justification is Justification.TYPE_II_GAP
        v = smoothness.type_ii_smooth(c, seq((-10, -1, -1, 0, 1, 1), LAST))
        assert v.status is Status.UNKNOWN

    def test_wrong_class(self):
        z = component((-4, -3, -3, -3, 1, 2), LAST, 4)
        with pytest.raises(WrongClass):
            smoothness.type_ii_smooth(z, z.sequence)


class TestTranslate:
    def test_rank_jump(self):
        v = smoothness.translate_smoothness(seq((-2, -2, -1, -1, 0, 0), THETA6), 1)
        assert v.status is Status.SINGULAR and v.reason is Reason.HIGHER_RANK
        assert v.ambient.to_dict() == {"kind": "BrillNoetherScheme", "r": 3, "d": 25}

    def test_dichotomy(self):
        params = CurveParams(13, 7, 11)
        out = smoothness.translate_smoothness(seq((-2, -2, -2, -2, 0, 0, 0), params), 2)
        assert isinstance(out, smoothness.TranslateDichotomy)
        assert (out.i0, out.j0) == (4, 5)
        assert out.alternative.entries == (-2, -2, -2, -1, -1, 0, 0)
        assert sum(out.alternative) == params.total
        assert len(out.alternatives) == 2

    def test_pencil_translate(self):
        z = seq((-4, -3, -3, -3, 1, 2), LAST)
        v = smoothness.translate_smoothness(z, 4)
        assert v.status is Status.SMOOTH
        assert v.point.entries == (-3, -2, -2, -2, 2, 3)
        assert v.ambient.r == core.h0(z, 1) - 1

    def test_nonnegative_sequence_fails_precondition(self):
        # all entries >= 0 forces r = d - g
        with pytest.raises(PreconditionFail):
            smoothness.translate_smoothness(seq((0, 0, 0, 1), CurveParams(6, 4, 10)), 4)


@pytest.mark.parametrize("g,k,d", [(10, 4, 9), (12, 5, 10), (12, 5, 12), (14, 6, 11), (11, 3, 10)])
def test_verdicts_never_contradict(g, k, d):
    """Every route to a verdict in W^r_d agrees wherever two of them apply."""
    params = CurveParams(g, k, d)
    for p in strata.enumerate_types(params).types:
        top = core.h0(p, 0) - 1
        for r in range(0, top + 1):
            verdicts = [smoothness.classify_in_W(p, r)]
            for c in components.components_containing(p, r):
                if c.cls is components.ComponentClass.I:
                    verdicts.append(smoothness.type_i_smooth_locus(c, p))
                elif c.btype.b >= 2 and components.in_V(p, c):
                    verdicts.append(smoothness.classify_on_v_locus(c, p))
                if c.cls is components.ComponentClass.II:
                    big_e = completion.completion_threshold_E(c.sequence)
                    if big_e is not None and completion.in_open_stratum(c.sequence, big_e, p):
                        verdicts.append(smoothness.type_ii_smooth(c, p))
            statuses = {v.status for v in verdicts} - {Status.UNKNOWN}
            assert len(statuses) <= 1, (p, r, [v.to_dict() for v in verdicts])
