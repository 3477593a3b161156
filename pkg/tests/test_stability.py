import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arstab import lp
from arstab.arquiver import Realizer, knit
from arstab.dynkin import DynkinType, all_orientations, build_quiver
from arstab.reps import cokernel, kernel
from arstab.stability import (
    StabilityWeights,
    SubrepOracle,
    arrow_positivity_report,
    is_stable,
    is_totally_stable_border,
    is_totally_stable_bruteforce,
    sample_weights,
    seesaw_check,
    slope,
    slope_table,
)

A2 = build_quiver("A2/+")


def sw(theta, w):
    return StabilityWeights(tuple(map(Fraction, theta)), tuple(map(Fraction, w)))


class TestWeights:
    def test_parse(self):
        s = StabilityWeights.parse("1,-2,3/2", "1,1,2")
        assert s.theta == (Fraction(1), Fraction(-2), Fraction(3, 2))
        assert s.w == (Fraction(1), Fraction(1), Fraction(2))

    def test_w_positive(self):
        with pytest.raises(ValueError):
            sw((1, 0), (1, 0))

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            sw((1, 0, 0), (1, 1))


class TestSlope:
    def test_examples(self):
        assert slope(sw((1, 0), (1, 1)), (1, 1)) == Fraction(1, 2)
        assert slope(sw((3, 1), (1, 1)), (1, 1)) == 2

    def test_proportional_weights_constant(self):
        c = Fraction(7, 3)
        weights = sw((c * 2, c * 5), (2, 5))
        for d in ((1, 0), (0, 2), (3, 4)):
            assert slope(weights, d) == c

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            slope(sw((1, 0), (1, 1)), (0, 0))


class TestSeesaw:
    def test_additivity_enforced(self):
        with pytest.raises(ValueError):
            seesaw_check(sw((1, 0), (1, 1)), (1, 0), (1, 1), (1, 1))

    def test_equal_outer_terms(self):
        assert seesaw_check(sw((1, 0), (1, 1)), (1, 2), (2, 4), (1, 2))

    def test_theta_equals_w(self):
        assert seesaw_check(sw((1, 1), (1, 1)), (1, 0), (1, 1), (0, 1))

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 7), st.data())
    def test_holds_on_all_meshes(self, ori, data):
        q = list(all_orientations(DynkinType("D", 4)))[ori]
        ar = knit(q)
        theta = data.draw(st.tuples(*([st.integers(-9, 9)] * 4)))
        w = data.draw(st.tuples(*([st.integers(1, 4)] * 4)))
        weights = sw(theta, w)
        for m in ar.meshes:
            total = tuple(
                sum(ar.dim(x)[i] for x in m.middles) for i in range(q.rank)
            )
            assert seesaw_check(weights, ar.dim(m.start), total, ar.dim(m.end))

    def test_holds_on_realized_short_exact_sequences(self):
        q = build_quiver("A3/++")
        ar = knit(q)
        realizer = Realizer(ar)
        weights = sw((3, -1, 2), (1, 2, 1))
        for arrow in ar.arrows:
            f = realizer.realize_arrow(arrow)
            k, c = kernel(f), cokernel(f)
            if k.is_zero():
                a, b, cc = f.source.dims, f.target.dims, c.dims
            else:
                a, b, cc = k.dims, f.source.dims, f.target.dims
            assert seesaw_check(weights, a, b, cc)


class TestDecidersA2:
    def setup_method(self):
        self.ar = knit(A2)
        self.oracle = SubrepOracle(self.ar)

    def test_border_examples(self):
        assert is_totally_stable_border(sw((1, 0), (1, 1)), self.ar) is True
        assert is_totally_stable_border(sw((0, 1), (1, 1)), self.ar) is False
        assert is_totally_stable_border(sw((1, 1), (1, 1)), self.ar) is False

    def test_bruteforce_matches(self):
        for theta in ((1, 0), (0, 1), (1, 1)):
            weights = sw(theta, (1, 1))
            assert is_totally_stable_bruteforce(
                weights, self.ar, self.oracle
            ) == is_totally_stable_border(weights, self.ar)

    def test_is_stable_examples(self):
        p1 = self.ar.by_dim[(1, 1)]
        assert is_stable(sw((1, 0), (1, 1)), p1, self.ar, self.oracle) is True
        assert is_stable(sw((0, 1), (1, 1)), p1, self.ar, self.oracle) is False

    def test_simples_always_stable(self):
        s2 = self.ar.by_dim[(0, 1)]
        i1 = self.ar.by_dim[(1, 0)]
        weights = sw((0, 1), (1, 1))
        assert is_stable(weights, s2, self.ar, self.oracle)
        assert is_stable(weights, i1, self.ar, self.oracle)


def test_rank_one_always_stable():
    ar = knit(build_quiver("A1/"))
    oracle = SubrepOracle(ar)
    weights = sw((5,), (2,))
    assert is_totally_stable_border(weights, ar)
    assert is_totally_stable_bruteforce(weights, ar, oracle)


class TestTheoremEquivalence:
    @pytest.mark.parametrize("spec", ["A4/++-", "D4/+--", "D4/+++", "E6/+-++-"])
    def test_random_trials(self, spec):
        q = build_quiver(spec)
        ar = knit(q)
        oracle = SubrepOracle(ar)
        rng = random.Random(20240811)
        hits = {True: 0, False: 0}
        for _ in range(150):
            weights = sample_weights(q.rank, rng)
            b = is_totally_stable_border(weights, ar)
            f = is_totally_stable_bruteforce(weights, ar, oracle)
            assert b == f, (spec, weights)
            hits[b] += 1
        assert hits[False] > 0

    def test_witness_direction_stable(self):
        for spec in ("A4/++-", "D5/-++-"):
            ar = knit(build_quiver(spec))
            res = lp.solve(lp.build_system(ar, (1,) * ar.quiver.rank))
            weights = sw(res.theta, (1,) * ar.quiver.rank)
            oracle = SubrepOracle(ar)
            assert is_totally_stable_border(weights, ar)
            assert is_totally_stable_bruteforce(weights, ar, oracle)


class TestScalingInvariance:
    @settings(max_examples=25, deadline=None)
    @given(
        st.integers(1, 9),
        st.integers(-6, 6),
        st.tuples(*([st.integers(-8, 8)] * 4)),
        st.tuples(*([st.integers(1, 4)] * 4)),
    )
    def test_affine_rescaling_preserves_verdicts(self, lam, c, theta, w):
        q = build_quiver("D4/+-+")
        ar = knit(q)
        oracle = SubrepOracle(ar)
        base = sw(theta, w)
        moved = StabilityWeights(
            tuple(lam * t + c * wi for t, wi in zip(base.theta, base.w)), base.w
        )
        assert is_totally_stable_border(base, ar) == is_totally_stable_border(moved, ar)
        assert is_totally_stable_bruteforce(
            base, ar, oracle
        ) == is_totally_stable_bruteforce(moved, ar, oracle)


class TestDuality:
    def test_negated_theta_on_opposite(self):
        q = build_quiver("D5/+-++")
        ar = knit(q)
        arop = knit(q.opposite())
        oracle = SubrepOracle(ar)
        oracle_op = SubrepOracle(arop)
        rng = random.Random(7)
        for _ in range(60):
            weights = sample_weights(q.rank, rng)
            dual = StabilityWeights(tuple(-t for t in weights.theta), weights.w)
            assert is_totally_stable_border(weights, ar) == is_totally_stable_border(
                dual, arop
            )
            assert is_totally_stable_bruteforce(
                weights, ar, oracle
            ) == is_totally_stable_bruteforce(dual, arop, oracle_op)


class TestArrowPositivity:
    def test_border_positive_implies_all_arrows_positive(self):
        for spec in ("A5/++++", "D5/++-+", "E6/+++++"):
            ar = knit(build_quiver(spec))
            res = lp.solve(lp.build_system(ar, (1,) * ar.quiver.rank))
            weights = sw(res.theta, (1,) * ar.quiver.rank)
            assert is_totally_stable_border(weights, ar)
            report = arrow_positivity_report(weights, ar)
            assert all(flag for _, flag in report)
            assert len(report) == len(ar.arrows)

    def test_constant_slope_has_no_positive_arrow(self):
        ar = knit(build_quiver("D4/+++"))
        weights = sw((1, 1, 1, 1), (1, 1, 1, 1))
        assert not any(flag for _, flag in arrow_positivity_report(weights, ar))

    def test_a2_example(self):
        ar = knit(A2)
        report = arrow_positivity_report(sw((1, 0), (1, 1)), ar)
        assert all(flag for _, flag in report)


def test_slope_table_matches_slope():
    ar = knit(build_quiver("A3/+-"))
    weights = sw((2, -1, 1), (1, 1, 2))
    table = slope_table(weights, ar)
    for v in ar.vertices:
        assert table[v.id] == slope(weights, v.dim)


def test_oracle_precompute_consistency():
    ar = knit(build_quiver("D4/-++"))
    lazy = SubrepOracle(ar)
    eager = SubrepOracle(ar)
    eager.precompute_all()
    for w, v, _ in lazy.candidate_pairs:
        assert lazy.exists_mono(w, v) == eager.exists_mono(w, v)
    # every subrep list is consistent with the pair table
    for v in ar.vertices:
        subs = set(eager.subrep_vertices(v.id))
        for w in ar.vertices:
            if w.id != v.id:
                expected = eager.exists_mono(w.id, v.id) and all(
                    a <= b for a, b in zip(w.dim, v.dim)
                )
                assert (w.id in subs) == expected
