import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arstab.dynkin import (
    DynkinType,
    QuiverSpecError,
    all_orientations,
    build_quiver,
    canonical_edges,
    coxeter_translate,
    euler_form,
    injective_dims,
    is_positive_root,
    positive_roots,
    projective_dims,
    tits_form,
)


def quiver_strategy(max_rank=8):
    def mk(family, rank, bits_int):
        dtype = DynkinType(family, rank)
        nbits = len(canonical_edges(dtype))
        bits = "".join("+" if (bits_int >> i) & 1 else "-" for i in range(nbits))
        return build_quiver(f"{family}{rank}/{bits}")

    fam_rank = st.one_of(
        st.tuples(st.just("A"), st.integers(1, max_rank)),
        st.tuples(st.just("D"), st.integers(4, max_rank)),
        st.tuples(st.just("E"), st.integers(6, min(max_rank, 8))),
    )
    return st.builds(
        lambda fr, b: mk(fr[0], fr[1], b), fam_rank, st.integers(0, 2**9)
    )


class TestSpecParsing:
    def test_a2(self):
        q = build_quiver("A2/+")
        assert q.arrows == ((1, 2),)

    def test_d4_canonical_order(self):
        q = build_quiver("D4/+++")
        assert q.edges == ((1, 3), (2, 3), (3, 4))
        assert q.arrows == ((1, 3), (2, 3), (3, 4))

    def test_e6_bourbaki_edges(self):
        q = build_quiver("E6/+++++")
        assert q.edges == ((1, 3), (3, 4), (2, 4), (4, 5), (5, 6))
        assert all(q.arrows[i] == q.edges[i] for i in range(5))

    def test_minus_reverses(self):
        q = build_quiver("A3/+-")
        assert q.arrows == ((1, 2), (3, 2))

    @pytest.mark.parametrize(
        "bad", ["", "A2", "A2/++", "B3/++", "D3/--", "E9/++++++++", "A0/", "A2/x"]
    )
    def test_malformed(self, bad):
        with pytest.raises(QuiverSpecError):
            build_quiver(bad)

    def test_opposite_roundtrip(self):
        q = build_quiver("D5/+-+-")
        assert q.opposite().opposite() == q
        assert q.opposite().arrows == tuple((h, t) for t, h in q.arrows)


class TestEulerForm:
    def test_examples(self):
        q = build_quiver("A2/+")
        assert euler_form(q, (0, 1), (1, 1)) == 1
        assert euler_form(q, (0, 0), (1, 1)) == 0
        assert euler_form(q, (1, 1), (1, 1)) == 1

    def test_size_mismatch(self):
        q = build_quiver("A2/+")
        with pytest.raises(ValueError):
            euler_form(q, (1, 2, 3), (1, 1))

    @settings(max_examples=60, deadline=None)
    @given(quiver_strategy(), st.data())
    def test_bilinear(self, q, data):
        vec = st.tuples(*([st.integers(-4, 4)] * q.rank))
        d1 = data.draw(vec)
        d2 = data.draw(vec)
        e = data.draw(vec)
        s = data.draw(st.integers(-3, 3))
        left = euler_form(q, tuple(a + s * b for a, b in zip(d1, d2)), e)
        assert left == euler_form(q, d1, e) + s * euler_form(q, d2, e)


def _roots_by_reflection(q):
    """Independent oracle: close the simple roots under simple reflections,
    then keep the nonnegative vectors."""
    n = q.rank
    adj = [set() for _ in range(n)]
    for u, v in q.edges:
        adj[u - 1].add(v - 1)
        adj[v - 1].add(u - 1)

    def reflect(d, i):
        out = list(d)
        out[i] = -d[i] + sum(d[j] for j in adj[i])
        return tuple(out)

    frontier = {tuple(1 if j == i else 0 for j in range(n)) for i in range(n)}
    seen = set(frontier)
    while frontier:
        nxt = set()
        for d in frontier:
            for i in range(n):
                r = reflect(d, i)
                if r not in seen:
                    seen.add(r)
                    nxt.add(r)
        frontier = nxt
    return sorted(d for d in seen if all(c >= 0 for c in d))


class TestPositiveRoots:
    @pytest.mark.parametrize(
        "spec,count",
        [("A3/++", 6), ("D4/+++", 12), ("E6/+++++", 36), ("E7/++++++", 63), ("E8/+++++++", 120)],
    )
    def test_counts(self, spec, count):
        assert len(positive_roots(build_quiver(spec))) == count

    @pytest.mark.parametrize("spec", ["A4/++-", "D5/+-++", "E6/-++-+"])
    def test_matches_reflection_oracle(self, spec):
        q = build_quiver(spec)
        assert positive_roots(q) == _roots_by_reflection(q)

    def test_orientation_independent(self):
        a = positive_roots(build_quiver("D5/++++"))
        b = positive_roots(build_quiver("D5/-+-+"))
        assert a == b

    def test_tits_form_one_on_roots(self):
        for spec in ("A5/++++", "D5/++-+", "E6/+++++"):
            q = build_quiver(spec)
            for d in positive_roots(q):
                assert tits_form(q, d) == 1
                assert is_positive_root(q, d)

    def test_sorted_lex(self):
        roots = positive_roots(build_quiver("D4/+++"))
        assert roots == sorted(roots)


class TestProjectivesInjectives:
    def test_a2(self):
        q = build_quiver("A2/+")
        assert projective_dims(q) == {1: (1, 1), 2: (0, 1)}
        assert injective_dims(q) == {1: (1, 0), 2: (1, 1)}

    def test_d4_sink(self):
        q = build_quiver("D4/+++")
        assert projective_dims(q)[4] == (0, 0, 0, 1)
        assert injective_dims(q)[1] == (1, 0, 0, 0)

    def test_path_counting_vectors_are_roots(self):
        q = build_quiver("E7/-++-+-")
        roots = set(positive_roots(q))
        for d in projective_dims(q).values():
            assert d in roots
        for d in injective_dims(q).values():
            assert d in roots


class TestCoxeter:
    def test_a2_examples(self):
        q = build_quiver("A2/+")
        assert coxeter_translate(q, (1, 0)) == (0, 1)
        assert coxeter_translate(q, (1, 1)) is None

    def test_projectives_die(self):
        q = build_quiver("D4/+++")
        for d in projective_dims(q).values():
            assert coxeter_translate(q, d) is None

    def test_not_a_root(self):
        q = build_quiver("A2/+")
        with pytest.raises(ValueError):
            coxeter_translate(q, (2, 0))

    @pytest.mark.parametrize("spec", ["A4/+-+", "D5/++++", "E6/++-++"])
    def test_bijection_nonproj_to_noninj(self, spec):
        q = build_quiver(spec)
        proj = set(projective_dims(q).values())
        inj = set(injective_dims(q).values())
        nonproj = [d for d in positive_roots(q) if d not in proj]
        images = {coxeter_translate(q, d) for d in nonproj}
        assert len(images) == len(nonproj)
        assert images == {d for d in positive_roots(q) if d not in inj}


def test_all_orientations_count_and_order():
    dtype = DynkinType("D", 4)
    qs = list(all_orientations(dtype))
    assert len(qs) == 8
    bits = [q.orientation for q in qs]
    assert bits == sorted(bits)
    assert len(set(bits)) == 8
