import pytest

from arstab.dynkin import build_quiver, euler_form, positive_roots
from arstab.linalg import GF, QQ, Matrix
from arstab.reps import (
    FieldTransferError,
    GenericSampleError,
    MonoOracle,
    Morphism,
    cokernel,
    combine_morphisms,
    dim_end,
    dim_hom,
    exists_mono,
    generic_indecomposable,
    hom_basis,
    injective,
    kernel,
    projective,
    simple,
    zero_representation,
)

A2 = build_quiver("A2/+")
D4 = build_quiver("D4/+++")


class TestProjectiveInjective:
    def test_a2_projectives(self):
        p1 = projective(A2, 1)
        assert p1.dims == (1, 1)
        assert p1.maps[0].rows == ((1,),)
        assert projective(A2, 2).dims == (0, 1)

    def test_a2_injectives(self):
        assert injective(A2, 1).dims == (1, 0)
        assert injective(A2, 2).dims == (1, 1)

    def test_d4(self):
        assert projective(D4, 4).dims == (0, 0, 0, 1)
        assert injective(D4, 1).dims == (1, 0, 0, 0)

    def test_bad_vertex(self):
        with pytest.raises(ValueError):
            projective(A2, 3)


class TestHom:
    def test_examples(self):
        assert dim_hom(projective(A2, 2), projective(A2, 1)) == 1
        assert dim_hom(injective(A2, 1), projective(A2, 2)) == 0

    def test_basis_morphisms_intertwine(self):
        for W, V in [
            (projective(D4, 4), projective(D4, 1)),
            (projective(D4, 3), injective(D4, 4)),
            (simple(D4, 3), injective(D4, 3)),
        ]:
            for f in hom_basis(W, V):
                f.validate()

    def test_quiver_mismatch(self):
        with pytest.raises(ValueError):
            hom_basis(projective(A2, 1), projective(D4, 1))

    def test_end_of_generic_is_one(self):
        V = generic_indecomposable(A2, (1, 1), seed=5)
        assert V.maps[0].rows[0][0] != 0
        assert dim_end(V) == 1

    def test_e6_highest_root(self):
        q = build_quiver("E6/+++++")
        V = generic_indecomposable(q, (1, 2, 2, 3, 2, 1), seed=2)
        assert dim_end(V) == 1

    def test_hom_euler_identity_projective_source(self):
        # for projective W, dim Hom(W, V) = <dim W, dim V>
        q = build_quiver("A3/+-")
        for x in (1, 2, 3):
            W = projective(q, x)
            for d in positive_roots(q):
                V = generic_indecomposable(q, d, seed=1)
                assert dim_hom(W, V) == euler_form(q, W.dims, V.dims)


class TestGenericIndecomposable:
    def test_deterministic(self):
        a = generic_indecomposable(D4, (1, 1, 2, 1), seed=9)
        b = generic_indecomposable(D4, (1, 1, 2, 1), seed=9)
        assert a.maps == b.maps

    def test_rejects_non_root(self):
        with pytest.raises(ValueError):
            generic_indecomposable(A2, (2, 0))

    def test_prime_field(self):
        V = generic_indecomposable(D4, (1, 1, 2, 1), field=GF(5), seed=4)
        assert dim_end(V) == 1

    def test_projective_root_gives_projective_class(self):
        from arstab.dynkin import projective_dims

        d = projective_dims(D4)[1]
        V = generic_indecomposable(D4, d, seed=7)
        assert V.dims == d
        assert dim_end(V) == 1
        assert dim_hom(projective(D4, 1), V) == 1
        assert dim_hom(V, projective(D4, 1)) == 1


def _identity_morphism(V):
    blocks = tuple(Matrix.identity(V.field, d) for d in V.dims)
    return Morphism(V, V, blocks)


def _zero_morphism(W, V):
    blocks = tuple(
        Matrix.zeros(W.field, dv, dw) for dv, dw in zip(V.dims, W.dims)
    )
    return Morphism(W, V, blocks)


class TestKernelCokernel:
    def test_kernel_of_identity(self):
        V = projective(A2, 1)
        assert kernel(_identity_morphism(V)).is_zero()

    def test_kernel_of_zero(self):
        W, V = projective(A2, 2), projective(A2, 1)
        assert kernel(_zero_morphism(W, V)).dims == W.dims

    def test_cokernel_of_identity(self):
        V = projective(A2, 1)
        assert cokernel(_identity_morphism(V)).is_zero()

    def test_cokernel_of_zero(self):
        W, V = projective(A2, 2), projective(A2, 1)
        assert cokernel(_zero_morphism(W, V)).dims == V.dims

    def test_radical_inclusion(self):
        W, V = projective(A2, 2), projective(A2, 1)
        (f,) = hom_basis(W, V)
        assert f.is_vertexwise_injective()
        assert kernel(f).is_zero()
        assert cokernel(f).dims == (1, 0)

    def test_projective_to_injective_epi(self):
        W, V = projective(A2, 1), injective(A2, 1)
        (f,) = hom_basis(W, V)
        assert f.is_vertexwise_surjective()
        assert kernel(f).dims == (0, 1)
        assert cokernel(f).is_zero()

    def test_kernel_maps_intertwine(self):
        q = build_quiver("A3/++")
        W = projective(q, 1)
        V = injective(q, 2)
        (f,) = hom_basis(W, V)
        k = kernel(f)
        assert k.dims == (0, 0, 1)

    def test_zero_representation(self):
        z = zero_representation(A2, QQ)
        assert z.is_zero()


class TestExistsMono:
    def test_a2_examples(self):
        assert exists_mono(projective(A2, 2), projective(A2, 1)) is True
        assert exists_mono(injective(A2, 1), projective(A2, 1)) is False

    def test_d4_socle(self):
        assert exists_mono(simple(D4, 4), projective(D4, 1)) is True

    def test_reflexive(self):
        oracle = MonoOracle(D4)
        for d in positive_roots(D4):
            assert oracle.exists_mono(d, d)

    def test_implies_dims_and_hom(self):
        oracle = MonoOracle(D4)
        roots = positive_roots(D4)
        for dw in roots:
            for dv in roots:
                if dw != dv and oracle.exists_mono(dw, dv):
                    assert all(a <= b for a, b in zip(dw, dv))
                    assert oracle.hom_dim(dw, dv) >= 1

    def test_transitive_on_witnessed_chains(self):
        q = build_quiver("A4/++-")
        oracle = MonoOracle(q)
        roots = positive_roots(q)
        mono = {
            (a, b)
            for a in roots
            for b in roots
            if a != b and oracle.exists_mono(a, b)
        }
        for a, b in mono:
            for c in roots:
                if (b, c) in mono:
                    assert oracle.exists_mono(a, c)

    def test_hom_dim_matches_linear_algebra(self):
        for spec in ("A4/-++", "D4/+-+"):
            q = build_quiver(spec)
            oracle = MonoOracle(q)
            models = {d: generic_indecomposable(q, d, seed=3) for d in positive_roots(q)}
            for dw, W in models.items():
                for dv, V in models.items():
                    assert oracle.hom_dim(dw, dv) == dim_hom(W, V)


class TestCombine:
    def test_linear_combination(self):
        W, V = projective(A2, 2), projective(A2, 1)
        basis = hom_basis(W, V)
        f = combine_morphisms(basis, [3])
        f.validate()
        assert not f.is_zero()
