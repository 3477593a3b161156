"""Matrix representations of Dynkin quivers: Hom spaces, kernels, cokernels,
generic indecomposables, and the subrepresentation (monomorphism) oracle.

Indecomposables are constructed generically: sample the arrow matrices at
random and keep the result only if its endomorphism algebra is
one-dimensional, which certifies indecomposability (and, for a root
dimension vector, pins down the unique indecomposable up to isomorphism).
"""
from __future__ import annotations

import hashlib
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .dynkin import (
    DimVector,
    DynkinQuiver,
    coxeter_translate,
    euler_form,
    is_positive_root,
    projective_dims,
    injective_dims,
)
from math import gcd

from .linalg import (
    GF,
    QQ,
    DEFAULT_SWEEP_PRIME,
    Field,
    Matrix,
    PrimeField,
    _int_nullspace,
    _rank_fp,
    _rank_int,
    nullspace_basis,
    rank,
    solve_matrix,
)


class GenericSampleError(RuntimeError):
    """Random sampling failed to produce an indecomposable within budget."""


class FieldTransferError(RuntimeError):
    """The small-field mono sweep and rational sampling disagreed."""


def _derive_seed(*parts) -> int:
    digest = hashlib.blake2b(repr(parts).encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big")


@dataclass(frozen=True)
class Representation:
    quiver: DynkinQuiver
    field: Field
    dims: DimVector
    maps: tuple[Matrix, ...]  # one per arrow, shape dims[head] x dims[tail]

    def __post_init__(self):
        arrows = self.quiver.arrows
        if len(self.maps) != len(arrows):
            raise ValueError("one matrix per arrow required")
        for (t, h), m in zip(arrows, self.maps):
            if (m.nrows, m.ncols) != (self.dims[h - 1], self.dims[t - 1]):
                raise ValueError(f"map for arrow {t}->{h} has shape {m.nrows}x{m.ncols}")

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return not any(self.dims)


@dataclass(frozen=True)
class Morphism:
    source: Representation
    target: Representation
    blocks: tuple[Matrix, ...]  # one per vertex, shape target.dims[x] x source.dims[x]

    def __post_init__(self):
        if self.source.quiver != self.target.quiver or self.source.field != self.target.field:
            raise ValueError("morphism endpoints live over different quivers/fields")

    def validate(self) -> None:
        """Check the intertwining relations V_a f_tail = f_head W_a."""
        for idx, (t, h) in enumerate(self.source.quiver.arrows):
            lhs = self.target.maps[idx].mul(self.blocks[t - 1])
            rhs = self.blocks[h - 1].mul(self.source.maps[idx])
            if lhs != rhs:
                raise ValueError(f"intertwining fails on arrow {t}->{h}")

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks)

    def is_vertexwise_injective(self) -> bool:
        return all(
            rank(b) == self.source.dims[x] for x, b in enumerate(self.blocks)
        )

    def is_vertexwise_surjective(self) -> bool:
        return all(
            rank(b) == self.target.dims[x] for x, b in enumerate(self.blocks)
        )


def zero_representation(q: DynkinQuiver, field: Field) -> Representation:
    maps = tuple(Matrix.zeros(field, 0, 0) for _ in q.arrows)
    return Representation(q, field, (0,) * q.rank, maps)


def _indicator_rep(q: DynkinQuiver, support: DimVector, field: Field) -> Representation:
    maps = []
    for t, h in q.arrows:
        r, c = support[h - 1], support[t - 1]
        if r == 1 and c == 1:
            maps.append(Matrix.identity(field, 1))
        else:
            maps.append(Matrix.zeros(field, r, c))
    return Representation(q, field, support, tuple(maps))


def projective(q: DynkinQuiver, x: int, field: Field = QQ) -> Representation:
    """The indecomposable projective P_x: identity maps along paths out of x."""
    if not 1 <= x <= q.rank:
        raise ValueError(f"no vertex {x}")
    return _indicator_rep(q, projective_dims(q)[x], field)


def injective(q: DynkinQuiver, x: int, field: Field = QQ) -> Representation:
    """The indecomposable injective I_x: supported on paths into x."""
    if not 1 <= x <= q.rank:
        raise ValueError(f"no vertex {x}")
    return _indicator_rep(q, injective_dims(q)[x], field)


def simple(q: DynkinQuiver, x: int, field: Field = QQ) -> Representation:
    support = tuple(1 if v == x else 0 for v in range(1, q.rank + 1))
    return _indicator_rep(q, support, field)


# ---------------------------------------------------------------------------
# Hom spaces


def _int_map_pairs(W: Representation, V: Representation):
    """Per arrow, (W map, V map) as integer grids.  Over Q both matrices of
    one arrow are scaled by their common denominator lcm, which multiplies
    that arrow's constraint rows by a positive constant and leaves the
    solution space unchanged."""
    fp = isinstance(W.field, PrimeField)
    out = []
    for wm, vm in zip(W.maps, V.maps):
        if fp:
            out.append(([list(r) for r in wm.rows], [list(r) for r in vm.rows]))
            continue
        lcm = 1
        for mat in (wm, vm):
            for r in mat.rows:
                for x in r:
                    d = x.denominator
                    if d != 1:
                        lcm = lcm // gcd(lcm, d) * d
        if lcm == 1:
            out.append(
                (
                    [[x.numerator for x in r] for r in wm.rows],
                    [[x.numerator for x in r] for r in vm.rows],
                )
            )
        else:
            out.append(
                (
                    [[int(x * lcm) for x in r] for r in wm.rows],
                    [[int(x * lcm) for x in r] for r in vm.rows],
                )
            )
    return out


def _hom_rows(W: Representation, V: Representation) -> tuple[list[list[int]], int]:
    """Integer rows of the stacked intertwining constraints; unknowns are
    the blocks of a morphism W -> V, flattened vertex by vertex row-major."""
    n = W.quiver.rank
    offs = []
    total = 0
    for x in range(n):
        offs.append(total)
        total += V.dims[x] * W.dims[x]
    pairs = _int_map_pairs(W, V)
    rows: list[list[int]] = []
    for idx, (t, h) in enumerate(W.quiver.arrows):
        wa, va = pairs[idx]
        t -= 1
        h -= 1
        wt, wh = W.dims[t], W.dims[h]
        for i in range(V.dims[h]):
            for j in range(wt):
                row = [0] * total
                # (V_a f_t)[i, j] contributes V_a[i, r] * f_t[r, j]
                base = offs[t] + j
                for r in range(V.dims[t]):
                    row[base + r * wt] += va[i][r]
                # -(f_h W_a)[i, j] contributes -f_h[i, c] * W_a[c, j]
                base = offs[h] + i * wh
                for c in range(wh):
                    row[base + c] -= wa[c][j]
                rows.append(row)
    return rows, total


def _vector_to_morphism(W: Representation, V: Representation, vec) -> Morphism:
    blocks = []
    pos = 0
    for x in range(W.quiver.rank):
        r, c = V.dims[x], W.dims[x]
        block = [vec[pos + i * c : pos + (i + 1) * c] for i in range(r)]
        blocks.append(Matrix(W.field, block, r, c))
        pos += r * c
    return Morphism(W, V, tuple(blocks))


def _hom_vectors(W: Representation, V: Representation) -> list[list]:
    rows, total = _hom_rows(W, V)
    if isinstance(W.field, PrimeField):
        system = Matrix(W.field, rows, len(rows), total)
        return nullspace_basis(system)
    return [[Fraction(x) for x in vec] for vec in _int_nullspace(rows, total)]


def hom_basis(W: Representation, V: Representation) -> list[Morphism]:
    """Basis of Hom(W, V), solved from the intertwining linear system."""
    if W.quiver != V.quiver:
        raise ValueError("representations of different quivers")
    if W.field != V.field:
        raise ValueError("representations over different fields")
    return [_vector_to_morphism(W, V, vec) for vec in _hom_vectors(W, V)]


def _end_dim_fast(rep: Representation) -> int:
    """dim End via a rank-only elimination (no basis extraction)."""
    rows, total = _hom_rows(rep, rep)
    if isinstance(rep.field, PrimeField):
        p = rep.field.p
        return total - _rank_fp([[x % p for x in r] for r in rows], total, p)
    return total - _rank_int(rows, total)


def dim_hom(W: Representation, V: Representation) -> int:
    return len(hom_basis(W, V))


def dim_end(V: Representation) -> int:
    return len(hom_basis(V, V))


def combine_morphisms(basis: list[Morphism], coeffs) -> Morphism:
    """The linear combination sum coeffs[i] * basis[i]."""
    if not basis:
        raise ValueError("empty basis")
    W, V = basis[0].source, basis[0].target
    field = W.field
    blocks = []
    for x in range(W.quiver.rank):
        r, c = V.dims[x], W.dims[x]
        rows = [
            [
                field.normalize(sum(coeffs[k] * basis[k].blocks[x].rows[i][j] for k in range(len(basis))))
                for j in range(c)
            ]
            for i in range(r)
        ]
        blocks.append(Matrix(field, rows, r, c))
    return Morphism(W, V, tuple(blocks))


# ---------------------------------------------------------------------------
# generic indecomposables


def generic_indecomposable(
    q: DynkinQuiver,
    d: DimVector,
    field: Field = QQ,
    seed: int = 0,
    retries: int = 32,
) -> Representation:
    """A representation with dimension vector d and one-dimensional
    endomorphism algebra (hence the indecomposable with that root)."""
    if not is_positive_root(q, d):
        raise ValueError(f"{d} is not a positive root of {q}")
    rng = random.Random(_derive_seed("generic", str(q), d, getattr(field, "p", 0), seed))
    fp = isinstance(field, PrimeField)
    for _ in range(retries):
        maps = []
        for t, h in q.arrows:
            r, c = d[h - 1], d[t - 1]
            if fp:
                rows = [[rng.randrange(field.p) for _ in range(c)] for _ in range(r)]
            else:
                rows = [[rng.randint(-3, 3) for _ in range(c)] for _ in range(r)]
            maps.append(Matrix(field, rows, r, c))
        rep = Representation(q, field, tuple(d), tuple(maps))
        if _end_dim_fast(rep) == 1:
            return rep
    raise GenericSampleError(
        f"no indecomposable with dims {d} over {field} in {retries} attempts"
    )


# ---------------------------------------------------------------------------
# kernels and cokernels


def _columns_matrix(field: Field, cols, nrows: int) -> Matrix:
    rows = [[col[i] for col in cols] for i in range(nrows)]
    return Matrix(field, rows, nrows, len(cols))


def kernel(f: Morphism) -> Representation:
    """Vertexwise kernels with the induced arrow maps."""
    q = f.source.quiver
    field = f.source.field
    incl = []
    kdims = []
    for x in range(q.rank):
        cols = nullspace_basis(f.blocks[x])
        incl.append(_columns_matrix(field, cols, f.source.dims[x]))
        kdims.append(len(cols))
    maps = []
    for idx, (t, h) in enumerate(q.arrows):
        restricted = f.source.maps[idx].mul(incl[t - 1])
        km = solve_matrix(incl[h - 1], restricted)
        assert km is not None, "kernel is not arrow-stable (intertwining broken?)"
        maps.append(km)
    return Representation(q, field, tuple(kdims), tuple(maps))


def cokernel(f: Morphism) -> Representation:
    """Vertexwise quotients by the image, with the induced arrow maps."""
    q = f.source.quiver
    field = f.source.field
    proj = []
    cdims = []
    for x in range(q.rank):
        # rows spanning the left kernel of f_x give coordinates on the quotient
        rows = nullspace_basis(f.blocks[x].transpose())
        mat = Matrix(field, [list(r) for r in rows], len(rows), f.target.dims[x])
        proj.append(mat)
        cdims.append(len(rows))
    maps = []
    for idx, (t, h) in enumerate(q.arrows):
        rhs = proj[h - 1].mul(f.target.maps[idx])
        # solve C_a . proj[t] = rhs for C_a (proj[t] has full row rank)
        sol = solve_matrix(proj[t - 1].transpose(), rhs.transpose())
        assert sol is not None, "quotient map is not well-defined"
        maps.append(sol.transpose())
    return Representation(q, field, tuple(cdims), tuple(maps))


# ---------------------------------------------------------------------------
# the subrepresentation oracle


def _normalized_coeff_vectors(h: int, p: int):
    """All of F_p^h \\ {0} up to scalar: first nonzero coordinate is 1."""
    for lead in range(h):
        for tail in itertools.product(range(p), repeat=h - 1 - lead):
            yield (0,) * lead + (1,) + tail


class MonoOracle:
    """Decides whether one indecomposable embeds into another.

    Queries are keyed by dimension vectors, which determine the
    indecomposables.  The verdict comes from an exhaustive sweep over the
    Hom space of small-prime-field models; rational models are sampled as a
    consistency check, and any disagreement raises FieldTransferError
    instead of silently picking a side.
    """

    def __init__(
        self,
        q: DynkinQuiver,
        sweep_prime: int = DEFAULT_SWEEP_PRIME,
        rational_samples: int = 16,
        seed: int = 0,
    ):
        self.q = q
        self.sweep_field = GF(sweep_prime)
        self.rational_samples = rational_samples
        self.seed = seed
        self._proj_dims = set(projective_dims(q).values())
        self._proj_vertex = {v: k for k, v in projective_dims(q).items()}
        self._reps: dict[tuple, Representation] = {}
        self._memo: dict[tuple[DimVector, DimVector], bool] = {}
        self._homdim: dict[tuple[DimVector, DimVector], int] = {}
        self.sweep_count = 0

    # -- combinatorial Hom dimensions -------------------------------------
    def hom_dim(self, dW: DimVector, dV: DimVector) -> int:
        """dim Hom between the indecomposables with these roots, via the
        reflection identity hom(W, V) = <W, V> + hom(V, tau W)."""
        key = (dW, dV)
        val = self._homdim.get(key)
        if val is not None:
            return val
        if dW in self._proj_dims:
            x = self._proj_vertex[dW]
            val = dV[x - 1]
        else:
            tw = coxeter_translate(self.q, dW)
            val = euler_form(self.q, dW, dV) + self.hom_dim(dV, tw)
        assert val >= 0
        self._homdim[key] = val
        return val

    # -- realizations ------------------------------------------------------
    def model(self, d: DimVector, field: Field) -> Representation:
        key = (d, getattr(field, "p", 0))
        rep = self._reps.get(key)
        if rep is None:
            rep = generic_indecomposable(self.q, d, field, seed=self.seed)
            self._reps[key] = rep
        return rep

    # -- the decision procedure -------------------------------------------
    def exists_mono(self, dW: DimVector, dV: DimVector) -> bool:
        dW, dV = tuple(dW), tuple(dV)
        if dW == dV:
            return True
        key = (dW, dV)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        verdict = self._decide(dW, dV)
        self._memo[key] = verdict
        return verdict

    def _decide(self, dW: DimVector, dV: DimVector) -> bool:
        if any(a > b for a, b in zip(dW, dV)):
            return False
        h = self.hom_dim(dW, dV)
        if h == 0:
            return False
        p = self.sweep_field.p
        W5 = self.model(dW, self.sweep_field)
        V5 = self.model(dV, self.sweep_field)
        vectors5 = _hom_vectors(W5, V5)
        if len(vectors5) != h:
            raise FieldTransferError(
                f"Hom dim over {self.sweep_field} is {len(vectors5)}, expected {h} "
                f"for {dW} -> {dV}"
            )
        verdict = self._sweep(vectors5, dW, dV, p)
        sampled = self._rational_probe(dW, dV, h)
        if sampled != verdict:
            raise FieldTransferError(
                f"mono sweep over {self.sweep_field} says {verdict} but rational "
                f"sampling says {sampled} for {dW} -> {dV}"
            )
        return verdict

    @staticmethod
    def _vertex_blocks(vectors, dW, dV):
        """Per vertex with dW[x] > 0: the stacked basis blocks as int grids."""
        out = []
        pos = 0
        for x in range(len(dW)):
            r, c = dV[x], dW[x]
            if c > 0:
                out.append(
                    (
                        x,
                        r,
                        c,
                        [
                            [int(vec[pos + i * c + j]) for i in range(r) for j in range(c)]
                            for vec in vectors
                        ],
                    )
                )
            pos += r * c
        # cheapest vertices first: rejection there is most likely per cost
        out.sort(key=lambda item: item[1] * item[2])
        return out

    def _sweep(self, vectors, dW, dV, p) -> bool:
        """Exhaustive search over Hom coefficients, up to scalar, for a
        vertexwise injective combination."""
        self.sweep_count += 1
        h = len(vectors)
        blocks = self._vertex_blocks(vectors, dW, dV)

        def check(coeffs) -> bool:
            for _, r, c, flats in blocks:
                flat = [0] * (r * c)
                for k, ck in enumerate(coeffs):
                    if ck:
                        bk = flats[k]
                        for idx in range(r * c):
                            flat[idx] += ck * bk[idx]
                rows = [[flat[i * c + j] % p for j in range(c)] for i in range(r)]
                if _rank_fp(rows, c, p) != c:
                    return False
            return True

        # generic pre-pass: a random combination finds a mono fast when one exists
        rng = random.Random(_derive_seed("sweep", str(self.q), dW, dV, self.seed))
        for _ in range(24):
            coeffs = tuple(rng.randrange(p) for _ in range(h))
            if any(coeffs) and check(coeffs):
                return True
        for coeffs in _normalized_coeff_vectors(h, p):
            if check(coeffs):
                return True
        return False

    def _rational_probe(self, dW, dV, h) -> bool:
        WQ = self.model(dW, QQ)
        VQ = self.model(dV, QQ)
        rows, total = _hom_rows(WQ, VQ)
        vectors = _int_nullspace(rows, total)
        if len(vectors) != h:
            raise FieldTransferError(
                f"rational Hom dim is {len(vectors)}, expected {h} for {dW} -> {dV}"
            )
        blocks = self._vertex_blocks(vectors, dW, dV)
        rng = random.Random(_derive_seed("probe", str(self.q), dW, dV, self.seed))
        for _ in range(self.rational_samples):
            coeffs = [rng.randint(-9, 9) for _ in range(h)]
            if not any(coeffs):
                coeffs[0] = 1
            ok = True
            for _, r, c, flats in blocks:
                flat = [0] * (r * c)
                for k, ck in enumerate(coeffs):
                    if ck:
                        bk = flats[k]
                        for idx in range(r * c):
                            flat[idx] += ck * bk[idx]
                rows_x = [[flat[i * c + j] for j in range(c)] for i in range(r)]
                if _rank_int(rows_x, c) != c:
                    ok = False
                    break
            if ok:
                return True
        return False


def exists_mono(W: Representation, V: Representation, **oracle_kwargs) -> bool:
    """True iff some morphism W -> V is injective at every vertex.

    W and V must be indecomposable; over a Dynkin quiver the answer depends
    only on their dimension vectors, so the oracle works with its own
    generic models of the same isomorphism classes.
    """
    if W.quiver != V.quiver:
        raise ValueError("representations of different quivers")
    oracle = MonoOracle(W.quiver, **oracle_kwargs)
    return oracle.exists_mono(W.dims, V.dims)
