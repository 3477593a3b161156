"""Dynkin diagrams with orientations, dimension vectors, and root combinatorics.

Vertex labelling conventions (all 1-based, used by every public interface):

* type A: a path 1 - 2 - ... - n;
* type D: 1 and 2 are the ends of the two short branches, 3 is the branch
  point, 4..n walk outward along the long branch;
* type E: Bourbaki numbering, i.e. the path 1 - 3 - 4 - 5 - 6 [- 7 [- 8]]
  with vertex 2 attached to vertex 4.

A quiver is written ``<FAMILY><RANK>/<BITS>`` where BITS holds one ``+`` or
``-`` per canonical edge and ``+`` orients the edge from its first vertex to
its second, e.g. ``D4/+++`` has arrows 1->3, 2->3, 3->4.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

DimVector = tuple[int, ...]

# Largest root coordinate by family; 6 occurs only in type E (rank 8).
_ROOT_COORD_BOUND = {"A": 1, "D": 2, "E": 6}

_SPEC_RE = re.compile(r"^([ADE])(\d+)/([+-]*)$")


class QuiverSpecError(ValueError):
    """Malformed quiver spec string or rank out of range for the family."""


@dataclass(frozen=True)
class DynkinType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in ("A", "D", "E"):
            raise QuiverSpecError(f"unknown family {self.family!r}")
        if self.family == "A" and self.rank < 1:
            raise QuiverSpecError("type A requires rank >= 1")
        if self.family == "D" and self.rank < 4:
            raise QuiverSpecError("type D requires rank >= 4")
        if self.family == "E" and self.rank not in (6, 7, 8):
            raise QuiverSpecError("type E requires rank in {6, 7, 8}")

    @property
    def num_indecomposables(self) -> int:
        n = self.rank
        if self.family == "A":
            return n * (n + 1) // 2
        if self.family == "D":
            return n * (n - 1)
        return {6: 36, 7: 63, 8: 120}[n]

    @property
    def num_border_sequences(self) -> int:
        n = self.rank
        if self.family == "A":
            return n - 1
        if self.family == "D":
            return 3 * (n - 2)
        return {6: 15, 7: 24, 8: 42}[n]

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def canonical_edges(dtype: DynkinType) -> tuple[tuple[int, int], ...]:
    """Edges of the underlying tree in canonical order (1-based labels)."""
    n = dtype.rank
    if dtype.family == "A":
        return tuple((i, i + 1) for i in range(1, n))
    if dtype.family == "D":
        return ((1, 3), (2, 3)) + tuple((i, i + 1) for i in range(3, n))
    edges = [(1, 3), (3, 4), (2, 4), (4, 5), (5, 6)]
    if n >= 7:
        edges.append((6, 7))
    if n >= 8:
        edges.append((7, 8))
    return tuple(edges)


@dataclass(frozen=True)
class DynkinQuiver:
    """A Dynkin diagram plus one orientation bit per canonical edge."""

    dtype: DynkinType
    orientation: str  # '+' or '-' per canonical edge

    def __post_init__(self):
        edges = canonical_edges(self.dtype)
        if len(self.orientation) != len(edges):
            raise QuiverSpecError(
                f"{self.dtype} needs {len(edges)} orientation bits, "
                f"got {len(self.orientation)}"
            )
        if any(b not in "+-" for b in self.orientation):
            raise QuiverSpecError(f"bad orientation string {self.orientation!r}")

    @property
    def rank(self) -> int:
        return self.dtype.rank

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return canonical_edges(self.dtype)

    @property
    def arrows(self) -> tuple[tuple[int, int], ...]:
        """Arrows as (tail, head) pairs, in canonical edge order."""
        out = []
        for (u, v), bit in zip(self.edges, self.orientation):
            out.append((u, v) if bit == "+" else (v, u))
        return tuple(out)

    def successors(self, x: int) -> list[int]:
        return [h for t, h in self.arrows if t == x]

    def predecessors(self, x: int) -> list[int]:
        return [t for t, h in self.arrows if h == x]

    def opposite(self) -> "DynkinQuiver":
        flipped = "".join("-" if b == "+" else "+" for b in self.orientation)
        return DynkinQuiver(self.dtype, flipped)

    def spec_string(self) -> str:
        return f"{self.dtype}/{self.orientation}"

    def __str__(self) -> str:
        return self.spec_string()


def build_quiver(spec: str) -> DynkinQuiver:
    """Parse a spec string like ``E6/+++++`` into a quiver."""
    m = _SPEC_RE.match(spec.strip())
    if not m:
        raise QuiverSpecError(f"malformed quiver spec {spec!r}")
    family, rank, bits = m.group(1), int(m.group(2)), m.group(3)
    return DynkinQuiver(DynkinType(family, rank), bits)


def all_orientations(dtype: DynkinType):
    """Yield every orientation of the diagram, in lexicographic bit order."""
    nbits = len(canonical_edges(dtype))
    for k in range(1 << nbits):
        bits = "".join("+" if (k >> (nbits - 1 - i)) & 1 == 0 else "-" for i in range(nbits))
        yield DynkinQuiver(dtype, bits)


def _check_sized(q: DynkinQuiver, d) -> None:
    if len(d) != q.rank:
        raise ValueError(f"dimension vector {d} has wrong length for {q}")


def euler_form(q: DynkinQuiver, d, e) -> int:
    """<d, e> = sum_x d(x) e(x) - sum_{a: x->y} d(x) e(y)."""
    _check_sized(q, d)
    _check_sized(q, e)
    s = sum(di * ei for di, ei in zip(d, e))
    for t, h in q.arrows:
        s -= d[t - 1] * e[h - 1]
    return s


def tits_form(q: DynkinQuiver, d) -> int:
    return euler_form(q, d, d)


@lru_cache(maxsize=None)
def _positive_roots_of_type(dtype: DynkinType) -> tuple[DimVector, ...]:
    # The symmetrized (Tits) form does not depend on the orientation, so the
    # root set is a per-type computation.  Exhaustive box search: coordinates
    # of roots are bounded by _ROOT_COORD_BOUND per family.
    n = dtype.rank
    bound = _ROOT_COORD_BOUND[dtype.family]
    grid = np.indices((bound + 1,) * n, dtype=np.int16).reshape(n, -1).T
    qvals = (grid.astype(np.int32) * grid).sum(axis=1, dtype=np.int32)
    for u, v in canonical_edges(dtype):
        qvals -= grid[:, u - 1].astype(np.int32) * grid[:, v - 1]
    roots = grid[qvals == 1]
    return tuple(sorted(tuple(int(c) for c in row) for row in roots))


def positive_roots(q: DynkinQuiver) -> list[DimVector]:
    """All positive roots (= dimension vectors of indecomposables), lex sorted."""
    return list(_positive_roots_of_type(q.dtype))


def is_positive_root(q: DynkinQuiver, d) -> bool:
    _check_sized(q, d)
    return (
        all(isinstance(x, int) and x >= 0 for x in d)
        and any(d)
        and tits_form(q, d) == 1
    )


def projective_dims(q: DynkinQuiver) -> dict[int, DimVector]:
    """dim P_x for every vertex x; entry 1 iff a directed path x ~> y exists."""
    out = {}
    for x in range(1, q.rank + 1):
        seen = {x}
        stack = [x]
        while stack:
            y = stack.pop()
            for z in q.successors(y):
                if z not in seen:
                    seen.add(z)
                    stack.append(z)
        out[x] = tuple(1 if v in seen else 0 for v in range(1, q.rank + 1))
    return out


def injective_dims(q: DynkinQuiver) -> dict[int, DimVector]:
    """dim I_x for every vertex x; entry 1 iff a directed path y ~> x exists."""
    return projective_dims(q.opposite())


@lru_cache(maxsize=None)
def _coxeter_matrix(q: DynkinQuiver) -> tuple[tuple[int, ...], ...]:
    # Phi = -E^{-1} E^T where E is the Euler matrix E[x][y] = delta - #(x->y).
    # For a non-projective indecomposable X, dim(tau X) = Phi . dim(X).
    n = q.rank
    emat = [[Fraction(int(x == y)) for y in range(n)] for x in range(n)]
    for t, h in q.arrows:
        emat[t - 1][h - 1] -= 1
    # invert E by Gauss-Jordan (E is unimodular: the quiver is acyclic)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(emat)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    einv = [row[n:] for row in aug]
    phi = [
        [-sum(einv[i][k] * emat[j][k] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]
    assert all(x.denominator == 1 for row in phi for x in row)
    return tuple(tuple(int(x) for x in row) for row in phi)


def coxeter_matrix(q: DynkinQuiver) -> tuple[tuple[int, ...], ...]:
    return _coxeter_matrix(q)


def coxeter_translate(q: DynkinQuiver, d) -> DimVector | None:
    """dim(tau X) for the indecomposable X with dim X = d, or None if X is
    projective (tau kills projectives)."""
    if not is_positive_root(q, d):
        raise ValueError(f"{d} is not a positive root of {q}")
    if tuple(d) in set(projective_dims(q).values()):
        return None
    phi = coxeter_matrix(q)
    out = tuple(sum(phi[i][j] * d[j] for j in range(q.rank)) for i in range(q.rank))
    assert is_positive_root(q, out)
    return out
