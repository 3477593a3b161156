"""Exact dense linear algebra over the rationals and over prime fields.

Scalars are plain ``fractions.Fraction`` values over the rationals and plain
ints reduced to ``[0, p)`` over a prime field.  Matrices here never exceed a
few hundred entries per side, so everything is dense row-list arithmetic.
Rational elimination clears denominators and works on integer rows kept
primitive (divided by their gcd), which is considerably faster than
eliminating with Fraction arithmetic entry by entry.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

DEFAULT_SWEEP_PRIME = 5
DEFAULT_SAMPLING_PRIME = 10007


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class RationalField:
    p: None = None

    def normalize(self, x) -> Fraction:
        return x if isinstance(x, Fraction) else Fraction(x)

    def __str__(self) -> str:
        return "QQ"


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def normalize(self, x) -> int:
        return int(x) % self.p

    def __str__(self) -> str:
        return f"GF({self.p})"


Field = RationalField | PrimeField

QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


class Matrix:
    """Immutable dense matrix with entries in one field."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, rows, nrows=None, ncols=None):
        self.field = field
        rows = [tuple(field.normalize(x) for x in r) for r in rows]
        self.nrows = len(rows) if nrows is None else nrows
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        self.ncols = ncols
        if any(len(r) != self.ncols for r in rows):
            raise ValueError("ragged rows")
        self.rows = tuple(rows)

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        return cls(field, [[0] * ncols for _ in range(nrows)], nrows, ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, [[int(i == j) for j in range(n)] for i in range(n)])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, self.nrows, self.ncols, self.rows))

    def __repr__(self) -> str:
        return f"Matrix({self.field}, {self.nrows}x{self.ncols})"

    def transpose(self) -> "Matrix":
        return Matrix(
            self.field,
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            self.ncols,
            self.nrows,
        )

    def mul(self, other: "Matrix") -> "Matrix":
        if self.field != other.field or self.ncols != other.nrows:
            raise ValueError("incompatible shapes or fields")
        ot = list(zip(*other.rows)) if other.rows and other.ncols else []
        out = []
        for r in self.rows:
            if ot:
                row = [sum(a * b for a, b in zip(r, col)) for col in ot]
            else:
                row = [0] * other.ncols
            out.append(row)
        return Matrix(self.field, out, self.nrows, other.ncols)

    def mul_vec(self, v):
        if len(v) != self.ncols:
            raise ValueError("size mismatch")
        return [self.field.normalize(sum(a * b for a, b in zip(r, v))) for r in self.rows]

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)


# ---------------------------------------------------------------------------
# elimination kernels


def _int_rows(m: Matrix) -> list[list[int]]:
    """Rows of a rational matrix with denominators cleared (per row)."""
    out = []
    for r in m.rows:
        lcm = 1
        for x in r:
            d = x.denominator
            if d != 1:
                lcm = lcm // gcd(lcm, d) * d
        if lcm == 1:
            out.append([x.numerator for x in r])
        else:
            out.append([int(x * lcm) for x in r])
    return out


# normalize rows only once entries get large; keeps gcd work off the hot path
_NORMALIZE_THRESHOLD = 1 << 48


def _primitive(row: list[int]) -> None:
    g = 0
    for x in row:
        g = gcd(g, x)
        if g == 1:
            return
    if g > 1:
        for i, x in enumerate(row):
            row[i] = x // g


def _maybe_primitive(row: list[int]) -> None:
    if max(map(abs, row), default=0) > _NORMALIZE_THRESHOLD:
        _primitive(row)


def _rref_int(rows: list[list[int]], ncols: int):
    """Row echelon over Q in integer arithmetic.

    Returns (pivot_cols, reduced_rows) where reduced_rows are integer rows
    in reduced echelon form up to scaling of each row.
    """
    rows = [r[:] for r in rows if any(r)]
    pivots: list[int] = []
    prows: list[list[int]] = []
    col = 0
    while rows and col < ncols:
        # pick the remaining row with smallest nonzero |entry| in this column
        best = None
        for i, r in enumerate(rows):
            if r[col] != 0 and (best is None or abs(r[col]) < abs(rows[best][col])):
                best = i
        if best is None:
            col += 1
            continue
        piv = rows.pop(best)
        _primitive(piv)
        if piv[col] < 0:
            piv = [-x for x in piv]
        a = piv[col]
        nxt = []
        for r in rows:
            b = r[col]
            if b:
                g = gcd(a, b)
                fa, fb = a // g, b // g
                r = [fa * x - fb * y for x, y in zip(r, piv)]
                _maybe_primitive(r)
                if any(r):
                    nxt.append(r)
            else:
                nxt.append(r)
        rows = nxt
        # also reduce earlier pivot rows (Gauss-Jordan)
        for k, pr in enumerate(prows):
            b = pr[col]
            if b:
                g = gcd(a, b)
                fa, fb = a // g, b // g
                pr = [fa * x - fb * y for x, y in zip(pr, piv)]
                _maybe_primitive(pr)
                prows[k] = pr
        prows.append(piv)
        pivots.append(col)
        col += 1
    return pivots, prows


def _rank_int(rows: list[list[int]], ncols: int) -> int:
    """Rank over Q of integer rows; forward elimination only."""
    rows = [r[:] for r in rows if any(r)]
    rank_ = 0
    col = 0
    while rows and col < ncols:
        best = None
        for i, r in enumerate(rows):
            if r[col] != 0 and (best is None or abs(r[col]) < abs(rows[best][col])):
                best = i
        if best is None:
            col += 1
            continue
        piv = rows.pop(best)
        a = piv[col]
        nxt = []
        for r in rows:
            b = r[col]
            if b:
                g = gcd(a, b)
                fa, fb = a // g, b // g
                r = [fa * x - fb * y for x, y in zip(r, piv)]
                _maybe_primitive(r)
                if any(r):
                    nxt.append(r)
            else:
                nxt.append(r)
        rows = nxt
        rank_ += 1
        col += 1
    return rank_


def _rank_fp(rows: list[list[int]], ncols: int, p: int) -> int:
    """Rank over F_p; entries must already be reduced mod p."""
    rows = [r for r in rows if any(r)]
    rank_ = 0
    col = 0
    while rows and col < ncols:
        best = next((i for i, r in enumerate(rows) if r[col]), None)
        if best is None:
            col += 1
            continue
        piv = rows.pop(best)
        inv = pow(piv[col], -1, p)
        piv = [x * inv % p for x in piv]
        nxt = []
        for r in rows:
            b = r[col]
            if b:
                r = [(x - b * y) % p for x, y in zip(r, piv)]
                if any(r):
                    nxt.append(r)
            else:
                nxt.append(r)
        rows = nxt
        rank_ += 1
        col += 1
    return rank_


def _rref_fp(rows: list[list[int]], ncols: int, p: int):
    """Reduced row echelon over F_p.  Returns (pivot_cols, rows)."""
    rows = [[x % p for x in r] for r in rows]
    rows = [r for r in rows if any(r)]
    pivots: list[int] = []
    prows: list[list[int]] = []
    col = 0
    while rows and col < ncols:
        best = next((i for i, r in enumerate(rows) if r[col]), None)
        if best is None:
            col += 1
            continue
        piv = rows.pop(best)
        inv = pow(piv[col], -1, p)
        piv = [x * inv % p for x in piv]
        nxt = []
        for r in rows:
            b = r[col]
            if b:
                r = [(x - b * y) % p for x, y in zip(r, piv)]
            if any(r):
                nxt.append(r)
        rows = nxt
        for k, pr in enumerate(prows):
            b = pr[col]
            if b:
                prows[k] = [(x - b * y) % p for x, y in zip(pr, piv)]
        prows.append(piv)
        pivots.append(col)
        col += 1
    return pivots, prows


def _echelon(m: Matrix):
    if isinstance(m.field, PrimeField):
        return _rref_fp([list(r) for r in m.rows], m.ncols, m.field.p)
    return _rref_int(_int_rows(m), m.ncols)


def _int_nullspace(rows: list[list[int]], ncols: int) -> list[list[int]]:
    """Primitive integer basis of the rational right kernel of integer rows."""
    pivots, prows = _rref_int(rows, ncols)
    pivset = set(pivots)
    basis = []
    lead = [row[pi] for pi, row in zip(pivots, prows)]
    l = 1
    for a in lead:
        l = l // gcd(l, a) * a
    for j in range(ncols):
        if j in pivset:
            continue
        vec = [0] * ncols
        vec[j] = l
        for pi, row, a in zip(pivots, prows, lead):
            vec[pi] = -row[j] * (l // a)
        g = 0
        for x in vec:
            g = gcd(g, x)
        if g > 1:
            vec = [x // g for x in vec]
        basis.append(vec)
    return basis


def rank(m: Matrix) -> int:
    return len(_echelon(m)[0])


def nullspace_basis(m: Matrix) -> list[list]:
    """Basis of the right kernel of m, as column vectors (lists of scalars).

    Over the rationals the basis vectors are primitive integer vectors
    (returned as Fractions); over F_p they are reduced mod p.
    """
    if isinstance(m.field, PrimeField):
        p = m.field.p
        pivots, prows = _rref_fp([list(r) for r in m.rows], m.ncols, p)
        pivset = set(pivots)
        basis = []
        for j in range(m.ncols):
            if j in pivset:
                continue
            vec = [0] * m.ncols
            vec[j] = 1
            for pi, row in zip(pivots, prows):
                vec[pi] = (-row[j]) % p
            basis.append(vec)
        return basis
    return [
        [Fraction(x) for x in vec]
        for vec in _int_nullspace(_int_rows(m), m.ncols)
    ]


def solve(m: Matrix, b) -> list | None:
    """One particular solution of m x = b, or None when inconsistent."""
    if len(b) != m.nrows:
        raise ValueError("size mismatch")
    field = m.field
    bvals = [field.normalize(x) for x in b]
    if isinstance(field, PrimeField):
        p = field.p
        aug = [list(r) + [bv] for r, bv in zip(m.rows, bvals)]
        pivots, prows = _rref_fp(aug, m.ncols + 1, p)
        if m.ncols in pivots:
            return None
        x = [0] * m.ncols
        for pi, row in zip(pivots, prows):
            x[pi] = row[m.ncols] % p
        return x
    # rational: clear denominators of [m | b] jointly per row
    aug_rows = []
    for r, bv in zip(m.rows, bvals):
        lcm = bv.denominator
        for v in r:
            d = v.denominator
            lcm = lcm // gcd(lcm, d) * d
        aug_rows.append([int(v * lcm) for v in r] + [int(bv * lcm)])
    pivots, prows = _rref_int(aug_rows, m.ncols + 1)
    if m.ncols in pivots:
        return None
    x = [Fraction(0)] * m.ncols
    for pi, row in zip(pivots, prows):
        x[pi] = Fraction(row[m.ncols], row[pi])
    return x


def solve_matrix(m: Matrix, b: Matrix) -> Matrix | None:
    """Solve m X = b columnwise; None if any column is inconsistent."""
    if m.field != b.field or m.nrows != b.nrows:
        raise ValueError("incompatible")
    cols = []
    for j in range(b.ncols):
        x = solve(m, [b.rows[i][j] for i in range(b.nrows)])
        if x is None:
            return None
        cols.append(x)
    rows = [[cols[j][i] for j in range(b.ncols)] for i in range(m.ncols)]
    return Matrix(m.field, rows, m.ncols, b.ncols)
