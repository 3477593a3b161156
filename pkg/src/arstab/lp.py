"""Exact rational linear programming for totally stable weight search.

Each border sequence tau V -> E -> V contributes one open half-space
constraint on the numerator weight theta: for fixed positive denominator
weight w,

    theta . c > 0   with   c = (w . dim tau V) dim V - (w . dim V) dim tau V,

which is the cross-multiplied form of slope(tau V) < slope(V).  Feasibility
of the open cone is decided by maximizing the worst slack t over the box
-1 <= theta_i <= 1 with a dense two-phase simplex using Bland's pivot rule
(all arithmetic in Fractions).  When the cone is empty a certificate
lambda >= 0 with sum lambda_k c_k = 0 is produced and verified exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .arquiver import ARQuiver


class SimplexError(RuntimeError):
    pass


@dataclass(frozen=True)
class BorderConeSystem:
    """One constraint vector per border sequence; theta is feasible when
    theta . c > 0 for every constraint c."""

    rank: int
    constraints: tuple[tuple[Fraction, ...], ...]
    quiver: str | None = None
    w: tuple[Fraction, ...] | None = None


@dataclass(frozen=True)
class Feasible:
    theta: tuple[int, ...]
    slack: Fraction | None  # min_k theta . c_k; None when there are no constraints

    status = "feasible"


@dataclass(frozen=True)
class Infeasible:
    farkas: tuple[int, ...]  # nonnegative, not all zero, sum farkas_k c_k = 0

    status = "infeasible"


WitnessResult = Feasible | Infeasible


def build_system(ar: ARQuiver, w) -> BorderConeSystem:
    w = tuple(Fraction(x) for x in w)
    if len(w) != ar.quiver.rank:
        raise ValueError("w has wrong length")
    if any(x <= 0 for x in w):
        raise ValueError("w must be entrywise positive")
    constraints = []
    for bs in ar.border_sequences():
        dtv = ar.dim(bs.start)
        dv = ar.dim(bs.end)
        wdtv = sum(a * b for a, b in zip(w, dtv))
        wdv = sum(a * b for a, b in zip(w, dv))
        constraints.append(tuple(wdtv * x - wdv * y for x, y in zip(dv, dtv)))
    return BorderConeSystem(ar.quiver.rank, tuple(constraints), ar.quiver.spec_string(), w)


# ---------------------------------------------------------------------------
# two-phase simplex: maximize obj . x subject to A x = b, x >= 0, b >= 0


def _pivot(tableau, basis, row, col):
    piv = tableau[row][col]
    tableau[row] = [x / piv for x in tableau[row]]
    prow = tableau[row]
    for r, trow in enumerate(tableau):
        if r != row and trow[col] != 0:
            f = trow[col]
            tableau[r] = [x - f * y for x, y in zip(trow, prow)]
    basis[row] = col


def _optimize(tableau, basis, obj, blocked):
    """Bland's rule: entering = lowest improving column index, leaving =
    lowest basis index among the minimum-ratio rows.

    The negated reduced-cost row is carried as an extra tableau row and
    updated by the same pivot operations, which is much cheaper than
    recomputing reduced costs from the basis every iteration.
    """
    m = len(tableau)
    ncols = len(obj)
    zrow = list(obj) + [Fraction(0)]
    for i in range(m):
        f = zrow[basis[i]]
        if f != 0:
            zrow = [x - f * y for x, y in zip(zrow, tableau[i])]
    while True:
        entering = None
        for j in range(ncols):
            if j in blocked:
                continue
            if zrow[j] > 0:
                entering = j
                break
        if entering is None:
            return
        leaving = None
        best = None
        for i in range(m):
            a = tableau[i][entering]
            if a > 0:
                ratio = tableau[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    best = ratio
                    leaving = i
        if leaving is None:
            raise SimplexError("objective unbounded")
        _pivot(tableau, basis, leaving, entering)
        f = zrow[entering]
        if f != 0:
            prow = tableau[leaving]
            zrow = [x - f * y for x, y in zip(zrow, prow)]


def solve_standard_lp(rows, rhs, obj):
    """Maximize obj . x over A x = b, x >= 0 (b >= 0 required).

    Returns (value, x) or None when infeasible.
    """
    m = len(rows)
    n = len(obj)
    if any(b < 0 for b in rhs):
        raise ValueError("standard form requires b >= 0")
    tableau = []
    for i in range(m):
        art = [Fraction(int(i == k)) for k in range(m)]
        tableau.append([Fraction(x) for x in rows[i]] + art + [Fraction(rhs[i])])
    basis = [n + i for i in range(m)]
    phase1 = [Fraction(0)] * n + [Fraction(-1)] * m
    _optimize(tableau, basis, phase1, blocked=set())
    val1 = sum(phase1[basis[i]] * tableau[i][-1] for i in range(m))
    if val1 != 0:
        return None
    phase2 = [Fraction(x) for x in obj] + [Fraction(0)] * m
    artificial = set(range(n, n + m))
    _optimize(tableau, basis, phase2, blocked=artificial)
    x = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = tableau[i][-1]
    value = sum(o * xi for o, xi in zip(obj, x))
    return value, x


def _primitive_ints(values) -> tuple[int, ...]:
    lcm = 1
    for v in values:
        d = Fraction(v).denominator
        lcm = lcm // gcd(lcm, d) * d
    ints = [int(Fraction(v) * lcm) for v in values]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)


def _primitive_constraint(c) -> list[int]:
    denom_lcm = 1
    for x in c:
        d = Fraction(x).denominator
        denom_lcm = denom_lcm // gcd(denom_lcm, d) * d
    scaled = [int(Fraction(x) * denom_lcm) for x in c]
    g = 0
    for x in scaled:
        g = gcd(g, x)
    g = g or 1
    return [x // g for x in scaled]


def max_worst_slack(system: BorderConeSystem):
    """Exact maximum of min_k theta . c_k over the box |theta_i| <= 1.

    Returns (t*, theta*).  The cone is nonempty iff t* > 0.  The free slack
    variable t is started at -1 so that the initial slack basis is a
    nondegenerate vertex (a start at t = 0 would be degenerate in every
    cone row and makes Bland's rule crawl).
    """
    n = system.rank
    cons = system.constraints
    m = len(cons)
    if m == 0:
        raise SimplexError("no constraints to optimize over")

    # columns: p (n), q (n), t1, t2, s (m), r (2n); theta = p - q, t = t1 - t2 - 1
    ncols = 2 * n + 2 + m + 2 * n
    nrows = m + 2 * n
    tableau = []
    for k, c in enumerate(cons):
        ci = _primitive_constraint(c)
        row = [Fraction(0)] * (ncols + 1)
        for i in range(n):
            row[i] = Fraction(-ci[i])
            row[n + i] = Fraction(ci[i])
        row[2 * n] = Fraction(1)
        row[2 * n + 1] = Fraction(-1)
        row[2 * n + 2 + k] = Fraction(1)
        row[-1] = Fraction(1)
        tableau.append(row)
    for i in range(n):
        for sign in (0, 1):
            # p_i - q_i <= 1 and q_i - p_i <= 1
            row = [Fraction(0)] * (ncols + 1)
            row[i] = Fraction(1 if sign == 0 else -1)
            row[n + i] = Fraction(-1 if sign == 0 else 1)
            row[2 * n + 2 + m + 2 * i + sign] = Fraction(1)
            row[-1] = Fraction(1)
            tableau.append(row)
    obj = [Fraction(0)] * ncols
    obj[2 * n] = Fraction(1)
    obj[2 * n + 1] = Fraction(-1)
    basis = [2 * n + 2 + i for i in range(nrows)]
    _optimize(tableau, basis, obj, blocked=set())
    x = [Fraction(0)] * ncols
    for i in range(nrows):
        if basis[i] < ncols:
            x[basis[i]] = tableau[i][-1]
    tstar = x[2 * n] - x[2 * n + 1] - 1
    theta = tuple(x[i] - x[n + i] for i in range(n))
    return tstar, theta


def solve(system: BorderConeSystem) -> WitnessResult:
    """Decide the open cone {theta : theta . c_k > 0 for all k} exactly."""
    n = system.rank
    cons = system.constraints
    if not cons:
        return Feasible(theta=(0,) * n, slack=None)
    tstar, theta_frac = max_worst_slack(system)
    if tstar > 0:
        theta = _primitive_ints(theta_frac)
        slack = min(
            sum(t * ci for t, ci in zip(theta, c)) for c in cons
        )
        if slack <= 0:
            raise SimplexError("positive optimum produced a nonpositive slack")
        return Feasible(theta=theta, slack=Fraction(slack))
    m = len(cons)

    # empty open cone: find lambda >= 0, sum_k lambda_k c_k = 0, sum lambda = 1
    rows = []
    rhs = []
    for i in range(n):
        rows.append([Fraction(c[i]) for c in cons])
        rhs.append(Fraction(0))
    rows.append([Fraction(1)] * m)
    rhs.append(Fraction(1))
    solved = solve_standard_lp(rows, rhs, [Fraction(0)] * m)
    if solved is None:
        raise SimplexError("no separating certificate found for an empty cone")
    _, lam = solved
    farkas = _primitive_ints(lam)
    verify_farkas(system, farkas)
    return Infeasible(farkas=farkas)


def verify_farkas(system: BorderConeSystem, farkas) -> None:
    if len(farkas) != len(system.constraints):
        raise ValueError("certificate length mismatch")
    if any(l < 0 for l in farkas) or not any(farkas):
        raise ValueError("certificate must be nonnegative and nonzero")
    for i in range(system.rank):
        if sum(l * c[i] for l, c in zip(farkas, system.constraints)) != 0:
            raise ValueError("certificate combination is nonzero")


def verify_feasible(system: BorderConeSystem, theta) -> Fraction:
    """Exact minimum slack of theta over the system; must be > 0."""
    if not system.constraints:
        return Fraction(1)
    slack = min(sum(t * ci for t, ci in zip(theta, c)) for c in system.constraints)
    if slack <= 0:
        raise ValueError(f"theta={theta} violates a border constraint (slack {slack})")
    return Fraction(slack)


def find_totally_stable_weights(
    ar: ARQuiver, seed: int = 0, attempts: int = 80
) -> tuple[BorderConeSystem, WitnessResult]:
    """Search the weighted family for a totally stable weight pair.

    The all-ones denominator is tried first.  When its cone is provably
    empty (which genuinely happens for many orientations in the largest
    types), random small positive integer denominators are decided exactly
    one at a time; the feasible directions are razor thin in theta, so a
    full LP per candidate denominator is the only reliable test.  Returns
    the all-ones certificate when no denominator in the budget works.
    """
    import random

    ones = (Fraction(1),) * ar.quiver.rank
    system = build_system(ar, ones)
    result = solve(system)
    if isinstance(result, Feasible) or not system.constraints:
        return system, result
    first_failure = (system, result)
    rng = random.Random(_search_seed(ar, seed))
    hi = 6
    for attempt in range(attempts):
        if attempts >= 48 and attempt in (attempts // 3, 2 * attempts // 3):
            hi *= 2
        w = tuple(Fraction(rng.randint(1, hi)) for _ in range(ar.quiver.rank))
        trial = build_system(ar, w)
        # intermediate attempts only need the slack sign, not a certificate
        tstar, theta_frac = max_worst_slack(trial)
        if tstar > 0:
            theta = _primitive_ints(theta_frac)
            return trial, Feasible(theta=theta, slack=verify_feasible(trial, theta))
    return first_failure


def _search_seed(ar: ARQuiver, seed: int) -> int:
    from .reps import _derive_seed

    return _derive_seed("wsearch", seed, ar.quiver.spec_string())
