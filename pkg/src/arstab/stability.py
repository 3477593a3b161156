"""Weighted-linear stability functions and the two total-stability deciders.

A weight pair (theta, w) with w entrywise positive induces the slope
mu(d) = (theta . d) / (w . d) on nonzero dimension vectors.  Total stability
of mu can be decided two ways: by checking the single inequality
mu(start) < mu(end) on every border sequence (single-middle mesh) of the AR
quiver, or by brute force over indecomposable subrepresentations using the
monomorphism oracle.  The two deciders are kept fully independent so they
can be compared against each other.
"""
from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .arquiver import ARQuiver, ARVertex
from .linalg import DEFAULT_SWEEP_PRIME
from .reps import MonoOracle

Slope = Fraction


@dataclass(frozen=True)
class StabilityWeights:
    theta: tuple[Fraction, ...]
    w: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "theta", tuple(Fraction(x) for x in self.theta))
        object.__setattr__(self, "w", tuple(Fraction(x) for x in self.w))
        if len(self.theta) != len(self.w):
            raise ValueError("theta and w must have the same length")
        if any(x <= 0 for x in self.w):
            raise ValueError("w must be entrywise positive")

    @classmethod
    def parse(cls, theta_str: str, w_str: str) -> "StabilityWeights":
        """Comma-separated rationals, e.g. theta='1,-2,3/2' w='1,1,2'."""
        theta = tuple(Fraction(tok) for tok in theta_str.split(","))
        w = tuple(Fraction(tok) for tok in w_str.split(","))
        return cls(theta, w)


def slope(sw: StabilityWeights, d) -> Slope:
    """(theta . d) / (w . d); undefined on the zero vector."""
    if len(d) != len(sw.theta):
        raise ValueError("dimension vector has wrong length")
    if not any(d):
        raise ValueError("slope is undefined on the zero representation")
    num = sum(t * x for t, x in zip(sw.theta, d))
    den = sum(wi * x for wi, x in zip(sw.w, d))
    return Fraction(num, den)


def slope_table(sw: StabilityWeights, ar: ARQuiver) -> list[Slope]:
    return [slope(sw, v.dim) for v in ar.vertices]


def seesaw_check(sw: StabilityWeights, A, B, C) -> bool:
    """For a short exact sequence with dim A + dim C = dim B: exactly one of
    increasing, decreasing, or all-equal slopes."""
    if tuple(a + c for a, c in zip(A, C)) != tuple(B):
        raise ValueError("dimension additivity A + C = B fails")
    ma, mb, mc = slope(sw, A), slope(sw, B), slope(sw, C)
    return (
        (ma < mb < mc) + (ma > mb > mc) + (ma == mb == mc)
    ) == 1


class SubrepOracle:
    """Memoized subrepresentation table over the vertices of one AR quiver.

    Candidate pairs (those with componentwise-comparable dimension vectors
    and nonzero Hom) are precomputed combinatorially; the expensive mono
    sweep runs only on demand and its verdicts are cached.
    """

    def __init__(
        self,
        ar: ARQuiver,
        sweep_prime: int = DEFAULT_SWEEP_PRIME,
        rational_samples: int = 16,
        seed: int = 0,
    ):
        self.ar = ar
        self.mono = MonoOracle(ar.quiver, sweep_prime, rational_samples, seed)
        pairs = []
        into: dict[int, list[tuple[int, int]]] = defaultdict(list)
        for w in ar.vertices:
            for v in ar.vertices:
                if w.id == v.id:
                    continue
                if all(a <= b for a, b in zip(w.dim, v.dim)):
                    h = self.mono.hom_dim(w.dim, v.dim)
                    if h > 0:
                        pairs.append((w.id, v.id, h))
                        into[v.id].append((w.id, h))
        # cheap sweeps first keeps lazy evaluation snappy
        pairs.sort(key=lambda t: (t[2], t[0], t[1]))
        for lst in into.values():
            lst.sort(key=lambda t: (t[1], t[0]))
        self.candidate_pairs: tuple[tuple[int, int, int], ...] = tuple(pairs)
        self._into = dict(into)

    def candidates_into(self, vid: int) -> list[tuple[int, int]]:
        return self._into.get(vid, [])

    def exists_mono(self, wid: int, vid: int) -> bool:
        return self.mono.exists_mono(self.ar.dim(wid), self.ar.dim(vid))

    def precompute_all(self) -> None:
        for wid, vid, _ in self.candidate_pairs:
            self.exists_mono(wid, vid)

    def subrep_vertices(self, vid: int) -> list[int]:
        """All w != v whose indecomposable embeds into v's."""
        return [w for w, _ in self.candidates_into(vid) if self.exists_mono(w, vid)]


def is_totally_stable_border(sw: StabilityWeights, ar: ARQuiver) -> bool:
    """True iff the slope strictly increases across every border sequence."""
    for bs in ar.border_sequences():
        if slope(sw, ar.dim(bs.start)) >= slope(sw, ar.dim(bs.end)):
            return False
    return True


def is_stable(sw: StabilityWeights, v, ar: ARQuiver, oracle: SubrepOracle) -> bool:
    """True iff every proper indecomposable subrepresentation of v has
    strictly smaller slope (ties count as unstable)."""
    vid = v.id if isinstance(v, ARVertex) else int(v)
    sv = slope(sw, ar.dim(vid))
    for wid, _ in oracle.candidates_into(vid):
        if slope(sw, ar.dim(wid)) >= sv and oracle.exists_mono(wid, vid):
            return False
    return True


def is_totally_stable_bruteforce(sw: StabilityWeights, ar: ARQuiver, oracle: SubrepOracle) -> bool:
    """Conjunction of is_stable over every AR vertex.

    Slopes are consulted before the oracle so that only potential
    violations trigger mono queries; this changes the evaluation order,
    never the verdict.
    """
    slopes = slope_table(sw, ar)
    for wid, vid, _ in oracle.candidate_pairs:
        if slopes[wid] >= slopes[vid] and oracle.exists_mono(wid, vid):
            return False
    return True


def arrow_positivity_report(sw: StabilityWeights, ar: ARQuiver) -> list[tuple[tuple[int, int], bool]]:
    """Per-arrow flag: does the slope strictly increase along the arrow?
    For an irreducible morphism this is equivalent to positivity of its
    completed short exact sequence, by the see-saw property."""
    slopes = slope_table(sw, ar)
    return [((s, t), slopes[s] < slopes[t]) for s, t in ar.arrows]


def sample_weights(rank: int, rng: random.Random) -> StabilityWeights:
    """The randomized-trial distribution: integer theta in [-20, 20] and
    integer w in [1, 5], entrywise uniform."""
    theta = tuple(Fraction(rng.randint(-20, 20)) for _ in range(rank))
    w = tuple(Fraction(rng.randint(1, 5)) for _ in range(rank))
    return StabilityWeights(theta, w)


def _anchored_weights(witness: StabilityWeights, rng: random.Random) -> StabilityWeights:
    scale = rng.randint(1, 2)
    spread = max(1, max(abs(t) for t in witness.theta) // 3)
    theta = tuple(
        Fraction(scale * t + rng.randint(-spread, spread)) for t in witness.theta
    )
    return StabilityWeights(theta, witness.w)


def equivalence_trials(
    ar: ARQuiver, oracle: SubrepOracle, trials: int, seed: int
) -> dict:
    """Compare the two deciders on randomized weights.

    Uniform box samples alone almost never produce a totally stable weight
    on the larger diagrams (the stable cone is a sliver of the box), so the
    sampler mixes in a small fraction of draws anchored at a searched-for
    totally stable weight pair; the first two trials are that witness and
    its theta-negation, which guarantees both verdicts occur whenever
    border sequences exist and the weighted family admits a witness at all.
    """
    from . import lp
    from .reps import _derive_seed

    rng = random.Random(_derive_seed("equiv", seed, ar.quiver.spec_string()))
    rank = ar.quiver.rank
    witness = None
    if ar.border_sequences():
        system, res = lp.find_totally_stable_weights(ar, seed=seed)
        if isinstance(res, lp.Feasible):
            witness = StabilityWeights(tuple(map(Fraction, res.theta)), system.w)
    agreements = 0
    disagreements = []
    stable = 0
    for i in range(trials):
        if witness is not None and i == 0:
            sw = witness
        elif witness is not None and i == 1:
            sw = StabilityWeights(tuple(-t for t in witness.theta), witness.w)
        elif witness is not None and rng.random() < 0.15:
            sw = _anchored_weights(witness, rng)
        else:
            sw = sample_weights(rank, rng)
        b = is_totally_stable_border(sw, ar)
        f = is_totally_stable_bruteforce(sw, ar, oracle)
        if b == f:
            agreements += 1
        else:
            disagreements.append(
                {
                    "trial": i,
                    "theta": [str(t) for t in sw.theta],
                    "w": [str(x) for x in sw.w],
                    "border": b,
                    "bruteforce": f,
                }
            )
        if b:
            stable += 1
    return {
        "quiver": ar.quiver.spec_string(),
        "trials": trials,
        "agreements": agreements,
        "disagreements": disagreements[:10],
        "stable_weights": stable,
        "unstable_weights": trials - stable,
        "both_verdicts_seen": 0 < stable < trials or not ar.border_sequences(),
    }
