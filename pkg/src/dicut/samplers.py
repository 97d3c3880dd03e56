"""Randomized partitioning primitives with explicit expectation formulas and
retry-until-accept contracts.

Each sampler draws bounded independent attempts, re-checks the directional
cuts of every attempt from scratch, and accepts the first attempt meeting
its recorded thresholds; otherwise the best attempt seen is returned with
accepted=False so callers can fall back honestly.  Thresholds are computed
in exact rational arithmetic, so acceptance at the boundary is unambiguous.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .core import Bipartition, CutStats, Digraph, cut_stats
from .decomposition import StarDecomposition

DEFAULT_MAX_ATTEMPTS = 200


def exact_fraction(x: float | Fraction | int | str) -> Fraction:
    """Exact rational value of a tolerance, reading floats by their decimal
    representation so 0.05 means 1/20, not its binary approximation."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


@dataclass(frozen=True)
class SamplerConfig:
    """Placement probability, tolerance, seed, and retry budget."""

    p: Fraction | float = Fraction(1, 2)
    epsilon: float | Fraction = 0.1
    seed: int = 0
    max_attempts: int = DEFAULT_MAX_ATTEMPTS

    def __post_init__(self) -> None:
        if not 0 <= self.p <= 1:
            raise ValueError(f"p must lie in [0,1], got {self.p}")
        if self.epsilon <= 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if self.max_attempts < 1:
            raise ValueError("max_attempts must be at least 1")


@dataclass(frozen=True)
class SampleOutcome:
    """Partition found by a sampler together with its acceptance record."""

    partition: Bipartition
    stats: CutStats
    accepted: bool
    attempts_used: int
    targets: tuple[Fraction, Fraction]
    warning: str | None = None

    def meets_targets(self) -> bool:
        return self.stats.e12 >= self.targets[0] and self.stats.e21 >= self.targets[1]


@dataclass(frozen=True)
class EdgeProfile:
    """Edge counts of D classified against fixed disjoint sets A1, A2."""

    a1a2: int = 0
    a2a1: int = 0
    a1b: int = 0
    ba1: int = 0
    a2b: int = 0
    ba2: int = 0
    bb: int = 0

    @property
    def total(self) -> int:
        return (
            self.a1a2 + self.a2a1 + self.a1b + self.ba1 + self.a2b + self.ba2 + self.bb
        )


def edge_profile(digraph: Digraph, a1: Iterable[int], a2: Iterable[int]) -> EdgeProfile:
    s1, s2 = set(a1), set(a2)
    if s1 & s2:
        raise ValueError(f"A1 and A2 overlap on {sorted(s1 & s2)}")
    counts = dict(a1a2=0, a2a1=0, a1b=0, ba1=0, a2b=0, ba2=0, bb=0)
    for u, v in digraph.edges:
        cu = 1 if u in s1 else 2 if u in s2 else 0
        cv = 1 if v in s1 else 2 if v in s2 else 0
        if cu == 1 and cv == 2:
            counts["a1a2"] += 1
        elif cu == 2 and cv == 1:
            counts["a2a1"] += 1
        elif cu == 1 and cv == 0:
            counts["a1b"] += 1
        elif cu == 0 and cv == 1:
            counts["ba1"] += 1
        elif cu == 2 and cv == 0:
            counts["a2b"] += 1
        elif cu == 0 and cv == 2:
            counts["ba2"] += 1
        elif cu == 0 and cv == 0:
            counts["bb"] += 1
        # edges inside A1 or inside A2 never cross and are ignored
    return EdgeProfile(**counts)


def expected_mean_cuts(profile: EdgeProfile, p: Fraction) -> tuple[Fraction, Fraction]:
    """Expected (e12, e21) when B-vertices go to side 1 with probability p."""
    q = 1 - p
    e12 = profile.a1a2 + q * profile.a1b + p * profile.ba2 + p * q * profile.bb
    e21 = profile.a2a1 + p * profile.a2b + q * profile.ba1 + p * q * profile.bb
    return e12, e21


def expected_cuts(
    digraph: Digraph, a1: Iterable[int], a2: Iterable[int], p
) -> tuple[float, float]:
    """Exact expectations of both directional cuts under independent placement
    of the leftover set B (side 1 with probability p)."""
    prof = edge_profile(digraph, a1, a2)
    e12, e21 = expected_mean_cuts(prof, Fraction(p))
    return float(e12), float(e21)


def _draw_partition(
    n: int,
    a1: set[int],
    a2: set[int],
    b_order: list[int],
    p_float: float,
    rng: random.Random,
) -> Bipartition:
    side = [0] * n
    for v in a1:
        side[v] = 1
    for v in a2:
        side[v] = 2
    for v in b_order:
        side[v] = 1 if rng.random() < p_float else 2
    return Bipartition(tuple(side))


def second_moment_partition(
    digraph: Digraph,
    a1: Iterable[int],
    a2: Iterable[int],
    config: SamplerConfig,
) -> SampleOutcome:
    """Independent placement of B with acceptance thresholds one epsilon*m
    below each expected directional cut.

    The thresholds come with a degree hypothesis (max degree over B at most
    epsilon^2 m / 4); when it fails the sampler still runs, flagged best-effort.
    """
    if digraph.n == 0:
        raise ValueError("empty graph")
    s1, s2 = set(a1), set(a2)
    prof = edge_profile(digraph, s1, s2)
    p = Fraction(config.p)
    eps = exact_fraction(config.epsilon)
    m = digraph.m
    m12, m21 = expected_mean_cuts(prof, p)
    targets = (m12 - eps * m, m21 - eps * m)

    b_order = sorted(v for v in range(digraph.n) if v not in s1 and v not in s2)
    warning = None
    if b_order:
        max_deg = max(digraph.degree(v) for v in b_order)
        if Fraction(max_deg) > eps * eps * m / 4:
            warning = (
                f"degree hypothesis fails: max B-degree {max_deg} exceeds "
                f"eps^2*m/4 = {float(eps * eps * m / 4):.3f}; best-effort result"
            )
    rng = random.Random(config.seed)
    p_float = float(p)
    best: SampleOutcome | None = None
    attempts = config.max_attempts if b_order else 1
    for attempt in range(1, attempts + 1):
        part = _draw_partition(digraph.n, s1, s2, b_order, p_float, rng)
        stats = cut_stats(digraph, part)
        outcome = SampleOutcome(
            part, stats, stats.e12 >= targets[0] and stats.e21 >= targets[1],
            attempt, targets, warning,
        )
        if outcome.accepted:
            return outcome
        if best is None or stats.min_cut > best.stats.min_cut:
            best = outcome
    assert best is not None
    return best


def quarter_partition(
    digraph: Digraph,
    epsilon: float | Fraction,
    seed: int,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
) -> SampleOutcome:
    """Uniform random bipartition accepted when both directional cuts reach
    (1/4 - epsilon) m; valid regime is max degree <= eps^2 m/4 or m >= 8n/eps^2."""
    config = SamplerConfig(Fraction(1, 2), epsilon, seed, max_attempts)
    outcome = second_moment_partition(digraph, (), (), config)
    eps = exact_fraction(epsilon)
    dense_enough = digraph.m >= 8 * digraph.n / (eps * eps)
    if outcome.warning is not None and dense_enough:
        outcome = SampleOutcome(
            outcome.partition, outcome.stats, outcome.accepted,
            outcome.attempts_used, outcome.targets, None,
        )
    return outcome


def star_bisection(
    digraph: Digraph,
    a1: Iterable[int],
    a2: Iterable[int],
    decomposition: StarDecomposition,
    epsilon: float,
    seed: int,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
) -> SampleOutcome:
    """Random bisection of B driven by a star decomposition: each apex lands
    on a uniform side, its leaves on the other, leftover vertices uniformly.

    Acceptance thresholds are the odd-component bisection bounds
    base + e(B)/4 + (n - tau)/8 - epsilon*n per direction, with tau replaced
    by the antiparallel-discounted tight count when the decomposition was
    seeded that way.
    """
    s1, s2 = set(a1), set(a2)
    expect_b = set(range(digraph.n)) - s1 - s2
    if decomposition.covered() != expect_b:
        raise ValueError("decomposition does not cover exactly V minus A1, A2")
    prof = edge_profile(digraph, s1, s2)
    eps = exact_fraction(epsilon)
    n = digraph.n
    tau = decomposition.tau_prime if decomposition.seeded_antiparallel else decomposition.tau
    base1 = prof.a1a2 + Fraction(prof.a1b + prof.ba2, 2)
    base2 = prof.a2a1 + Fraction(prof.ba1 + prof.a2b, 2)
    gain = Fraction(prof.bb, 4) + Fraction(n - tau, 8) - eps * n
    targets = (base1 + gain, base2 + gain)

    stars = decomposition.stars
    leftover = decomposition.leftover
    rng = random.Random(seed)
    best: SampleOutcome | None = None
    for attempt in range(1, max_attempts + 1):
        side = [0] * n
        for v in s1:
            side[v] = 1
        for v in s2:
            side[v] = 2
        for star in stars:
            apex_side = 1 if rng.random() < 0.5 else 2
            side[star.apex] = apex_side
            other = 3 - apex_side
            for v in star.seed:
                if v != star.apex:
                    side[v] = other
            for v in star.leaves:
                side[v] = other
        for v in leftover:
            side[v] = 1 if rng.random() < 0.5 else 2
        part = Bipartition(tuple(side))
        stats = cut_stats(digraph, part)
        outcome = SampleOutcome(
            part, stats, stats.e12 >= targets[0] and stats.e21 >= targets[1],
            attempt, targets,
        )
        if outcome.accepted:
            return outcome
        if best is None or stats.min_cut > best.stats.min_cut:
            best = outcome
    assert best is not None
    return best
