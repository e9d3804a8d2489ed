"""Ballistic deposition on a strip of K sites.

A unit square drops onto a uniformly random site and sticks at one plus the
maximum height over the site and its neighbors. Two boundary conventions are
supported: CYCLIC wraps the strip into a ring; AUXILIARY pins two virtual
boundary cells at height 1 outside sites 1 and K (so the strip is a path and
the edge sites can never land on the surface).

A site is a *root* when its first deposit lands at height 1, which happens
exactly when the site is targeted before every neighbor. Final root sets are
therefore determined by the order in which sites are first hit, and a uniform
random permutation of first-hit ranks reproduces their distribution without
simulating heights; `roots_from_permutation` is that fast path and
`simulate_final_roots` is the full-height reference path.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

MIN_WIDTH = 3

# Cap on deposition steps per run; keeps heights comfortably inside 64-bit
# range for consumers that store them in fixed-width arrays.
MAX_STEPS = 2**40


class BoundaryMode(enum.Enum):
    CYCLIC = "cyclic"
    AUXILIARY = "aux"


def _check_width(K: int) -> None:
    if K < MIN_WIDTH:
        raise ValueError(f"substrate width must be >= {MIN_WIDTH}, got {K}")


def _check_site(k: int, K: int) -> None:
    _check_width(K)
    if not 1 <= k <= K:
        raise ValueError(f"site {k} out of range 1..{K}")


def neighbor_set(k: int, K: int, mode: BoundaryMode) -> frozenset[int]:
    """Sites whose heights a deposit at ``k`` sticks on top of (k included).

    In AUXILIARY mode the result may contain the virtual boundary labels
    0 and K+1.
    """
    _check_site(k, K)
    if mode is BoundaryMode.CYCLIC:
        left = K if k == 1 else k - 1
        right = 1 if k == K else k + 1
        return frozenset((left, k, right))
    return frozenset((k - 1, k, k + 1))


@dataclass(frozen=True)
class HeightField:
    """Height configuration after n deposits; value-semantic."""

    K: int
    mode: BoundaryMode
    heights: tuple[int, ...]
    n: int = 0

    @classmethod
    def empty(cls, K: int, mode: BoundaryMode) -> "HeightField":
        _check_width(K)
        return cls(K=K, mode=mode, heights=(0,) * K, n=0)

    def height(self, j: int) -> int:
        """Height at label j; virtual boundary cells report the pinned 1."""
        if self.mode is BoundaryMode.AUXILIARY and j in (0, self.K + 1):
            return 1
        if not 1 <= j <= self.K:
            raise ValueError(f"label {j} out of range for width {self.K}")
        return self.heights[j - 1]


def deposit(field: HeightField, target: int) -> HeightField:
    """One deposition step at ``target``; returns the updated field."""
    _check_site(target, field.K)
    new_height = 1 + max(field.height(j) for j in neighbor_set(target, field.K, field.mode))
    heights = list(field.heights)
    heights[target - 1] = new_height
    return HeightField(K=field.K, mode=field.mode, heights=tuple(heights), n=field.n + 1)


def height_profile_stats(field: HeightField) -> tuple[int, float]:
    """(max height, mean height) of the current profile."""
    return max(field.heights), sum(field.heights) / field.K


@dataclass(frozen=True)
class FirstHitPermutation:
    """ranks[k-1] = rank (1..K) of site k's first-target time."""

    K: int
    ranks: tuple[int, ...]

    def __post_init__(self):
        _check_width(self.K)
        if sorted(self.ranks) != list(range(1, self.K + 1)):
            raise ValueError("ranks must be a permutation of 1..K")


@dataclass(frozen=True)
class RootSet:
    """Sites whose particle sits directly on the surface (height 1)."""

    K: int
    mode: BoundaryMode
    roots: tuple[int, ...]

    def __post_init__(self):
        if any(self.roots[j] >= self.roots[j + 1] for j in range(len(self.roots) - 1)):
            raise ValueError("roots must be strictly increasing")

    @property
    def card(self) -> int:
        return len(self.roots)


@dataclass(frozen=True)
class GapVector:
    """counts[i-1] = number of consecutive-root pairs at circular distance i+1.

    Defined for the cyclic process; the pair wrapping around the strip is
    included, so a single root contributes one gap of index K-1.
    """

    K: int
    counts: tuple[int, ...]

    def count(self, i: int) -> int:
        if not 1 <= i <= self.K - 1:
            raise ValueError(f"gap index {i} out of range 1..{self.K - 1}")
        return self.counts[i - 1]

    def total(self) -> int:
        return sum(self.counts)

    def weighted_total(self) -> int:
        """sum over i of i * counts[i]; equals K - (number of roots)."""
        return sum(i * c for i, c in enumerate(self.counts, start=1))


def roots_from_permutation(perm: FirstHitPermutation, mode: BoundaryMode) -> RootSet:
    """Root set implied by first-hit ranks: a site is a root iff it is hit
    before every neighbor. Virtual boundary cells in AUXILIARY mode are
    occupied from the start, so sites 1 and K can never be roots there."""
    K = perm.K
    ranks = perm.ranks
    roots = []
    if mode is BoundaryMode.CYCLIC:
        for k in range(1, K + 1):
            r = ranks[k - 1]
            if r < ranks[k - 2] and r < ranks[k % K]:
                roots.append(k)
    else:
        for k in range(2, K):
            r = ranks[k - 1]
            if r < ranks[k - 2] and r < ranks[k]:
                roots.append(k)
    return RootSet(K=K, mode=mode, roots=tuple(roots))


def first_hit_ranks(targets, K: int) -> FirstHitPermutation:
    """Extract first-hit ranks from a target sequence covering all sites."""
    _check_width(K)
    ranks = [0] * K
    seen = 0
    for t in targets:
        _check_site(t, K)
        if ranks[t - 1] == 0:
            seen += 1
            ranks[t - 1] = seen
        if seen == K:
            break
    if seen < K:
        missing = [k for k in range(1, K + 1) if ranks[k - 1] == 0]
        raise ValueError(f"target sequence never hits sites {missing}")
    return FirstHitPermutation(K=K, ranks=tuple(ranks))


def gap_vector(roots: RootSet) -> GapVector:
    """Gap counts between consecutive roots, including the wrap-around pair."""
    if roots.mode is not BoundaryMode.CYCLIC:
        raise ValueError("gap vector is defined for the cyclic process only")
    if roots.card == 0:
        raise ValueError("cyclic root set cannot be empty")
    K = roots.K
    counts = [0] * (K - 1)
    pos = roots.roots
    for a, b in zip(pos, pos[1:]):
        counts[b - a - 2] += 1          # circular distance b-a = i+1
    counts[K - (pos[-1] - pos[0]) - 2] += 1
    return GapVector(K=K, counts=tuple(counts))


def simulate_final_roots(K: int, mode: BoundaryMode,
                         rng: np.random.Generator) -> tuple[RootSet, GapVector | None]:
    """Full-height simulation of the deposition chain until the root set is
    final, i.e. until every site has been targeted at least once (a site's
    root status is decided at its first hit). Returns the root set and, in
    cyclic mode, the gap vector."""
    _check_width(K)
    heights = [0] * K
    if mode is BoundaryMode.AUXILIARY:
        left_of = lambda t: 1 if t == 0 else heights[t - 1]
        right_of = lambda t: 1 if t == K - 1 else heights[t + 1]
    else:
        left_of = lambda t: heights[t - 1]
        right_of = lambda t: heights[(t + 1) % K]
    roots = []
    unhit = K
    while unhit:
        for t in rng.integers(0, K, size=min(4 * K, 1 << 16)).tolist():
            h = max(heights[t], left_of(t), right_of(t)) + 1
            if heights[t] == 0:
                unhit -= 1
                if h == 1:
                    roots.append(t + 1)
            heights[t] = h
            if not unhit:
                break
    root_set = RootSet(K=K, mode=mode, roots=tuple(sorted(roots)))
    if mode is BoundaryMode.CYCLIC:
        return root_set, gap_vector(root_set)
    return root_set, None
