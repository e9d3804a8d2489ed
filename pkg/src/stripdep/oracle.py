"""Exhaustive enumeration oracle for small substrate widths.

For independent uniform targets, the order in which the K sites are first hit
is a uniform random permutation, and the final root set depends on the target
sequence only through that order. Summing over all K! first-hit orders with
weight 1/K! therefore gives exact distributions of every final-surface
statistic, independently of both the simulator and the generating-function
engines.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .process import BoundaryMode, MIN_WIDTH
from .ratpoly import RationalPolynomial

# Hard guard: K! permutations; 10! = 3,628,800 is the largest tolerable sweep.
MAX_ENUMERATION_WIDTH = 10


class EnumerationLimitError(RuntimeError):
    """Raised when an enumeration request exceeds MAX_ENUMERATION_WIDTH."""

    def __init__(self, K: int):
        super().__init__(
            f"enumeration over K! first-hit orders is capped at "
            f"K = {MAX_ENUMERATION_WIDTH} (requested K = {K})")
        self.K = K


def _check_enumeration_width(K: int) -> None:
    if K < MIN_WIDTH:
        raise ValueError(f"substrate width must be >= {MIN_WIDTH}, got {K}")
    if K > MAX_ENUMERATION_WIDTH:
        raise EnumerationLimitError(K)


@dataclass(frozen=True)
class ExactDistribution:
    """Distribution on a finite integer support with exact probabilities."""

    statistic: str
    K: int
    mode: BoundaryMode
    support: dict[int, Fraction]
    i: int | None = field(default=None)

    def __post_init__(self):
        total = sum(self.support.values(), Fraction(0))
        if total != 1:
            raise ValueError(f"probabilities sum to {total}, not 1")
        if any(p < 0 for p in self.support.values()):
            raise ValueError("negative probability")

    def probability(self, value: int) -> Fraction:
        return self.support.get(value, Fraction(0))

    def mean(self) -> Fraction:
        return sum((Fraction(v) * p for v, p in self.support.items()), Fraction(0))

    def variance(self) -> Fraction:
        m = self.mean()
        second = sum((Fraction(v * v) * p for v, p in self.support.items()), Fraction(0))
        return second - m * m

    def pgf(self) -> RationalPolynomial:
        coeffs = [Fraction(0)] * (max(self.support) + 1 if self.support else 1)
        for v, p in self.support.items():
            coeffs[v] = p
        return RationalPolynomial(coeffs)

    def to_json_dict(self) -> dict:
        out = {
            "statistic": self.statistic,
            "K": self.K,
            "mode": self.mode.value,
            "support": {str(v): f"{p.numerator}/{p.denominator}"
                        for v, p in sorted(self.support.items())},
        }
        if self.i is not None:
            out["i"] = self.i
        return out


@lru_cache(maxsize=None)
def _enumerate(K: int, mode: BoundaryMode):
    """One sweep over all K! first-hit orders.

    Returns (root_counter, gap_counters, total) where gap_counters[i] maps a
    value v > 0 to the number of orders with exactly v gaps of index i
    (cyclic mode only; zero counts are implicit).
    """
    total = math.factorial(K)
    root_counter: Counter = Counter()
    gap_counters = {i: Counter() for i in range(1, K)}
    if mode is BoundaryMode.CYCLIC:
        for ranks in itertools.permutations(range(K)):
            positions = [k for k in range(K)
                         if ranks[k] < ranks[k - 1] and ranks[k] < ranks[(k + 1) % K]]
            root_counter[len(positions)] += 1
            # circular distance b - a between consecutive roots is gap index
            # (b - a) - 1; the wrap pair closes the cycle
            gaps: Counter = Counter()
            for a, b in zip(positions, positions[1:]):
                gaps[b - a - 1] += 1
            gaps[K - (positions[-1] - positions[0]) - 1] += 1
            for i, v in gaps.items():
                gap_counters[i][v] += 1
    else:
        interior = range(1, K - 1)
        for ranks in itertools.permutations(range(K)):
            card = sum(1 for k in interior
                       if ranks[k] < ranks[k - 1] and ranks[k] < ranks[k + 1])
            root_counter[card] += 1
    return root_counter, gap_counters, total


def enumerate_root_distribution(K: int, mode: BoundaryMode) -> ExactDistribution:
    """Exact distribution of the final root count by brute-force enumeration."""
    _check_enumeration_width(K)
    root_counter, _, total = _enumerate(K, mode)
    support = {v: Fraction(c, total) for v, c in sorted(root_counter.items())}
    return ExactDistribution(statistic="roots", K=K, mode=mode, support=support)


def enumerate_gap_distribution(K: int, i: int) -> ExactDistribution:
    """Exact distribution of the number of gaps of index ``i`` (cyclic mode)."""
    _check_enumeration_width(K)
    if not 1 <= i <= K - 1:
        raise ValueError(f"gap index {i} out of range 1..{K - 1}")
    _, gap_counters, total = _enumerate(K, BoundaryMode.CYCLIC)
    counter = dict(gap_counters[i])
    counter[0] = counter.get(0, 0) + total - sum(gap_counters[i].values())
    support = {v: Fraction(c, total) for v, c in sorted(counter.items()) if c}
    return ExactDistribution(statistic="gaps", K=K, mode=BoundaryMode.CYCLIC,
                             support=support, i=i)
