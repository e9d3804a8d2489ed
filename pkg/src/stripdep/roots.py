"""Exact distribution of the final root count.

The auxiliary (pinned-boundary) process of width K admits a first-step
decomposition: the first deposit either extends one of the boundary columns
(no new root, width effectively shrinks by one) or lands in the interior,
creating a root and splitting the strip into two independent sub-strips.
For the PGF L_K(z) = E(z^{#roots}) this gives

    L_K(z) = (1/K) * (2 L_{K-1}(z) + z * sum_{j=2}^{K-1} L_{j-1}(z) L_{K-j}(z))

with L_0 = L_1 = L_2 = 1. The cyclic process of width K, observed after its
first particle, is the auxiliary process of width K-1 with one extra root, so
its PGF is z * L_{K-1}(z).

Two floating-point companions cross-check the exact engine: the closed form
of the series sum over K (`root_series_closed_form`) and the dominant-pole
approximation of L_K(z) for large K (`asymptotic_root_pgf`).

The recursion forces P(#roots = 0) = L_K(0) = 2**(K-1)/K! for the auxiliary
process (each of the first steps must fall next to a boundary column); this
value is pinned by the enumeration oracle in the test suite.
"""

from __future__ import annotations

import cmath
import math

from .process import MIN_WIDTH
from .ratpoly import MomentSummary, RationalPolynomial, pgf_moments

__all__ = [
    "aux_root_pgf",
    "cyclic_root_pgf",
    "pgf_moments",
    "MomentSummary",
    "root_series_closed_form",
    "asymptotic_root_pgf",
    "pole_position",
]

_ONE = RationalPolynomial.one()
_pgf_cache: list[RationalPolynomial] = [_ONE, _ONE, _ONE]


def aux_root_pgf(K: int) -> RationalPolynomial:
    """PGF of the root count of the auxiliary process of width K; memoized."""
    if K < 0:
        raise ValueError(f"width must be non-negative, got {K}")
    while len(_pgf_cache) <= K:
        n = len(_pgf_cache)
        conv = RationalPolynomial.zero()
        for j in range(2, n):
            conv = conv + _pgf_cache[j - 1] * _pgf_cache[n - j]
        # interior landings create one root each, hence the factor of z
        _pgf_cache.append((2 * _pgf_cache[n - 1] + conv.shift(1)) / n)
    return _pgf_cache[K]


def cyclic_root_pgf(K: int) -> RationalPolynomial:
    """PGF of the final root count of the cyclic process of width K >= 3."""
    if K < MIN_WIDTH:
        raise ValueError(f"substrate width must be >= {MIN_WIDTH}, got {K}")
    return aux_root_pgf(K - 1).shift(1)


def root_series_closed_form(x, z, pole_tolerance: float = 1e-12) -> complex:
    """Closed form of sum_{K>=1} L_K(z) x**K, valid near (x, z) = (0, 1).

    Equals tan(x*sqrt(z-1)) / (sqrt(z-1) - tan(x*sqrt(z-1))); the singularity
    at z = 1 is removable with value x/(1-x).
    """
    x = complex(x)
    z = complex(z)
    if z == 1:
        den = 1 - x
        if abs(den) <= pole_tolerance:
            raise ValueError("evaluation at the x = 1 pole")
        return x / den
    w = cmath.sqrt(z - 1)
    t = cmath.tan(x * w)
    den = w - t
    if abs(den) <= pole_tolerance * max(1.0, abs(t)):
        raise ValueError(f"evaluation too close to a pole (denominator {den})")
    return t / den


def pole_position(z: float) -> float:
    """Smallest positive pole of the series in x for real z near 1 (z != 1).

    For z > 1 this is arctan(sqrt(z-1))/sqrt(z-1); for 0 < z < 1 the same
    expression continues to artanh(sqrt(1-z))/sqrt(1-z). Tends to 1 as z -> 1.
    """
    if z <= 0 or z == 1:
        raise ValueError(f"pole position defined for real z > 0, z != 1; got {z}")
    if z > 1:
        s = math.sqrt(z - 1)
        return math.atan(s) / s
    s = math.sqrt(1 - z)
    return math.atanh(s) / s


def asymptotic_root_pgf(z: float, K: int) -> float:
    """Dominant-pole approximation rho(z)**(-K-1) / z of L_K(z).

    The remainder decays geometrically faster in K than the main term grows,
    so the relative error shrinks geometrically. z = 1 is excluded (use the
    exact engine there).
    """
    if K < MIN_WIDTH:
        raise ValueError(f"substrate width must be >= {MIN_WIDTH}, got {K}")
    rho = pole_position(z)
    return rho ** (-(K + 1)) / z
