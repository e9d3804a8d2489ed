"""Exact distributions of gap counts between consecutive roots.

For the cyclic process of width K, D(i, K) counts pairs of consecutive roots
at circular distance i+1. Conditioning on the first deposit reduces the
cyclic problem to an interval with a root at each end, a block of l occupied
sites hugging the left root, r occupied sites hugging the right root, and an
empty stretch in between. With k the inner width, the PGF of the number of
index-i gaps that eventually form inside the interval satisfies, for
m = k - l - r >= 3,

    E[(l,r,k)] = (1/m) * ( E[(l+1,r,k)]
                           + sum_{j=2}^{m-1} E[(l,0,j+l-1)] * E[(0,r,k-j-l)]
                           + E[(l,r+1,k)] )

(the first deposit extends the left block, splits the interval at a fresh
root, or extends the right block), with boundary value u**1{k==i} once the
empty stretch has shrunk to m <= 2 and no further root can appear. The gap
count of the full ring is the entry (0, 0, K-1).

A second, much cheaper engine covers i = 1: the interval PGFs for unit gaps
collapse onto a triple of polynomial sequences (a_K, b_K, c_K) driven by
coupled convolution recursions, with c_K the PGF of D(1, K+1). The two
engines cross-validate each other entry by entry.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .process import MIN_WIDTH
from .ratpoly import MomentSummary, RationalPolynomial, pgf_moments

# Stored-coefficient budget for one recursion table. Generous for every use
# in this package (width 40, all gap lengths up to 7 stays under ~2e5).
DEFAULT_COEFFICIENT_BUDGET = 5_000_000

_U = RationalPolynomial.monomial(1)
_ONE = RationalPolynomial.one()
_ZERO = RationalPolynomial.zero()
_ONE_MINUS_U = RationalPolynomial((1, -1))


class TableBudgetError(RuntimeError):
    """Raised when a recursion table would exceed its coefficient budget."""

    def __init__(self, i: int, state: tuple[int, int, int], budget: int):
        l, r, k = state
        super().__init__(
            f"gap table for i={i} exceeded its budget of {budget} stored "
            f"coefficients at state (l={l}, r={r}, k={k})")
        self.i = i
        self.state = state
        self.budget = budget


class GapRecursionTable:
    """Interval PGFs E(u^gap count) for one gap index i, memoized over (l, r, k).

    Only non-boundary states (k - l - r >= 3) are stored; boundary states are
    synthesized on demand. Reflection symmetry of the interval lets the table
    keep canonical l <= r entries, halving storage.
    """

    def __init__(self, i: int, k_max: int,
                 coefficient_budget: int = DEFAULT_COEFFICIENT_BUDGET):
        if i < 1:
            raise ValueError(f"gap index must be >= 1, got {i}")
        if k_max < 0:
            raise ValueError(f"k_max must be >= 0, got {k_max}")
        self.i = i
        self.coefficient_budget = coefficient_budget
        self.k_max = -1
        self._entries: dict[tuple[int, int, int], RationalPolynomial] = {}
        self._stored_coefficients = 0
        self.extend(k_max)

    def _boundary(self, k: int) -> RationalPolynomial:
        return _U if k == self.i else _ONE

    def _get(self, l: int, r: int, k: int) -> RationalPolynomial:
        if k - l - r <= 2:
            return self._boundary(k)
        if l > r:
            l, r = r, l
        return self._entries[(l, r, k)]

    def entry(self, l: int, r: int, k: int) -> RationalPolynomial:
        """PGF for the interval state (l, r, k)."""
        if l < 0 or r < 0 or l + r > k:
            raise ValueError(f"invalid interval state (l={l}, r={r}, k={k})")
        if k > self.k_max:
            raise ValueError(f"state (l={l}, r={r}, k={k}) beyond table k_max {self.k_max}")
        return self._get(l, r, k)

    def _compute(self, l: int, r: int, k: int) -> RationalPolynomial:
        m = k - l - r
        acc = self._get(l + 1, r, k) + self._get(l, r + 1, k)
        for j in range(2, m):
            acc = acc + self._get(l, 0, j + l - 1) * self._get(0, r, k - j - l)
        return acc / m

    def _store(self, l: int, r: int, k: int, poly: RationalPolynomial) -> None:
        if poly.sum_of_coefficients() != 1 or any(c < 0 for c in poly.coefficients):
            raise ArithmeticError(
                f"table entry (l={l}, r={r}, k={k}) for i={self.i} is not a PGF")
        self._stored_coefficients += len(poly.coefficients)
        if self._stored_coefficients > self.coefficient_budget:
            raise TableBudgetError(self.i, (l, r, k), self.coefficient_budget)
        self._entries[(l, r, k)] = poly

    def extend(self, k_max: int) -> "GapRecursionTable":
        """Complete the table for all states with k <= k_max."""
        for k in range(max(self.k_max + 1, 3), k_max + 1):
            for s in range(k - 3, -1, -1):       # s = l + r, deepest layers first
                for l in range(s // 2 + 1):
                    r = s - l
                    self._store(l, r, k, self._compute(l, r, k))
        self.k_max = max(self.k_max, k_max)
        return self

    def __len__(self) -> int:
        return len(self._entries)


_table_cache: dict[int, GapRecursionTable] = {}


def gap_pgf_table(i: int, k_max: int) -> GapRecursionTable:
    """Shared, lazily extended recursion table for gap index ``i``."""
    if i < 1:
        raise ValueError(f"gap index must be >= 1, got {i}")
    table = _table_cache.get(i)
    if table is None:
        table = _table_cache[i] = GapRecursionTable(i, k_max)
    elif table.k_max < k_max:
        table.extend(k_max)
    return table


def gap_distribution(i: int, K: int) -> RationalPolynomial:
    """PGF of the number of index-``i`` gaps of the cyclic process of width K."""
    if K < MIN_WIDTH:
        raise ValueError(f"substrate width must be >= {MIN_WIDTH}, got {K}")
    if not 1 <= i <= K - 1:
        raise ValueError(f"gap index {i} out of range 1..{K - 1}")
    return gap_pgf_table(i, K - 1).entry(0, 0, K - 1)


def gap_moments(i: int, K: int) -> MomentSummary:
    """Exact mean/variance of the index-``i`` gap count at width K."""
    return pgf_moments(gap_distribution(i, K))


@dataclass(frozen=True)
class AbcTriple:
    """K-th element of the specialized unit-gap recursion; c is the PGF of
    the unit-gap count at width K+1."""

    K: int
    a: RationalPolynomial
    b: RationalPolynomial
    c: RationalPolynomial


def abc_recursion(k_max: int) -> list[AbcTriple]:
    """Unit-gap polynomial triples for K = 3..k_max.

    The three sequences satisfy coupled convolution recursions with small
    indicator source terms; a_K(1) = b_K(1) = 0 and c_K(1) = 1 for K >= 3,
    and all three have degree (2K - 1 - 3*(-1)**K) / 4.
    """
    if k_max < MIN_WIDTH:
        raise ValueError(f"k_max must be >= {MIN_WIDTH}, got {k_max}")
    a = [_ZERO] * 3
    b = [_ZERO] * 3
    c = [_ZERO] * 3
    for K in range(2, k_max):
        nxt = K + 1
        a_src = _ZERO
        b_src = _ZERO
        c_src = _ZERO
        if K == 2:
            a_src = _ONE_MINUS_U * _ONE_MINUS_U
            b_src = _U * _ONE_MINUS_U
            c_src = RationalPolynomial((2, 0, 1))        # 2 + u**2
        elif K == 3:
            b_src = _ONE_MINUS_U
            c_src = 2 * _U
        elif K == 4:
            c_src = _ONE
        conv_bb = _ZERO
        conv_bc = _ZERO
        conv_cc = _ZERO
        for j in range(3, K - 2):
            conv_bb = conv_bb + b[j] * b[K - j]
            conv_bc = conv_bc + b[j] * c[K - j]
            conv_cc = conv_cc + c[j] * c[K - j]
        a_next = (a_src + conv_bb + 2 * (_ONE_MINUS_U * b[K - 1])) / nxt
        b_next = (b_src + a[K] + b[K] + conv_bc + _U * b[K - 1] + b[K - 2]
                  + _ONE_MINUS_U * c[K - 1]) / nxt
        c_next = (c_src + 2 * b[K] + 2 * c[K] + conv_cc + 2 * (_U * c[K - 1])
                  + 2 * c[K - 2]) / nxt
        a.append(a_next)
        b.append(b_next)
        c.append(c_next)
    return [AbcTriple(K=K, a=a[K], b=b[K], c=c[K]) for K in range(3, k_max + 1)]


def abc_degree(K: int) -> int:
    """Common degree of a_K, b_K, c_K for K >= 3."""
    return (2 * K - 1 - 3 * (-1) ** K) // 4
