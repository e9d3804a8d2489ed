"""Ballistic deposition on a strip: simulation, exact distributions, oracle.

The package has three independent routes to the same final-surface
statistics, cross-validated against each other:

- `stripdep.process` / `stripdep.ensemble`: Monte Carlo simulation of the
  deposition chain (full heights or the first-hit permutation fast path);
- `stripdep.roots` / `stripdep.gaps`: exact distributions via generating
  function recursions in rational arithmetic;
- `stripdep.oracle`: brute-force enumeration over all first-hit orders for
  small widths.
"""

from .ensemble import (
    EnsembleConfig,
    EnsembleConfigError,
    EnsembleStats,
    empirical_gap_average,
    height_growth_estimate,
    normalized_ks_statistic,
    run_ensemble,
)
from .gaps import (
    AbcTriple,
    GapRecursionTable,
    TableBudgetError,
    abc_recursion,
    gap_distribution,
    gap_moments,
    gap_pgf_table,
)
from .oracle import (
    EnumerationLimitError,
    ExactDistribution,
    enumerate_gap_distribution,
    enumerate_root_distribution,
)
from .process import (
    BoundaryMode,
    FirstHitPermutation,
    GapVector,
    HeightField,
    RootSet,
    deposit,
    first_hit_ranks,
    gap_vector,
    height_profile_stats,
    neighbor_set,
    roots_from_permutation,
    simulate_final_roots,
)
from .ratpoly import (
    MomentSummary,
    RationalFunctionSeries,
    RationalPolynomial,
    pgf_moments,
    series_coefficients,
)
from .roots import (
    asymptotic_root_pgf,
    aux_root_pgf,
    cyclic_root_pgf,
    pole_position,
    root_series_closed_form,
)

__version__ = "0.1.0"
