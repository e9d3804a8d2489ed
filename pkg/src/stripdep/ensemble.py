"""Seeded ensemble simulation of final-surface statistics.

Each run draws its own random stream from ``SeedSequence(base_seed,
spawn_key=(run_index,))``, so an ensemble's result is a pure function of its
configuration: chunking and worker count cannot change a single sample.
Root/gap statistics use the first-hit permutation fast path (uniform random
permutation, roots = sites ranked before both neighbors), which the test
suite validates against the full height simulation; the height-growth
statistic is the one consumer that needs real heights.
"""

from __future__ import annotations

import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.special import ndtr

from .process import MAX_STEPS, MIN_WIDTH, BoundaryMode, RootSet

STAT_ROOTS = "roots"
STAT_GAPS = "gaps"
STAT_EMPIRICAL = "empirical_gap_average"
STAT_GROWTH = "height_growth"
VALID_STATISTICS = (STAT_ROOTS, STAT_GAPS, STAT_EMPIRICAL, STAT_GROWTH)

# Runs are processed in fixed-size chunks and merged in chunk order; the
# chunk size is part of the reproducibility contract only in so far as the
# per-run streams are not, i.e. not at all.
CHUNK_SIZE = 4096

GENERATOR_ID = f"numpy {np.__version__} PCG64 / SeedSequence(base_seed, spawn_key=(run,))"


class EnsembleConfigError(ValueError):
    pass


@dataclass(frozen=True)
class EnsembleConfig:
    K: int
    mode: BoundaryMode = BoundaryMode.CYCLIC
    runs: int = 200_000
    base_seed: int = 0
    statistics: tuple[str, ...] = (STAT_ROOTS,)
    gap_lengths: tuple[int, ...] = ()
    growth_steps: int = 0
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "statistics", tuple(self.statistics))
        object.__setattr__(self, "gap_lengths", tuple(self.gap_lengths))
        if self.K < MIN_WIDTH:
            raise EnsembleConfigError(f"substrate width must be >= {MIN_WIDTH}, got {self.K}")
        if self.runs < 1:
            raise EnsembleConfigError(f"runs must be >= 1, got {self.runs}")
        if self.workers < 1:
            raise EnsembleConfigError(f"workers must be >= 1, got {self.workers}")
        if not self.statistics:
            raise EnsembleConfigError("at least one statistic is required")
        unknown = [s for s in self.statistics if s not in VALID_STATISTICS]
        if unknown:
            raise EnsembleConfigError(f"unknown statistics {unknown}; valid: {VALID_STATISTICS}")
        cyclic_only = [s for s in (STAT_GAPS, STAT_EMPIRICAL, STAT_GROWTH)
                       if s in self.statistics]
        if cyclic_only and self.mode is not BoundaryMode.CYCLIC:
            raise EnsembleConfigError(f"statistics {cyclic_only} require cyclic mode")
        if STAT_GAPS in self.statistics:
            if not self.gap_lengths:
                raise EnsembleConfigError("gap statistics need at least one gap length")
            bad = [i for i in self.gap_lengths if not 1 <= i <= self.K - 1]
            if bad:
                raise EnsembleConfigError(f"gap lengths {bad} out of range 1..{self.K - 1}")
        if STAT_GROWTH in self.statistics:
            if not 1 <= self.growth_steps <= MAX_STEPS:
                raise EnsembleConfigError(
                    f"growth statistic needs 1 <= growth_steps <= 2**40, got {self.growth_steps}")

    def to_json_dict(self) -> dict:
        return {
            "K": self.K,
            "mode": self.mode.value,
            "runs": self.runs,
            "base_seed": self.base_seed,
            "statistics": list(self.statistics),
            "gap_lengths": list(self.gap_lengths),
            "growth_steps": self.growth_steps,
            "workers": self.workers,
        }


def run_stream(base_seed: int, run_index: int) -> np.random.Generator:
    """Independent, reproducible stream for one run; worker-count agnostic."""
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence(base_seed, spawn_key=(run_index,))))


def empirical_gap_average(roots: RootSet) -> float:
    """Per-sample average gap length K/#roots - 1 (cyclic mode)."""
    if roots.mode is not BoundaryMode.CYCLIC:
        raise ValueError("empirical gap average is defined for the cyclic process")
    if roots.card == 0:
        raise ValueError("empty root set")
    return roots.K / roots.card - 1.0


def normalized_ks_statistic(samples, mean: float, sd: float) -> float:
    """Kolmogorov-Smirnov distance between the empirical CDF of the
    standardized samples and the standard normal CDF."""
    arr = np.asarray(samples, dtype=np.float64).ravel()
    if arr.size == 0:
        raise ValueError("samples must be non-empty")
    if not np.isfinite(sd) or sd <= 0:
        raise ValueError(f"standard deviation must be positive and finite, got {sd}")
    z = np.sort((arr - mean) / sd)
    cdf = ndtr(z)
    n = z.size
    steps = np.arange(1, n + 1, dtype=np.float64) / n
    d_plus = float(np.max(steps - cdf))
    d_minus = float(np.max(cdf - (steps - 1.0 / n)))
    return max(d_plus, d_minus)


def _run_growth(K: int, steps: int, rng: np.random.Generator) -> float:
    heights = [0] * K
    hmax = 0
    remaining = steps
    while remaining:
        block = min(remaining, 1 << 16)
        for t in rng.integers(0, K, size=block).tolist():
            # heights[t-1] wraps to heights[-1] at t=0: cyclic left neighbor
            h = heights[t]
            left = heights[t - 1]
            right = heights[t + 1 if t + 1 < K else 0]
            if left > h:
                h = left
            if right > h:
                h = right
            h += 1
            heights[t] = h
            if h > hmax:
                hmax = h
        remaining -= block
    return hmax / steps


def height_growth_estimate(K: int, n_steps: int, rng: np.random.Generator) -> float:
    """max height / n after ``n_steps`` deposits of one cyclic run."""
    if K < MIN_WIDTH:
        raise ValueError(f"substrate width must be >= {MIN_WIDTH}, got {K}")
    if not 1 <= n_steps <= MAX_STEPS:
        raise ValueError(f"need 1 <= n_steps <= 2**40, got {n_steps}")
    return _run_growth(K, n_steps, rng)


def _simulate_chunk(cfg: EnsembleConfig, start: int, stop: int) -> dict:
    """Simulate runs [start, stop); pure function of its arguments."""
    K = cfg.K
    cyclic = cfg.mode is BoundaryMode.CYCLIC
    want_roots = STAT_ROOTS in cfg.statistics
    want_gaps = STAT_GAPS in cfg.statistics
    want_emp = STAT_EMPIRICAL in cfg.statistics
    want_growth = STAT_GROWTH in cfg.statistics
    needs_perm = want_roots or want_gaps or want_emp

    root_hist: Counter = Counter()
    gap_hists = {i: Counter() for i in cfg.gap_lengths}
    emp_samples = []
    growth_samples = []

    for j in range(start, stop):
        rng = run_stream(cfg.base_seed, j)
        if needs_perm:
            ranks = rng.permutation(K)
            if cyclic:
                minima = (ranks < np.roll(ranks, 1)) & (ranks < np.roll(ranks, -1))
            else:
                minima = np.zeros(K, dtype=bool)
                interior = (ranks[1:-1] < ranks[:-2]) & (ranks[1:-1] < ranks[2:])
                minima[1:-1] = interior
            card = int(np.count_nonzero(minima))
            if want_roots:
                root_hist[card] += 1
            if want_gaps or want_emp:
                if want_gaps:
                    positions = np.flatnonzero(minima)
                    dists = np.diff(positions)
                    wrap = K - (int(positions[-1]) - int(positions[0]))
                    if __debug__:
                        # the card circular gaps partition the ring and no
                        # two roots are adjacent
                        assert wrap >= 2 or card == 1
                        assert card == 1 or int(dists.min()) >= 2
                    for i in cfg.gap_lengths:
                        v = int(np.count_nonzero(dists == i + 1)) + (wrap == i + 1)
                        gap_hists[i][v] += 1
                if want_emp:
                    emp_samples.append(K / card - 1.0)
        if want_growth:
            # continues the same per-run stream after any permutation draw
            growth_samples.append(_run_growth(K, cfg.growth_steps, rng))

    return {
        "start": start,
        "roots": root_hist,
        "gaps": gap_hists,
        "empirical": np.asarray(emp_samples, dtype=np.float64),
        "growth": np.asarray(growth_samples, dtype=np.float64),
    }


class EnsembleStats:
    """Aggregated ensemble results: histograms for integer statistics,
    sample buffers for real-valued ones."""

    def __init__(self, config: EnsembleConfig):
        self.config = config
        self.runs = 0
        self.root_histogram: Counter = Counter()
        self.gap_histograms: dict[int, Counter] = {i: Counter() for i in config.gap_lengths}
        self.empirical_samples = np.empty(0, dtype=np.float64)
        self.growth_samples = np.empty(0, dtype=np.float64)
        self.runtime_seconds: float | None = None
        self.generator_id = GENERATOR_ID

    def _absorb_chunk(self, chunk: dict, n_runs: int) -> None:
        self.runs += n_runs
        self.root_histogram.update(chunk["roots"])
        for i, c in chunk["gaps"].items():
            self.gap_histograms[i].update(c)
        if chunk["empirical"].size:
            self.empirical_samples = np.concatenate([self.empirical_samples, chunk["empirical"]])
        if chunk["growth"].size:
            self.growth_samples = np.concatenate([self.growth_samples, chunk["growth"]])

    def merge(self, other: "EnsembleStats") -> "EnsembleStats":
        """Combine two partial aggregates (self's runs first)."""
        out = EnsembleStats(self.config)
        out.runs = self.runs + other.runs
        out.root_histogram = self.root_histogram + other.root_histogram
        for i in out.gap_histograms:
            out.gap_histograms[i] = self.gap_histograms[i] + other.gap_histograms[i]
        out.empirical_samples = np.concatenate([self.empirical_samples, other.empirical_samples])
        out.growth_samples = np.concatenate([self.growth_samples, other.growth_samples])
        return out

    # ---- integer statistics -------------------------------------------------

    def _int_histogram(self, statistic: str, i: int | None) -> Counter:
        if statistic == STAT_ROOTS:
            return self.root_histogram
        if statistic == STAT_GAPS:
            if i not in self.gap_histograms:
                raise KeyError(f"gap length {i} not in this ensemble")
            return self.gap_histograms[i]
        raise KeyError(f"{statistic} is not an integer statistic")

    def _int_values(self, statistic: str, i: int | None) -> np.ndarray:
        hist = self._int_histogram(statistic, i)
        values = np.array(sorted(hist), dtype=np.int64)
        counts = np.array([hist[v] for v in values], dtype=np.int64)
        return np.repeat(values, counts).astype(np.float64)

    # ---- generic access -----------------------------------------------------

    def samples(self, statistic: str, i: int | None = None) -> np.ndarray:
        if statistic == STAT_EMPIRICAL:
            return self.empirical_samples
        if statistic == STAT_GROWTH:
            return self.growth_samples
        return self._int_values(statistic, i)

    def mean(self, statistic: str, i: int | None = None) -> float:
        if statistic in (STAT_ROOTS, STAT_GAPS):
            hist = self._int_histogram(statistic, i)
            n = sum(hist.values())
            return sum(v * c for v, c in hist.items()) / n
        return float(np.mean(self.samples(statistic)))

    def variance(self, statistic: str, i: int | None = None) -> float:
        """Unbiased sample variance."""
        if statistic in (STAT_ROOTS, STAT_GAPS):
            hist = self._int_histogram(statistic, i)
            n = sum(hist.values())
            if n < 2:
                return 0.0
            s1 = sum(v * c for v, c in hist.items())
            s2 = sum(v * v * c for v, c in hist.items())
            return (s2 - s1 * s1 / n) / (n - 1)
        return float(np.var(self.samples(statistic), ddof=1))

    def ks_normal(self, statistic: str, i: int | None = None,
                  mean: float | None = None, sd: float | None = None) -> float:
        samples = self.samples(statistic, i)
        if mean is None:
            mean = float(np.mean(samples))
        if sd is None:
            sd = float(np.std(samples, ddof=1))
        return normalized_ks_statistic(samples, mean, sd)

    def histogram(self, statistic: str, i: int | None = None):
        """Integer statistics: {value: count} over the observed range.
        Real statistics: (bin_edges, counts) with 200 uniform bins over
        mean +/- 5 sample standard deviations."""
        if statistic in (STAT_ROOTS, STAT_GAPS):
            return dict(sorted(self._int_histogram(statistic, i).items()))
        samples = self.samples(statistic)
        m = float(np.mean(samples))
        sd = float(np.std(samples, ddof=1))
        if sd == 0:
            sd = 1.0
        counts, edges = np.histogram(samples, bins=200, range=(m - 5 * sd, m + 5 * sd))
        return edges, counts

    def summary_dict(self) -> dict:
        """Self-describing summary (deterministic for a fixed config)."""
        stats: dict[str, dict] = {}
        def entry_for(s, i=None):
            e = {"mean": self.mean(s, i), "variance": self.variance(s, i)}
            if self.runs > 1 and self.variance(s, i) > 0:
                e["ks_normal"] = self.ks_normal(s, i)
            return e
        for s in self.config.statistics:
            if s == STAT_GAPS:
                for i in self.config.gap_lengths:
                    stats[f"gaps[{i}]"] = entry_for(STAT_GAPS, i)
            else:
                stats[s] = entry_for(s)
        return {
            "config": self.config.to_json_dict(),
            "generator": self.generator_id,
            "statistics": stats,
        }


def run_ensemble(cfg: EnsembleConfig) -> EnsembleStats:
    """Run the configured ensemble; bitwise reproducible for fixed config."""
    started = time.perf_counter()
    bounds = [(s, min(s + CHUNK_SIZE, cfg.runs)) for s in range(0, cfg.runs, CHUNK_SIZE)]
    stats = EnsembleStats(cfg)
    if cfg.workers == 1 or len(bounds) == 1:
        chunks = (_simulate_chunk(cfg, a, b) for a, b in bounds)
        for (a, b), chunk in zip(bounds, chunks):
            stats._absorb_chunk(chunk, b - a)
    else:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            futures = [pool.submit(_simulate_chunk, cfg, a, b) for a, b in bounds]
            results = [f.result() for f in futures]
        results.sort(key=lambda c: c["start"])
        for (a, b), chunk in zip(bounds, results):
            stats._absorb_chunk(chunk, b - a)
    stats.runtime_seconds = time.perf_counter() - started
    return stats
