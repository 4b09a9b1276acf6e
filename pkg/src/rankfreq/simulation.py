"""Sample finite token populations from the rank-frequency laws and measure
how well local reestimation recovers true counts.

A population is a law truncated to S species and renormalized (laws outside
the convergence region have no proper infinite distribution, so truncation
keeps every member samplable). Sampling is seeded and deterministic:
identical (law, species, seed) produce identical token streams.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

import numpy as np

from ._kernels import AliasSampler
from .asymptote import AsymptoteSpec
from .histogram import FrequencyHistogram, SpeciesCounts, UndefinedReestimateError

# Beyond the last count cell holding this many species, single-cell
# reestimates are variance-dominated; default reports stop there.
SPECIES_FLOOR = 30


@dataclass(frozen=True)
class PopulationModel:
    """A rank-frequency law truncated to a finite species inventory."""

    law: AsymptoteSpec
    species: int
    seed: int

    def __post_init__(self):
        if isinstance(self.species, bool) or not isinstance(self.species, int) \
                or self.species < 1:
            raise ValueError(f"species must be a positive integer, got {self.species!r}")
        if isinstance(self.seed, bool) or not isinstance(self.seed, int) \
                or not (0 <= self.seed < 2 ** 64):
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")

    def probabilities(self) -> np.ndarray:
        """Truncated, renormalized species probabilities by rank (sum to 1)."""
        ranks = np.arange(1, self.species + 1, dtype=np.float64)
        weights = np.asarray(self.law.frequency_at(ranks), dtype=np.float64)
        return weights / weights.sum()

    def species_id(self, rank: int) -> str:
        return f"s{rank:0{len(str(self.species))}d}"


def sample_count_vector(model: PopulationModel, n_tokens: int) -> np.ndarray:
    """Per-rank count vector of n_tokens i.i.d. draws (int64, sums to n_tokens)."""
    if isinstance(n_tokens, bool) or not isinstance(n_tokens, int) or n_tokens < 1:
        raise ValueError(f"n_tokens must be a positive integer, got {n_tokens!r}")
    sampler = AliasSampler(model.probabilities())
    rng = np.random.default_rng(model.seed)
    return sampler.sample_counts(n_tokens, rng)


def sample_tokens(model: PopulationModel, n_tokens: int) -> SpeciesCounts:
    """Draw n_tokens and return counts for the species that appeared,
    in rank order (which is also their appearance order for tie-breaking)."""
    vector = sample_count_vector(model, n_tokens)
    return {model.species_id(rank): int(c)
            for rank, c in enumerate(vector, start=1) if c > 0}


def sample_histogram(model: PopulationModel, n_tokens: int) -> FrequencyHistogram:
    """Frequency-of-frequencies table of one sample."""
    vector = sample_count_vector(model, n_tokens)
    vector = vector[vector > 0]
    cells = np.bincount(vector)
    return FrequencyHistogram({int(x): float(cells[x])
                               for x in range(1, cells.size) if cells[x] > 0})


@dataclass(frozen=True)
class ReestimationRow:
    x: int
    n_x: float
    x_star: float | None      # None marks a gap (empty N_x cell)
    rel_error: float | None


@dataclass(frozen=True)
class ReestimationReport:
    """Per-count reestimates x* against the observed count x for one sample."""

    theta: float
    n_tokens: int
    seed: int
    rows: tuple[ReestimationRow, ...]
    x_limit: int

    def to_csv(self) -> str:
        out = io.StringIO()
        out.write("# schema: rankfreq.reestimation-report.csv.v1\n")
        out.write(f"# theta: {self.theta!r}\n")
        out.write(f"# tokens: {self.n_tokens}\n")
        out.write(f"# seed: {self.seed}\n")
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["x", "n_x", "x_star", "rel_error"])
        for row in self.rows:
            writer.writerow([row.x, repr(row.n_x),
                             "" if row.x_star is None else repr(row.x_star),
                             "" if row.rel_error is None else repr(row.rel_error)])
        return out.getvalue()

    def to_json(self) -> str:
        payload = {
            "schema": "rankfreq.reestimation-report.v1",
            "theta": self.theta,
            "tokens": self.n_tokens,
            "seed": self.seed,
            "x_limit": self.x_limit,
            "rows": [{"x": r.x, "n_x": r.n_x, "x_star": r.x_star,
                      "rel_error": r.rel_error} for r in self.rows],
        }
        return json.dumps(payload, indent=2) + "\n"


def reestimation_rows(hist: FrequencyHistogram, theta: float,
                      x_limit: int) -> tuple[ReestimationRow, ...]:
    """Raw reestimates for x = 1..x_limit; empty cells become gap rows."""
    rows = []
    for x in range(1, x_limit + 1):
        n_x = hist.n(x)
        try:
            x_star = hist.reestimate(x, theta)
        except UndefinedReestimateError:
            rows.append(ReestimationRow(x, n_x, None, None))
            continue
        rows.append(ReestimationRow(x, n_x, x_star, abs(x_star - x) / x))
    return tuple(rows)


def empirical_reestimation_report(model: PopulationModel, n_tokens: int,
                                  theta: float,
                                  x_max: int | None = None) -> ReestimationReport:
    """Sample the model, build its histogram, and reestimate each count cell.

    By default rows stop at the largest x whose cell still holds at least
    SPECIES_FLOOR species; pass x_max to force a wider (noisier) range.
    """
    hist = sample_histogram(model, n_tokens)
    if x_max is None:
        limit = max((x for x in hist.support if hist.n(x) >= SPECIES_FLOOR), default=0)
    else:
        if isinstance(x_max, bool) or not isinstance(x_max, int) or x_max < 1:
            raise ValueError(f"x_max must be a positive integer, got {x_max!r}")
        limit = x_max
    return ReestimationReport(theta=float(theta), n_tokens=n_tokens,
                              seed=model.seed,
                              rows=reestimation_rows(hist, theta, limit),
                              x_limit=limit)
