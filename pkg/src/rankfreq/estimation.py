"""Estimation on empirical data: fit the family parameter theta from a
rank-frequency series, smooth count-based probabilities Good-Turing style,
and apply the geometric-tail smoothing scheme with its four-level ranking.

Empirical tables are sparse in the tail (cells N_{x+1} = 0 for large x), where
the raw reestimation rule is undefined. The policy here: missing interior
cells are filled by log-log linear interpolation between the nearest occupied
cells, and species holding the single largest count keep their raw count.
Because the rule does not conserve probability exactly, seen-species weights
are rescaled to 1 - N_1/N, the total left after reserving the unseen mass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .histogram import SpeciesCounts, build_histogram, validate_counts


class FitFailureError(ValueError):
    """The tail regression produced no usable family member."""


@dataclass(frozen=True, eq=False)
class RankFrequencySeries:
    """Ranked relative frequencies: rank r (strictly increasing from 1) and
    relative frequency f (positive, non-increasing, total at most 1)."""

    ranks: np.ndarray
    freqs: np.ndarray

    def __post_init__(self):
        ranks = np.asarray(self.ranks, dtype=np.int64)
        freqs = np.asarray(self.freqs, dtype=np.float64)
        if ranks.ndim != 1 or freqs.ndim != 1 or ranks.size != freqs.size:
            raise ValueError("ranks and freqs must be 1-d arrays of equal length")
        if ranks.size == 0:
            raise ValueError("series must be non-empty")
        if ranks[0] != 1 or np.any(np.diff(ranks) <= 0):
            raise ValueError("ranks must increase strictly from 1")
        if not np.all(np.isfinite(freqs)) or np.any(freqs <= 0.0):
            raise ValueError("frequencies must be finite and positive")
        if np.any(np.diff(freqs) > 0.0):
            raise ValueError("frequencies must be non-increasing in rank")
        total = float(freqs.sum())
        if total > 1.0 + 1e-9:
            raise ValueError(f"frequencies sum to {total}, above 1")
        object.__setattr__(self, "ranks", ranks)
        object.__setattr__(self, "freqs", freqs)

    def __len__(self) -> int:
        return int(self.ranks.size)


@dataclass(frozen=True)
class ThetaFit:
    """Result of fitting the rank-frequency tail.

    model is "power" (f ~ scale * r^-beta, theta = 1 + 1/beta) or
    "exponential" (f ~ scale * exp(-lambda r), theta = 1). goodness is the
    R^2 of the winning linearization; scale is exp(intercept) of that fit.
    """

    theta_hat: float
    model: str
    goodness: float
    tail_start: int
    beta_hat: float | None = None
    lambda_hat: float | None = None
    scale: float = float("nan")

    def __post_init__(self):
        if self.model not in ("power", "exponential"):
            raise ValueError(f"unknown model {self.model!r}")
        if self.model == "power":
            if self.beta_hat is None or self.beta_hat <= 0.0:
                raise ValueError("power fits need beta_hat > 0")
        elif self.theta_hat != 1.0:
            raise ValueError("exponential fits pin theta_hat to 1")


@dataclass(frozen=True)
class SmoothedDistribution:
    """Per-species probabilities plus the mass reserved for unseen species."""

    probabilities: dict[str, float]
    unseen_mass: float
    method: str

    def __post_init__(self):
        if not (0.0 <= self.unseen_mass < 1.0):
            raise ValueError(f"unseen_mass must lie in [0, 1), got {self.unseen_mass}")
        for species, prob in self.probabilities.items():
            if not (prob > 0.0) or not math.isfinite(prob):
                raise ValueError(f"probability for {species!r} must be positive, got {prob}")
        total = math.fsum(self.probabilities.values()) + self.unseen_mass
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"distribution sums to {total}, not 1")


def build_ranking(counts: SpeciesCounts, backoff_counts: SpeciesCounts | None = None,
                  appearance: dict[str, int] | None = None) -> list[str]:
    """Totally order species: descending direct count, then descending backoff
    count (when supplied), then ascending first-appearance index, then
    ascending species id.

    appearance defaults to the insertion order of counts; pass an explicit
    mapping when the counts were assembled in a meaningless order (species
    missing from it fall through to the lexicographic tier).
    """
    validate_counts(counts)
    if backoff_counts is not None:
        validate_counts(backoff_counts)
    if appearance is None:
        appearance = {s: i for i, s in enumerate(counts)}
    no_appearance = len(counts)

    def key(species):
        backoff = backoff_counts.get(species, 0) if backoff_counts is not None else 0
        return (-counts[species], -backoff,
                appearance.get(species, no_appearance), species)

    return sorted(counts, key=key)


def rank_series_from_counts(counts: SpeciesCounts) -> RankFrequencySeries:
    """Order species by the standard ranking and convert counts to relative
    frequencies; ranks run 1..S."""
    if not counts:
        raise ValueError("cannot rank an empty sample")
    validate_counts(counts)
    total = sum(counts.values())
    ordered = build_ranking(counts)
    freqs = np.array([counts[s] / total for s in ordered], dtype=np.float64)
    return RankFrequencySeries(np.arange(1, len(ordered) + 1), freqs)


def default_tail_start(series: RankFrequencySeries) -> int:
    """First rank where f drops below f(1)/10; the whole series when it never
    does. The closed-form laws are asymptotic, so the head is out of regime."""
    below = np.nonzero(series.freqs < series.freqs[0] / 10.0)[0]
    return int(series.ranks[below[0]]) if below.size else 1


def fit_theta(series: RankFrequencySeries, tail_start: int | None = None) -> ThetaFit:
    """Fit the family parameter from the series tail by dual linearization.

    Ordinary least squares is run on (log r, log f) for the power model and
    on (r, log f) for the exponential model, over ranks >= tail_start
    (default per default_tail_start); the model with the higher R^2 wins.
    A power-model slope of -beta_hat gives theta_hat = 1 + 1/beta_hat; the
    exponential model pins theta_hat = 1 with decay rate lambda_hat.

    Raises FitFailureError when fewer than 10 tail points exist or when the
    winning model is degenerate (beta_hat <= 0, or a non-positive decay
    rate); failures are reported, never clamped.
    """
    if tail_start is None:
        tail_start = default_tail_start(series)
    if isinstance(tail_start, bool) or not isinstance(tail_start, int) or tail_start < 1:
        raise ValueError(f"tail_start must be a positive integer, got {tail_start!r}")
    mask = series.ranks >= tail_start
    if int(mask.sum()) < 10:
        raise FitFailureError(
            f"only {int(mask.sum())} points at rank >= {tail_start}; need at least 10"
        )
    r = series.ranks[mask].astype(np.float64)
    log_f = np.log(series.freqs[mask])
    power = stats.linregress(np.log(r), log_f)
    expo = stats.linregress(r, log_f)
    r2_power = float(power.rvalue) ** 2
    r2_expo = float(expo.rvalue) ** 2
    if not (math.isfinite(r2_power) and math.isfinite(r2_expo)):
        raise FitFailureError("degenerate tail: regression produced no usable fit")

    if r2_power >= r2_expo:
        beta_hat = -float(power.slope)
        if beta_hat <= 0.0:
            raise FitFailureError(
                f"power model selected but beta_hat = {beta_hat} is not positive"
            )
        return ThetaFit(theta_hat=1.0 + 1.0 / beta_hat, model="power",
                        goodness=r2_power, tail_start=tail_start,
                        beta_hat=beta_hat, scale=math.exp(power.intercept))
    lambda_hat = -float(expo.slope)
    if lambda_hat <= 0.0:
        raise FitFailureError(
            f"exponential model selected but lambda_hat = {lambda_hat} is not positive"
        )
    return ThetaFit(theta_hat=1.0, model="exponential", goodness=r2_expo,
                    tail_start=tail_start, lambda_hat=lambda_hat,
                    scale=math.exp(expo.intercept))


def _interpolated_cell(hist, x: int) -> float:
    """N_x, with interior gaps filled by log-log interpolation between the
    nearest occupied cells."""
    value = hist.n(x)
    if value > 0.0:
        return value
    xs = np.array(hist.support, dtype=np.float64)
    ns = np.array([hist.n(int(v)) for v in xs], dtype=np.float64)
    return float(np.exp(np.interp(math.log(x), np.log(xs), np.log(ns))))


def good_turing_smooth(counts: SpeciesCounts) -> SmoothedDistribution:
    """Smooth relative frequencies with the theta=1 reestimation rule.

    Each species observed x times gets weight x*/N with
    x* = (x+1) N~_{x+1} / N_x, where N~ fills interior gaps by log-log
    interpolation; species at the single largest count keep x* = x. The mass
    N_1/N (the rule's reading at x = 0) is reserved for unseen species and
    seen weights are rescaled to the remaining 1 - N_1/N.

    Requires singleton evidence: N_1 = 0 leaves the unseen mass undefined,
    and an all-singleton sample would reserve everything for it.
    """
    if not counts:
        raise ValueError("cannot smooth an empty sample")
    hist = build_histogram(counts)
    total = sum(counts.values())
    n1 = hist.n(1)
    if n1 <= 0.0:
        raise ValueError("no singleton species: the unseen mass N_1/N is undefined")
    unseen = n1 / total
    if unseen >= 1.0:
        raise ValueError("every species is a singleton: all mass would be unseen")

    top = hist.max_count
    x_star = {}
    for x in hist.support:
        if x == top:
            x_star[x] = float(x)
        else:
            x_star[x] = ((x + 1) * _interpolated_cell(hist, x + 1)) / hist.n(x)

    weights = {s: x_star[c] / total for s, c in counts.items()}
    seen_mass = math.fsum(weights.values())
    scale = (1.0 - unseen) / seen_mass
    probabilities = {s: w * scale for s, w in weights.items()}
    return SmoothedDistribution(probabilities, unseen, "good_turing")


def geometric_tail_smooth(counts: SpeciesCounts, ranking: list[str],
                          p: float | None = None,
                          head_size: int = 0) -> SmoothedDistribution:
    """Keep head frequencies, distribute the rest geometrically down the ranking.

    The species ranked 1..head_size keep their relative frequencies; the
    leftover mass 1 - sum(head) is spread over the remaining species in
    ranking order, proportionally to p(1-p)^(k-1) at tail position k, with
    the geometric mass beyond the last seen rank, (1-p)^(S-head_size),
    becoming the unseen mass. head_size = 0 assigns all mass geometrically
    by rank; head_size = S keeps rescaled relative frequencies and reserves
    nothing.

    p defaults to 1/N_1, the top-species frequency of the matching ideal
    population; that default needs at least two singletons, otherwise pass
    p explicitly.
    """
    if not counts:
        raise ValueError("cannot smooth an empty sample")
    validate_counts(counts)
    if list(sorted(ranking)) != sorted(counts) or len(ranking) != len(counts):
        raise ValueError("ranking must cover exactly the species in counts")
    n_species = len(ranking)
    if isinstance(head_size, bool) or not isinstance(head_size, int) \
            or not (0 <= head_size <= n_species):
        raise ValueError(f"head_size must lie in [0, {n_species}], got {head_size!r}")
    if p is None:
        n1 = sum(1 for c in counts.values() if c == 1)
        if n1 < 2:
            raise ValueError(
                f"default p = 1/N_1 needs N_1 >= 2 singletons, have {n1}; pass p explicitly"
            )
        p = 1.0 / n1
    p = float(p)
    if not (0.0 < p < 1.0):
        raise ValueError(f"p must lie in (0, 1), got {p}")

    total = sum(counts.values())
    probabilities = {s: counts[s] / total for s in ranking[:head_size]}
    if head_size == n_species:
        return SmoothedDistribution(probabilities, 0.0, "geometric_tail")

    head_mass = math.fsum(probabilities.values())
    tail_mass = 1.0 - head_mass
    for k, species in enumerate(ranking[head_size:], start=1):
        probabilities[species] = tail_mass * p * (1.0 - p) ** (k - 1)
    unseen = tail_mass * (1.0 - p) ** (n_species - head_size)
    return SmoothedDistribution(probabilities, unseen, "geometric_tail")
