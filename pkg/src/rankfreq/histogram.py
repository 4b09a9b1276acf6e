"""Frequency-of-frequencies histograms and the local count-reestimation family.

The central object is the frequency-of-frequencies table: for each count x,
the number of species N_x that were observed exactly x times. Cell values are
real-valued on purpose. Empirical tables built from samples happen to hold
integers, while the analytic populations generated by the recurrence
N_{x+1} = x/(x+theta) * N_x are non-integer for general theta; one type
serves both.

The reestimation rule implemented here maps an observed count x to

    x* = (x + theta) * N_{x+1} / N_x

theta=1 is Turing's classical rule, theta=2 the rule implied by an inverse
rank-frequency law; intermediate values interpolate between the two.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property

# Species counts are kept as a plain insertion-ordered mapping: species id ->
# positive count. Insertion order doubles as first-appearance order, which the
# ranking tie-breakers in the estimation module rely on.
SpeciesCounts = dict[str, int]


class UndefinedReestimateError(ValueError):
    """The reestimate x* = (x+theta) N_{x+1}/N_x divides by an empty cell."""


def validate_counts(counts: SpeciesCounts) -> None:
    """Check that every count is a positive integer."""
    for species, count in counts.items():
        if isinstance(count, bool) or not isinstance(count, int):
            raise ValueError(f"count for {species!r} must be an integer, got {count!r}")
        if count < 1:
            raise ValueError(f"count for {species!r} must be >= 1, got {count}")


@dataclass(frozen=True, eq=True)
class FrequencyHistogram:
    """Map from count x (>= 1) to the number of species N_x with that count."""

    entries: dict[int, float] = field(default_factory=dict)

    def __post_init__(self):
        cleaned = {}
        for x, n in self.entries.items():
            if isinstance(x, bool) or not isinstance(x, int):
                raise ValueError(f"count {x!r} must be an integer")
            if x < 1:
                raise ValueError(f"count {x} must be >= 1")
            n = float(n)
            if not math.isfinite(n) or n < 0.0:
                raise ValueError(f"cell N_{x} must be finite and >= 0, got {n}")
            cleaned[x] = n
        object.__setattr__(self, "entries", cleaned)

    @cached_property
    def max_count(self) -> int:
        """Largest x with N_x > 0 (the count of the most populous species);
        0 for an empty table."""
        return max((x for x, n in self.entries.items() if n > 0.0), default=0)

    @cached_property
    def support(self) -> tuple[int, ...]:
        """Counts with N_x > 0, ascending."""
        return tuple(sorted(x for x, n in self.entries.items() if n > 0.0))

    def n(self, x: int) -> float:
        """N_x, reading absent cells as 0."""
        return self.entries.get(x, 0.0)

    def rank_of(self, x: int) -> float:
        """Rank of the last species with count x: the tail sum of N_k for k >= x.

        Returns 0 beyond the table. Satisfies N_x = rank_of(x) - rank_of(x+1);
        the identity is exact for integer-valued tables and holds to roundoff
        for real-valued ones.
        """
        if isinstance(x, bool) or not isinstance(x, int) or x < 1:
            raise ValueError(f"count must be a positive integer, got {x!r}")
        return math.fsum(n for k, n in self.entries.items() if k >= x)

    def total_population(self) -> float:
        """Total token mass: sum of x * N_x; 0 for an empty table."""
        return math.fsum(x * n for x, n in self.entries.items())

    def reestimate(self, x: int, theta: float) -> float:
        """The reestimated count x* = (x + theta) * N_{x+1} / N_x.

        An absent N_{x+1} cell reads as 0 (the empirical sparse tail). An
        absent or zero N_x is a hard error because the rule divides by it;
        callers that want a value on gappy tables must smooth first (see the
        estimation module's gap interpolation).
        """
        if isinstance(x, bool) or not isinstance(x, int) or x < 1:
            raise ValueError(f"count must be a positive integer, got {x!r}")
        theta = float(theta)
        if not math.isfinite(theta):
            raise ValueError(f"theta must be finite, got {theta}")
        n_x = self.entries.get(x, 0.0)
        if n_x <= 0.0:
            raise UndefinedReestimateError(
                f"N_{x} is zero or absent; the reestimate is undefined there"
            )
        return ((x + theta) * self.entries.get(x + 1, 0.0)) / n_x


def build_histogram(counts: SpeciesCounts) -> FrequencyHistogram:
    """Count species per count value. Token mass is conserved:
    total_population(build_histogram(c)) == sum(c.values())."""
    validate_counts(counts)
    cells = Counter(counts.values())
    return FrequencyHistogram({x: float(n) for x, n in sorted(cells.items())})


def ideal_histogram(theta: float, n1: float, max_count: int) -> FrequencyHistogram:
    """Analytic population satisfying N_{x+1} = x/(x+theta) * N_x exactly.

    Seeded with N_1 = n1 and generated iteratively up to max_count. The
    recurrence form is used instead of the factorial closed form
    n1 * x! / prod(k+theta) so that large tables cannot overflow; the closed
    form serves as a test oracle only. Populations with theta <= 0 are
    rejected: the recurrence hits a zero or negative factor and the family
    has no meaningful member there.
    """
    theta = float(theta)
    if not math.isfinite(theta) or theta <= 0.0:
        raise ValueError(f"ideal histograms need theta > 0, got {theta}")
    n1 = float(n1)
    if not (n1 > 0.0) or not math.isfinite(n1):
        raise ValueError(f"n1 must be positive and finite, got {n1}")
    if isinstance(max_count, bool) or not isinstance(max_count, int) or max_count < 1:
        raise ValueError(f"max_count must be a positive integer, got {max_count!r}")
    entries = {1: n1}
    n = n1
    for x in range(1, max_count):
        n = (n * x) / (x + theta)
        entries[x + 1] = n
    return FrequencyHistogram(entries)
