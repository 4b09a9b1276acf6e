"""Machine checks of the analytic claims behind the reestimation family:
recurrence-ratio error bounds, the product approximation, and the integral
convergence probe.

Residual-vs-bound comparisons use exact <= on computed doubles. Each row also
records the margin (bound - residual) so near-misses caused by rounding are
visible rather than silently flipped; an optional absolute epsilon can be
added to the bound and is then recorded in the report.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

import numpy as np

# the conventional slack for a bound that analytic cancellation sends to 0
DEFAULT_EPSILON = 1e-15


@dataclass(frozen=True)
class BoundRow:
    x: int
    residual: float
    bound: float
    margin: float
    passed: bool


@dataclass(frozen=True)
class BoundReport:
    """Residual-vs-bound sweep, rows ascending in x."""

    theta: float
    rows: tuple[BoundRow, ...]
    epsilon: float | None = None

    @property
    def all_pass(self) -> bool:
        return all(row.passed for row in self.rows)

    def to_csv(self) -> str:
        out = io.StringIO()
        out.write("# schema: rankfreq.bound-report.csv.v1\n")
        out.write(f"# theta: {self.theta!r}\n")
        out.write(f"# epsilon: {'' if self.epsilon is None else repr(self.epsilon)}\n")
        out.write(f"# all_pass: {str(self.all_pass).lower()}\n")
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["x", "residual", "bound", "margin", "pass"])
        for row in self.rows:
            writer.writerow([row.x, repr(row.residual), repr(row.bound),
                             repr(row.margin), str(row.passed).lower()])
        return out.getvalue()

    def to_json(self) -> str:
        payload = {
            "schema": "rankfreq.bound-report.v1",
            "theta": self.theta,
            "epsilon": self.epsilon,
            "all_pass": self.all_pass,
            "rows": [{"x": r.x, "residual": r.residual, "bound": r.bound,
                      "margin": r.margin, "pass": r.passed} for r in self.rows],
        }
        return json.dumps(payload, indent=2) + "\n"


def _report(theta, x, residual, bound, epsilon) -> BoundReport:
    slack = 0.0 if epsilon is None else float(epsilon)
    rows = tuple(
        BoundRow(int(xi), float(ri), float(bi), float(bi - ri), bool(ri <= bi + slack))
        for xi, ri, bi in zip(x, residual, bound)
    )
    return BoundReport(theta=theta, rows=rows, epsilon=epsilon)


def turing_bound_check(x_min: int = 2, x_max: int = 100_000,
                       epsilon: float | None = None) -> BoundReport:
    """Sweep |N_{x+1}/N_x - x/(x+1)| <= 1/x^2 for the exponential-law table
    N_x = ln(1 + 1/x) (the leading constant cancels in the ratio)."""
    if not (2 <= x_min <= x_max):
        raise ValueError(f"need 2 <= x_min <= x_max, got {x_min}, {x_max}")
    x = np.arange(x_min, x_max + 1, dtype=np.float64)
    n_x = np.log1p(1.0 / x)
    n_next = np.log1p(1.0 / (x + 1.0))
    residual = np.abs(n_next / n_x - x / (x + 1.0))
    bound = 1.0 / (x * x)
    return _report(1.0, x, residual, bound, epsilon)


def general_bound_check(theta: float, x_min: int = 10, x_max: int = 10_000,
                        epsilon: float | None = None) -> BoundReport:
    """Sweep |x/(x+alpha+1) - N_{x+1}/N_x| <= |alpha^2-1|/x^2 for the power-law
    rank function r(x) = x^-alpha, alpha = theta - 1, over 0 < theta != 1.

    N_x = r(x) - r(x+1) suffers catastrophic cancellation when evaluated
    directly, so the ratio is computed with both cells divided by
    (x+1)^-alpha, each factor then being an expm1/log1p of a small argument:

        N_{x+1}/N_x = -expm1(-alpha*log1p(1/(x+1))) / expm1(alpha*log1p(1/x))
    """
    theta = float(theta)
    if not math.isfinite(theta) or theta <= 0.0 or theta == 1.0:
        raise ValueError(
            f"need 0 < theta != 1 (theta=1 is turing_bound_check), got {theta}"
        )
    if not (2 <= x_min <= x_max):
        raise ValueError(f"need 2 <= x_min <= x_max, got {x_min}, {x_max}")
    alpha = theta - 1.0
    x = np.arange(x_min, x_max + 1, dtype=np.float64)
    ratio = -np.expm1(-alpha * np.log1p(1.0 / (x + 1.0))) \
        / np.expm1(alpha * np.log1p(1.0 / x))
    residual = np.abs(x / (x + alpha + 1.0) - ratio)
    bound = abs(alpha * alpha - 1.0) / (x * x)
    return _report(theta, x, residual, bound, epsilon)


def product_approx_check(theta: float, x_values: list[int]) -> list[tuple[int, float]]:
    """Ratios (x+1)^theta * prod_{k=1..x} k/(k+theta), for stabilization
    inspection: a flat tail means the product behaves like C/(x+1)^theta.

    The power factor is folded into the product one k at a time,

        factor_k = k * (k+1)^theta / ((k+theta) * k^theta)

    so every factor is near 1 and the running product can never overflow,
    however large x gets. At theta=1 each factor is identically 1 in floating
    point and the telescoped ratio is exactly 1.
    """
    theta = float(theta)
    if not math.isfinite(theta) or theta <= 0.0:
        raise ValueError(f"need theta > 0, got {theta}")
    xs = list(x_values)
    if not xs:
        return []
    if any(isinstance(x, bool) or not isinstance(x, int) or x < 1 for x in xs):
        raise ValueError("x_values must be positive integers")
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise ValueError("x_values must be strictly ascending")
    k = np.arange(1, xs[-1] + 1, dtype=np.float64)
    factors = (k * np.power(k + 1.0, theta)) / ((k + theta) * np.power(k, theta))
    running = np.cumprod(factors)
    return [(x, float(running[x - 1])) for x in xs]


def integral_convergence_probe(alpha: float,
                               upper: list[float]) -> list[tuple[float, float]]:
    """Analytic values of integral_1^R x^alpha dx for each upper limit R:
    ln R at alpha = -1, else (R^(alpha+1) - 1)/(alpha+1). The caller
    classifies convergence from the boundedness of the sequence."""
    alpha = float(alpha)
    if not math.isfinite(alpha):
        raise ValueError(f"alpha must be finite, got {alpha}")
    uppers = [float(r) for r in upper]
    if any(r <= 1.0 for r in uppers):
        raise ValueError("upper limits must exceed 1")
    if any(b <= a for a, b in zip(uppers, uppers[1:])):
        raise ValueError("upper limits must be strictly ascending")
    if alpha == -1.0:
        return [(r, math.log(r)) for r in uppers]
    return [(r, (r ** (alpha + 1.0) - 1.0) / (alpha + 1.0)) for r in uppers]


def is_bounded_sequence(values: list[float], decay_threshold: float = 0.9,
                        stable_tol: float = 1e-12) -> bool:
    """Classify a probe sequence taken on geometrically spaced upper limits
    as bounded.

    Bounded means the increments either have already stabilized (last
    increment below stable_tol relative to the magnitude of the values) or
    shrink geometrically (each increment at most decay_threshold times the
    previous); a geometric tail of increments sums to a finite limit. Needs
    at least three values unless the sequence has stabilized outright.
    """
    vals = [float(v) for v in values]
    if len(vals) < 2:
        raise ValueError("need at least two probe values")
    diffs = [abs(b - a) for a, b in zip(vals, vals[1:])]
    scale = max(1.0, max(abs(v) for v in vals))
    if diffs[-1] <= stable_tol * scale:
        return True
    if len(diffs) < 2:
        raise ValueError("need at least three probe values unless stabilized")
    return all(d2 <= decay_threshold * d1 for d1, d2 in zip(diffs, diffs[1:]))
