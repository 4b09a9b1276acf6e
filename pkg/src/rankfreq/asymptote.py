"""Closed-form rank-frequency laws, their cumulatives, and the convergence region.

Each law gives the relative frequency f(r) of the species at rank r (rank 1 is
the most common species). Four parameterizations are provided:

* ``TuringAsymptote`` -- the exponential law f(r) = (1/n1) exp(-(r-1)/n1),
  the theta=1 member; normalized on [1, inf) by construction.
* ``PowerAsymptote`` -- f(r) = C r^(-1/(theta-1)) for theta > 1.
* ``ZipfAsymptote`` -- f(r) = A/(B+r), the theta=2 sub-case with an optional
  rank shift B.
* ``GeometricRankLaw`` -- the discrete counterpart of the exponential law,
  P(r) = p (1-p)^(r-1).

The cumulative of f converges as rank grows exactly for theta in [1, 2);
``converges`` is that classifier.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np


def beta_of_theta(theta: float) -> float:
    """Power-law exponent beta = 1/(theta-1); requires theta > 1."""
    theta = float(theta)
    if not math.isfinite(theta) or theta <= 1.0:
        raise ValueError(f"beta is defined for theta > 1, got {theta}")
    return 1.0 / (theta - 1.0)


def theta_of_beta(beta: float) -> float:
    """Inverse of beta_of_theta: theta = 1 + 1/beta; requires beta > 0."""
    beta = float(beta)
    if not math.isfinite(beta) or beta <= 0.0:
        raise ValueError(f"theta is defined for beta > 0, got {beta}")
    return 1.0 + 1.0 / beta


def converges(theta: float) -> bool:
    """True iff the cumulative of f(r) converges as r -> inf: theta in [1, 2)."""
    theta = float(theta)
    if not math.isfinite(theta):
        raise ValueError(f"theta must be finite, got {theta}")
    return 1.0 <= theta < 2.0


def geometric_pmf(p: float, r: int) -> float:
    """P(r) = p (1-p)^(r-1) for integer rank r >= 1 and p in (0, 1)."""
    p = float(p)
    if not (0.0 < p < 1.0):
        raise ValueError(f"p must lie in (0, 1), got {p}")
    if isinstance(r, bool) or not isinstance(r, int) or r < 1:
        raise ValueError(f"rank must be a positive integer, got {r!r}")
    return p * (1.0 - p) ** (r - 1)


def _check_rank(r):
    r = np.asarray(r, dtype=np.float64)
    if np.any(r < 1.0):
        raise ValueError("ranks below 1 are outside every law's domain")
    return r if r.ndim else float(r)


@dataclass(frozen=True)
class TuringAsymptote:
    """Exponential rank law f(r) = (1/n1) exp(-(r-1)/n1); the theta=1 member.

    n1 is the singleton cell N_1 of the matching ideal histogram; 1/n1 is both
    the intensity of the exponential and the frequency of the top species.
    The equivalent (scale, rate) form f(r) = scale * exp(-rate * r) has
    rate = 1/n1 and scale = exp(1/n1)/n1.
    """

    n1: float

    def __post_init__(self):
        if not (self.n1 > 0.0) or not math.isfinite(self.n1):
            raise ValueError(f"n1 must be positive and finite, got {self.n1}")

    @classmethod
    def from_rate(cls, rate: float) -> "TuringAsymptote":
        if not (rate > 0.0) or not math.isfinite(rate):
            raise ValueError(f"rate must be positive and finite, got {rate}")
        return cls(n1=1.0 / rate)

    @property
    def theta(self) -> float:
        return 1.0

    @property
    def rate(self) -> float:
        return 1.0 / self.n1

    @property
    def scale(self) -> float:
        return math.exp(1.0 / self.n1) / self.n1

    def frequency_at(self, r):
        r = _check_rank(r)
        return np.exp(-(r - 1.0) / self.n1) / self.n1

    def cumulative(self, r):
        r = _check_rank(r)
        return -np.expm1(-(r - 1.0) / self.n1)


@dataclass(frozen=True)
class PowerAsymptote:
    """Power rank law f(r) = scale * r^(-1/(theta-1)) for theta > 1.

    theta in (1, 2) gives a summable tail; theta >= 2 is a valid decreasing
    law whose cumulative diverges. theta <= 1 is rejected: at theta = 1 the
    family degenerates to the exponential (use TuringAsymptote) and below it
    the formula would increase with rank.
    """

    theta: float
    scale: float = 1.0

    def __post_init__(self):
        if not math.isfinite(self.theta) or self.theta <= 1.0:
            raise ValueError(
                f"power law needs theta > 1 (theta=1 is TuringAsymptote), got {self.theta}"
            )
        if not (self.scale > 0.0) or not math.isfinite(self.scale):
            raise ValueError(f"scale must be positive and finite, got {self.scale}")

    @property
    def beta(self) -> float:
        return beta_of_theta(self.theta)

    def frequency_at(self, r):
        r = _check_rank(r)
        return self.scale * np.power(r, -self.beta)

    def cumulative(self, r):
        r = _check_rank(r)
        b = self.beta
        if b == 1.0:
            return self.scale * np.log(r)
        return self.scale * (np.power(r, 1.0 - b) - 1.0) / (1.0 - b)


@dataclass(frozen=True)
class ZipfAsymptote:
    """Inverse rank law f(r) = a / (b + r); the theta=2 sub-case.

    b = 0 is the pure inverse law; b in (-1, inf) covers shifted variants
    while keeping b + r > 0 on r >= 1.
    """

    a: float
    b: float = 0.0

    def __post_init__(self):
        if not (self.a > 0.0) or not math.isfinite(self.a):
            raise ValueError(f"a must be positive and finite, got {self.a}")
        if not math.isfinite(self.b) or self.b <= -1.0:
            raise ValueError(f"b must be > -1 and finite, got {self.b}")

    @property
    def theta(self) -> float:
        return 2.0

    def frequency_at(self, r):
        r = _check_rank(r)
        return self.a / (self.b + r)

    def cumulative(self, r):
        r = _check_rank(r)
        return self.a * (np.log(self.b + r) - np.log(self.b + 1.0))


@dataclass(frozen=True)
class GeometricRankLaw:
    """Discrete waiting-time law P(r) = p (1-p)^(r-1); the integer-rank
    counterpart of TuringAsymptote."""

    p: float

    def __post_init__(self):
        if not (0.0 < self.p < 1.0):
            raise ValueError(f"p must lie in (0, 1), got {self.p}")

    @property
    def theta(self) -> float:
        return 1.0

    def frequency_at(self, r):
        r = _check_rank(r)
        return self.p * np.power(1.0 - self.p, r - 1.0)

    def cumulative(self, r):
        # partial sum of the pmf through integer rank r
        r = _check_rank(r)
        return -np.expm1(np.log1p(-self.p) * np.floor(r))


AsymptoteSpec = TuringAsymptote | PowerAsymptote | ZipfAsymptote | GeometricRankLaw


def frequency_at(spec: AsymptoteSpec, r):
    """Relative frequency at rank r (scalar or array), r >= 1."""
    return spec.frequency_at(r)


def cumulative(spec: AsymptoteSpec, r):
    """Cumulative frequency mass through rank r, in closed form.

    Continuous laws integrate f from 1 to r; the geometric law sums its pmf.
    """
    return spec.cumulative(r)


def cumulative_discrete(spec: AsymptoteSpec, r: int) -> float:
    """Discrete cumulative: sum of frequency_at(k) for integer k = 1..r."""
    if isinstance(r, bool) or not isinstance(r, int) or r < 1:
        raise ValueError(f"rank must be a positive integer, got {r!r}")
    k = np.arange(1, r + 1, dtype=np.float64)
    return float(np.sum(spec.frequency_at(k)))


def normalize(spec: AsymptoteSpec) -> AsymptoteSpec:
    """Rescale a law so its cumulative tends to 1, when that limit exists.

    The exponential and geometric laws are normalized by construction. A
    power law admits a unit-mass rescaling only inside the convergence
    region theta in (1, 2): the continuous tail integral then fixes
    scale = (2-theta)/(theta-1) (and the discrete sum converges there too).
    Outside [1, 2) no proper distribution exists and a ValueError is raised.
    """
    if isinstance(spec, (TuringAsymptote, GeometricRankLaw)):
        return spec
    if isinstance(spec, PowerAsymptote):
        if not converges(spec.theta):
            raise ValueError(
                f"no proper distribution exists for theta={spec.theta}; "
                "the cumulative diverges outside [1, 2)"
            )
        return replace(spec, scale=(2.0 - spec.theta) / (spec.theta - 1.0))
    if isinstance(spec, ZipfAsymptote):
        raise ValueError("the inverse rank law has a divergent cumulative; "
                         "it cannot be normalized on an infinite population")
    raise TypeError(f"not an asymptote spec: {spec!r}")
