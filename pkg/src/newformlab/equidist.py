"""Limiting measures for normalized coefficients and empirical comparison.

Three measures: the semicircle-type Sato-Tate measure (2/pi) sqrt(1-t^2) dt
on t = a(p)/2 in [-1, 1] for non-CM forms; the CM measure, half a Dirac
mass at 0 plus the arcsine-type density 1/(2 pi sqrt(1-t^2)); and the
p-adic Plancherel measure in the angle variable theta on [0, pi],

    (2/pi) (1 + 1/p) sin^2(theta) / ((1 + 1/p)^2 - (4/p) cos^2(theta)) dtheta,

the vertical limit of angle distributions across a space of forms (and
the spectral measure of the nearest-neighbor Laplacian on a (p+1)-regular
tree).  Its CDF is evaluated by adaptive quadrature; the other two have
closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.integrate import quad

SATO_TATE_KIND = "sato-tate"
CM_KIND = "cm"
CM_CONTINUOUS_KIND = "cm-continuous"
PLANCHEREL_KIND = "plancherel"

_QUAD_ABS_TOL = 1e-12


@dataclass(frozen=True)
class MeasureSpec:
    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind not in (SATO_TATE_KIND, CM_KIND, CM_CONTINUOUS_KIND,
                             PLANCHEREL_KIND):
            raise ValueError(f"unknown measure kind {self.kind!r}")
        if self.kind == PLANCHEREL_KIND and (self.p is None or self.p < 2):
            raise ValueError("Plancherel measure needs a prime p >= 2")

    @property
    def support(self) -> tuple[float, float]:
        if self.kind == PLANCHEREL_KIND:
            return (0.0, math.pi)
        return (-1.0, 1.0)


SATO_TATE = MeasureSpec(SATO_TATE_KIND)
CM = MeasureSpec(CM_KIND)
CM_CONTINUOUS = MeasureSpec(CM_CONTINUOUS_KIND)


def plancherel(p: int) -> MeasureSpec:
    return MeasureSpec(PLANCHEREL_KIND, p=p)


def sato_tate_cdf(t: float) -> float:
    t = min(1.0, max(-1.0, t))
    return (t * math.sqrt(1.0 - t * t) + math.asin(t)) / math.pi + 0.5


def cm_cdf(t: float) -> float:
    """Right-continuous CDF: continuous arcsine part of mass 1/2 plus the
    atom of mass 1/2 at zero."""
    t = min(1.0, max(-1.0, t))
    value = math.asin(t) / (2.0 * math.pi) + 0.25
    if t >= 0.0:
        value += 0.5
    return value


def cm_cdf_left(t: float) -> float:
    """Left limit of the CM CDF (differs from cm_cdf only at the atom)."""
    t = min(1.0, max(-1.0, t))
    value = math.asin(t) / (2.0 * math.pi) + 0.25
    if t > 0.0:
        value += 0.5
    return value


def cm_continuous_cdf(t: float) -> float:
    """CDF of the continuous CM part renormalized to total mass 1."""
    t = min(1.0, max(-1.0, t))
    return math.asin(t) / math.pi + 0.5


def plancherel_density(p: int, theta: float) -> float:
    s2 = math.sin(theta) ** 2
    c2 = math.cos(theta) ** 2
    return (2.0 / math.pi) * (1.0 + 1.0 / p) * s2 / ((1.0 + 1.0 / p) ** 2
                                                     - (4.0 / p) * c2)


def plancherel_cdf(p: int, theta: float) -> float:
    theta = min(math.pi, max(0.0, theta))
    if theta == 0.0:
        return 0.0
    value, _ = quad(lambda u: plancherel_density(p, u), 0.0, theta,
                    epsabs=_QUAD_ABS_TOL, limit=200)
    return min(1.0, value)


def plancherel_cdf_in_t(p: int, t: float) -> float:
    """Plancherel CDF pushed to t = cos(theta) on [-1, 1]."""
    t = min(1.0, max(-1.0, t))
    return 1.0 - plancherel_cdf(p, math.acos(t))


def cdf(measure: MeasureSpec, t: float) -> float:
    if measure.kind == SATO_TATE_KIND:
        return sato_tate_cdf(t)
    if measure.kind == CM_KIND:
        return cm_cdf(t)
    if measure.kind == CM_CONTINUOUS_KIND:
        return cm_continuous_cdf(t)
    return plancherel_cdf(measure.p, t)


def cdf_left(measure: MeasureSpec, t: float) -> float:
    if measure.kind == CM_KIND:
        return cm_cdf_left(t)
    return cdf(measure, t)  # the other measures are atomless


class EmpiricalSample(NamedTuple):
    values: np.ndarray     # sorted a(p)/2 over good primes
    primes: np.ndarray     # matching primes, sorted by sample value


def empirical_distribution(table, x_limit: int) -> EmpiricalSample:
    """Sorted samples a(p)/2 over good primes p <= x_limit."""
    if x_limit > table.limit:
        raise ValueError(f"x_limit {x_limit} beyond table limit {table.limit}")
    ps = table.good_primes(x_limit)
    values = table.normalized[ps] / 2.0
    order = np.argsort(values, kind="stable")
    return EmpiricalSample(values=values[order], primes=ps[order])


def ks_statistic(samples: np.ndarray, measure: MeasureSpec) -> float:
    """Sup distance between the empirical CDF and the measure CDF.

    Evaluated from both sides at every distinct sample value, so tied
    samples (the CM atom at zero) and CDF jumps are handled exactly:
    at a value v the empirical CDF contributes (#samples <= v)/n from
    the right and (#samples < v)/n from the left.
    """
    n = len(samples)
    if n == 0:
        raise ValueError("empty sample")
    if n > 1 and np.any(np.diff(samples) < 0):
        raise ValueError("samples must be sorted ascending")
    values, counts = np.unique(samples, return_counts=True)
    below = np.concatenate(([0], np.cumsum(counts)))
    d = 0.0
    for j, v in enumerate(values):
        right = cdf(measure, float(v))
        left = cdf_left(measure, float(v))
        d = max(d, abs(below[j + 1] / n - right), abs(left - below[j] / n))
    return d


def semicircle_mass(alpha: float, beta: float) -> float:
    """(2/pi) * integral of sqrt(1-t^2) over [alpha, beta] (closed form)."""
    def anti(t):
        t = min(1.0, max(-1.0, t))
        return (t * math.sqrt(1.0 - t * t) + math.asin(t)) / math.pi
    return anti(beta) - anti(alpha)


def interval_count_ratio(table, x_limit: int, alpha: float,
                         beta: float) -> tuple[int, float]:
    """Observed #{good p <= x: a(p)/2 in [alpha, beta]} vs the Sato-Tate
    prediction mass([alpha, beta]) * #good primes."""
    if not -1.0 <= alpha <= beta <= 1.0:
        raise ValueError("need -1 <= alpha <= beta <= 1")
    sample = empirical_distribution(table, x_limit)
    observed = int(np.count_nonzero((sample.values >= alpha)
                                    & (sample.values <= beta)))
    predicted = semicircle_mass(alpha, beta) * len(sample.values)
    return observed, predicted
