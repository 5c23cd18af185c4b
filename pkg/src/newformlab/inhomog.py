"""Inhomogeneous approximation scans and the Fuchs-Kim divergence sums.

The orbit distances ||m*theta + x|| are tracked in exact fixed-point
arithmetic: theta and x are floored to B fractional bits once, and the
orbit value (m*T + X) mod 2^B is advanced by integer addition, so the
scan is drift-free by construction and certified up to the single
initial rounding (error below m * 2^-B-1, astronomically smaller than
any distance that matters at desk scale).  The incremental state is
still re-derived from scratch every 2^16 steps and checked, as a guard
against implementation rot.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np
from mpmath import mp

from .angles import fraction_from_mpf
from .contfrac import CertificationError, ContinuedFraction
from .rates import RateFunction

DEFAULT_BITS = 256
ANCHOR_INTERVAL = 1 << 16

#: per-block cap on term-by-term summation when no closed form exists
DEFAULT_SUM_CAP = 10 ** 8


@dataclass(frozen=True)
class ApproxWitness:
    """An index m with its distance and the rate-scaled distance."""

    index: int
    distance: float
    scaled: float


class TwistedInf(NamedTuple):
    value: float
    argmin: int


def exact_fraction(x) -> Fraction:
    """The exact rational value of x (ints, floats and mpfs are dyadic)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, float)):
        return Fraction(x)
    return fraction_from_mpf(mp.mpf(x))


def to_fixed(x, bits: int) -> int:
    """floor(x * 2^bits) as an exact integer."""
    x = exact_fraction(x)
    return (x.numerator << bits) // x.denominator


def minkowski_witnesses(theta, x, m_max: int,
                        bits: int = DEFAULT_BITS) -> list[ApproxWitness]:
    """All m <= m_max with ||m*theta + x|| < 3/m.

    Linear scan with incremental fixed-point orbit tracking; the scaled
    field is m * distance, so witnesses satisfy scaled < 3.  Raises
    CertificationError when a distance cannot be separated from zero at
    the working precision (theta rational to working precision).
    """
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    theta_exact = exact_fraction(theta)
    if theta_exact.denominator <= m_max:
        raise CertificationError(
            f"theta is rational with denominator {theta_exact.denominator} "
            f"<= m_max; the orbit degenerates inside the scan")
    modulus = 1 << bits
    half = modulus >> 1
    T = to_fixed(theta, bits) % modulus
    X = to_fixed(x, bits) % modulus
    out = []
    s = X
    for m in range(1, m_max + 1):
        s = s + T
        if s >= modulus:
            s -= modulus
        d = s if s < half else modulus - s
        if d <= m + 1:
            raise CertificationError(
                f"||{m}*theta + x|| is zero to working precision; "
                "theta rational or precision too low")
        if d * m < 3 * modulus:
            dist = float(d) / float(modulus)
            out.append(ApproxWitness(index=m, distance=dist, scaled=m * dist))
        if m % ANCHOR_INTERVAL == 0:
            assert s == (m * T + X) % modulus, "incremental orbit drifted"
    return out


def twisted_bad_inf(theta, x, m_max: int, bits: int = DEFAULT_BITS) -> TwistedInf:
    """min over 1 <= m <= m_max of m * ||m*theta - x|| and its argmin.

    A finite-horizon upper bound for the infimum defining the twisted
    badly-approximable set; exact zeros (e.g. x = theta at m = 1) are
    legitimate results here, not precision failures.
    """
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    modulus = 1 << bits
    half = modulus >> 1
    T = to_fixed(theta, bits) % modulus
    X = to_fixed(x, bits) % modulus
    best_num = None
    best_m = 0
    s = (-X) % modulus
    for m in range(1, m_max + 1):
        s = s + T
        if s >= modulus:
            s -= modulus
        d = s if s < half else modulus - s
        v = d * m
        if best_num is None or v < best_num:
            best_num, best_m = v, m
        if m % ANCHOR_INTERVAL == 0:
            assert s == (m * T - X) % modulus, "incremental orbit drifted"
    return TwistedInf(value=float(best_num) / float(modulus), argmin=best_m)


@dataclass(frozen=True)
class FkBlock:
    r: int
    q_r: int
    q_next: int
    distance: float        # ||q_r * theta||
    block_sum: float
    cumulative: float
    truncated: bool
    terms_capped_at: int | None


def _block_distance(cf: ContinuedFraction, r: int) -> float:
    """||q_r * theta|| = |q_r * theta - s_r|, certified from the value interval."""
    q_r = cf.denominators[r]
    s_r = cf.numerators[r]
    lo = q_r * cf.value_lo - s_r
    hi = q_r * cf.value_hi - s_r
    if lo <= 0 <= hi and lo != hi:
        raise CertificationError(
            f"||q_{r} theta|| not separated from zero at this precision")
    d_lo, d_hi = (abs(hi), abs(lo)) if hi <= 0 else (abs(lo), abs(hi))
    return float((d_lo + d_hi) / 2)


def _crossover(phi: RateFunction, dist: float, a: int, b: int) -> int:
    """Largest n in [a, b] with phi(n) >= dist, or a - 1 when none."""
    if phi(a) < dist:
        return a - 1
    if phi(b) >= dist:
        return b
    lo, hi = a, b  # phi(lo) >= dist > phi(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if phi(mid) >= dist:
            lo = mid
        else:
            hi = mid
    return lo


def _tail_sum(phi: RateFunction, a: int, b: int,
              cap: int) -> tuple[float, bool, int | None]:
    """sum_{n=a}^{b} phi(n); closed form when available, else capped summation."""
    if b < a:
        return 0.0, False, None
    closed = phi.partial_sum(a, b)
    if closed is not None:
        return closed, False, None
    count = b - a + 1
    truncated = count > cap
    stop = a + min(count, cap) - 1
    total = 0.0
    chunk = 1 << 20
    start = a
    while start <= stop:
        end = min(start + chunk - 1, stop)
        n = np.arange(start, end + 1, dtype=np.float64)
        total += float(np.sum(phi.values(n)))
        start = end + 1
    return total, truncated, (cap if truncated else None)


def fuchs_kim_partial_sums(cf: ContinuedFraction, phi: RateFunction,
                           blocks: int, cap: int = DEFAULT_SUM_CAP) -> list[FkBlock]:
    """Cumulative Fuchs-Kim sums over convergent blocks.

    Block r contributes sum_{n=q_r}^{q_{r+1}-1} min(phi(n), ||q_r theta||);
    divergence of the full series is the criterion for the twisted orbit
    ||m theta - x|| < phi(m) to have infinitely many solutions for almost
    every x.  Requires blocks <= certified_depth - 1 so that every block
    boundary q_{r+1} is certified.
    """
    if not phi.decreasing:
        raise ValueError("phi must be a decreasing rate function")
    if phi(1) <= 0 or phi(1) < phi(10) or phi(10) < phi(100):
        raise ValueError("phi must be positive and decreasing")
    if blocks < 1:
        raise ValueError("blocks must be >= 1")
    if blocks > cf.certified_depth - 1:
        raise ValueError(
            f"blocks {blocks} exceeds certified_depth - 1 = {cf.certified_depth - 1}")
    out = []
    cumulative = 0.0
    for r in range(blocks):
        q_r = cf.denominators[r]
        q_next = cf.denominators[r + 1]
        a, b = q_r, q_next - 1
        dist = _block_distance(cf, r)
        if b < a:
            block_sum, truncated, capped = 0.0, False, None
        else:
            n_star = _crossover(phi, dist, a, b)
            head = dist * (n_star - a + 1) if n_star >= a else 0.0
            tail, truncated, capped = _tail_sum(phi, max(a, n_star + 1), b, cap)
            block_sum = head + tail
        cumulative += block_sum
        out.append(FkBlock(r=r, q_r=q_r, q_next=q_next, distance=dist,
                           block_sum=block_sum, cumulative=cumulative,
                           truncated=truncated, terms_capped_at=capped))
    return out
