"""Certified continued fractions for values known only to finite precision.

A value is given either exactly (a rational, expanded by Euclid's
algorithm to the canonical form whose last quotient is >= 2) or as an
interval [lo, hi].  Interval expansion iterates the Gauss map with exact
rational endpoint arithmetic: a partial quotient is recorded only when
both endpoints agree on the floor, so every listed quotient is certified
regardless of how the input was produced.  mpf endpoints are converted
exactly (they are dyadic), so no rounding enters anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from mpmath import mp

from .angles import fraction_from_mpf


class CertificationError(ArithmeticError):
    """The input interval is too wide to certify the requested output."""


@dataclass(frozen=True)
class ContinuedFraction:
    value_lo: Fraction
    value_hi: Fraction
    integer_part: int              # a_0
    quotients: tuple[int, ...]     # a_1 .. a_R, all certified
    numerators: tuple[int, ...]    # s_0 .. s_R
    denominators: tuple[int, ...]  # q_0 = 1, q_1, .. q_R
    terminated: bool               # exact rational with full expansion listed

    @property
    def certified_depth(self) -> int:
        return len(self.quotients)

    @property
    def convergents(self) -> tuple[tuple[int, int], ...]:
        return tuple(zip(self.numerators, self.denominators))

    @property
    def value_mid(self) -> Fraction:
        return (self.value_lo + self.value_hi) / 2


def _convergents(a0: int, quotients: list[int]) -> tuple[list[int], list[int]]:
    s_prev, s = 1, a0
    q_prev, q = 0, 1
    nums, dens = [s], [q]
    for a in quotients:
        s_prev, s = s, a * s + s_prev
        q_prev, q = q, a * q + q_prev
        nums.append(s)
        dens.append(q)
    return nums, dens


def _expand_exact(value: Fraction, max_depth: int) -> ContinuedFraction:
    a0 = math.floor(value)
    x = value - a0
    quotients = []
    # Euclid: the canonical expansion of a rational ends with a quotient >= 2
    while x != 0 and len(quotients) < max_depth:
        x = 1 / x
        a = math.floor(x)
        quotients.append(a)
        x = x - a
    nums, dens = _convergents(a0, quotients)
    return ContinuedFraction(
        value_lo=value, value_hi=value, integer_part=a0,
        quotients=tuple(quotients), numerators=tuple(nums),
        denominators=tuple(dens), terminated=(x == 0))


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    if isinstance(x, mp.mpf):
        return fraction_from_mpf(x)
    raise TypeError(f"cannot interpret {type(x).__name__} as an exact endpoint")


def expand(value, max_depth: int = 60) -> ContinuedFraction:
    """Continued fraction of ``value`` with certified partial quotients.

    ``value`` may be an exact rational (int, Fraction, or float/mpf taken
    at its exact dyadic value) or an ``(lo, hi)`` pair of endpoints.  The
    interval form stops at ``max_depth`` or at the first step where the
    endpoints disagree on a floor; it raises CertificationError when not
    even the integer part is certain.
    """
    if isinstance(value, tuple):
        lo, hi = (_as_fraction(v) for v in value)
    else:
        v = _as_fraction(value)
        return _expand_exact(v, max_depth)
    if lo > hi:
        raise ValueError("interval endpoints out of order")
    if lo == hi:
        return _expand_exact(lo, max_depth)
    if hi - lo >= 1:
        raise CertificationError("interval of width >= 1 certifies nothing")

    a0 = math.floor(lo)
    if math.floor(hi) != a0:
        raise CertificationError("integer part is not certified")
    lo, hi = lo - a0, hi - a0
    quotients = []
    while len(quotients) < max_depth:
        if lo <= 0:
            break  # interval touches a rational endpoint: cannot invert
        lo, hi = 1 / hi, 1 / lo
        a = math.floor(lo)
        if math.floor(hi) != a:
            break
        quotients.append(a)
        lo, hi = lo - a, hi - a
    if not quotients:
        raise CertificationError(
            "zero partial quotients certifiable; input too imprecise")
    nums, dens = _convergents(a0, quotients)
    orig_lo, orig_hi = (_as_fraction(v) for v in value)
    return ContinuedFraction(
        value_lo=orig_lo, value_hi=orig_hi, integer_part=a0,
        quotients=tuple(quotients), numerators=tuple(nums),
        denominators=tuple(dens), terminated=False)


def nearest_int_distance(t):
    """||t||, the distance from t to a nearest integer, in [0, 1/2].

    The result has the type of the argument (float, Fraction, or mpf);
    exact half-integers give exactly 1/2.
    """
    if isinstance(t, Fraction):
        f = t - math.floor(t)
        return min(f, 1 - f)
    if isinstance(t, int):
        return 0
    if isinstance(t, float):
        f = t - math.floor(t)
        return min(f, 1.0 - f)
    f = t - mp.floor(t)
    return min(f, 1 - f)


class BadApproxReport(NamedTuple):
    bounded: bool          # max quotient <= bound over the inspected depth
    max_quotient: int
    terminated: bool       # the expansion is a full rational expansion


def is_badly_approximable_up_to(cf: ContinuedFraction, depth: int,
                                bound: int = 10) -> BadApproxReport:
    """Finite-depth proxy: are the first ``depth`` partial quotients <= bound?

    Never a proof of bad approximability; rationals (terminating
    expansions) are reported distinctly via the ``terminated`` field.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if depth > cf.certified_depth and not cf.terminated:
        raise ValueError(
            f"depth {depth} exceeds certified depth {cf.certified_depth}")
    quotients = cf.quotients[:depth]
    max_q = max(quotients) if quotients else 0
    return BadApproxReport(bounded=(max_q <= bound), max_quotient=max_q,
                           terminated=cf.terminated)
