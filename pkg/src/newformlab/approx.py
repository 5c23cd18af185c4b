"""Constructive approximation experiments on coefficient sequences.

Three kinds of searches:

* a running-minima scan of |a(n) - x| over all indices with logarithmic
  scaling (the all-n approximation picture);
* a prime-power search locating m with m * |a(p^m) - x| <= 6 pi / sin(theta_p)
  through inhomogeneous rotation hits: with sin(delta) = x sin(theta_p),
  any m with ||(m+1) theta_p/2pi - delta/2pi|| < 3/(m+1) produces such a
  witness via a(p^m) = sin((m+1) theta_p)/sin(theta_p);
* badly-approximable screening: x = sin(2 pi delta)/sin(theta_p) for
  delta in (0, 1/8) avoiding the rotation orbit at three phases lies in
  Bad(p, m^2), with an explicit lower bound on inf m^2 |a(p^m) - x| in
  terms of the measured avoidance constant gamma.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from mpmath import mp

from .angles import (RATIONAL_ANGLE, angle, normalized_prime_coeff)
from .inhomog import ApproxWitness, TwistedInf, minkowski_witnesses, to_fixed
from .rates import RateFunction

_GUARD_BITS = 64


@dataclass
class ScanReport:
    x: float
    form_id: str
    rate_label: str
    horizon: int
    witnesses: list[ApproxWitness]
    best_constant: float | None
    meta: dict = field(default_factory=dict)

    @property
    def count(self) -> int:
        return len(self.witnesses)


class BadInfimum(NamedTuple):
    value: float
    argmin: int


def afz_scan(table, x: float, n_max: int, constant: float = 1.0) -> ScanReport:
    """Running minima of |a(n) - x| over 2 <= n <= n_max, log-scaled.

    Witnesses are the indices where the distance drops strictly below
    every earlier distance; exact hits (distance zero) are always
    recorded.  Flagged indices (bad-prime multiples) are skipped.  The
    scaled field is log(n) * distance, and the report counts how many
    scanned indices satisfy scaled <= ``constant``.
    """
    if n_max > table.limit:
        raise ValueError(f"n_max {n_max} beyond table limit {table.limit}")
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    n = np.arange(2, n_max + 1)
    dist = np.abs(table.normalized[2:n_max + 1] - x)
    flagged = table.flagged[2:n_max + 1]
    masked = np.where(flagged, np.inf, dist)
    running = np.minimum.accumulate(masked)
    prev_best = np.concatenate(([np.inf], running[:-1]))
    is_witness = ~flagged & ((masked < prev_best) | (masked == 0.0))
    idx = n[is_witness]
    scaled_all = np.log(n) * masked
    witnesses = [ApproxWitness(index=int(i), distance=float(dist[i - 2]),
                               scaled=float(scaled_all[i - 2])) for i in idx]
    best = min((w.scaled for w in witnesses), default=None)
    below = int(np.count_nonzero(scaled_all[~flagged] <= constant))
    return ScanReport(
        x=x, form_id=table.spec.form_id, rate_label="log(n)",
        horizon=n_max, witnesses=witnesses, best_constant=best,
        meta={"constant": constant, "below_constant_count": below})


def prime_power_search(table, p: int, x: float, m_max: int,
                       precision_bits: int = 256) -> ScanReport:
    """Witnesses m <= m_max with m * |a(p^m) - x| <= 6 pi / sin(theta_p).

    When |x sin(theta_p)| <= 1 the search is constructive: with
    delta = arcsin(x sin theta_p) (both branches delta and pi - delta are
    scanned and merged), each rotation hit
    ||(m+1) theta_p/2pi - delta/2pi|| < 3/(m+1) maps to the witness m
    with its distance |a(p^m) - x|, because sin is 1-Lipschitz and
    a(p^m) = sin((m+1) theta_p)/sin(theta_p).  Every such witness
    provably satisfies the bound, which is re-verified on report.

    When |x sin(theta_p)| > 1 no real delta exists (x is farther from 0
    than the sequence a(p^m) can reach); the search falls back to an
    exhaustive scan for indices satisfying the bound directly, which is
    then necessarily a finite set.  ``meta["hypothesis_ok"]`` records
    which route ran.
    """
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    rec = angle(table, p, precision_bits)
    if rec.classification == RATIONAL_ANGLE:
        raise ValueError(
            f"theta_{p} is a rational angle; the rotation orbit is periodic")
    with mp.workprec(precision_bits + _GUARD_BITS):
        theta = rec.theta
        sin_theta = rec.sin_theta
        bound = 6 * mp.pi / sin_theta
        s = x * sin_theta
        hypothesis_ok = bool(abs(s) <= 1)
        witnesses: dict[int, ApproxWitness] = {}
        if hypothesis_ok:
            delta = mp.asin(s)
            fraction = theta / (2 * mp.pi)
            branches = [delta, mp.pi - delta] if delta != mp.pi - delta else [delta]
            for d in branches:
                offset = -d / (2 * mp.pi)
                for hit in minkowski_witnesses(fraction, offset, m_max + 1,
                                               bits=precision_bits):
                    m = hit.index - 1
                    if m < 1 or m > m_max or m in witnesses:
                        continue
                    value = mp.sin(hit.index * theta) / sin_theta
                    distance = abs(value - x)
                    scaled = m * distance
                    if scaled > bound * (1 + mp.mpf(2) ** -40):
                        raise AssertionError(
                            f"witness bound violated at m={m}: {scaled} > {bound}")
                    witnesses[m] = ApproxWitness(index=m, distance=float(distance),
                                                 scaled=float(scaled))
            meta_delta = float(delta)
        else:
            # exhaustive fallback: test the conclusion inequality directly
            u_prev, u = mp.mpf(1), normalized_prime_coeff(table, p, precision_bits)
            a_p = u
            for m in range(1, m_max + 1):
                if m > 1:
                    u_prev, u = u, a_p * u - u_prev
                scaled = m * abs(u - x)
                if scaled <= bound:
                    witnesses[m] = ApproxWitness(index=m,
                                                 distance=float(abs(u - x)),
                                                 scaled=float(scaled))
            meta_delta = None
        ordered = [witnesses[m] for m in sorted(witnesses)]
        best = min((w.scaled for w in ordered), default=None)
        return ScanReport(
            x=x, form_id=table.spec.form_id, rate_label="m",
            horizon=m_max, witnesses=ordered, best_constant=best,
            meta={
                "p": p,
                "hypothesis_ok": hypothesis_ok,
                "delta": meta_delta,
                "bound": float(bound),
                "sin_theta": float(sin_theta),
            })


def bad_infimum(table, p: int, x, rate: RateFunction, m_max: int,
                precision_bits: int = 256) -> BadInfimum:
    """min over 1 <= m <= m_max of rate(m) * |a(p^m) - x|, with argmin.

    A finite-horizon stand-in for the infimum defining Bad(p, rate); the
    prime-power values run through the closed-form recursion at working
    precision.
    """
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    if table.is_flagged(p):
        raise ValueError(f"p={p} is a bad prime for this form")
    if int(table.spf[p]) != p:
        raise ValueError(f"{p} is not prime")
    with mp.workprec(precision_bits + _GUARD_BITS):
        x = mp.mpf(x)
        a_p = normalized_prime_coeff(table, p, precision_bits)
        u_prev, u = mp.mpf(1), a_p
        best = None
        best_m = 0
        for m in range(1, m_max + 1):
            if m > 1:
                u_prev, u = u, a_p * u - u_prev
            v = rate(m) * abs(u - x)
            if best is None or v < best:
                best, best_m = v, m
        return BadInfimum(value=float(best), argmin=best_m)


@dataclass(frozen=True)
class BadPointReport:
    delta: float
    x: object                      # mpf, the exact working-precision target
    minima: tuple[TwistedInf, TwistedInf, TwistedInf]
    gamma: float
    screened: bool
    threshold: float
    horizon: int
    sin_theta: float

    @property
    def x_float(self) -> float:
        return float(self.x)


def _shifted_orbit_minimum(fraction_fixed: int, offset_fixed: int,
                           bits: int, horizon: int) -> TwistedInf:
    """min over 1 <= m <= horizon of (m+1) * ||(m+1)*F + c||."""
    modulus = 1 << bits
    half = modulus >> 1
    s = (fraction_fixed + offset_fixed) % modulus  # value at multiplier 1
    best = None
    best_m = 0
    for mult in range(2, horizon + 2):
        s = s + fraction_fixed
        if s >= modulus:
            s -= modulus
        d = s if s < half else modulus - s
        v = d * mult
        if best is None or v < best:
            best, best_m = v, mult - 1
    return TwistedInf(value=float(best) / float(modulus), argmin=best_m)


def construct_bad_point(table, p: int, delta, horizon: int = 10 ** 4,
                        precision_bits: int = 256,
                        screen_threshold: float = 1e-3) -> BadPointReport:
    """x = sin(2 pi delta)/sin(theta_p) plus the three avoidance minima.

    For delta in (0, 1/8) the report evaluates, over m <= horizon, the
    minima of (m+1) * ||(m+1) theta_p/2pi + c|| at the three phases
    c in {-delta, delta - 1/2, delta + 1/2}.  All three staying above a
    positive gamma is exactly what makes x a Bad(p, m^2) point, with
    inf m^2 |a(p^m) - x| >= proof_lower_bound(gamma, sin theta_p).
    """
    rec = angle(table, p, precision_bits)
    with mp.workprec(precision_bits + _GUARD_BITS):
        delta = mp.mpf(delta)
        if not 0 < delta < mp.mpf(1) / 8:
            raise ValueError("delta must lie strictly inside (0, 1/8)")
        sin_theta = rec.sin_theta
        x = mp.sin(2 * mp.pi * delta) / sin_theta
        fraction = rec.theta / (2 * mp.pi)
        F = to_fixed(fraction, precision_bits)
        minima = []
        for c in (-delta, delta - mp.mpf(1) / 2, delta + mp.mpf(1) / 2):
            C = to_fixed(c, precision_bits)
            minima.append(_shifted_orbit_minimum(F, C, precision_bits, horizon))
    gamma = min(m.value for m in minima)
    return BadPointReport(
        delta=float(delta), x=x, minima=tuple(minima), gamma=gamma,
        screened=bool(gamma > screen_threshold), threshold=screen_threshold,
        horizon=horizon, sin_theta=float(sin_theta))


def proof_lower_bound(gamma: float, sin_theta: float) -> float:
    """Guaranteed floor for inf_m m^2 |a(p^m) - x| given avoidance gamma.

    From 2 sin^2(gamma pi/(m+1)) expanded with sin t >= t(1 - t^2/6) and
    minimized over m >= 1; the derivation needs gamma < 1/4, so larger
    measured gammas are capped.
    """
    g = min(gamma, 0.25 - 1e-12)
    if g <= 0:
        return 0.0
    u = g * g * math.pi * math.pi
    return u * (1 - u / 6.0) ** 2 / (2.0 * sin_theta)
