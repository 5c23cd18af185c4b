"""Coefficient tables: exact a_f(n) and normalized a(n) = a_f(n)/n^{(k-1)/2}.

A table stores the integer coefficients for 1 <= n <= limit, filled in at
primes (tau expansion or point counting), extended to prime powers by

    a_f(p^m) = a_f(p) a_f(p^{m-1}) - p^{k-1} a_f(p^{m-2}),

and to all n by multiplicativity along a smallest-prime-factor sieve.
Indices divisible by a bad prime (p | level) are stored as 0 and flagged;
downstream searches skip flagged indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import cache as _cache
from .curves import ec_ap
from .forms import NewformSpec
from .series import tau_table

#: refuse to build tables larger than this many entries (memory budget)
DEFAULT_LIMIT_BUDGET = 2_000_000


def spf_sieve(limit: int) -> np.ndarray:
    """smallest_prime_factor[n] for 0 <= n <= limit (entries 0, 1 are 0)."""
    spf = np.zeros(limit + 1, dtype=np.int64)
    for i in range(2, int(limit ** 0.5) + 1):
        if spf[i] == 0:
            spf[i] = i
            sl = spf[i * i::i]
            sl[sl == 0] = i
    rest = np.nonzero(spf == 0)[0]
    spf[rest] = rest
    if limit >= 1:
        spf[1] = 0
    spf[0] = 0
    return spf


def primes_from_spf(spf: np.ndarray) -> np.ndarray:
    idx = np.arange(len(spf), dtype=np.int64)
    return idx[(idx >= 2) & (spf == idx)]


def divisor_counts(limit: int) -> np.ndarray:
    """d(n) for 0 <= n <= limit via a counting sieve (d[0] = 0)."""
    d = np.zeros(limit + 1, dtype=np.int64)
    for i in range(1, limit + 1):
        d[i::i] += 1
    return d


def divisor_function(n: int, spf: np.ndarray | None = None) -> int:
    """Number of positive divisors of n.

    Factors along a smallest-prime-factor sieve when one covering n is
    supplied, by trial division otherwise.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    count = 1
    if spf is not None and n < len(spf):
        while n > 1:
            p = int(spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            count *= e + 1
        return count
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            count *= e + 1
        d += 1
    if n > 1:
        count *= 2
    return count


@dataclass
class CoefficientTable:
    """Read-only bundle of exact and normalized coefficients up to ``limit``."""

    spec: NewformSpec
    limit: int
    raw: list[int]                 # raw[n] = a_f(n), raw[0] unused
    normalized: np.ndarray         # float64, normalized[0] = nan
    spf: np.ndarray
    flagged: np.ndarray            # True where a bad prime divides n
    _primes: np.ndarray = field(default=None, repr=False)

    def a_f(self, n: int) -> int:
        return self.raw[n]

    def a(self, n: int) -> float:
        return float(self.normalized[n])

    def is_flagged(self, n: int) -> bool:
        return bool(self.flagged[n])

    def primes(self, up_to: int | None = None) -> np.ndarray:
        if self._primes is None:
            self._primes = primes_from_spf(self.spf)
        ps = self._primes
        if up_to is not None:
            ps = ps[ps <= up_to]
        return ps

    def good_primes(self, up_to: int | None = None) -> np.ndarray:
        ps = self.primes(up_to)
        return ps[~self.flagged[ps]]


def _prime_coefficients(spec: NewformSpec, primes: np.ndarray) -> dict[int, int]:
    if spec.kind == "delta":
        limit = int(primes[-1]) if len(primes) else 1
        tau = tau_table(limit)
        return {int(p): tau[int(p)] for p in primes}
    out = {}
    for p in primes:
        p = int(p)
        out[p] = 0 if spec.is_bad_prime(p) else ec_ap(spec, p)
    return out


def build_table(spec: NewformSpec, limit: int, *,
                cache_dir: str | None = None,
                limit_budget: int = DEFAULT_LIMIT_BUDGET) -> CoefficientTable:
    """Build (or load from cache) the coefficient table up to ``limit``."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    if limit > limit_budget:
        raise ValueError(
            f"limit {limit} exceeds the configured budget {limit_budget}")

    spf = spf_sieve(limit)
    primes = primes_from_spf(spf)

    raw = None
    if cache_dir is not None:
        cached = _cache.load_raw(cache_dir, spec.form_id, limit)
        if cached is not None:
            raw = cached[:limit + 1]

    if raw is None:
        raw = _compute_raw(spec, limit, spf, primes)
        if cache_dir is not None:
            _cache.store_raw(cache_dir, spec.form_id, limit, raw)

    flagged = np.zeros(limit + 1, dtype=bool)
    for q in spec.bad_primes:
        if q <= limit:
            flagged[q::q] = True

    k = spec.weight
    norm = np.empty(limit + 1, dtype=np.float64)
    norm[0] = np.nan
    values = np.array([float(v) for v in raw[1:]], dtype=np.float64)
    n_arr = np.arange(1, limit + 1, dtype=np.float64)
    norm[1:] = values / n_arr ** ((k - 1) / 2.0)

    return CoefficientTable(spec=spec, limit=limit, raw=raw,
                            normalized=norm, spf=spf, flagged=flagged)


def _compute_raw(spec: NewformSpec, limit: int, spf: np.ndarray,
                 primes: np.ndarray) -> list[int]:
    raw = [0] * (limit + 1)
    raw[1] = 1 if limit >= 1 else 0

    ap = _prime_coefficients(spec, primes)
    k = spec.weight
    for p in primes:
        p = int(p)
        raw[p] = ap[p]
        if spec.is_bad_prime(p):
            # zeroed and flagged; the good-prime recursion does not apply
            q = p * p
            while q <= limit:
                raw[q] = 0
                q *= p
            continue
        pk = p ** (k - 1)
        prev2, prev1 = 1, ap[p]
        q = p * p
        while q <= limit:
            cur = ap[p] * prev1 - pk * prev2
            raw[q] = cur
            prev2, prev1 = prev1, cur
            q *= p
    # multiplicative extension along smallest prime factors
    for n in range(2, limit + 1):
        p = int(spf[n])
        if p == n:
            continue  # prime, already set
        m = n
        pe = 1
        while m % p == 0:
            m //= p
            pe *= p
        if m == 1:
            continue  # prime power, already set
        raw[n] = raw[pe] * raw[m]
    return raw
