"""Sato-Tate angles theta_p with certified error radii.

At a good prime p the normalized coefficient satisfies a(p) = 2 cos theta_p
with theta_p in [0, pi].  The angle is computed from the exact integer
a_f(p) and an exact dyadic enclosure of p^{(k-1)/2} (k even, so the
normalizer is p^{(k-2)/2} * sqrt(p)); arccos is evaluated at both endpoints
with guard bits and widened, giving interval semantics for theta_p and for
the fraction theta_p/(2*pi).

Classification is an exact algebraic test: the angle is reported rational
exactly when the rational number a(p)^2 = a_f(p)^2 / p^{k-1} lies in
{0, 1, 2, 3, 4} (the values 4cos^2 of the rational angles realizable with
integer coefficients); everything else is treated as irrational for search
purposes, and the classification name records that this is a heuristic,
not a proof.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp

RATIONAL_ANGLE = "rational-angle"
IRRATIONAL_HEURISTIC = "irrational-certified-heuristic"

#: rational a(p)^2 values corresponding to angles at rational multiples of pi
_RATIONAL_SQUARES = {0, 1, 2, 3, 4}

DEFAULT_PRECISION_BITS = 256
_GUARD_BITS = 64


class AngleDomainError(ValueError):
    """|a(p)| > 2: would contradict the Deligne bound, so a coefficient bug."""


def sqrt_interval(n: int, bits: int) -> tuple[Fraction, Fraction]:
    """Dyadic enclosure lo <= sqrt(n) <= hi with hi - lo = 2^-bits."""
    if n < 0:
        raise ValueError("n must be non-negative")
    s = math.isqrt(n << (2 * bits))
    scale = 1 << bits
    return Fraction(s, scale), Fraction(s + 1, scale)


def normalizer_interval(p: int, k: int, bits: int) -> tuple[Fraction, Fraction]:
    """Enclosure of p^{(k-1)/2} = p^{(k-2)/2} * sqrt(p) for even k."""
    base = p ** ((k - 2) // 2)
    lo, hi = sqrt_interval(p, bits)
    return base * lo, base * hi


def _widen(x, bits_kept: int):
    """x +/- 2^(mag(x) - bits_kept); an honest cushion for 1-ulp functions."""
    mag = int(mp.mag(x)) if x != 0 else 0
    eps = mp.ldexp(1, mag - bits_kept)
    return x - eps, x + eps


def fraction_from_mpf(x) -> Fraction:
    """Exact rational value of a finite mpf (every mpf is dyadic)."""
    sign, man, exp, _ = mp.mpf(x)._mpf_
    man, exp = int(man), int(exp)  # may be gmpy2.mpz under that backend
    if man == 0:
        if exp == 0:
            return Fraction(0)
        raise ValueError(f"cannot convert non-finite value {x!r}")
    v = Fraction(man << exp) if exp >= 0 else Fraction(man, 1 << -exp)
    return -v if sign else v


@dataclass(frozen=True)
class AngleRecord:
    p: int
    a_f_p: int
    weight: int
    cos_lo: Fraction               # exact enclosure of a(p)/2
    cos_hi: Fraction
    theta_lo: object               # mpf endpoints of theta_p
    theta_hi: object
    fraction_lo: Fraction          # exact dyadic enclosure of theta_p/(2*pi)
    fraction_hi: Fraction
    classification: str
    precision_bits: int

    @property
    def theta(self):
        with mp.workprec(self.precision_bits + _GUARD_BITS):
            return (self.theta_lo + self.theta_hi) / 2

    @property
    def radius(self):
        with mp.workprec(self.precision_bits + _GUARD_BITS):
            return (self.theta_hi - self.theta_lo) / 2

    @property
    def fraction(self) -> Fraction:
        return (self.fraction_lo + self.fraction_hi) / 2

    @property
    def cos_theta(self):
        with mp.workprec(self.precision_bits + _GUARD_BITS):
            mid = self.cos_lo + self.cos_hi
            return mp.mpf(mid.numerator) / mp.mpf(2 * mid.denominator)

    @property
    def sin_theta(self):
        with mp.workprec(self.precision_bits + _GUARD_BITS):
            c = self.cos_theta
            return mp.sqrt(1 - c * c)

    @property
    def mu(self):
        """The unit complex number exp(i*theta_p) as a (cos, sin) pair."""
        return (self.cos_theta, self.sin_theta)


def classify_angle(a_f_p: int, p: int, k: int) -> str:
    square = Fraction(a_f_p * a_f_p, p ** (k - 1))
    return RATIONAL_ANGLE if square in _RATIONAL_SQUARES else IRRATIONAL_HEURISTIC


def angle(table, p: int, precision_bits: int = DEFAULT_PRECISION_BITS) -> AngleRecord:
    """Certified theta_p = arccos(a(p)/2) for a good prime of the table."""
    if p > table.limit:
        raise ValueError(f"prime {p} beyond table limit {table.limit}")
    if table.is_flagged(p):
        raise ValueError(f"p={p} is a bad prime for this form")
    if int(table.spf[p]) != p:
        raise ValueError(f"{p} is not prime")

    a_f_p = table.a_f(p)
    k = table.spec.weight
    if a_f_p * a_f_p > 4 * p ** (k - 1):
        raise AngleDomainError(
            f"|a({p})| > 2 contradicts the Deligne bound; coefficient bug?")

    # exact enclosure of cos = a_f(p) / (2 * p^{(k-1)/2})
    prec = precision_bits
    norm_lo, norm_hi = normalizer_interval(p, k, prec + 16)
    if a_f_p > 0:
        cos_lo, cos_hi = Fraction(a_f_p) / (2 * norm_hi), Fraction(a_f_p) / (2 * norm_lo)
    elif a_f_p < 0:
        cos_lo, cos_hi = Fraction(a_f_p) / (2 * norm_lo), Fraction(a_f_p) / (2 * norm_hi)
    else:
        cos_lo = cos_hi = Fraction(0)
    cos_lo = max(cos_lo, Fraction(-1))
    cos_hi = min(cos_hi, Fraction(1))

    with mp.workprec(prec + _GUARD_BITS):
        # arccos is decreasing: evaluate at swapped endpoints, widen 16 ulps
        t_lo = mp.acos(mp.mpf(cos_hi.numerator) / mp.mpf(cos_hi.denominator))
        t_hi = mp.acos(mp.mpf(cos_lo.numerator) / mp.mpf(cos_lo.denominator))
        t_lo, _ = _widen(t_lo, mp.prec - 4)
        _, t_hi = _widen(t_hi, mp.prec - 4)
        t_lo = max(t_lo, mp.mpf(0))
        t_hi = min(t_hi, +mp.pi + mp.ldexp(1, -mp.prec + 8))
        two_pi_lo, two_pi_hi = _widen(2 * mp.pi, mp.prec - 4)
        frac_lo = fraction_from_mpf(t_lo / two_pi_hi - mp.ldexp(1, -mp.prec + 4))
        frac_hi = fraction_from_mpf(t_hi / two_pi_lo + mp.ldexp(1, -mp.prec + 4))
    frac_lo = max(frac_lo, Fraction(0))
    frac_hi = min(frac_hi, Fraction(1, 2))

    return AngleRecord(
        p=p, a_f_p=a_f_p, weight=k,
        cos_lo=cos_lo, cos_hi=cos_hi,
        theta_lo=t_lo, theta_hi=t_hi,
        fraction_lo=frac_lo, fraction_hi=frac_hi,
        classification=classify_angle(a_f_p, p, k),
        precision_bits=precision_bits,
    )


def normalized_prime_coeff(table, p: int,
                           precision_bits: int = DEFAULT_PRECISION_BITS):
    """a(p) = a_f(p) / p^{(k-1)/2} as an mpf at the working precision."""
    k = table.spec.weight
    a_f_p = table.a_f(p)
    with mp.workprec(precision_bits + _GUARD_BITS):
        return mp.mpf(a_f_p) / (p ** ((k - 2) // 2) * mp.sqrt(p))


def prime_power_coeff(table, p: int, m: int,
                      precision_bits: int = DEFAULT_PRECISION_BITS):
    """a(p^m) = sin((m+1) theta_p) / sin(theta_p) in working precision.

    Exact shortcuts: a_f(p) = 0 gives the period-4 pattern 1, 0, -1, 0, ...;
    a(p)^2 = 4 degenerates to +/-(m+1).
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    if m == 0:
        return mp.mpf(1)
    rec = angle(table, p, precision_bits)
    a_f_p = rec.a_f_p
    k = table.spec.weight
    if a_f_p == 0:
        if m % 2 == 1:
            return mp.mpf(0)
        return mp.mpf(1 if m % 4 == 0 else -1)
    if Fraction(a_f_p * a_f_p, p ** (k - 1)) == 4:
        sign = 1 if a_f_p > 0 else -1
        return mp.mpf((m + 1) * sign ** m)
    with mp.workprec(precision_bits + _GUARD_BITS):
        theta = rec.theta
        return mp.sin((m + 1) * theta) / mp.sin(theta)


def power_sequence(a_p, count: int):
    """Iterator of a(p^m) for m = 0..count via the Chebyshev-type recursion.

    ``a_p`` is the normalized a(p) (mpf or float); successive terms satisfy
    u_{m+1} = a(p) * u_m - u_{m-1}, the normalized prime-power recursion.
    Arithmetic runs at the caller's current mp precision.
    """
    prev2 = mp.mpf(1)
    yield prev2
    if count == 0:
        return
    prev1 = mp.mpf(a_p)
    yield prev1
    for _ in range(count - 1):
        cur = a_p * prev1 - prev2
        prev2, prev1 = prev1, cur
        yield cur
