"""Point counting for elliptic-curve newforms at good primes.

For p > 3 the long Weierstrass model is reduced to a short model
Y^2 = X^3 + AX + B over F_p and a_p is the negated quadratic-character
sum -sum_x chi(x^3 + Ax + B).  For p in {2, 3} all (x, y) pairs of the
long model are enumerated directly.
"""

from __future__ import annotations

import gmpy2
import numpy as np

from .forms import NewformSpec, b_invariants, weierstrass_discriminant


def is_prime(n: int) -> bool:
    return n >= 2 and gmpy2.is_prime(n)


def short_model_mod_p(spec: NewformSpec, p: int) -> tuple[int, int]:
    """(A, B) with Y^2 = X^3 + AX + B isomorphic to the curve over F_p, p >= 5."""
    b2, b4, b6, _ = b_invariants(spec.a_invariants)
    c4 = b2 * b2 - 24 * b4
    c6 = -b2 ** 3 + 36 * b2 * b4 - 216 * b6
    return (-27 * c4) % p, (-54 * c6) % p


def _count_points_small(spec: NewformSpec, p: int) -> int:
    """#E(F_p) by direct enumeration of the long model (meant for p = 2, 3)."""
    a1, a2, a3, a4, a6 = spec.a_invariants
    count = 1  # point at infinity
    for x in range(p):
        rhs = (x ** 3 + a2 * x * x + a4 * x + a6) % p
        for y in range(p):
            if (y * y + a1 * x * y + a3 * y) % p == rhs:
                count += 1
    return count


def _char_sum(A: int, B: int, p: int) -> int:
    """sum over x in F_p of the Legendre symbol of x^3 + Ax + B."""
    x = np.arange(p, dtype=np.int64)
    f = (x * x % p * x + A * x + B) % p
    is_square = np.zeros(p, dtype=np.int8)
    is_square[x * x % p] = 1
    chi = np.where(f == 0, 0, np.where(is_square[f] == 1, 1, -1))
    return int(chi.sum(dtype=np.int64))


def ec_ap(spec: NewformSpec, p: int) -> int:
    """Trace of Frobenius a_p = p + 1 - #E(F_p) at a good prime p."""
    if spec.kind != "elliptic":
        raise ValueError("ec_ap needs an elliptic-curve form")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if spec.is_bad_prime(p):
        raise ValueError(f"p={p} divides the conductor {spec.level}")
    if weierstrass_discriminant(spec.a_invariants) % p == 0:
        raise ValueError(f"model is singular mod {p}; supply a minimal model")
    if p <= 3:
        ap = p + 1 - _count_points_small(spec, p)
    else:
        A, B = short_model_mod_p(spec, p)
        ap = -_char_sum(A, B, p)
    assert ap * ap <= 4 * p, f"Hasse bound violated at p={p}: a_p={ap}"
    return ap


def ec_ap_many(spec: NewformSpec, primes) -> dict[int, int]:
    """a_p for every good prime in ``primes`` (bad primes are skipped)."""
    out = {}
    for p in primes:
        p = int(p)
        if spec.is_bad_prime(p):
            continue
        out[p] = ec_ap(spec, p)
    return out
