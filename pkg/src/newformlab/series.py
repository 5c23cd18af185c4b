"""Truncated integer power series for the discriminant form's q-expansion.

The weight-12 coefficients tau(n) are read off q * prod_{j>=1} (1-q^j)^24.
The 24th power is produced from the sparse cube of the Euler product
(whose exponents are the triangular numbers) by squaring a dense series
three times.  Squaring is exact big-integer arithmetic via Kronecker
substitution: coefficients are packed into fixed-width slots of one huge
integer, the integer is squared with GMP, and the slots are unpacked
with balanced-digit borrow propagation so that negative coefficients
round-trip exactly.
"""

from __future__ import annotations

import gmpy2


def eta_cube_coefficients(degree: int) -> list[int]:
    """Coefficients of prod (1-q^j)^3 up to ``degree``.

    Jacobi: the cube equals sum_{j>=0} (-1)^j (2j+1) q^{j(j+1)/2}.
    """
    out = [0] * (degree + 1)
    j = 0
    while j * (j + 1) // 2 <= degree:
        out[j * (j + 1) // 2] = (2 * j + 1) if j % 2 == 0 else -(2 * j + 1)
        j += 1
    return out


def square_truncated(coeffs: list[int], degree: int) -> list[int]:
    """Exact square of an integer polynomial, truncated at ``degree``."""
    n = len(coeffs)
    if n == 0:
        return [0] * (degree + 1)
    maxc = max(1, max(abs(c) for c in coeffs))
    # slot must hold any product coefficient plus one balanced sign bit
    # and one carry bit: |sum_k a_k a_{i-k}| <= n * maxc^2
    bits = 2 * maxc.bit_length() + n.bit_length() + 2
    slot = (bits + 7) // 8 * 8
    sb = slot // 8

    pos = bytearray(n * sb)
    neg = bytearray(n * sb)
    for i, c in enumerate(coeffs):
        if c > 0:
            pos[i * sb:i * sb + (c.bit_length() + 7) // 8] = c.to_bytes(
                (c.bit_length() + 7) // 8, "little")
        elif c < 0:
            c = -c
            neg[i * sb:i * sb + (c.bit_length() + 7) // 8] = c.to_bytes(
                (c.bit_length() + 7) // 8, "little")
    packed = int.from_bytes(bytes(pos), "little") - int.from_bytes(bytes(neg), "little")

    squared = int(gmpy2.mpz(packed) ** 2)  # non-negative: it is a square

    out_len = degree + 1
    raw = squared.to_bytes(2 * n * sb + 16, "little")
    half = 1 << (slot - 1)
    full = 1 << slot
    out = [0] * out_len
    carry = 0
    for i in range(out_len):
        v = int.from_bytes(raw[i * sb:(i + 1) * sb], "little") + carry
        if v >= half:
            out[i] = v - full
            carry = 1
        else:
            out[i] = v
            carry = 0
    return out


def tau_table(limit: int) -> list[int]:
    """tau(n) for 1 <= n <= limit; entry 0 is a zero sentinel.

    Expands q * prod (1-q^j)^24 truncated at degree ``limit`` using the
    sparse cube followed by three dense squarings.
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    degree = limit - 1
    series = eta_cube_coefficients(degree)
    for _ in range(3):
        series = square_truncated(series, degree)
    return [0] + series[:limit]
