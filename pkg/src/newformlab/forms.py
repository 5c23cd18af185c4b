"""Descriptions of the concrete newforms the library can work with.

Two kinds are supported: the level-1 weight-12 discriminant form, and
weight-2 forms attached to rational elliptic curves given by a long
Weierstrass model [a1, a2, a3, a4, a6].  The conductor of a curve is
supplied by the caller and is used only to exclude bad primes.
"""

from __future__ import annotations

from dataclasses import dataclass, field


def b_invariants(a: tuple[int, int, int, int, int]) -> tuple[int, int, int, int]:
    """Standard b2, b4, b6, b8 of a long Weierstrass model."""
    a1, a2, a3, a4, a6 = a
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return b2, b4, b6, b8


def weierstrass_discriminant(a: tuple[int, int, int, int, int]) -> int:
    b2, b4, b6, b8 = b_invariants(a)
    return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def _prime_factors(n: int) -> tuple[int, ...]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return tuple(out)


@dataclass(frozen=True)
class NewformSpec:
    """A concrete newform of even weight for Gamma_0(level).

    ``kind`` is ``"delta"`` or ``"elliptic"``.  For elliptic forms the
    long Weierstrass coefficients are stored in ``a_invariants`` and the
    level is the conductor supplied by the caller.
    """

    kind: str
    weight: int
    level: int
    a_invariants: tuple[int, int, int, int, int] | None = None
    label: str | None = None
    bad_primes: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        if self.kind not in ("delta", "elliptic"):
            raise ValueError(f"unknown form kind {self.kind!r}")
        if self.weight < 2 or self.weight % 2 != 0:
            raise ValueError("weight must be a positive even integer")
        if self.level < 1:
            raise ValueError("level must be positive")
        if self.kind == "elliptic":
            if self.a_invariants is None:
                raise ValueError("elliptic form needs Weierstrass coefficients")
            if weierstrass_discriminant(self.a_invariants) == 0:
                raise ValueError("singular Weierstrass model (discriminant 0)")
            if self.weight != 2:
                raise ValueError("elliptic-curve forms have weight 2")
        object.__setattr__(self, "bad_primes", _prime_factors(self.level))

    @property
    def form_id(self) -> str:
        """Stable identifier, used for cache file names."""
        if self.label:
            return self.label
        if self.kind == "delta":
            return "delta"
        a = self.a_invariants
        coeffs = "_".join(str(c) for c in a)
        return f"ec_{coeffs}_N{self.level}"

    @property
    def discriminant(self) -> int | None:
        if self.kind != "elliptic":
            return None
        return weierstrass_discriminant(self.a_invariants)

    def is_bad_prime(self, p: int) -> bool:
        return self.level % p == 0


def delta_form() -> NewformSpec:
    """The unique normalized cusp form of weight 12 and level 1."""
    return NewformSpec(kind="delta", weight=12, level=1, label="delta")


def elliptic_curve_form(a1: int, a2: int, a3: int, a4: int, a6: int,
                        conductor: int, label: str | None = None) -> NewformSpec:
    """Weight-2 newform attached to the curve y^2+a1*xy+a3*y = x^3+a2*x^2+a4*x+a6."""
    return NewformSpec(kind="elliptic", weight=2, level=conductor,
                       a_invariants=(a1, a2, a3, a4, a6), label=label)


#: CM curve y^2 = x^3 - x (conductor 32); supersingular exactly at p = 3 mod 4.
CURVE_32A = elliptic_curve_form(0, 0, 0, -1, 0, 32, label="cm32")

#: Non-CM curve y^2 + y = x^3 - x^2 - 10x - 20 (conductor 11).
CURVE_11A = elliptic_curve_form(0, -1, 1, -10, -20, 11, label="e11")

BUNDLED_FORMS: dict[str, NewformSpec] = {
    "delta": delta_form(),
    "cm32": CURVE_32A,
    "e11": CURVE_11A,
}
