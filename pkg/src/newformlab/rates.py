"""A small closed algebra of rate functions.

Covers every rate the experiments use: c/n, c/n^2, c/(n log^a n),
c/log n, constants, and the increasing weight m^2 used by the
badly-approximable infimum.  Decreasing rates expose closed-form partial
sums where one exists (digamma/trigamma differences), so block sums over
astronomically long convergent gaps stay exact-to-double without
term-by-term summation.
"""

from __future__ import annotations

import math
import re

import numpy as np
from scipy.special import digamma, polygamma


class RateFunction:
    label = "rate"
    decreasing = True

    def __call__(self, n: int) -> float:
        raise NotImplementedError

    def values(self, n: np.ndarray) -> np.ndarray:
        """Vectorized evaluation (generic fallback loops in Python)."""
        return np.array([self(int(v)) for v in n], dtype=np.float64)

    def partial_sum(self, a: int, b: int) -> float | None:
        """sum_{n=a}^{b} value(n), or None when no closed form exists."""
        return None

    def __repr__(self):
        return self.label


class InverseLinear(RateFunction):
    """c/n."""

    def __init__(self, c: float = 1.0):
        self.c = float(c)
        self.label = f"{self.c:g}/n"

    def __call__(self, n):
        return self.c / n

    def partial_sum(self, a, b):
        if b < a:
            return 0.0
        return self.c * float(digamma(b + 1) - digamma(a))


class InverseSquare(RateFunction):
    """c/n^2."""

    def __init__(self, c: float = 1.0):
        self.c = float(c)
        self.label = f"{self.c:g}/n^2"

    def __call__(self, n):
        return self.c / (n * n)

    def partial_sum(self, a, b):
        if b < a:
            return 0.0
        return self.c * float(polygamma(1, a) - polygamma(1, b + 1))


class InverseLogPower(RateFunction):
    """c/(n * log(n)^a); log is clamped at n=2 so value(1) = value(2)."""

    def __init__(self, c: float = 1.0, a: float = 1.0):
        self.c = float(c)
        self.a = float(a)
        self.label = f"{self.c:g}/(n*log(n)^{self.a:g})"

    def __call__(self, n):
        return self.c / (max(n, 2) * math.log(max(n, 2)) ** self.a)

    def values(self, n):
        n = np.maximum(n.astype(np.float64), 2.0)
        return self.c / (n * np.log(n) ** self.a)


class InverseLog(RateFunction):
    """c/log(n); log is clamped at n=2."""

    def __init__(self, c: float = 1.0):
        self.c = float(c)
        self.label = f"{self.c:g}/log(n)"

    def __call__(self, n):
        return self.c / math.log(max(n, 2))

    def values(self, n):
        n = np.maximum(n.astype(np.float64), 2.0)
        return self.c / np.log(n)


class Constant(RateFunction):
    def __init__(self, c: float):
        self.c = float(c)
        self.label = f"const:{self.c:g}"

    def __call__(self, n):
        return self.c

    def partial_sum(self, a, b):
        if b < a:
            return 0.0
        return self.c * (b - a + 1)


class Squared(RateFunction):
    """m^2, the weight defining the badly-approximable set; increasing."""

    label = "n^2"
    decreasing = False

    def __call__(self, n):
        return float(n) * n


_PATTERNS = [
    (re.compile(r"^([0-9.eE+-]*)/n$"), lambda m: InverseLinear(float(m.group(1) or 1))),
    (re.compile(r"^([0-9.eE+-]*)/n\^2$"), lambda m: InverseSquare(float(m.group(1) or 1))),
    (re.compile(r"^([0-9.eE+-]*)/log\(n\)$"), lambda m: InverseLog(float(m.group(1) or 1))),
    (re.compile(r"^([0-9.eE+-]*)/\(n\*log\(n\)\^([0-9.eE+-]+)\)$"),
     lambda m: InverseLogPower(float(m.group(1) or 1), float(m.group(2)))),
    (re.compile(r"^const:([0-9.eE+-]+)$"), lambda m: Constant(float(m.group(1)))),
    (re.compile(r"^n\^2$"), lambda m: Squared()),
]


def parse_rate(text: str) -> RateFunction:
    """Parse e.g. '1/n', '0.5/n^2', '2/(n*log(n)^1.5)', '3/log(n)', 'const:0.1', 'n^2'."""
    text = text.strip().replace(" ", "")
    for pattern, build in _PATTERNS:
        m = pattern.match(text)
        if m:
            return build(m)
    raise ValueError(f"unrecognized rate function {text!r}")
