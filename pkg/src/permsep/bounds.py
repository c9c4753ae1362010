"""Counting bounds: position colorings, multinomial and entropy forms, and
the cross-intersecting set-pair inequalities, plus the closed-form cells.

All counts are exact big integers (or big rationals); log2 views are
derived from the exact values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .perms import Perm

RED = "red"
GREEN = "green"
BLUE = "blue"


def log2_exact(x) -> float:
    """log2 of a positive int or Fraction of any size."""
    if isinstance(x, Fraction):
        return log2_exact(x.numerator) - log2_exact(x.denominator)
    if x <= 0:
        raise ValueError("need a positive value")
    bl = x.bit_length()
    if bl <= 512:
        return math.log2(x)
    shift = bl - 512
    return math.log2(x >> shift) + shift


@dataclass(frozen=True)
class BoundValue:
    """An exact bound with its log2 view and the formula that produced it."""

    value: object  # int or Fraction
    formula: str

    @property
    def log2(self) -> float:
        return log2_exact(self.value)

    def to_json(self) -> dict:
        return {"value": str(self.value), "log2": self.log2,
                "formula": self.formula}


def entropy(x1: float, x2: float, x3: float) -> float:
    """Ternary entropy sum(-x log2 x) over a probability vector.

    >>> round(entropy(0.5, 0.5, 0.0), 10)
    1.0
    """
    xs = (x1, x2, x3)
    if any(x < 0 for x in xs) or abs(sum(xs) - 1.0) > 1e-12:
        raise ValueError("arguments must be a point of the simplex")
    return -sum(x * math.log2(x) for x in xs if x > 0)


def _position_color(i: int, k: int) -> str:
    """Color of 1-based position i, by its residue in [1, 2k-2]."""
    m = (i - 1) % (2 * k - 2) + 1
    if m in (1, k):
        return BLUE
    if 2 <= m <= k - 1:
        return RED
    return GREEN


@dataclass(frozen=True)
class Coloring:
    """Red/green/blue coloring of the ground set induced by a permutation.

    Position i hands its residue color to the element sitting there, so
    the class sizes depend only on (n, k); two permutations with equal
    colorings can never be k-neighbor separated.
    """

    n: int
    k: int
    colors: tuple[tuple[int, str], ...]  # (vertex, color), sorted by vertex

    def as_dict(self) -> dict[int, str]:
        return dict(self.colors)

    def class_sizes(self) -> dict[str, int]:
        sizes = {RED: 0, GREEN: 0, BLUE: 0}
        for _, c in self.colors:
            sizes[c] += 1
        return sizes


def color_ground_set(p: Perm, k: int) -> Coloring:
    if k < 3:
        raise ValueError("coloring needs k >= 3")
    items = tuple(sorted((v, _position_color(i + 1, k))
                         for i, v in enumerate(p)))
    return Coloring(len(p), k, items)


def coloring_class_sizes(n: int, k: int) -> dict[str, int]:
    """Exact residue counts of the three color classes for (n, k)."""
    if k < 3:
        raise ValueError("coloring needs k >= 3")
    sizes = {RED: 0, GREEN: 0, BLUE: 0}
    for i in range(1, n + 1):
        sizes[_position_color(i, k)] += 1
    return sizes


def coloring_count_bound(n: int, k: int) -> BoundValue:
    """Number of ground-set colorings with the (n, k) class sizes.

    This is an upper bound for the size of any pairwise k-separated family
    because equal colorings block separation.
    """
    sizes = coloring_class_sizes(n, k)
    value = factorial(n) // (factorial(sizes[RED]) * factorial(sizes[GREEN])
                             * factorial(sizes[BLUE]))
    return BoundValue(
        value,
        f"multinomial({n}; {sizes[RED]},{sizes[GREEN]},{sizes[BLUE]})")


def coloring_exponent(k: int, *, as_stated: bool = False) -> float:
    """Per-element log2 exponent of the coloring count as n grows.

    The default matches the constructed coloring's class fractions
    ((k-2)/(2k-2) twice and 2/(2k-2)); as_stated=True evaluates the looser
    published form with denominators 2k instead.
    """
    if k < 3:
        raise ValueError("coloring needs k >= 3")
    if as_stated:
        x, z = (k - 1) / (2 * k), 2 / (2 * k)
    else:
        x, z = (k - 2) / (2 * k - 2), 2 / (2 * k - 2)
    return entropy(x, x, z)


def tuza_bound(a: int, b: int) -> BoundValue:
    """(a+b)^(a+b) / (a^a b^b): the weakly cross-intersecting pair bound."""
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    value = Fraction((a + b) ** (a + b), a ** a * b ** b)
    if value.denominator == 1:
        value = value.numerator
    return BoundValue(value, f"(a+b)^(a+b)/(a^a*b^b) with a={a}, b={b}")


def bollobas_bound(a: int, b: int) -> BoundValue:
    """C(a+b, a): the cross-intersecting pair bound."""
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    return BoundValue(comb(a + b, a), f"C(a+b, a) with a={a}, b={b}")


@dataclass(frozen=True)
class ExactCell:
    """An exactly known value, or a two-sided interval when parity leaves
    a gap."""

    low: int
    high: int
    formula: str

    @property
    def exact(self) -> int | None:
        return self.low if self.low == self.high else None

    def to_json(self) -> dict:
        return {"low": self.low, "high": self.high, "formula": self.formula}


def exact_formulas(n: int, k: int) -> ExactCell:
    """Closed forms: k=2 gives (n-1)!, k=3 the balanced-bipartition count,
    and k=n gives 3n/2 for even n and the interval [floor(3n/2)-1,
    floor(3n/2)] for odd n.  Raises ValueError on uncovered cells.
    """
    if not 2 <= k <= n:
        raise ValueError(f"need 2 <= k <= n, got k={k}, n={n}")
    if k == 2:
        v = factorial(n - 1)
        return ExactCell(v, v, "(n-1)!")
    if k == 3:
        c = comb(n, n // 2)
        v = c if n % 2 else c // 2
        return ExactCell(v, v, "C(n, n//2)" if n % 2 else "C(n, n//2)/2")
    if k == n:
        if n % 2 == 0:
            v = 3 * n // 2
            return ExactCell(v, v, "3n/2")
        hi = 3 * n // 2
        return ExactCell(hi - 1, hi, "[floor(3n/2)-1, floor(3n/2)]")
    raise ValueError(f"no closed form covers (n={n}, k={k})")
