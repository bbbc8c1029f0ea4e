"""Exact arithmetic helpers shared by every counting module.

Counts are plain Python ints (arbitrary precision, no silent overflow) and
rational intermediates are ``fractions.Fraction`` (always lowest terms,
positive denominator).  No float ever enters the pipeline: a rational that
is required to be an integer goes through :func:`as_natural`, which raises
instead of rounding.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable

# Aliases used in signatures throughout the package.
Natural = int
Ratio = Fraction


class NonIntegralError(ValueError):
    """An exact rational that was required to be an integer is not one."""


def factorial(n: int) -> int:
    """n! for n >= 0.

    >>> factorial(0), factorial(5), factorial(9)
    (1, 120, 362880)
    """
    if n < 0:
        raise ValueError(f"factorial is undefined for negative n = {n}")
    return math.factorial(n)


def binomial(n: int, k: int) -> int:
    """Binomial coefficient C(n, k), zero outside 0 <= k <= n.

    The out-of-range convention makes boundary terms of the deletion
    recursions uniform (empty choices count as zero, not as errors).

    >>> binomial(6, 2), binomial(6, 0), binomial(4, 7), binomial(4, -1)
    (15, 1, 0, 0)
    """
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def multinomial(parts: Iterable[int]) -> int:
    """(sum parts)! / prod(part_i!): ways to shuffle disjoint ordered blocks.

    >>> multinomial([1, 1]), multinomial([2, 2, 2]), multinomial([])
    (2, 90, 1)
    """
    parts = list(parts)
    if any(p < 0 for p in parts):
        raise ValueError(f"negative block size in {parts}")
    out = math.factorial(sum(parts))
    for p in parts:
        out //= math.factorial(p)  # exact: every prefix quotient is integral
    return out


def ipow(base: int, exp: int) -> int:
    """base**exp for exp >= 0, with 0**0 = 1 (empty product).

    >>> ipow(5, 5), ipow(7, 0), ipow(0, 0)
    (3125, 1, 1)
    """
    if exp < 0:
        raise ValueError(f"ipow wants a non-negative exponent, got {exp}")
    return base ** exp


def ratio_pow(base: int, exp: int) -> Fraction:
    """base**exp as an exact rational; negative exponents allowed when base != 0.

    Closed formulas below occasionally produce terms like 1**(-1) at range
    boundaries; evaluating in Fraction keeps those exact.
    """
    if base == 0 and exp < 0:
        raise ZeroDivisionError("0 cannot be raised to a negative power")
    return Fraction(base) ** exp


def as_natural(value: Fraction | int, what: str = "value") -> int:
    """Convert an exact rational known to be a non-negative integer.

    Raises :class:`NonIntegralError` otherwise; nothing is ever rounded.

    >>> as_natural(Fraction(162, 1))
    162
    """
    f = Fraction(value)
    if f.denominator != 1:
        raise NonIntegralError(f"{what} is not an integer: {f}")
    n = int(f)
    if n < 0:
        raise NonIntegralError(f"{what} is negative: {n}")
    return n


def render_decimal(n: int) -> str:
    """Decimal string for a count; the machine-output form of every value."""
    if n < 0:
        raise ValueError(f"counts are non-negative, got {n}")
    return str(n)


def parse_decimal(text: str) -> int:
    """Inverse of :func:`render_decimal`; accepts only plain decimal digits."""
    s = text.strip()
    if not s.isdigit():
        raise ValueError(f"not a decimal count: {text!r}")
    return int(s)
