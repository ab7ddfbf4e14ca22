"""Exact p-adic valuations of integers, rationals and binomial coefficients.

Valuations are plain Python ints; the valuation of zero is ``math.inf``,
which absorbs addition and compares correctly against any int.
Rationals are :class:`fractions.Fraction`.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from functools import lru_cache

from sympy import isprime

INFINITY = math.inf


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@lru_cache(maxsize=64)
def check_prime(p: int) -> int:
    if not isinstance(p, int) or p < 2 or not isprime(p):
        raise ValueError(f"p must be a prime >= 2, got {p!r}")
    return p


def vp_int(m: int, p: int):
    """Return the largest e with p**e dividing m, or INFINITY for m == 0."""
    check_prime(p)
    if m == 0:
        return INFINITY
    m = abs(m)
    if p == 2:
        return (m & -m).bit_length() - 1
    e = 0
    while m % p == 0:
        # strip p**(2**i) at a time so huge valuations cost O(log^2)
        q, k = p, 1
        while m % (q * q) == 0:
            q, k = q * q, 2 * k
        m //= q
        e += k
    return e


def vp_rat(q, p: int):
    q = Fraction(q)
    if q == 0:
        check_prime(p)
        return INFINITY
    return vp_int(q.numerator, p) - vp_int(q.denominator, p)


def vp_factorial(m: int, p: int) -> int:
    """Legendre's formula: sum of floor(m / p**i)."""
    check_prime(p)
    if m < 0:
        raise ValueError("factorial of a negative integer")
    total = 0
    while m:
        m //= p
        total += m
    return total


def vp_binomial(k: int, n: int, p: int) -> int:
    """Valuation of C(k, n), counted as the carries of n + (k - n) in base p.

    >>> vp_binomial(4, 2, 2)
    1
    """
    check_prime(p)
    if n < 0 or k < 0:
        raise ValueError("binomial arguments must be natural numbers")
    if n > k:
        raise ValueError(f"need n <= k, got n={n}, k={k}")
    a, b = n, k - n
    carries = carry = 0
    # once the shorter summand is exhausted, carries can only continue
    # through a run of (p - 1) digits of the longer one
    while a or b:
        if carry == 0 and (a == 0 or b == 0):
            break
        da, a = a % p, a // p
        db, b = b % p, b // p
        carry = 1 if da + db + carry >= p else 0
        carries += carry
    return carries


def is_unit_binomial(s: int, u: int, r: int, p: int) -> bool:
    """Whether C(p**s * u - 1, p**r - 1) is a p-adic unit (0 <= r <= s, u >= 1)."""
    check_prime(p)
    if r > s:
        raise ValueError(f"need r <= s, got r={r}, s={s}")
    if r < 0:
        raise ValueError("r must be natural")
    if u < 1:
        raise ValueError("u must be a positive integer")
    return vp_binomial(p**s * u - 1, p**r - 1, p) == 0


def floor_mul(c, r: int) -> int:
    """Exact floor of c * r for a rational c."""
    c = Fraction(c)
    return (c.numerator * r) // c.denominator


def cmp_power(v: int, n1: int, lam, b: int, p: int) -> Ordering:
    """Compare p**(-v) * n1**(-lam) against p**b exactly.

    Both sides are raised to the denominator of ``lam`` so the comparison
    becomes one between integers ``n1**a`` and ``p**((-v - b) * den)``.
    """
    check_prime(p)
    if n1 < 1:
        raise ValueError("n1 must be >= 1")
    if not isinstance(lam, Fraction):
        lam = Fraction(lam)
    a, den = lam.numerator, lam.denominator
    e = (-v - b) * den
    # lhs > rhs  <=>  p**e > n1**a ; move negative exponents across
    left = p ** max(e, 0) * n1 ** max(-a, 0)
    right = p ** max(-e, 0) * n1 ** max(a, 0)
    if left < right:
        return Ordering.LESS
    if left > right:
        return Ordering.GREATER
    return Ordering.EQUAL
