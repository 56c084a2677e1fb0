"""Binomial helpers: digit-wise binomials mod p and the Vandermonde-type sum."""

from __future__ import annotations

from math import comb

from .errors import InvalidFieldError
from .fields import FieldSpec, Scalar, is_prime


def lucas_binom_int(n: int, k: int, p: int) -> int:
    """C(n, k) mod p as a plain int, multiplying base-p digit binomials."""
    if n < 0 or k < 0:
        raise ValueError("binomial arguments must be non-negative")
    result = 1
    while n or k:
        nd, kd = n % p, k % p
        if kd > nd:
            return 0
        result = result * comb(nd, kd) % p
        n //= p
        k //= p
    return result % p


def lucas_binom(n: int, k: int, p: int) -> Scalar:
    """C(n, k) as an element of GF(p), computed digit-wise in base p."""
    if not is_prime(p):
        raise InvalidFieldError(f"{p} is not prime")
    return Scalar(FieldSpec.prime(p), lucas_binom_int(n, k, p))


def binom_convolution(n: int, x: int, y: int) -> int:
    """sum_{r=0}^{n} C(r, x) C(n - r, y), checked against C(n + 1, x + y + 1)."""
    total = sum(comb(r, x) * comb(n - r, y) for r in range(n + 1))
    closed = comb(n + 1, x + y + 1)
    if total != closed:
        raise ArithmeticError(f"convolution identity failed at n={n}, x={x}, y={y}")
    return total
