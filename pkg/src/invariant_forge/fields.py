"""Exact coefficient fields: Q, GF(p) and cyclotomic fields Q(zeta_N).

A :class:`FieldSpec` carries the arithmetic on *raw* canonical values so that
hot loops avoid wrapper objects:

* rational    -- :class:`fractions.Fraction`
* prime       -- ``int`` in ``[0, p)``
* cyclotomic  -- tuple of ``phi(N)`` Fractions, the coefficients of the
  residue of a polynomial in ``zeta`` modulo the N-th cyclotomic polynomial

:class:`Scalar` wraps ``(field, value)`` for the public API.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import FieldMismatchError, InvalidFieldError
from .kernels import MAX_PRIME

RATIONAL = "rational"
PRIME = "prime"
CYCLOTOMIC = "cyclotomic"


def is_prime(n: int) -> bool:
    """Deterministic primality by trial division (intended for n < 2**31)."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power_base(q: int) -> int | None:
    """Return p if ``q = p**e`` with ``e >= 1``, else ``None``."""
    if q < 2:
        return None
    p = 2
    while p * p <= q and q % p:
        p += 1
    if q % p:
        p = q
    while q % p == 0:
        q //= p
    return p if q == 1 else None


# --------------------------------------------------------------------------
# cyclotomic polynomials (integer coefficient lists, constant term first)


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        if c % lead:
            raise ArithmeticError("inexact polynomial division")
        c //= lead
        out[k] = c
        if c:
            for j, d in enumerate(den):
                num[k + j] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("nonzero remainder")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(N: int) -> tuple[int, ...]:
    """Coefficients of Phi_N, by dividing x^N - 1 by Phi_d for proper d | N."""
    if N < 1:
        raise InvalidFieldError(f"cyclotomic order must be positive, got {N}")
    poly = [-1] + [0] * (N - 1) + [1]
    for d in range(1, N):
        if N % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(N: int, upto: int) -> tuple[tuple[int, ...], ...]:
    # residues of x^k mod Phi_N for k < upto, as integer vectors
    phi = cyclotomic_polynomial(N)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(upto):
        rows.append(tuple(cur))
        # multiply by x, reduce with x^deg = -sum phi_j x^j
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * phi[j] for j, c in enumerate(cur)]
    return tuple(rows)


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    """One of Q, GF(p) or Q(zeta_N); ``modulus`` is p or N (0 for Q)."""

    kind: str
    modulus: int = 0

    def __post_init__(self):
        if self.kind == RATIONAL:
            if self.modulus != 0:
                raise InvalidFieldError("rational field takes no modulus")
        elif self.kind == PRIME:
            p = self.modulus
            if not isinstance(p, int) or p >= MAX_PRIME or not is_prime(p):
                raise InvalidFieldError(f"{p!r} is not a supported prime (< 2**31)")
        elif self.kind == CYCLOTOMIC:
            if not isinstance(self.modulus, int) or self.modulus < 1:
                raise InvalidFieldError(f"cyclotomic order must be >= 1, got {self.modulus!r}")
        else:
            raise InvalidFieldError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rational(cls) -> FieldSpec:
        return cls(RATIONAL)

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls(PRIME, p)

    @classmethod
    def cyclotomic(cls, N: int) -> FieldSpec:
        return cls(CYCLOTOMIC, N)

    @property
    def characteristic(self) -> int:
        return self.modulus if self.kind == PRIME else 0

    @property
    def degree(self) -> int:
        """Dimension over the prime field."""
        if self.kind == CYCLOTOMIC:
            return len(cyclotomic_polynomial(self.modulus)) - 1
        return 1

    def __str__(self):
        if self.kind == RATIONAL:
            return "QQ"
        if self.kind == PRIME:
            return f"GF({self.modulus})"
        return f"QQ(zeta_{self.modulus})"

    # -- raw arithmetic ---------------------------------------------------

    @property
    def zero(self):
        if self.kind == PRIME:
            return 0
        if self.kind == RATIONAL:
            return Fraction(0)
        return (Fraction(0),) * self.degree

    @property
    def one(self):
        return self.from_int(1)

    def from_int(self, n: int):
        if self.kind == PRIME:
            return n % self.modulus
        if self.kind == RATIONAL:
            return Fraction(n)
        return (Fraction(n),) + (Fraction(0),) * (self.degree - 1)

    def from_fraction(self, x: Fraction):
        x = Fraction(x)
        if self.kind == PRIME:
            p = self.modulus
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"{x} has no image in GF({p})")
            return x.numerator * pow(x.denominator, -1, p) % p
        if self.kind == RATIONAL:
            return x
        return (x,) + (Fraction(0),) * (self.degree - 1)

    def coerce(self, x):
        """Raw value from an int, Fraction, Scalar or raw value of this field."""
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldMismatchError(f"{x.field} element used over {self}")
            return x.value
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, Fraction):
            return self.from_fraction(x)
        if self.kind == CYCLOTOMIC and isinstance(x, tuple) and len(x) == self.degree:
            return tuple(Fraction(c) for c in x)
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def is_zero(self, a) -> bool:
        if self.kind == CYCLOTOMIC:
            return not any(a)
        return a == 0

    def add(self, a, b):
        if self.kind == PRIME:
            return (a + b) % self.modulus
        if self.kind == RATIONAL:
            return a + b
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        if self.kind == PRIME:
            return (a - b) % self.modulus
        if self.kind == RATIONAL:
            return a - b
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        if self.kind == PRIME:
            return (-a) % self.modulus
        if self.kind == RATIONAL:
            return -a
        return tuple(-x for x in a)

    def mul(self, a, b):
        if self.kind == PRIME:
            return a * b % self.modulus
        if self.kind == RATIONAL:
            return a * b
        d = self.degree
        prod = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return self._reduce(prod)

    def _reduce(self, coeffs):
        d = self.degree
        table = _power_table(self.modulus, max(len(coeffs), d))
        out = [Fraction(0)] * d
        for k, c in enumerate(coeffs):
            if c:
                for j, t in enumerate(table[k]):
                    if t:
                        out[j] += c * t
        return tuple(out)

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError(f"inverse of zero in {self}")
        if self.kind == PRIME:
            return pow(a, -1, self.modulus)
        if self.kind == RATIONAL:
            return Fraction(1) / a
        return self._cyc_inv(a)

    def _cyc_inv(self, a):
        # solve a * b = 1 as a linear system in the power basis
        d = self.degree
        cols = []
        for j in range(d):
            e = [Fraction(0)] * d
            e[j] = Fraction(1)
            cols.append(self.mul(a, tuple(e)))
        # augmented matrix rows: M b = e_0 with M[i][j] = cols[j][i]
        M = [[cols[j][i] for j in range(d)] + [Fraction(int(i == 0))] for i in range(d)]
        for c in range(d):
            piv = next(r for r in range(c, d) if M[r][c] != 0)
            M[c], M[piv] = M[piv], M[c]
            lead = M[c][c]
            M[c] = [x / lead for x in M[c]]
            for r in range(d):
                if r != c and M[r][c] != 0:
                    f = M[r][c]
                    M[r] = [x - f * y for x, y in zip(M[r], M[c])]
        return tuple(M[i][d] for i in range(d))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def zeta_power(self, k: int):
        """Raw value of zeta_N**k (cyclotomic fields only)."""
        if self.kind != CYCLOTOMIC:
            raise InvalidFieldError(f"{self} has no distinguished root of unity")
        N = self.modulus
        return self._reduce([Fraction(0)] * (k % N) + [Fraction(1)])

    def from_group_ring(self, vec):
        """Map ``sum_r vec[r] zeta^r`` (integer vector of length N) into the field."""
        if self.kind != CYCLOTOMIC or len(vec) != self.modulus:
            raise InvalidFieldError("group-ring vector does not match Q(zeta_N)")
        return self._reduce([Fraction(int(c)) for c in vec])

    def as_rational(self, a) -> Fraction | None:
        """The rational value of ``a`` if it lies in the prime field of char 0."""
        if self.kind == RATIONAL:
            return a
        if self.kind == CYCLOTOMIC:
            return a[0] if not any(a[1:]) else None
        return None

    def format(self, a) -> str:
        if self.kind != CYCLOTOMIC:
            return str(a)
        parts = []
        for k, c in enumerate(a):
            if c:
                mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
                if not mono:
                    parts.append(str(c))
                elif c == 1:
                    parts.append(mono)
                else:
                    parts.append(f"({c})*{mono}")
        return " + ".join(parts) if parts else "0"

    def scalar(self, x) -> Scalar:
        return Scalar(self, self.coerce(x))


@dataclass(frozen=True)
class Scalar:
    """An exact field element in canonical form; equality is representational."""

    field: FieldSpec
    value: object

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field} vs {other.field}")
            return other.value
        return self.field.coerce(other)

    def __add__(self, other):
        return Scalar(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return Scalar(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return Scalar(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Scalar(self.field, self.field.div(self.value, self._other(other)))

    def __rtruediv__(self, other):
        return Scalar(self.field, self.field.div(self._other(other), self.value))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return Scalar(self.field, self.field.pow(self.value, e))

    def inverse(self) -> Scalar:
        return Scalar(self.field, self.field.inv(self.value))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            try:
                return self.value == self.field.coerce(other)
            except ZeroDivisionError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __int__(self):
        if self.field.kind == PRIME:
            return self.value
        r = self.field.as_rational(self.value)
        if r is None or r.denominator != 1:
            raise ValueError(f"{self} is not an integer")
        return int(r)

    def __repr__(self):
        return f"Scalar({self.field}, {self.field.format(self.value)})"

    def __str__(self):
        return self.field.format(self.value)


def lcm_all(values) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out
