"""Sparse multivariate polynomials over a :class:`FieldSpec`.

Monomials are exponent tuples.  Deterministic output order is graded
lexicographic with ``x1 > x2 > ... > xn``; within a degree the *largest*
monomial comes first, so index 0 of :func:`monomials_of_degree` is ``x1^d``.
"""

from __future__ import annotations

import ast
from fractions import Fraction
from functools import lru_cache
from math import comb
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import FieldMismatchError, PreconditionError
from .fields import FieldSpec, Scalar

Monomial = tuple  # tuple[int, ...] of non-negative exponents


def monomial_degree(m: Monomial) -> int:
    return sum(m)


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def grlex_key(m: Monomial):
    """Sort key; ``sorted(..., key=grlex_key, reverse=True)`` gives grlex descending."""
    return (sum(m), m)


def count_monomials(n: int, d: int) -> int:
    if n == 0:
        return 1 if d == 0 else 0
    return comb(d + n - 1, n - 1)


@lru_cache(maxsize=256)
def monomials_of_degree(n: int, d: int) -> tuple[Monomial, ...]:
    """All degree-``d`` exponent vectors in ``n`` variables, lex descending."""
    if n == 0:
        return ((),) if d == 0 else ()
    if n == 1:
        return ((d,),)
    out = []
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=256)
def monomial_index(n: int, d: int) -> Mapping[Monomial, int]:
    return MappingProxyType({m: i for i, m in enumerate(monomials_of_degree(n, d))})


@lru_cache(maxsize=64)
def monomial_array(n: int, d: int) -> np.ndarray:
    monos = monomials_of_degree(n, d)
    arr = np.array(monos, dtype=np.int64).reshape(len(monos), n)
    arr.setflags(write=False)
    return arr


def default_names(n: int) -> tuple[str, ...]:
    return tuple(f"x{i + 1}" for i in range(n))


class Polynomial:
    """Immutable sparse polynomial: a map exponent tuple -> nonzero raw coefficient."""

    __slots__ = ("field", "nvars", "_terms", "_hash")

    def __init__(self, field: FieldSpec, nvars: int, terms: Mapping | Iterable = ()):
        self.field = field
        self.nvars = nvars
        clean = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exps, c in items:
            exps = tuple(exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise PreconditionError(f"bad exponent vector {exps} for {nvars} variables")
            c = field.coerce(c)
            if exps in clean:
                c = field.add(clean[exps], c)
            if field.is_zero(c):
                clean.pop(exps, None)
            else:
                clean[exps] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, field, nvars, terms: dict) -> Polynomial:
        # trusted constructor: terms already canonical, zero-free
        obj = cls.__new__(cls)
        obj.field = field
        obj.nvars = nvars
        obj._terms = terms
        obj._hash = None
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, field: FieldSpec, nvars: int) -> Polynomial:
        return cls._raw(field, nvars, {})

    @classmethod
    def constant(cls, field: FieldSpec, nvars: int, c=1) -> Polynomial:
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def one(cls, field: FieldSpec, nvars: int) -> Polynomial:
        return cls.constant(field, nvars, 1)

    @classmethod
    def variable(cls, field: FieldSpec, nvars: int, i: int) -> Polynomial:
        exps = [0] * nvars
        exps[i] = 1
        return cls._raw(field, nvars, {tuple(exps): field.one})

    @classmethod
    def monomial(cls, field: FieldSpec, exps: Sequence[int], c=1) -> Polynomial:
        return cls(field, len(exps), {tuple(exps): c})

    @classmethod
    def from_vector(cls, field, nvars, d, vec) -> Polynomial:
        """Polynomial with raw coefficient ``vec[i]`` on the i-th degree-d monomial."""
        monos = monomials_of_degree(nvars, d)
        return cls._raw(field, nvars, {monos[i]: c for i, c in enumerate(vec) if not field.is_zero(c)})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> Mapping:
        return MappingProxyType(self._terms)

    def coefficient(self, exps) -> Scalar:
        return Scalar(self.field, self._terms.get(tuple(exps), self.field.zero))

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._terms}) <= 1

    def component(self, d: int) -> Polynomial:
        return Polynomial._raw(self.field, self.nvars,
                               {m: c for m, c in self._terms.items() if sum(m) == d})

    def components(self) -> dict[int, Polynomial]:
        out: dict[int, dict] = {}
        for m, c in self._terms.items():
            out.setdefault(sum(m), {})[m] = c
        return {d: Polynomial._raw(self.field, self.nvars, t) for d, t in sorted(out.items())}

    def monomials(self) -> list[Monomial]:
        return sorted(self._terms, key=grlex_key, reverse=True)

    def to_vector(self, d: int) -> list:
        """Coefficients on the degree-d monomial basis (raw values)."""
        idx = monomial_index(self.nvars, d)
        vec = [self.field.zero] * len(idx)
        for m, c in self._terms.items():
            if sum(m) != d:
                raise PreconditionError(f"polynomial has terms outside degree {d}")
            vec[idx[m]] = c
        return vec

    def leading_coefficient(self) -> Scalar:
        return self.coefficient(self.monomials()[0]) if self._terms else Scalar(self.field, self.field.zero)

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: Polynomial):
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")
        if other.nvars != self.nvars:
            raise PreconditionError(f"{self.nvars} vs {other.nvars} variables")

    def _lift(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(self.field, self.nvars, other)

    def __add__(self, other):
        other = self._lift(other)
        F = self.field
        out = dict(self._terms)
        for m, c in other._terms.items():
            if m in out:
                s = F.add(out[m], c)
                if F.is_zero(s):
                    del out[m]
                else:
                    out[m] = s
            else:
                out[m] = c
        return Polynomial._raw(F, self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Polynomial._raw(F, self.nvars, {m: F.neg(c) for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> Polynomial:
        F = self.field
        c = F.coerce(c)
        if F.is_zero(c):
            return Polynomial.zero(F, self.nvars)
        return Polynomial._raw(F, self.nvars, {m: F.mul(v, c) for m, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        F = self.field
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = F.mul(c1, c2)
                out[m] = F.add(out[m], v) if m in out else v
        return Polynomial._raw(F, self.nvars, {m: c for m, c in out.items() if not F.is_zero(c)})

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = Polynomial.one(self.field, self.nvars)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def permute(self, perm: Sequence[int]) -> Polynomial:
        """Substitute x_i -> x_{perm[i]} (0-based images)."""
        out = {}
        for m, c in self._terms.items():
            new = [0] * self.nvars
            for i, e in enumerate(m):
                new[perm[i]] = e
            out[tuple(new)] = c
        return Polynomial._raw(self.field, self.nvars, out)

    def substitute(self, images: Sequence) -> object:
        """Evaluate with x_i -> images[i] (any ring elements supporting + and *)."""
        if len(images) != self.nvars:
            raise PreconditionError("wrong number of images")
        cache: dict = {}
        total = None
        for m, c in self._terms.items():
            term = None
            for i, e in enumerate(m):
                if e:
                    key = (i, e)
                    if key not in cache:
                        cache[key] = images[i] ** e
                    term = cache[key] if term is None else term * cache[key]
            if term is None:
                term = Scalar(self.field, c)
            else:
                term = term * Scalar(self.field, c)
            total = term if total is None else total + term
        return total

    def extend(self, nvars: int, offset: int = 0) -> Polynomial:
        """Embed into a ring with ``nvars`` variables, shifting indices by ``offset``."""
        out = {}
        for m, c in self._terms.items():
            new = [0] * nvars
            new[offset:offset + self.nvars] = m
            out[tuple(new)] = c
        return Polynomial._raw(self.field, nvars, out)

    # -- comparison / display --------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return (self.field == other.field and self.nvars == other.nvars
                    and self._terms == other._terms)
        if isinstance(other, (int, Fraction, Scalar)):
            return self == Polynomial.constant(self.field, self.nvars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.nvars, frozenset(self._terms.items())))
        return self._hash

    def format(self, names: Sequence[str] | None = None) -> str:
        names = names or default_names(self.nvars)
        if not self._terms:
            return "0"
        F = self.field
        parts = []
        for m in self.monomials():
            c = self._terms[m]
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e)
            if not mono:
                parts.append(F.format(c))
            elif c == F.one:
                parts.append(mono)
            else:
                cs = F.format(c)
                if F.kind == "cyclotomic" or "/" in cs or cs.startswith("-"):
                    cs = f"({cs})"
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Polynomial({self.field}, {self.format()})"


# --------------------------------------------------------------------------
# parsing


class _Evaluator(ast.NodeVisitor):
    def __init__(self, field, nvars, names, definitions):
        self.field = field
        self.nvars = nvars
        self.names = {n: i for i, n in enumerate(names)}
        self.definitions = definitions or {}

    def visit_Expression(self, node):
        return self.visit(node.body)

    def visit_BinOp(self, node):
        if isinstance(node.op, ast.Pow):
            # the exponent is an integer, not a field element (x^2 over GF(2))
            e = node.right
            if not (isinstance(e, ast.Constant) and type(e.value) is int and e.value >= 0):
                raise ValueError("exponent must be a non-negative integer literal")
            return self.visit(node.left) ** e.value
        left, right = self.visit(node.left), self.visit(node.right)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if right.degree() > 0:
                raise ValueError("division by a non-constant")
            c = right.coefficient((0,) * self.nvars)
            return left.scale(c.inverse())
        raise ValueError(f"unsupported operator {type(node.op).__name__}")

    def visit_UnaryOp(self, node):
        v = self.visit(node.operand)
        if isinstance(node.op, ast.USub):
            return -v
        if isinstance(node.op, ast.UAdd):
            return v
        raise ValueError("unsupported unary operator")

    def visit_Constant(self, node):
        if isinstance(node.value, bool) or not isinstance(node.value, int):
            raise ValueError(f"unsupported constant {node.value!r}")
        return Polynomial.constant(self.field, self.nvars, node.value)

    def visit_Name(self, node):
        if node.id in self.definitions:
            return self.definitions[node.id]
        if node.id in self.names:
            return Polynomial.variable(self.field, self.nvars, self.names[node.id])
        raise ValueError(f"unknown symbol {node.id!r}")

    def generic_visit(self, node):
        raise ValueError(f"unsupported syntax {type(node).__name__}")


def parse_polynomial(text: str, field: FieldSpec, nvars: int,
                     names: Sequence[str] | None = None,
                     definitions: Mapping[str, Polynomial] | None = None) -> Polynomial:
    """Parse ``"2*x1*x4^2 - x3 + 1/2"``; ``^`` and ``**`` both mean power."""
    names = names or default_names(nvars)
    tree = ast.parse(text.replace("^", "**"), mode="eval")
    return _Evaluator(field, nvars, names, definitions).visit(tree)


# --------------------------------------------------------------------------


class TruncatedPoly:
    """Element of R[t]/(t^q) with coefficients in a polynomial ring R."""

    __slots__ = ("q", "coeffs")

    def __init__(self, q: int, coeffs: Sequence[Polynomial]):
        if q < 1:
            raise PreconditionError("truncation order must be positive")
        coeffs = list(coeffs)[:q]
        if not coeffs:
            raise PreconditionError("need at least the t^0 coefficient")
        zero = Polynomial.zero(coeffs[0].field, coeffs[0].nvars)
        coeffs += [zero] * (q - len(coeffs))
        self.q = q
        self.coeffs = tuple(coeffs)

    @classmethod
    def constant(cls, q: int, f: Polynomial) -> TruncatedPoly:
        return cls(q, [f])

    @property
    def field(self):
        return self.coeffs[0].field

    @property
    def nvars(self):
        return self.coeffs[0].nvars

    def at_zero(self) -> Polynomial:
        """Specialise t := 0."""
        return self.coeffs[0]

    def coefficient(self, m: int) -> Polynomial:
        return self.coeffs[m]

    def is_constant(self) -> bool:
        return all(c.is_zero() for c in self.coeffs[1:])

    def _lift(self, other):
        if isinstance(other, TruncatedPoly):
            if other.q != self.q:
                raise PreconditionError("truncation orders differ")
            return other
        if isinstance(other, Polynomial):
            return TruncatedPoly.constant(self.q, other)
        return TruncatedPoly.constant(self.q, Polynomial.constant(self.field, self.nvars, other))

    def __add__(self, other):
        other = self._lift(other)
        return TruncatedPoly(self.q, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return TruncatedPoly(self.q, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __mul__(self, other):
        if isinstance(other, Scalar):
            return TruncatedPoly(self.q, [a.scale(other) for a in self.coeffs])
        other = self._lift(other)
        q = self.q
        out = [Polynomial.zero(self.field, self.nvars) for _ in range(q)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j in range(q - i):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return TruncatedPoly(q, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = TruncatedPoly.constant(self.q, Polynomial.one(self.field, self.nvars))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift(self, k: int) -> TruncatedPoly:
        """Multiply by t^k."""
        zero = Polynomial.zero(self.field, self.nvars)
        return TruncatedPoly(self.q, [zero] * k + list(self.coeffs[: self.q - k]))

    def __eq__(self, other):
        if isinstance(other, TruncatedPoly):
            return self.q == other.q and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.q, self.coeffs))

    def __repr__(self):
        parts = [f"t^{m}*({c})" for m, c in enumerate(self.coeffs) if not c.is_zero()]
        return f"TruncatedPoly(q={self.q}: {' + '.join(parts) or '0'})"
