"""Action descriptors: diagonalizable, permutation, alpha_q coaction, products.

All descriptors are frozen dataclasses.  Every descriptor exposes ``kind``,
``nvars``, ``field``, ``order`` (the length of the group scheme) and
``linearly_reductive`` (whether the Noether bound applies).
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from math import comb, prod
from typing import Sequence, Union

from .errors import (CapExceededError, FieldMismatchError, InvalidProductError,
                     PreconditionError)
from .fields import PRIME, FieldSpec, prime_power_base
from .poly import Monomial, Polynomial, TruncatedPoly, default_names

MAX_GROUP_ORDER = 10**6

Permutation = tuple  # 0-based images: sigma maps i -> perm[i]


# --------------------------------------------------------------------------
# permutations


def identity_perm(n: int) -> Permutation:
    return tuple(range(n))


def compose(s: Permutation, t: Permutation) -> Permutation:
    """``(s * t)(i) = s(t(i))``."""
    return tuple(s[i] for i in t)


def inverse_perm(s: Permutation) -> Permutation:
    inv = [0] * len(s)
    for i, j in enumerate(s):
        inv[j] = i
    return tuple(inv)


def parse_cycles(text: str, n: int) -> Permutation:
    """Parse 1-based cycle notation such as ``"(1,2)(3,4)(5,6)"``; ``"()"`` is the identity."""
    text = text.strip()
    if not re.fullmatch(r"(\(\s*(\d+(\s*[, ]\s*\d+)*)?\s*\))+", text):
        raise ValueError(f"malformed cycle notation {text!r}")
    perm = list(range(n))
    seen = set()
    for body in re.findall(r"\(([^)]*)\)", text):
        pts = [int(x) - 1 for x in re.split(r"[,\s]+", body.strip()) if x]
        for a in pts:
            if not 0 <= a < n:
                raise ValueError(f"point {a + 1} outside 1..{n}")
            if a in seen:
                raise ValueError(f"point {a + 1} appears twice")
            seen.add(a)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            perm[a] = b
    return tuple(perm)


def cycles(s: Permutation) -> list[tuple[int, ...]]:
    """Disjoint cycles (including fixed points), each starting at its minimum."""
    seen, out = set(), []
    for start in range(len(s)):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        j = s[start]
        while j != start:
            cyc.append(j)
            seen.add(j)
            j = s[j]
        out.append(tuple(cyc))
    return out


def format_cycles(s: Permutation) -> str:
    text = "".join("(" + ",".join(str(i + 1) for i in c) + ")" for c in cycles(s) if len(c) > 1)
    return text or "()"


def group_closure(generators: Sequence[Permutation], n: int,
                  cap: int = MAX_GROUP_ORDER) -> tuple[Permutation, ...]:
    """All elements of the generated group, sorted; breadth-first with a size cap."""
    ident = identity_perm(n)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in generators:
                h = compose(s, g)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
                    if len(seen) > cap:
                        raise CapExceededError(f"group order exceeds {cap}")
        frontier = nxt
    return tuple(sorted(seen))


def permute_monomial(s: Permutation, m: Monomial) -> Monomial:
    out = [0] * len(m)
    for i, e in enumerate(m):
        out[s[i]] = e
    return tuple(out)


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class DiagonalizableAction:
    """``mu_{m_1} x ... x mu_{m_s}`` acting on x_i with character weights ``w_i``.

    ``weights[i][j]`` is stored reduced mod ``moduli[j]``.  With
    ``infinitesimal=True`` over GF(p) every modulus must be a power of p.
    """

    moduli: tuple
    weights: tuple
    field: FieldSpec = dc_field(default_factory=FieldSpec.rational)
    infinitesimal: bool = False
    names: tuple | None = None

    kind = "diagonalizable"

    def __post_init__(self):
        moduli = tuple(int(m) for m in self.moduli)
        if any(m < 1 for m in moduli):
            raise PreconditionError("moduli must be >= 1")
        weights = tuple(tuple(int(w) % m for w, m in zip(row, moduli)) for row in self.weights)
        if any(len(row) != len(moduli) for row in self.weights):
            raise PreconditionError("each weight row needs one entry per modulus")
        if self.infinitesimal:
            p = self.field.characteristic
            if p == 0 or any(prime_power_base(m) != p for m in moduli):
                raise PreconditionError("infinitesimal mu-type needs GF(p) and p-power moduli")
        object.__setattr__(self, "moduli", moduli)
        object.__setattr__(self, "weights", weights)
        if self.names is None:
            object.__setattr__(self, "names", default_names(len(weights)))

    @property
    def nvars(self) -> int:
        return len(self.weights)

    @property
    def order(self) -> int:
        return prod(self.moduli)

    @property
    def linearly_reductive(self) -> bool:
        return True

    def monomial_weight(self, m: Monomial) -> tuple[int, ...]:
        if len(m) != self.nvars:
            raise PreconditionError("exponent vector length differs from nvars")
        return tuple(sum(w[j] * k for w, k in zip(self.weights, m)) % mj
                     for j, mj in enumerate(self.moduli))

    def is_invariant_monomial(self, m: Monomial) -> bool:
        return not any(self.monomial_weight(m))

    def is_trivial(self) -> bool:
        return all(w == 0 for row in self.weights for w in row)

    def with_field(self, field: FieldSpec) -> DiagonalizableAction:
        return DiagonalizableAction(self.moduli, self.weights, field, False, self.names)


def monomial_weight(action: DiagonalizableAction, m: Monomial) -> tuple[int, ...]:
    """Weight vector ``(sum_i w_ij k_i mod m_j)_j``; zero iff ``m`` is invariant."""
    return action.monomial_weight(tuple(m))


@dataclass(frozen=True)
class PermutationAction:
    """A permutation group acting on variables by ``x_i -> x_{sigma(i)}``."""

    nvars: int
    generators: tuple
    field: FieldSpec = dc_field(default_factory=FieldSpec.rational)
    names: tuple | None = None

    kind = "permutation"

    def __post_init__(self):
        gens = []
        for g in self.generators:
            g = parse_cycles(g, self.nvars) if isinstance(g, str) else tuple(int(i) for i in g)
            if sorted(g) != list(range(self.nvars)):
                raise PreconditionError(f"{g} is not a permutation of {self.nvars} points")
            gens.append(g)
        object.__setattr__(self, "generators", tuple(gens))
        if self.names is None:
            object.__setattr__(self, "names", default_names(self.nvars))

    @cached_property
    def elements(self) -> tuple[Permutation, ...]:
        return group_closure(self.generators, self.nvars)

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def _element_set(self):
        return frozenset(self.elements)

    def __contains__(self, s) -> bool:
        return tuple(s) in self._element_set

    @property
    def linearly_reductive(self) -> bool:
        p = self.field.characteristic
        return p == 0 or self.order % p != 0

    def is_trivial(self) -> bool:
        return self.order == 1

    def with_field(self, field: FieldSpec) -> PermutationAction:
        return PermutationAction(self.nvars, self.generators, field, self.names)


def permute_polynomial(action: PermutationAction, sigma, f: Polynomial) -> Polynomial:
    """Relabel variables of ``f`` by a group element ``sigma``."""
    sigma = parse_cycles(sigma, action.nvars) if isinstance(sigma, str) else tuple(sigma)
    if sigma not in action:
        raise PreconditionError(f"{format_cycles(sigma)} is not in the group")
    if f.nvars != action.nvars:
        raise PreconditionError("polynomial has the wrong number of variables")
    return f.permute(sigma)


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class AlphaCoaction:
    """alpha_q coaction ``x_i -> sum_j A_ji(t) x_j`` over GF(p), t^q = 0.

    ``matrix[j][i]`` is the tuple of GF(p) coefficients of ``A_ji`` in
    ``1, t, ..., t^{q-1}``.
    """

    p: int
    q: int
    matrix: tuple
    names: tuple | None = None

    kind = "alpha"

    def __post_init__(self):
        if prime_power_base(self.q) != self.p:
            raise PreconditionError(f"q={self.q} is not a power of p={self.p}")
        n = len(self.matrix)
        rows = []
        for j, row in enumerate(self.matrix):
            if len(row) != n:
                raise PreconditionError("coaction matrix must be square")
            entries = []
            for entry in row:
                entry = tuple(int(c) % self.p for c in entry)
                if len(entry) > self.q and any(entry[self.q:]):
                    raise PreconditionError("entry has terms of t-degree >= q")
                entries.append((entry + (0,) * self.q)[: self.q])
            rows.append(tuple(entries))
        object.__setattr__(self, "matrix", tuple(rows))
        if self.names is None:
            object.__setattr__(self, "names", default_names(n))

    @property
    def nvars(self) -> int:
        return len(self.matrix)

    @property
    def field(self) -> FieldSpec:
        return FieldSpec.prime(self.p)

    @property
    def order(self) -> int:
        return self.q

    @property
    def linearly_reductive(self) -> bool:
        return False

    def entry(self, j: int, i: int) -> TruncatedPoly:
        F = self.field
        return TruncatedPoly(self.q, [Polynomial.constant(F, 0, c) for c in self.matrix[j][i]])

    @cached_property
    def images(self) -> tuple[TruncatedPoly, ...]:
        """Coaction image of each variable as an element of S[t]/(t^q)."""
        F, n, q = self.field, self.nvars, self.q
        out = []
        for i in range(n):
            coeffs = []
            for m in range(q):
                terms = {}
                for j in range(n):
                    c = self.matrix[j][i][m]
                    if c:
                        e = [0] * n
                        e[j] = 1
                        terms[tuple(e)] = c
                coeffs.append(Polynomial(F, n, terms))
            out.append(TruncatedPoly(q, coeffs))
        return tuple(out)


def _coact_terms(action: AlphaCoaction, f: Polynomial, cache: dict) -> TruncatedPoly:
    q, F, n = action.q, action.field, action.nvars
    total = TruncatedPoly.constant(q, Polynomial.zero(F, n))
    for m, c in f.terms.items():
        term = TruncatedPoly.constant(q, Polynomial.constant(F, n, c))
        for i, e in enumerate(m):
            if e:
                key = (i, e)
                if key not in cache:
                    cache[key] = action.images[i] ** e
                term = term * cache[key]
        total = total + term
    return total


def coact(action: AlphaCoaction, f: Polynomial, cache: dict | None = None) -> TruncatedPoly:
    """Image of ``f`` under the coaction, expanded in ``S[t]/(t^q)``."""
    if f.field != action.field:
        raise FieldMismatchError(f"{f.field} polynomial for a coaction over {action.field}")
    if f.nvars != action.nvars:
        raise PreconditionError("polynomial has the wrong number of variables")
    return _coact_terms(action, f, {} if cache is None else cache)


def is_alpha_invariant(action: AlphaCoaction, f: Polynomial) -> bool:
    return coact(action, f).is_constant()


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    first_violation: str | None = None

    def __bool__(self):
        return self.valid


def validate_coaction(action: AlphaCoaction) -> ValidationReport:
    """Check counit ``A(0) = I`` and ``A(u+v) = A(u) A(v)`` in k[u,v]/(u^q, v^q)."""
    n, q, p = action.nvars, action.q, action.p
    A = action.matrix
    for j in range(n):
        for i in range(n):
            if A[j][i][0] != int(i == j):
                return ValidationReport(False, f"counit fails at entry ({j + 1},{i + 1})")
    for j in range(n):
        for i in range(n):
            lhs = {}
            for m, c in enumerate(A[j][i]):
                if c:
                    for a in range(max(0, m - q + 1), min(m, q - 1) + 1):
                        v = c * comb(m, a) % p
                        if v:
                            lhs[(a, m - a)] = (lhs.get((a, m - a), 0) + v) % p
            rhs = {}
            for k in range(n):
                for a, ca in enumerate(A[j][k]):
                    if ca:
                        for b, cb in enumerate(A[k][i]):
                            if cb:
                                rhs[(a, b)] = (rhs.get((a, b), 0) + ca * cb) % p
            lhs = {k: v for k, v in lhs.items() if v}
            rhs = {k: v for k, v in rhs.items() if v}
            if lhs != rhs:
                a, b = min(k for k in set(lhs) | set(rhs) if lhs.get(k) != rhs.get(k))
                return ValidationReport(
                    False, f"coassociativity fails at entry ({j + 1},{i + 1}), u^{a} v^{b}")
    return ValidationReport(True)


def standard_alpha_rep(q: int, l: int) -> AlphaCoaction:
    """l copies of the 2-dim unipotent block: x_i -> x_i, y_i -> y_i + t x_i.

    Variables are ordered x1, y1, ..., xl, yl.
    """
    p = prime_power_base(q)
    if p is None:
        raise PreconditionError(f"q={q} is not a prime power")
    if l < 1:
        raise PreconditionError("l must be positive")
    n = 2 * l
    one = (1,) + (0,) * (q - 1)
    tee = (0, 1) + (0,) * (q - 2)
    zero = (0,) * q
    M = [[zero] * n for _ in range(n)]
    for b in range(l):
        x, y = 2 * b, 2 * b + 1
        M[x][x] = one
        M[y][y] = one
        M[x][y] = tee  # y -> y + t x
    names = tuple(itertools.chain.from_iterable((f"x{b + 1}", f"y{b + 1}") for b in range(l)))
    return AlphaCoaction(p, q, tuple(tuple(r) for r in M), names)


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ProductAction:
    """Commuting product of a diagonalizable and a permutation action."""

    diag: DiagonalizableAction
    perm: PermutationAction

    kind = "product"

    def __post_init__(self):
        if self.diag.nvars != self.perm.nvars:
            raise InvalidProductError("diagonal and permutation parts differ in nvars")
        if self.diag.field != self.perm.field:
            raise InvalidProductError("diagonal and permutation parts differ in field")
        for s in self.perm.generators:
            for i in range(self.nvars):
                if self.diag.weights[s[i]] != self.diag.weights[i]:
                    raise InvalidProductError(
                        f"generator {format_cycles(s)} moves x{i + 1} to a variable of different weight")

    @property
    def nvars(self) -> int:
        return self.diag.nvars

    @property
    def field(self) -> FieldSpec:
        return self.diag.field

    @property
    def names(self):
        return self.diag.names

    @property
    def order(self) -> int:
        return self.diag.order * self.perm.order

    @property
    def linearly_reductive(self) -> bool:
        return self.perm.linearly_reductive

    def with_field(self, field: FieldSpec) -> ProductAction:
        return ProductAction(self.diag.with_field(field), self.perm.with_field(field))


ActionDescriptor = Union[DiagonalizableAction, PermutationAction, AlphaCoaction, ProductAction]


def describe(action) -> str:
    if action.kind == "diagonalizable":
        return f"diagonalizable moduli={list(action.moduli)} weights={[list(w) for w in action.weights]} over {action.field}"
    if action.kind == "permutation":
        gens = ", ".join(format_cycles(g) for g in action.generators)
        return f"permutation <{gens}> on {action.nvars} vars over {action.field}"
    if action.kind == "alpha":
        return f"alpha_{action.q} coaction on {action.nvars} vars over {action.field}"
    return f"product [{describe(action.diag)}] x [{describe(action.perm)}]"
