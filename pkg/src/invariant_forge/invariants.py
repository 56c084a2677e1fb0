"""Graded invariant bases, Reynolds operators and minimal generators.

Every per-degree basis is returned in reduced echelon form with respect to
the graded-lex monomial order, so two bases of the same space compare equal
as lists.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from . import kernels
from .actions import (AlphaCoaction, DiagonalizableAction, PermutationAction,
                      ProductAction, coact, permute_monomial)
from .errors import InvalidProductError, NotLinearlyReductiveError, PreconditionError
from .linalg import echelon_rows, nullspace, rank, reduce_vector, rref
from .poly import (Monomial, Polynomial, monomial_array, monomial_index,
                   monomials_of_degree)


def worker_count() -> int:
    """Worker cap from ``INVARIANT_FORGE_THREADS`` (default 1)."""
    try:
        return max(1, int(os.environ.get("INVARIANT_FORGE_THREADS", "1")))
    except ValueError:
        return 1


# --------------------------------------------------------------------------
# conversions between polynomials and coordinate rows


def poly_to_row(f: Polynomial, d: int) -> dict:
    idx = monomial_index(f.nvars, d)
    try:
        return {idx[m]: c for m, c in f.terms.items()}
    except KeyError:
        raise PreconditionError(f"polynomial is not homogeneous of degree {d}") from None


def row_to_poly(row: dict, field, nvars: int, d: int) -> Polynomial:
    monos = monomials_of_degree(nvars, d)
    return Polynomial._raw(field, nvars, {monos[c]: v for c, v in row.items()})


# --------------------------------------------------------------------------
# linear systems whose kernel is S^G_d


def invariant_monomials(action: DiagonalizableAction, d: int) -> list[Monomial]:
    """Degree-d monomials of weight zero, graded-lex descending."""
    if d < 0:
        raise PreconditionError("degree must be non-negative")
    monos = monomials_of_degree(action.nvars, d)
    if not action.moduli or not monos:
        return list(monos)
    W = kernels.monomial_weights(monomial_array(action.nvars, d),
                                 np.array(action.weights, dtype=np.int64).reshape(action.nvars, len(action.moduli)),
                                 np.array(action.moduli, dtype=np.int64))
    keep = np.flatnonzero(~W.any(axis=1))
    return [monos[i] for i in keep]


def _diag_rows(action: DiagonalizableAction, d: int) -> list[dict]:
    one = action.field.one
    inv = set(invariant_monomials(action, d))
    return [{i: one} for i, m in enumerate(monomials_of_degree(action.nvars, d)) if m not in inv]


def _perm_rows(action: PermutationAction, d: int, monos=None) -> list[dict]:
    F = action.field
    one, mone = F.one, F.neg(F.one)
    monos = monomials_of_degree(action.nvars, d) if monos is None else monos
    idx = {m: i for i, m in enumerate(monos)}
    rows, seen = [], set()
    for s in action.generators:
        for a, m in enumerate(monos):
            try:
                b = idx[permute_monomial(s, m)]
            except KeyError:
                raise InvalidProductError("permutation does not preserve the monomial subspace") from None
            if a != b and (a, b) not in seen:
                seen.add((a, b))
                rows.append({a: one, b: mone})
    return rows


def _alpha_rows(action: AlphaCoaction, d: int) -> list[dict]:
    F, n = action.field, action.nvars
    monos = monomials_of_degree(n, d)
    idx = monomial_index(n, d)
    cache: dict = {}
    rows: dict = {}
    for a, m in enumerate(monos):
        image = coact(action, Polynomial._raw(F, n, {m: F.one}), cache)
        for k in range(1, action.q):
            for mm, c in image.coefficient(k).terms.items():
                rows.setdefault((k, idx[mm]), {})[a] = c
    return [rows[key] for key in sorted(rows)]


def invariance_system(action, d: int) -> list[dict]:
    """Rows whose common kernel on the degree-d monomial space is S^G_d."""
    if action.kind == "diagonalizable":
        return _diag_rows(action, d)
    if action.kind == "permutation":
        return _perm_rows(action, d)
    if action.kind == "alpha":
        return _alpha_rows(action, d)
    if action.kind == "product":
        return _diag_rows(action.diag, d) + _perm_rows(action.perm, d)
    raise TypeError(f"unsupported action {action!r}")


def invariant_basis(action, d: int) -> list[Polynomial]:
    """A basis of S^G_d in reduced echelon form (graded-lex)."""
    if d < 0:
        raise PreconditionError("degree must be non-negative")
    F, n = action.field, action.nvars
    if action.kind == "diagonalizable":
        return [Polynomial._raw(F, n, {m: F.one}) for m in invariant_monomials(action, d)]
    ncols = len(monomials_of_degree(n, d))
    return [row_to_poly(v, F, n, d) for v in nullspace(invariance_system(action, d), F, ncols)]


def invariant_dimension(action, d: int) -> int:
    if action.kind == "diagonalizable":
        return len(invariant_monomials(action, d))
    ncols = len(monomials_of_degree(action.nvars, d))
    return ncols - rank(invariance_system(action, d), action.field, ncols)


def is_invariant(action, f: Polynomial) -> bool:
    """Invariance predicate for any action kind (f need not be homogeneous)."""
    if action.kind == "diagonalizable":
        return all(action.is_invariant_monomial(m) for m in f.terms)
    if action.kind == "permutation":
        return all(f.permute(s) == f for s in action.generators)
    if action.kind == "alpha":
        return coact(action, f).is_constant()
    return is_invariant(action.diag, f) and is_invariant(action.perm, f)


@dataclass
class GradedInvariantBasis:
    action: object
    per_degree: dict
    max_degree: int

    def dimensions(self) -> list[int]:
        return [len(self.per_degree[d]) for d in range(self.max_degree + 1)]


def graded_invariant_basis(action, D: int, workers: int | None = None) -> GradedInvariantBasis:
    """Bases of S^G_d for d = 0..D; degrees are independent and may run in parallel."""
    workers = worker_count() if workers is None else workers
    degrees = range(D + 1)
    if workers > 1 and D > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            bases = list(pool.map(lambda d: invariant_basis(action, d), degrees))
    else:
        bases = [invariant_basis(action, d) for d in degrees]
    return GradedInvariantBasis(action, dict(zip(degrees, bases)), D)


# --------------------------------------------------------------------------
# Reynolds operators


def reynolds(action, f: Polynomial) -> Polynomial:
    """Projection S -> S^G that is S^G-linear and fixes invariants."""
    if action.kind == "diagonalizable":
        return Polynomial._raw(f.field, f.nvars,
                               {m: c for m, c in f.terms.items() if action.is_invariant_monomial(m)})
    if action.kind == "permutation":
        if not action.linearly_reductive:
            raise NotLinearlyReductiveError(
                f"|G| = {action.order} is divisible by the characteristic {action.field.characteristic}")
        total = Polynomial.zero(f.field, f.nvars)
        for s in action.elements:
            total = total + f.permute(s)
        return total.scale(Fraction(1, action.order))
    raise PreconditionError(f"no Reynolds operator for {action.kind} actions")


# --------------------------------------------------------------------------
# zero-sum splitting of invariant monomials


def split_monomial(action: DiagonalizableAction, m: Monomial) -> list[Monomial]:
    """Factor an invariant monomial into invariant monomials of degree <= |G|.

    Among any |G|+1 consecutive terms of the weight sequence two prefix sums
    coincide, so a nonempty zero-sum block of length <= |G| can be cut off.
    """
    m = tuple(m)
    if action.monomial_weight(m) != (0,) * len(action.moduli):
        raise PreconditionError("monomial is not invariant")
    order, n = action.order, action.nvars
    seq = [i for i, e in enumerate(m) for _ in range(e)]
    zero = (0,) * len(action.moduli)
    factors = []
    while len(seq) > order:
        prefix = {zero: 0}
        acc = zero
        for pos in range(1, order + 2):
            w = action.weights[seq[pos - 1]]
            acc = tuple((a + b) % mj for a, b, mj in zip(acc, w, action.moduli))
            if acc in prefix:
                start = prefix[acc]
                break
            prefix[acc] = pos
        else:  # pragma: no cover - pigeonhole guarantees a repeat
            raise AssertionError("no zero-sum block found")
        block = seq[start:pos]
        seq = seq[:start] + seq[pos:]
        factors.append(_exponents(block, n))
    if seq:
        factors.append(_exponents(seq, n))
    return factors


def _exponents(indices, n) -> Monomial:
    e = [0] * n
    for i in indices:
        e[i] += 1
    return tuple(e)


# --------------------------------------------------------------------------
# minimal generators via graded Nakayama


@dataclass(frozen=True)
class BetaCertificate:
    generator_degrees: tuple
    beta_lower: int
    certified_complete: bool
    certification_reason: str
    search_limit: int
    generators: tuple = dc_field(default=(), compare=False, repr=False)

    def new_in_degree(self, d: int) -> int:
        return self.generator_degrees.count(d)


def _all_monomials(polys) -> bool:
    return all(len(p) == 1 for p in polys)


def new_generators(field, nvars: int, d: int, basis: list[Polynomial],
                   products: list[Polynomial]) -> list[Polynomial]:
    """Elements of ``basis`` spanning a complement of span(products) in degree d."""
    if not basis:
        return []
    if _all_monomials(basis) and _all_monomials(products):
        covered = {next(iter(p.terms)) for p in products}
        return [b for b in basis if next(iter(b.terms)) not in covered]
    ncols = len(monomials_of_degree(nvars, d))
    dec = rref((poly_to_row(p, d) for p in products), field, ncols)
    reduced = [reduce_vector(dec, poly_to_row(b, d), field) for b in basis]
    fresh = rref(reduced, field, ncols)
    return [row_to_poly(r, field, nvars, d) for r in echelon_rows(fresh)]


def _reason(action, D: int) -> tuple[bool, str]:
    if action.kind == "alpha":
        return False, "uncertified: alpha_q is not linearly reductive, no degree bound exists"
    if not action.linearly_reductive:
        return False, (f"uncertified: characteristic {action.field.characteristic} divides "
                       f"|G| = {action.order}")
    if D < action.order:
        return False, f"uncertified: search limit D = {D} is below |G| = {action.order}"
    return True, f"Noether bound |G| = {action.order} <= D = {D}"


def minimal_generators(action, D: int, workers: int | None = None,
                       graded: GradedInvariantBasis | None = None) -> BetaCertificate:
    """Degrees of minimal homogeneous generators up to ``D`` and the beta certificate.

    R_+^2 in degree d is spanned by g * b with g a generator of degree a < d
    and b running over a basis of R_{d-a}.
    """
    if D < 1:
        raise PreconditionError("search limit must be >= 1")
    if graded is None or graded.max_degree < D:
        graded = graded_invariant_basis(action, D, workers)
    F, n = action.field, action.nvars
    gens: list[tuple[int, Polynomial]] = []
    for d in range(1, D + 1):
        products = [g * b for a, g in gens for b in graded.per_degree[d - a]]
        for g in new_generators(F, n, d, graded.per_degree[d], products):
            gens.append((d, g))
    degrees = tuple(d for d, _ in gens)
    ok, why = _reason(action, D)
    return BetaCertificate(degrees, max(degrees, default=0), ok, why, D,
                           tuple(g for _, g in gens))


def subalgebra_pieces(graded: GradedInvariantBasis, max_factor_degree: int,
                      top: int) -> dict[int, dict]:
    """Echelon forms of the degree-d pieces (d <= top) of the subalgebra
    generated by invariants of degree 1..max_factor_degree."""
    action = graded.action
    F, n = action.field, action.nvars
    pieces: dict[int, dict] = {}
    for d in range(1, top + 1):
        ncols = len(monomials_of_degree(n, d))
        rows = []
        if d <= max_factor_degree:
            rows += [poly_to_row(b, d) for b in graded.per_degree[d]]
        for a in range(1, min(max_factor_degree, d - 1) + 1):
            lower = [row_to_poly(r, F, n, d - a) for r in echelon_rows(pieces[d - a])]
            rows += [poly_to_row(b * c, d) for b in graded.per_degree[a] for c in lower]
        pieces[d] = rref(rows, F, ncols)
    return pieces


def in_span(piece: dict, f: Polynomial, d: int) -> bool:
    return not reduce_vector(piece, poly_to_row(f, d), f.field)


# --------------------------------------------------------------------------
# two-step invariants for commuting products


def two_step_invariants(action: ProductAction, d: int) -> list[Polynomial]:
    """Permutation invariants inside the span of diagonal-invariant monomials."""
    if not isinstance(action, ProductAction):
        raise PreconditionError("two-step invariants need a ProductAction")
    F, n = action.field, action.nvars
    sub = invariant_monomials(action.diag, d)
    rows = _perm_rows(action.perm, d, sub)
    # sub is a subsequence of the full monomial order, so echelon form is kept
    return [Polynomial._raw(F, n, {sub[c]: val for c, val in v.items()})
            for v in nullspace(rows, F, len(sub))]
