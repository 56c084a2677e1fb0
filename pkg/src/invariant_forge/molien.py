"""Molien series: graded dimension counting and averaged character sums.

The character sum is evaluated in the group ring Z[C_N] (multiplication by a
root of unity is a cyclic shift) and projected into Q(zeta_N) only once per
coefficient; the projection is a ring map, so the result is the exact value
of (1/|G|) sum_g 1/det(1 - g^{-1} t).
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .actions import cycles, describe, inverse_perm
from .errors import CapExceededError, InapplicableError
from .fields import FieldSpec, lcm_all
from .invariants import invariant_dimension, worker_count
from .poly import count_monomials


@dataclass(frozen=True)
class MolienCoefficients:
    action: str
    D: int
    coeffs: tuple

    def __iter__(self):
        return iter(self.coeffs)


def molien_by_counting(action, D: int, workers: int | None = None) -> MolienCoefficients:
    """c_d = dim S^G_d for d = 0..D over the action's own field."""
    workers = worker_count() if workers is None else workers
    degrees = range(D + 1)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            dims = list(pool.map(lambda d: invariant_dimension(action, d), degrees))
    else:
        dims = [invariant_dimension(action, d) for d in degrees]
    return MolienCoefficients(describe(action), D, tuple(dims))


@dataclass(frozen=True)
class CharacterSumSeries:
    N: int
    exponents: tuple  # per group element, eigenvalue exponents of g^{-1} at level N
    coeffs: tuple  # Fractions; integral for a genuine Molien series
    abstract_only: bool = False

    @property
    def field(self) -> FieldSpec:
        return FieldSpec.cyclotomic(self.N)

    def integers(self) -> list[int]:
        if any(c.denominator != 1 for c in self.coeffs):
            raise ArithmeticError("character sum has non-integral coefficients")
        return [int(c) for c in self.coeffs]


def _diag_exponents(diag, M: int, a) -> list[int]:
    return [sum(aj * w[j] * (M // mj) for j, (aj, mj) in enumerate(zip(a, diag.moduli)))
            for w in diag.weights]


def element_exponents(action) -> tuple[int, list[list[int]]]:
    """(M, rows): eigenvalues of g^{-1} as powers of zeta_M, one row per element."""
    if action.kind == "alpha":
        raise InapplicableError("no character-sum formula for alpha_q actions")
    if action.kind == "diagonalizable":
        M = lcm_all(action.moduli)
        rows = [[-e for e in _diag_exponents(action, M, a)]
                for a in itertools.product(*(range(m) for m in action.moduli))]
        return M, rows
    perm = action if action.kind == "permutation" else action.perm
    diag = action.diag if action.kind == "product" else None
    elems = perm.elements
    cyc_of = {s: cycles(inverse_perm(s)) for s in elems}
    M = lcm_all([len(c) for cs in cyc_of.values() for c in cs]
                + (list(diag.moduli) if diag else []))
    diag_elems = list(itertools.product(*(range(m) for m in diag.moduli))) if diag else [()]
    rows = []
    for a in diag_elems:
        # the diagonal part is constant along each cycle of a commuting permutation
        scal = _diag_exponents(diag, M, a) if diag else [0] * perm.nvars
        for s in elems:
            row = []
            for c in cyc_of[s]:
                base = -scal[c[0]]
                row += [base + j * (M // len(c)) for j in range(len(c))]
            rows.append(row)
    return M, rows


def molien_charsum(action, D: int) -> CharacterSumSeries:
    """(1/|G_abs|) sum_g 1/det(1 - g^{-1} t) expanded exactly to order D."""
    M, rows = element_exponents(action)
    n = action.nvars
    order = len(rows)
    if count_monomials(n, D) * order >= 2**62:
        raise CapExceededError("character-sum coefficients would overflow int64")
    arr = np.array(rows, dtype=np.int64).reshape(order, n) % M
    g = math.gcd(M, *[int(x) for x in np.unique(arr)]) if arr.size else M
    N = M // g
    arr //= g
    arr.sort(axis=1)
    uniq, counts = np.unique(arr, axis=0, return_counts=True)
    total = kernels.charsum_group_ring(np.ascontiguousarray(uniq, dtype=np.int64),
                                       counts.astype(np.int64), N, D)
    F = FieldSpec.cyclotomic(N)
    coeffs = []
    for k in range(D + 1):
        val = F.as_rational(F.from_group_ring(total[k]))
        if val is None:
            raise ArithmeticError(f"t^{k} coefficient of the character sum is irrational")
        coeffs.append(Fraction(val) / order)
    abstract_only = not action.linearly_reductive
    return CharacterSumSeries(N, tuple(tuple(int(x) for x in r) for r in arr), tuple(coeffs),
                              abstract_only)


@dataclass(frozen=True)
class MolienComparison:
    D: int
    native: tuple
    rational: tuple | None
    charsum: tuple | None
    abstract_only: bool
    mismatches: tuple

    @property
    def agree(self) -> bool:
        return not self.mismatches

    @property
    def verdict(self) -> str:
        if self.charsum is None:
            return "counting-only"
        return "agree" if self.agree else "mismatch"


def molien_compare(action, D: int) -> MolienComparison:
    """Counting over the action's field, counting over Q, and the character sum."""
    native = molien_by_counting(action, D).coeffs
    if action.kind == "alpha":
        return MolienComparison(D, native, None, None, False, ())
    rat_action = action if action.field == FieldSpec.rational() else action.with_field(FieldSpec.rational())
    rational = native if rat_action is action else molien_by_counting(rat_action, D).coeffs
    series = molien_charsum(action, D)
    charsum = tuple(series.integers())
    bad = tuple(d for d in range(D + 1) if not native[d] == rational[d] == charsum[d])
    return MolienComparison(D, native, rational, charsum, series.abstract_only, bad)
