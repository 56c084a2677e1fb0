"""Lower bounds for alpha_q acting on l copies of the 2-dim unipotent block.

The invariant ``g_l`` of degree ``l(q-1)`` is not a sum of products of
invariants of degree below ``l``; exact graded linear algebra certifies this
for concrete ``(q, l)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .actions import AlphaCoaction, coact, standard_alpha_rep
from .binomials import lucas_binom_int
from .errors import PreconditionError
from .fields import FieldSpec, prime_power_base
from .invariants import (BetaCertificate, graded_invariant_basis, in_span,
                         minimal_generators, subalgebra_pieces)
from .poly import Polynomial, TruncatedPoly

# l(q-1) above this needs an explicit override
ALPHA_DEGREE_CAP = 8


def _prime_of(q: int) -> int:
    p = prime_power_base(q)
    if p is None:
        raise PreconditionError(f"q={q} is not a prime power")
    return p


def f_poly(l: int, i: int, q: int) -> Polynomial:
    """Sum over i_1+...+i_l = i (0 <= i_j < q) of prod_j x_j^{i_j} y_j^{q-1-i_j}."""
    p = _prime_of(q)
    if l < 1:
        raise PreconditionError("l must be positive")
    if not 0 <= i <= q - 1:
        raise PreconditionError(f"i={i} outside 0..{q - 1}")
    terms = {}
    for parts in itertools.product(range(q), repeat=l):
        if sum(parts) == i:
            exps = []
            for a in parts:
                exps += [a, q - 1 - a]
            terms[tuple(exps)] = 1
    return Polynomial(FieldSpec.prime(p), 2 * l, terms)


def g_poly(l: int, q: int) -> Polynomial:
    return f_poly(l, q - 1, q)


@dataclass(frozen=True)
class IdentityCheck:
    holds: bool
    diff: dict = dc_field(default_factory=dict)

    def __bool__(self):
        return self.holds


def verify_identity3(l: int, i: int, q: int) -> IdentityCheck:
    """Check f_{l,i} = sum_{j=i}^{q-1} C(j,i) t^{j-i} coact(f_{l,j}) in S[t]/(t^q).

    ``diff`` maps each t-power where the sides disagree to LHS - RHS.
    """
    p = _prime_of(q)
    if not 0 <= i <= q - 1:
        raise PreconditionError(f"i={i} outside 0..{q - 1}")
    action = standard_alpha_rep(q, l)
    F = action.field
    cache: dict = {}
    lhs = TruncatedPoly.constant(q, f_poly(l, i, q))
    rhs = TruncatedPoly.constant(q, Polynomial.zero(F, 2 * l))
    for j in range(i, q):
        c = lucas_binom_int(j, i, p)
        if c:
            rhs = rhs + coact(action, f_poly(l, j, q), cache).shift(j - i) * F.scalar(c)
    diff = {m: a - b for m, (a, b) in enumerate(zip(lhs.coeffs, rhs.coeffs)) if a != b}
    return IdentityCheck(not diff, diff)


def f_recursion_rhs(l: int, i: int, q: int) -> Polynomial:
    """sum_{s=q-1-i}^{q-1} x_{l+1}^{q-1-s} y_{l+1}^s f_{l, i-(q-1-s)} in 2(l+1) variables."""
    p = _prime_of(q)
    F = FieldSpec.prime(p)
    n = 2 * (l + 1)
    total = Polynomial.zero(F, n)
    for s in range(q - 1 - i, q):
        lead = [0] * n
        lead[2 * l], lead[2 * l + 1] = q - 1 - s, s
        total = total + Polynomial.monomial(F, lead) * f_poly(l, i - (q - 1 - s), q).extend(n)
    return total


@dataclass(frozen=True)
class RichmanInstance:
    p: int
    q: int
    l: int
    action: AlphaCoaction

    @classmethod
    def build(cls, q: int, l: int) -> RichmanInstance:
        return cls(_prime_of(q), q, l, standard_alpha_rep(q, l))


@dataclass(frozen=True)
class LowerBoundCertificate:
    instance: RichmanInstance
    g_degree: int
    g_invariant: bool
    indecomposability_witness: bool
    beta_lower_from_engine: int
    engine: BetaCertificate = dc_field(compare=False, repr=False, default=None)

    @property
    def certified(self) -> bool:
        return (self.g_invariant and self.indecomposability_witness
                and self.beta_lower_from_engine >= self.instance.l)


def richman_certificate(q: int, l: int, engine_limit: int | None = None) -> LowerBoundCertificate:
    """Certify beta(alpha_q, l V_2) >= l for one instance.

    (a) g_l is invariant; (b) the invariant ring is computed up to degree
    l(q-1); (c) g_l lies outside the degree-l(q-1) piece of the subalgebra
    generated by invariants of degree <= l-1; (d) the generator search agrees.
    """
    inst = RichmanInstance.build(q, l)
    top = l * (q - 1)
    engine_limit = top if engine_limit is None else engine_limit
    if engine_limit < top:
        raise PreconditionError(f"engine limit {engine_limit} is below deg g_l = {top}")
    g = g_poly(l, q)
    g_invariant = coact(inst.action, g).is_constant()
    graded = graded_invariant_basis(inst.action, engine_limit)
    pieces = subalgebra_pieces(graded, l - 1, top)
    witness = not in_span(pieces[top], g, top)
    engine = minimal_generators(inst.action, engine_limit, graded=graded)
    return LowerBoundCertificate(inst, top, g_invariant, witness, engine.beta_lower, engine)
