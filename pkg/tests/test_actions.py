import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from invariant_forge.actions import (AlphaCoaction, DiagonalizableAction, PermutationAction,
                                     ProductAction, coact, compose, group_closure,
                                     inverse_perm, monomial_weight, parse_cycles,
                                     permute_polynomial, standard_alpha_rep,
                                     validate_coaction)
from invariant_forge.errors import (CapExceededError, FieldMismatchError,
                                    InvalidProductError, PreconditionError)
from invariant_forge.fields import FieldSpec
from invariant_forge.poly import Polynomial, parse_polynomial

from oracles import closure, exponent_vectors

Q = FieldSpec.rational()
GF2 = FieldSpec.prime(2)


# ---------------------------------------------------------------- diagonal

def test_monomial_weight_examples():
    for n in (2, 3, 5):
        assert monomial_weight(DiagonalizableAction((n,), ((1,),)), (n,)) == (0,)
    assert monomial_weight(DiagonalizableAction((2,), ((1,), (1,))), (1, 1)) == (0,)
    assert monomial_weight(DiagonalizableAction((3,), ((1,), (2,))), (2, 1)) == (1,)


def test_weights_are_stored_reduced():
    a = DiagonalizableAction((3, 4), ((5, -1), (3, 9)))
    assert a.weights == ((2, 3), (0, 1))
    assert a.order == 12


def test_infinitesimal_flag_needs_p_power_moduli():
    DiagonalizableAction((4, 2), ((1, 1),), GF2, infinitesimal=True)
    DiagonalizableAction((2,), ((1,),), GF2, infinitesimal=True)
    with pytest.raises(PreconditionError):
        DiagonalizableAction((3,), ((1,),), GF2, infinitesimal=True)
    with pytest.raises(PreconditionError):
        DiagonalizableAction((2,), ((1,),), Q, infinitesimal=True)


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_monomial_weight_is_additive(data):
    s = data.draw(st.integers(1, 3))
    moduli = tuple(data.draw(st.integers(1, 9)) for _ in range(s))
    n = data.draw(st.integers(1, 5))
    weights = tuple(tuple(data.draw(st.integers(-20, 20)) for _ in range(s)) for _ in range(n))
    a = DiagonalizableAction(moduli, weights)
    exps = st.tuples(*[st.integers(0, 6)] * n)
    m1, m2 = data.draw(exps), data.draw(exps)
    w = monomial_weight(a, tuple(x + y for x, y in zip(m1, m2)))
    assert w == tuple((x + y) % m for x, y, m in zip(monomial_weight(a, m1), monomial_weight(a, m2), moduli))


# ---------------------------------------------------------------- permutations

def test_parse_cycles():
    assert parse_cycles("(1,2)(3,4)(5,6)", 6) == (1, 0, 3, 2, 5, 4)
    assert parse_cycles("()", 3) == (0, 1, 2)
    assert parse_cycles("(1 2 3)", 3) == (1, 2, 0)
    for bad in ["(1,2", "(1,7)", "(1,1)", "1,2"]:
        with pytest.raises(ValueError):
            parse_cycles(bad, 6)


@pytest.mark.parametrize("gens,n,order", [
    (["(1,2)"], 2, 2),
    (["(1,2)(3,4)(5,6)"], 6, 2),
    (["(1,2)", "(1,2,3,4)"], 4, 24),
    (["(1,2,3)", "(1,2)"], 3, 6),
    (["(1,2,3,4,5)", "(2,5)(3,4)"], 5, 10),
    (["(1,2)(3,4)", "(1,3)(2,4)"], 4, 4),
    (["(1,2)", "(1,2,3,4,5,6)"], 6, 720),
])
def test_group_closure(gens, n, order):
    G = PermutationAction(n, tuple(gens))
    els = set(G.elements)
    assert G.order == len(els) == order
    assert math.factorial(n) % order == 0
    assert tuple(range(n)) in els
    for a in els:
        assert inverse_perm(a) in els
        for b in els:
            assert compose(a, b) in els
    assert els == closure([parse_cycles(g, n) for g in gens], n)


def test_closure_cap():
    gens = [parse_cycles("(1,2)", 10), parse_cycles("(1,2,3,4,5,6,7,8,9,10)", 10)]
    with pytest.raises(CapExceededError):
        group_closure(gens, 10, cap=1000)


def test_permute_polynomial_examples():
    G = PermutationAction(6, ("(1,2)(3,4)(5,6)",))
    sigma = parse_cycles("(1,2)(3,4)(5,6)", 6)
    x1 = Polynomial.variable(Q, 6, 0)
    assert permute_polynomial(G, sigma, x1) == Polynomial.variable(Q, 6, 1)
    f = parse_polynomial("x1*x4*x5 + x2*x3*x6", Q, 6)
    assert permute_polynomial(G, sigma, f) == f
    g = parse_polynomial("3*x1^2*x3 - x6 + 2", Q, 6)
    assert permute_polynomial(G, tuple(range(6)), g) == g
    with pytest.raises(PreconditionError):
        permute_polynomial(G, parse_cycles("(1,3)", 6), g)


@settings(max_examples=50, deadline=None)
@given(st.permutations(range(4)), st.dictionaries(
    st.tuples(*[st.integers(0, 3)] * 4), st.integers(1, 9), min_size=1, max_size=5))
def test_permute_preserves_degree_and_coefficients(perm, terms):
    G = PermutationAction(4, (tuple(perm),))
    f = Polynomial(Q, 4, terms)
    g = permute_polynomial(G, tuple(perm), f)
    assert g.degree() == f.degree()
    assert sorted(g.terms.values()) == sorted(f.terms.values())


# ---------------------------------------------------------------- products

def test_product_commutation_check():
    diag = DiagonalizableAction((2,), ((1,), (1,), (0,), (0,)))
    ProductAction(diag, PermutationAction(4, ("(1,2)(3,4)",)))
    with pytest.raises(InvalidProductError):
        ProductAction(diag, PermutationAction(4, ("(1,3)",)))


def test_product_actions_commute_on_monomials():
    rng = random.Random(7)
    from oracles import act, random_product
    for _ in range(10):
        moduli, weights, gens, _ = random_product(rng)
        n = len(weights)
        P = ProductAction(DiagonalizableAction(moduli, weights),
                          PermutationAction(n, tuple(gens)))
        for d in range(5):
            for e in exponent_vectors(n, d):
                for g in P.perm.elements:
                    assert P.diag.is_invariant_monomial(act(g, e)) == P.diag.is_invariant_monomial(e)


# ---------------------------------------------------------------- alpha

def test_standard_rep_shape_and_validity():
    a = standard_alpha_rep(2, 1)
    assert a.nvars == 2 and a.names == ("x1", "y1")
    for q, l in [(2, 1), (4, 1), (3, 2), (2, 3), (9, 1)]:
        rep = standard_alpha_rep(q, l)
        assert rep.nvars == 2 * l and rep.q == q
        assert validate_coaction(rep)
    b = standard_alpha_rep(3, 2)
    assert b.matrix[0][1] == b.matrix[2][3] == (0, 1, 0)
    with pytest.raises(PreconditionError):
        standard_alpha_rep(6, 1)


def test_validate_coaction():
    one, t, zero = (1, 0), (0, 1), (0, 0)
    assert validate_coaction(AlphaCoaction(2, 2, ((one, zero), (zero, one))))
    for q in (3, 4, 8):
        ident = tuple(tuple((int(i == j),) + (0,) * (q - 1) for j in range(3)) for i in range(3))
        assert validate_coaction(AlphaCoaction(q if q == 3 else 2, q, ident))
    bad = AlphaCoaction(2, 2, ((one, t), (t, one)))
    report = validate_coaction(bad)
    assert not report.valid and "coassociativity" in report.first_violation
    no_counit = AlphaCoaction(2, 2, (((0, 1), zero), (zero, one)))
    assert "counit" in validate_coaction(no_counit).first_violation


def test_validate_coaction_divided_powers_block():
    # x -> x, y -> y + t x, z -> z + t y + t^2/2 x is exp(tN) for q = p = 3
    z3 = (0, 0, 0)
    M = (((1, 0, 0), (0, 1, 0), (0, 0, 2)),
         (z3, (1, 0, 0), (0, 1, 0)),
         (z3, z3, (1, 0, 0)))
    assert validate_coaction(AlphaCoaction(3, 3, M))
    M_bad = (((1, 0, 0), (0, 1, 0), (0, 0, 1)),) + M[1:]
    assert not validate_coaction(AlphaCoaction(3, 3, M_bad))


def test_coact_examples():
    a = standard_alpha_rep(2, 1)
    x1, y1 = (Polynomial.variable(GF2, 2, i) for i in range(2))
    img = coact(a, x1)
    assert img.coefficient(0) == x1 and img.coefficient(1).is_zero()
    img = coact(a, y1)
    assert img.coefficient(0) == y1 and img.coefficient(1) == x1
    b = standard_alpha_rep(2, 2)
    f = parse_polynomial("x1*y2 + y1*x2", GF2, 4, names=b.names)
    assert coact(b, f).is_constant()
    with pytest.raises(FieldMismatchError):
        coact(a, Polynomial.variable(Q, 2, 0))


@pytest.mark.parametrize("q,l", [(2, 1), (2, 2), (3, 1), (3, 2), (4, 1), (4, 2)])
def test_coact_is_an_algebra_map(q, l):
    a = standard_alpha_rep(q, l)
    F = a.field
    rng = random.Random(q * 10 + l)
    monos = [e for d in range(4) for e in exponent_vectors(2 * l, d)]

    def rand_poly():
        return Polynomial(F, 2 * l, {rng.choice(monos): rng.randrange(q) for _ in range(3)})

    for _ in range(15):
        f, g = rand_poly(), rand_poly()
        assert coact(a, f * g) == coact(a, f) * coact(a, g)
        assert coact(a, f + g) == coact(a, f) + coact(a, g)
        assert coact(a, f).at_zero() == f
