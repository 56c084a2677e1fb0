import pytest

from invariant_forge.actions import coact, standard_alpha_rep
from invariant_forge.alpha import (RichmanInstance, f_poly, f_recursion_rhs, g_poly,
                                   richman_certificate, verify_identity3)
from invariant_forge.binomials import lucas_binom
from invariant_forge.errors import PreconditionError
from invariant_forge.fields import FieldSpec
from invariant_forge.poly import Polynomial, parse_polynomial

RANGE = [(q, l) for q in (2, 3, 4) for l in (1, 2, 3) if not (q == 4 and l == 3)]


def P(text, q, l):
    a = standard_alpha_rep(q, l)
    return parse_polynomial(text, a.field, 2 * l, names=a.names)


def test_f_poly_examples():
    assert f_poly(1, 1, 2) == P("x1", 2, 1)
    assert f_poly(1, 0, 3) == P("y1^2", 3, 1)
    assert f_poly(2, 1, 2) == P("x1*y2 + y1*x2", 2, 2)
    with pytest.raises(PreconditionError):
        f_poly(1, 3, 3)


def test_g_poly_examples():
    for q in (2, 3, 4, 5):
        assert g_poly(1, q) == P(f"x1^{q - 1}", q, 1)
    assert g_poly(2, 2) == P("x1*y2 + y1*x2", 2, 2)
    assert g_poly(3, 2) == P("x1*y2*y3 + y1*x2*y3 + y1*y2*x3", 2, 3)


@pytest.mark.parametrize("q,l", RANGE)
def test_multi_homogeneity(q, l):
    for i in range(q):
        f = f_poly(l, i, q)
        assert f.is_homogeneous() and f.degree() == l * (q - 1)
        for m in f.terms:
            for j in range(l):
                assert m[2 * j] + m[2 * j + 1] == q - 1
            assert sum(m[0::2]) == i
            assert sum(m[1::2]) == l * (q - 1) - i


@pytest.mark.parametrize("q,l", RANGE)
def test_identity_and_g_invariance(q, l):
    for i in range(q):
        check = verify_identity3(l, i, q)
        assert check.holds and check.diff == {}
    assert coact(standard_alpha_rep(q, l), g_poly(l, q)).is_constant()


def test_identity_examples():
    for q in (2, 3, 4):
        assert verify_identity3(1, q - 1, q)
    assert verify_identity3(1, 0, 2)
    assert verify_identity3(2, 0, 3)


@pytest.mark.parametrize("q,l", [(q, l) for q in (2, 3, 4) for l in (1, 2) ])
def test_recursion(q, l):
    for i in range(q):
        assert f_poly(l + 1, i, q) == f_recursion_rhs(l, i, q)


def test_lucas_annihilation():
    for q, p in [(2, 2), (3, 3), (4, 2), (8, 2), (9, 3)]:
        for k in range(1, q):
            assert lucas_binom(q, k, p) == 0


def test_identity_diff_reports_a_broken_instance(monkeypatch):
    # corrupt f_{l,i} so the identity must fail and report t-powers
    import invariant_forge.alpha as alpha
    real = alpha.f_poly

    def broken(l, i, q):
        f = real(l, i, q)
        return f + f if i == 1 else f

    monkeypatch.setattr(alpha, "f_poly", broken)
    check = alpha.verify_identity3(1, 0, 3)
    assert not check.holds and check.diff


def test_richman_examples():
    c = richman_certificate(2, 2, engine_limit=2)
    assert c.certified and c.g_degree == 2 and c.beta_lower_from_engine >= 2
    c = richman_certificate(2, 3, engine_limit=3)
    assert c.certified and c.beta_lower_from_engine >= 3
    c = richman_certificate(3, 1, engine_limit=2)
    assert c.certified and c.g_degree == 2
    with pytest.raises(PreconditionError):
        richman_certificate(3, 2, engine_limit=3)


def test_richman_instance():
    inst = RichmanInstance.build(4, 2)
    assert inst.p == 2 and inst.action == standard_alpha_rep(4, 2)
    assert inst.action.nvars == 4
