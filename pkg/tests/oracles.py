"""Independent brute-force oracles for the test suite.

Nothing here calls the package's linear algebra or invariant engine:
dimensions come from direct enumeration, orbit counting, or sympy.
"""

import itertools
from math import comb

from sympy import Poly, symbols
from sympy.polys.domains import GF, QQ
from sympy.polys.matrices import DomainMatrix


def exponent_vectors(n, d):
    """All exponent vectors of total degree d in n variables."""
    out = set()
    for combo in itertools.combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.add(tuple(e))
    return sorted(out)


def diag_dim(moduli, weights, d):
    n = len(weights)
    count = 0
    for e in exponent_vectors(n, d):
        if all(sum(weights[i][j] * e[i] for i in range(n)) % m == 0
               for j, m in enumerate(moduli)):
            count += 1
    return count


def closure(gens, n):
    ident = tuple(range(n))
    group = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = tuple(s[g[i]] for i in range(n))
                if h not in group:
                    group.add(h)
                    nxt.append(h)
        frontier = nxt
    return group


def act(sigma, e):
    # x_i -> x_{sigma(i)} sends exponent e_i at i to position sigma(i)
    out = [0] * len(e)
    for i, k in enumerate(e):
        out[sigma[i]] += k
    return tuple(out)


def orbit_count(gens, n, d):
    """dim of permutation invariants of degree d = number of monomial orbits."""
    group = closure(gens, n)
    seen, orbits = set(), 0
    for e in exponent_vectors(n, d):
        if e in seen:
            continue
        orbits += 1
        seen |= {act(g, e) for g in group}
    return orbits


def product_dim(moduli, weights, gens, d):
    n = len(weights)
    group = closure(gens, n)
    seen, orbits = set(), 0
    for e in exponent_vectors(n, d):
        if e in seen:
            continue
        seen |= {act(g, e) for g in group}
        if all(sum(weights[i][j] * e[i] for i in range(n)) % m == 0
               for j, m in enumerate(moduli)):
            orbits += 1
    return orbits


def alpha_dim(matrix, p, q, d):
    """dim of alpha_q invariants of degree d via sympy expansion and rank over GF(p).

    ``matrix[j][i]`` is the t-coefficient tuple of A_ji; x_i -> sum_j A_ji x_j.
    """
    n = len(matrix)
    xs = symbols(f"z0:{n}")
    t = symbols("t")
    images = [sum(sum(c * t**m for m, c in enumerate(matrix[j][i])) * xs[j] for j in range(n))
              for i in range(n)]
    monos = exponent_vectors(n, d)
    if not monos:
        return 0
    columns = []
    for e in monos:
        img = 1
        for i, k in enumerate(e):
            img *= images[i] ** k
        P = Poly(img, t, *xs, modulus=p)
        col = {}
        for exps, c in P.terms():
            if 1 <= exps[0] < q and c % p:
                col[exps] = c % p
        columns.append(col)
    keys = sorted({k for col in columns for k in col})
    if not keys:
        return len(monos)
    rows = [[col.get(k, 0) for col in columns] for k in keys]
    dm = DomainMatrix([[GF(p)(v) for v in r] for r in rows], (len(rows), len(monos)), GF(p))
    return len(monos) - dm.rank()


def rank_by_minors(M):
    """Rank over Q from the largest nonzero minor (Leibniz determinants)."""
    from fractions import Fraction

    def det(A):
        k = len(A)
        total = Fraction(0)
        for perm in itertools.permutations(range(k)):
            sign = 1
            for a in range(k):
                for b in range(a + 1, k):
                    if perm[a] > perm[b]:
                        sign = -sign
            prod = Fraction(1)
            for r in range(k):
                prod *= A[r][perm[r]]
            total += sign * prod
        return total

    m = len(M)
    n = len(M[0]) if M else 0
    for k in range(min(m, n), 0, -1):
        for rs in itertools.combinations(range(m), k):
            for cs in itertools.combinations(range(n), k):
                if det([[M[r][c] for c in cs] for r in rs]) != 0:
                    return k
    return 0


def sympy_rank_q(M):
    if not M:
        return 0
    return DomainMatrix([[QQ(v) for v in r] for r in M], (len(M), len(M[0])), QQ).rank()


def random_diag(rng, max_s=2, max_m=8, max_n=4, max_order=None):
    while True:
        s = rng.randint(1, max_s)
        moduli = [rng.randint(1, max_m) for _ in range(s)]
        order = 1
        for m in moduli:
            order *= m
        if max_order is None or order <= max_order:
            break
    n = rng.randint(1, max_n)
    weights = [[rng.randrange(m) for m in moduli] for _ in range(n)]
    return moduli, weights


def random_product(rng, max_order=12):
    """A commuting diagonal x permutation pair: weights are constant on orbits."""
    while True:
        n = rng.randint(2, 4)
        pts = list(range(n))
        rng.shuffle(pts)
        # one generator made of disjoint cycles
        gens = []
        sigma = list(range(n))
        k = rng.choice([2, n]) if n > 2 else 2
        cyc = pts[:k]
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            sigma[a] = b
        gens.append(tuple(sigma))
        group = closure(gens, n)
        moduli = [rng.randint(1, 6)]
        orbit_w = {}
        weights = []
        for i in range(n):
            key = min(g[i] for g in group)
            if key not in orbit_w:
                orbit_w[key] = [rng.randrange(m) for m in moduli]
            weights.append(orbit_w[key])
        if moduli[0] * len(group) <= max_order:
            return moduli, weights, gens, len(group) * moduli[0]


def geometric(n, D):
    return [1 if k % n == 0 else 0 for k in range(D + 1)]


def full_ring(n, D):
    return [comb(n + d - 1, d) for d in range(D + 1)]

