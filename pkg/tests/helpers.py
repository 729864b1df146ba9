"""Seeded random instances shared by the property and acceptance tests."""
import random
from fractions import Fraction

from diffinvar import DerivVar, DiffPoly, VectorField
from diffinvar.poly import ONE

LORENZ_NAMES = ["x", "y", "z"]


def lorenz_field(ring):
    return VectorField([ring("y - x"), ring("2*x - y - x*z"), ring("x*y - z")])


def random_poly(rng: random.Random, n: int, deg: int, order: int = 0, terms: int = 3, coeff: int = 3) -> DiffPoly:
    """Sum of up to ``terms`` monomials of total degree <= deg in derivatives of order <= order."""
    vs = [DerivVar(i, k) for i in range(n) for k in range(order + 1)]
    acc = {}
    for _ in range(rng.randint(1, terms)):
        d = rng.choice([0] + [deg] * 2 + list(range(1, deg + 1)))
        mono = {}
        for _ in range(d):
            v = rng.choice(vs)
            mono[v] = mono.get(v, 0) + 1
        key = tuple(sorted(mono.items()))
        c = Fraction(rng.choice([c for c in range(-coeff, coeff + 1) if c]))
        acc[key] = acc.get(key, 0) + c
    return DiffPoly(acc)


def random_nonconstant(rng, n, deg, order=0, terms=3):
    while True:
        p = random_poly(rng, n, max(deg, 1), order, terms)
        if not p.is_constant():
            return p


def random_field(rng, n, deg=2):
    return VectorField([random_poly(rng, n, deg) for _ in range(n)])


def random_system(rng, n_max=3, d_max=2, a_max=3, s_max=1):
    """(A, S, n, d) with n <= n_max variables and input degree d <= d_max."""
    n = rng.randint(1, n_max)
    d = rng.randint(1, d_max)
    A = [random_nonconstant(rng, n, d, terms=4) for _ in range(rng.randint(1, a_max))]
    S = [random_nonconstant(rng, n, 1, terms=2) for _ in range(rng.randint(0, s_max))]
    d = max(p.total_degree() for p in A + S)
    n = 1 + max(v for p in A + S for v in p.base_vars())
    return A, S, n, d


def product(ps):
    out = ONE
    for p in ps:
        out = out * p
    return out
