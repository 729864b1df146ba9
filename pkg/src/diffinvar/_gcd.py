"""Multivariate GCD over the rationals, delegated to sympy's sparse polynomial rings."""
from __future__ import annotations

from fractions import Fraction

from sympy import QQ, symbols
from sympy.polys.orderings import grevlex
from sympy.polys.rings import PolyRing

from .poly import DiffPoly


def _ring_for(vs: list):
    syms = symbols([f"v{v.var}_{v.order}" for v in vs]) if vs else symbols("dummy_0:1")
    if not isinstance(syms, (list, tuple)):
        syms = (syms,)
    return PolyRing(syms, QQ, grevlex)


def _to_sympy(p: DiffPoly, vs: list, ring):
    idx = {v: i for i, v in enumerate(vs)}
    width = max(len(vs), 1)
    d = {}
    for m, c in p.terms.items():
        e = [0] * width
        for v, k in m:
            e[idx[v]] = k
        d[tuple(e)] = QQ(c.numerator, c.denominator)
    return ring.from_dict(d)


def _from_sympy(f, vs: list) -> DiffPoly:
    terms = {}
    for e, c in f.terms():
        m = tuple((vs[i], k) for i, k in enumerate(e) if k and i < len(vs))
        terms[tuple(sorted(m))] = Fraction(int(c.numerator), int(c.denominator))
    return DiffPoly(terms)


def poly_gcd(p: DiffPoly, q: DiffPoly) -> DiffPoly:
    """A greatest common divisor of p and q (defined up to a rational unit)."""
    if p.is_zero():
        return q
    if q.is_zero():
        return p
    if p.is_constant() or q.is_constant():
        return DiffPoly.constant(1)
    vs = sorted(p.derivvars() | q.derivvars())
    ring = _ring_for(vs)
    g = _to_sympy(p, vs, ring).gcd(_to_sympy(q, vs, ring))
    return _from_sympy(g, vs)
