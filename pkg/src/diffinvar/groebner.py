"""Buchberger's algorithm over the rationals and the ideal oracles built on it.

Derivative variables are treated as independent indeterminates, so jet-ring
computations with first derivatives work unchanged.
"""
from __future__ import annotations

import heapq
import time
from dataclasses import dataclass
from fractions import Fraction
from operator import add
from typing import Iterable, Sequence

from .errors import ResourceExceeded
from .poly import DiffPoly

GREVLEX = "grevlex"
ELIM = "elim"

EXACT = "exact"
RADICAL = "radical"


@dataclass(frozen=True)
class MonomialOrder:
    """Graded reverse lex, or two blocks (lex over blocks, grevlex inside).

    ``block`` counts the leading variables forming the eliminated block.
    """

    flavor: str = GREVLEX
    block: int = 0

    def keyfunc(self):
        if self.flavor == GREVLEX:
            def key(e):
                return (sum(e),) + tuple(-x for x in reversed(e))
            return key
        k = self.block

        def key(e):
            a, b = e[:k], e[k:]
            return (sum(a),) + tuple(-x for x in reversed(a)) + (sum(b),) + tuple(-x for x in reversed(b))
        return key


GRevLex = MonomialOrder(GREVLEX)


@dataclass
class Budget:
    max_basis: int = 5000
    max_degree: int = 200
    max_terms: int = 200_000
    max_seconds: float | None = None


DEFAULT_BUDGET = Budget()


class _Poly:
    """Internal polynomial: exponent tuples to Fractions, with cached leading term."""

    __slots__ = ("terms", "lm", "lc")

    def __init__(self, terms: dict, key):
        self.terms = terms
        self.lm = max(terms, key=key)
        self.lc = terms[self.lm]


def _divides(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _sub(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def _normal_form(f: dict, basis: list, key) -> dict:
    """Fully reduce f modulo basis (a list of monic _Poly)."""
    f = dict(f)
    heap = [tuple(-x for x in key(m)) + (m,) for m in f]
    heapq.heapify(heap)
    rem = {}
    while heap:
        m = heapq.heappop(heap)[-1]
        c = f.get(m)
        if c is None:
            continue
        for g in basis:
            if _divides(g.lm, m):
                q = _sub(m, g.lm)
                coef = c / g.lc
                for mg, cg in g.terms.items():
                    mm = tuple(map(add, q, mg))
                    old = f.get(mm)
                    if old is None:
                        f[mm] = -coef * cg
                        heapq.heappush(heap, tuple(-x for x in key(mm)) + (mm,))
                    else:
                        new = old - coef * cg
                        if new:
                            f[mm] = new
                        else:
                            del f[mm]
                break
        else:
            rem[m] = c
            del f[m]
    return rem


def _monic(terms: dict, key) -> _Poly:
    p = _Poly(terms, key)
    if p.lc != 1:
        inv = 1 / p.lc
        p.terms = {m: c * inv for m, c in terms.items()}
        p.lc = Fraction(1)
    return p


def _spoly(f: _Poly, g: _Poly) -> dict:
    l = _lcm(f.lm, g.lm)
    a, b = _sub(l, f.lm), _sub(l, g.lm)
    out: dict = {}
    for m, c in f.terms.items():
        out[tuple(map(add, a, m))] = c
    for m, c in g.terms.items():
        mm = tuple(map(add, b, m))
        v = out.get(mm, 0) - c
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return out


def buchberger(polys: Iterable[dict], order: MonomialOrder = GRevLex, budget: Budget | None = None) -> list:
    """Reduced Gröbner basis of internal polynomials (dicts of exponent tuples)."""
    budget = budget or DEFAULT_BUDGET
    key = order.keyfunc()
    start = time.monotonic()
    basis: list = []
    pairs: list = []
    pending: set = set()
    stats = {"pairs_processed": 0, "zero_reductions": 0}

    def check(p: _Poly):
        deg = max(sum(m) for m in p.terms)
        if len(basis) >= budget.max_basis:
            raise ResourceExceeded("basis size cap exceeded", {"basis": len(basis), **stats})
        if deg > budget.max_degree:
            raise ResourceExceeded("degree cap exceeded", {"degree": deg, "basis": len(basis), **stats})
        if len(p.terms) > budget.max_terms:
            raise ResourceExceeded("term cap exceeded", {"terms": len(p.terms), "basis": len(basis), **stats})
        if budget.max_seconds is not None and time.monotonic() - start > budget.max_seconds:
            raise ResourceExceeded("time cap exceeded", {"basis": len(basis), **stats})

    def insert(h: dict):
        p = _monic(h, key)
        check(p)
        j = len(basis)
        basis.append(p)
        if all(x == 0 for x in p.lm):
            return True
        for i in range(j):
            if basis[i] is None:
                continue
            l = _lcm(basis[i].lm, p.lm)
            heapq.heappush(pairs, (key(l), i, j, l))
            pending.add((i, j))
        return False

    seeds = [dict(p) for p in polys if p]
    seeds.sort(key=lambda t: key(max(t, key=key)))
    for h in seeds:
        h = _normal_form(h, [b for b in basis if b is not None], key)
        if h and insert(h):
            return [_unit_like(h)]

    while pairs:
        _, i, j, l = heapq.heappop(pairs)
        pending.discard((i, j))
        f, g = basis[i], basis[j]
        if f is None or g is None:
            continue
        stats["pairs_processed"] += 1
        # product criterion
        if all(x == 0 or y == 0 for x, y in zip(f.lm, g.lm)):
            continue
        # chain criterion
        skip = False
        for k, h in enumerate(basis):
            if k in (i, j) or h is None:
                continue
            if _divides(h.lm, l) and (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                skip = True
                break
        if skip:
            continue
        s = _spoly(f, g)
        if not s:
            continue
        h = _normal_form(s, [b for b in basis if b is not None], key)
        if not h:
            stats["zero_reductions"] += 1
            continue
        if insert(h):
            return [_unit_like(h)]
        if budget.max_seconds is not None and time.monotonic() - start > budget.max_seconds:
            raise ResourceExceeded("time cap exceeded", {"basis": len(basis), **stats})

    return _reduce_basis([b for b in basis if b is not None], key)


def _unit_like(h: dict) -> dict:
    return {tuple(0 for _ in next(iter(h))): Fraction(1)}


def _reduce_basis(basis: list, key) -> list:
    minimal = []
    for i, p in enumerate(basis):
        redundant = False
        for j, q in enumerate(basis):
            if i == j:
                continue
            if _divides(q.lm, p.lm) and (q.lm != p.lm or j < i):
                redundant = True
                break
        if not redundant:
            minimal.append(p)
    out = []
    for i, p in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        rest = {m: c for m, c in p.terms.items() if m != p.lm}
        red = _normal_form(rest, others, key) if rest else {}
        red[p.lm] = Fraction(1)
        out.append(red)
    out.sort(key=lambda t: key(max(t, key=key)))
    return out


# ---------------------------------------------------------------------------
# DiffPoly boundary


class _Space:
    """Indexing of DerivVars (plus optional fresh variables) into exponent slots."""

    def __init__(self, polys: Sequence[DiffPoly], fresh_front: int = 0):
        vs = set()
        for p in polys:
            vs |= p.derivvars()
        self.vars = sorted(vs)
        self.fresh = fresh_front
        self.index = {v: i + fresh_front for i, v in enumerate(self.vars)}
        self.width = fresh_front + len(self.vars)

    def to_internal(self, p: DiffPoly) -> dict:
        out = {}
        for m, c in p.terms.items():
            e = [0] * self.width
            for v, k in m:
                e[self.index[v]] = k
            out[tuple(e)] = c
        return out

    def from_internal(self, d: dict) -> DiffPoly:
        terms = {}
        for e, c in d.items():
            if any(e[: self.fresh]):
                raise ValueError("fresh variable survived elimination")
            terms[tuple((self.vars[i - self.fresh], k) for i, k in enumerate(e) if k and i >= self.fresh)] = c
        return DiffPoly(terms)

    def fresh_var(self, i: int = 0) -> dict:
        e = [0] * self.width
        e[i] = 1
        return {tuple(e): Fraction(1)}

    def one(self) -> dict:
        return {tuple([0] * self.width): Fraction(1)}


def _mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(map(add, m1, m2))
            out[m] = out.get(m, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def _sub_poly(a: dict, b: dict) -> dict:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) - c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _clean(gens: Iterable[DiffPoly]) -> list:
    return [g for g in gens if not g.is_zero()]


def groebner_basis(gens: Iterable[DiffPoly], order: MonomialOrder = GRevLex, budget: Budget | None = None) -> list:
    """Reduced Gröbner basis (monic, sorted by leading monomial)."""
    gens = _clean(gens)
    if not gens:
        return []
    if order.flavor == ELIM:
        raise ValueError("elimination orders need explicit variable blocks; use saturation/eliminate")
    sp = _Space(gens)
    if sp.width == 0:
        return [DiffPoly.constant(1)]
    basis = buchberger([sp.to_internal(g) for g in gens], order, budget)
    return [sp.from_internal(b) for b in basis]


def normal_form(p: DiffPoly, basis: Sequence[DiffPoly], order: MonomialOrder = GRevLex) -> DiffPoly:
    """Normal form of p modulo a Gröbner basis computed under the same order."""
    sp = _Space(list(basis) + [p])
    key = order.keyfunc()
    polys = [_monic(sp.to_internal(b), key) for b in basis if not b.is_zero()]
    if p.is_zero():
        return p
    return sp.from_internal(_normal_form(sp.to_internal(p), polys, key))


def is_unit_basis(basis: Sequence[DiffPoly]) -> bool:
    return len(basis) == 1 and basis[0].is_constant() and not basis[0].is_zero()


def member(p: DiffPoly, gens: Iterable[DiffPoly], order: MonomialOrder = GRevLex, budget: Budget | None = None) -> bool:
    gens = _clean(gens)
    if p.is_zero():
        return True
    if not gens:
        return False
    sp = _Space(gens + [p])
    key = order.keyfunc()
    basis = buchberger([sp.to_internal(g) for g in gens], order, budget)
    polys = [_monic(b, key) for b in basis]
    return not _normal_form(sp.to_internal(p), polys, key)


def is_consistent(gens: Iterable[DiffPoly], budget: Budget | None = None) -> bool:
    """False iff 1 lies in the ideal."""
    return not is_unit_basis(groebner_basis(gens, GRevLex, budget))


def radical_member(p: DiffPoly, gens: Iterable[DiffPoly], budget: Budget | None = None) -> bool:
    """Rabinowitsch test: 1 in (gens, 1 - t p)."""
    gens = _clean(gens)
    if p.is_zero():
        return True
    sp = _Space(gens + [p], fresh_front=1)
    polys = [sp.to_internal(g) for g in gens]
    polys.append(_sub_poly(sp.one(), _mul(sp.fresh_var(0), sp.to_internal(p))))
    basis = buchberger(polys, GRevLex, budget)
    return len(basis) == 1 and all(x == 0 for x in next(iter(basis[0])))


def eliminate_fresh(polys: list, sp: _Space, budget: Budget | None) -> list:
    basis = buchberger(polys, MonomialOrder(ELIM, sp.fresh), budget)
    out = []
    for b in basis:
        if not any(any(m[: sp.fresh]) for m in b):
            out.append(sp.from_internal(b))
    return out


def saturation(gens: Iterable[DiffPoly], s: DiffPoly, budget: Budget | None = None) -> list:
    """Generators (a reduced Gröbner basis) of (gens):s^infinity."""
    gens = _clean(gens)
    if s.is_zero():
        raise ValueError("cannot saturate by zero")
    if not gens:
        return []
    if s.is_constant():
        return groebner_basis(gens, GRevLex, budget)
    sp = _Space(gens + [s], fresh_front=1)
    polys = [sp.to_internal(g) for g in gens]
    polys.append(_sub_poly(sp.one(), _mul(sp.fresh_var(0), sp.to_internal(s))))
    return _regrevlex(eliminate_fresh(polys, sp, budget), budget)


def intersect(ideals: Sequence[Sequence[DiffPoly]], budget: Budget | None = None) -> list:
    """Generators of the intersection; the empty intersection is the unit ideal."""
    ideals = [_clean(I) for I in ideals]
    if not ideals:
        return [DiffPoly.constant(1)]
    acc = ideals[0]
    for J in ideals[1:]:
        acc = _intersect_two(acc, J, budget)
    return _regrevlex(acc, budget)


def _intersect_two(I: list, J: list, budget: Budget | None) -> list:
    if not I or not J:
        return []
    if is_unit_basis(I):
        return list(J)
    if is_unit_basis(J):
        return list(I)
    sp = _Space(I + J, fresh_front=1)
    t = sp.fresh_var(0)
    one_minus_t = _sub_poly(sp.one(), t)
    polys = [_mul(t, sp.to_internal(g)) for g in I] + [_mul(one_minus_t, sp.to_internal(g)) for g in J]
    return eliminate_fresh(polys, sp, budget)


def _regrevlex(gens: list, budget: Budget | None) -> list:
    return groebner_basis(gens, GRevLex, budget) if gens else []


def ideal_equal(g1: Iterable[DiffPoly], g2: Iterable[DiffPoly], mode: str = EXACT, budget: Budget | None = None) -> bool:
    g1, g2 = _clean(g1), _clean(g2)
    if mode == EXACT:
        return all(member(p, g2, GRevLex, budget) for p in g1) and all(member(p, g1, GRevLex, budget) for p in g2)
    if mode == RADICAL:
        return all(radical_member(p, g2, budget) for p in g1) and all(radical_member(p, g1, budget) for p in g2)
    raise ValueError(f"unknown mode {mode!r}")


def radical_contains(big: Iterable[DiffPoly], small: Iterable[DiffPoly], budget: Budget | None = None) -> bool:
    """True iff every generator of ``small`` lies in the radical of ``big``."""
    big = _clean(big)
    return all(radical_member(p, big, budget) for p in _clean(small))
