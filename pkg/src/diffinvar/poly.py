"""Sparse differential polynomials over the rationals.

A polynomial is a map from monomials to nonzero Fractions.  A monomial is a
tuple of ``(DerivVar, exponent)`` pairs sorted by DerivVar, so the empty
tuple is the constant monomial.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple

from .errors import MissingAssignment, ZeroPolynomial

Rational = Fraction


class DerivVar(NamedTuple):
    """The ``order``-th derivative of base variable number ``var``."""

    var: int
    order: int = 0

    def prime(self, k: int = 1) -> "DerivVar":
        return DerivVar(self.var, self.order + k)


Monomial = tuple  # tuple[tuple[DerivVar, int], ...]

ONE_MONO: Monomial = ()


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_key(m: Monomial):
    """Sort key of the canonical graded-lex term order (larger is bigger)."""
    return (mono_degree(m), tuple(((-v.var, -v.order), e) for v, e in m))


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    return Fraction(c)


class DiffPoly:
    """Immutable exact differential polynomial."""

    __slots__ = ("_terms", "_hash", "_sorted", "_cache")

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = _as_fraction(c)
                if c:
                    clean[m] = c
        self._terms = clean
        self._hash = None
        self._sorted = None
        self._cache = None

    @classmethod
    def _raw(cls, terms: dict) -> "DiffPoly":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        p._sorted = None
        p._cache = None
        return p

    @classmethod
    def constant(cls, c) -> "DiffPoly":
        c = _as_fraction(c)
        return cls._raw({ONE_MONO: c} if c else {})

    @classmethod
    def var(cls, i: int, order: int = 0) -> "DiffPoly":
        return cls._raw({((DerivVar(i, order), 1),): Fraction(1)})

    @classmethod
    def of(cls, v: DerivVar) -> "DiffPoly":
        return cls._raw({((v, 1),): Fraction(1)})

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> dict:
        return self._terms

    def sorted_terms(self) -> list:
        """Terms in descending canonical order."""
        if self._sorted is None:
            self._sorted = sorted(self._terms.items(), key=lambda t: mono_key(t[0]), reverse=True)
        return self._sorted

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and ONE_MONO in self._terms)

    def constant_value(self) -> Fraction:
        return self._terms.get(ONE_MONO, Fraction(0))

    def derivvars(self) -> set:
        out = set()
        for m in self._terms:
            for v, _ in m:
                out.add(v)
        return out

    def base_vars(self) -> set:
        return {v.var for v in self.derivvars()}

    def order(self) -> int:
        return max((v.order for v in self.derivvars()), default=0)

    def is_nondifferential(self) -> bool:
        return self.order() == 0

    def total_degree(self) -> int:
        return max((mono_degree(m) for m in self._terms), default=0)

    def degree(self, v: DerivVar) -> int:
        best = 0
        for m in self._terms:
            for w, e in m:
                if w == v and e > best:
                    best = e
        return best

    def coefficients(self, v: DerivVar) -> dict:
        """Map k -> coefficient of v^k, each a DiffPoly free of v."""
        parts: dict = {}
        for m, c in self._terms.items():
            k = 0
            rest = []
            for w, e in m:
                if w == v:
                    k = e
                else:
                    rest.append((w, e))
            parts.setdefault(k, {})[tuple(rest)] = c
        return {k: DiffPoly._raw(t) for k, t in parts.items()}

    def coeff(self, v: DerivVar, k: int) -> "DiffPoly":
        return self.coefficients(v).get(k, ZERO)

    def leading_coefficient(self) -> Fraction:
        return self.sorted_terms()[0][1] if self._terms else Fraction(0)

    # -- normalisation ----------------------------------------------------
    def _cached(self, name, fn):
        if self._cache is None:
            self._cache = {}
        try:
            return self._cache[name]
        except KeyError:
            v = self._cache[name] = fn()
            return v

    def monic(self) -> "DiffPoly":
        """Scalar multiple with leading canonical coefficient 1."""
        return self._cached("monic", self._monic)

    def _monic(self) -> "DiffPoly":
        if not self._terms:
            return self
        lc = self.leading_coefficient()
        if lc == 1:
            return self
        return self.scale(1 / lc)

    def primitive(self) -> "DiffPoly":
        """Scalar multiple with coprime integer coefficients and positive leading coefficient."""
        return self._cached("primitive", self._primitive)

    def _primitive(self) -> "DiffPoly":
        if not self._terms:
            return self
        from math import gcd, lcm

        den = 1
        for c in self._terms.values():
            den = lcm(den, c.denominator)
        num = 0
        for c in self._terms.values():
            num = gcd(num, (c * den).numerator)
        factor = Fraction(den, num)
        if self.leading_coefficient() < 0:
            factor = -factor
        if factor == 1:
            return self
        return self.scale(factor)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other) -> "DiffPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s += c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return DiffPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "DiffPoly":
        return DiffPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "DiffPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "DiffPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "DiffPoly":
        c = _as_fraction(c)
        if not c:
            return ZERO
        return DiffPoly._raw({m: v * c for m, v in self._terms.items()})

    def __mul__(self, other) -> "DiffPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, DiffPoly):
            return NotImplemented
        if not self._terms or not other._terms:
            return ZERO
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = mono_mul(m1, m2)
                s = out.get(m)
                out[m] = c1 * c2 if s is None else s + c1 * c2
        return DiffPoly._raw({m: c for m, c in out.items() if c})

    def __rmul__(self, other) -> "DiffPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "DiffPoly":
        if k < 0:
            raise ValueError("negative power")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = DiffPoly.constant(other)
        if not isinstance(other, DiffPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def exact_div(self, other: "DiffPoly") -> "DiffPoly":
        """Quotient self/other; raises ValueError when the division is not exact."""
        if not other._terms:
            raise ZeroDivisionError("division by zero polynomial")
        lm, lc = other.sorted_terms()[0]
        lmd = dict(lm)
        rem = dict(self._terms)
        quot: dict = {}
        while rem:
            m = max(rem, key=mono_key)
            c = rem[m]
            md = dict(m)
            qm = []
            for v, e in lmd.items():
                if md.get(v, 0) < e:
                    raise ValueError("inexact polynomial division")
            for v, e in md.items():
                r = e - lmd.get(v, 0)
                if r:
                    qm.append((v, r))
            qm = tuple(sorted(qm))
            qc = c / lc
            quot[qm] = qc
            for m2, c2 in other._terms.items():
                mm = mono_mul(qm, m2)
                s = rem.get(mm, Fraction(0)) - qc * c2
                if s:
                    rem[mm] = s
                else:
                    rem.pop(mm, None)
        return DiffPoly._raw(quot)

    # -- calculus ---------------------------------------------------------
    def diff(self) -> "DiffPoly":
        return differentiate(self)

    def partial(self, v: DerivVar) -> "DiffPoly":
        return partial(self, v)

    def subs(self, mapping: Mapping[DerivVar, "DiffPoly"]) -> "DiffPoly":
        """Simultaneously replace DerivVars by polynomials."""
        if not mapping:
            return self
        cache: dict = {}
        out = ZERO
        acc: dict = {}
        for m, c in self._terms.items():
            kept = []
            factor = None
            for v, e in m:
                if v in mapping:
                    key = (v, e)
                    pw = cache.get(key)
                    if pw is None:
                        pw = mapping[v] ** e
                        cache[key] = pw
                    factor = pw if factor is None else factor * pw
                else:
                    kept.append((v, e))
            if factor is None:
                acc[m] = acc.get(m, Fraction(0)) + c
            else:
                out = out + factor * DiffPoly._raw({tuple(kept): c})
        return out + DiffPoly(acc)

    # -- rendering --------------------------------------------------------
    def sort_key(self):
        return self._cached("sort_key", self._sort_key)

    def _sort_key(self):
        return tuple((mono_key(m), c) for m, c in self.sorted_terms())

    def format(self, names: Iterable[str] | None = None, primes_only: bool = False) -> str:
        return format_poly(self, list(names) if names is not None else None, primes_only)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"DiffPoly({self.format()!r})"


def _coerce(x):
    if isinstance(x, DiffPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return DiffPoly.constant(x)
    return NotImplemented


ZERO = DiffPoly._raw({})
ONE = DiffPoly._raw({ONE_MONO: Fraction(1)})


def differentiate(p: DiffPoly) -> DiffPoly:
    """Formal total derivative: x_i^(k) maps to x_i^(k+1)."""
    out: dict = {}
    for m, c in p.terms.items():
        for idx, (v, e) in enumerate(m):
            d = dict(m)
            if e == 1:
                del d[v]
            else:
                d[v] = e - 1
            w = v.prime()
            d[w] = d.get(w, 0) + 1
            nm = tuple(sorted(d.items()))
            out[nm] = out.get(nm, Fraction(0)) + c * e
    return DiffPoly(out)


def partial(p: DiffPoly, v: DerivVar) -> DiffPoly:
    """Formal partial derivative in the single indeterminate v."""
    out: dict = {}
    for m, c in p.terms.items():
        for w, e in m:
            if w == v:
                nm = tuple((u, f if u != v else f - 1) for u, f in m if u != v or f > 1)
                out[nm] = out.get(nm, Fraction(0)) + c * e
                break
    return DiffPoly(out)


def measures(p: DiffPoly) -> tuple:
    """(total degree, order, nondifferential)."""
    if p.is_zero():
        raise ZeroPolynomial("measures of the zero polynomial")
    order = p.order()
    return (p.total_degree(), order, order == 0)


def evaluate(p: DiffPoly, point: Mapping) -> Fraction:
    """Exact value at ``point`` (keys DerivVar, or int for base variables)."""
    total = Fraction(0)
    for m, c in p.terms.items():
        val = c
        for v, e in m:
            if v in point:
                x = point[v]
            elif v.order == 0 and v.var in point:
                x = point[v.var]
            else:
                raise MissingAssignment(f"no value for {v}")
            val *= _as_fraction(x) ** e
        total += val
    return total


def default_names(n: int) -> list:
    return [f"x{i}" for i in range(n)]


def format_var(v: DerivVar, names: list | None, primes_only: bool = False) -> str:
    base = names[v.var] if names is not None and v.var < len(names) else f"x{v.var}"
    if v.order == 0:
        return base
    if v.order < 3 or primes_only:
        return base + "'" * v.order
    return f"{base}^({v.order})"


def _format_coeff(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_poly(p: DiffPoly, names: list | None = None, primes_only: bool = False) -> str:
    if p.is_zero():
        return "0"
    pieces = []
    for m, c in p.sorted_terms():
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        factors = []
        for v, e in sorted(m, key=lambda t: (t[0].var, t[0].order)):
            s = format_var(v, names, primes_only)
            factors.append(s if e == 1 else f"{s}^{e}")
        if not factors:
            body = _format_coeff(a)
        elif a == 1:
            body = "*".join(factors)
        else:
            body = _format_coeff(a) + "*" + "*".join(factors)
        pieces.append((sign, body))
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out
