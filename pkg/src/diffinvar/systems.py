"""Equation/inequation systems, regularity classification and the ODE witness search."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

from ._gcd import poly_gcd
from .groebner import EXACT, Budget, ideal_equal, saturation
from .lie import VectorField
from .poly import ONE, DerivVar, DiffPoly
from .pseudodiv import PdivTrace, combine_traces, reduce_by_set, reduced_flags, replay
from .ranking import Ranking, initial, separant

VERIFIED = "verified"
UNVERIFIED = "unverified"
FAILED = "failed"


def canonical(p: DiffPoly) -> DiffPoly:
    """Scalar-normalised representative (coprime integers, positive leading coefficient)."""
    return p.primitive()


def same_up_to_scalar(p: DiffPoly, q: DiffPoly) -> bool:
    return p.monic() == q.monic()


def in_set(s: DiffPoly, S: Iterable[DiffPoly]) -> bool:
    """Membership up to nonzero scalars; nonzero constants always count as present."""
    if s.is_constant():
        return not s.is_zero()
    m = s.monic()
    return any(t.monic() == m for t in S)


def sort_polys(ps: Iterable[DiffPoly]) -> tuple:
    return tuple(sorted(set(ps), key=DiffPoly.sort_key))


@dataclass(frozen=True)
class DiffSystem:
    """A pair (A = 0, S != 0), both stored in canonical order."""

    equations: tuple
    inequations: tuple

    @classmethod
    def make(cls, A: Iterable[DiffPoly], S: Iterable[DiffPoly] = ()) -> "DiffSystem":
        A = [p for p in A if not p.is_zero()]
        S = list(S)
        if any(s.is_zero() for s in S):
            raise ValueError("0 cannot be an inequation")
        return cls(sort_polys(A), sort_polys(S))

    def nondifferential(self) -> list:
        return [p for p in self.equations if p.is_nondifferential()]

    def differential(self) -> list:
        return [p for p in self.equations if not p.is_nondifferential()]

    def sort_key(self):
        return (tuple(p.sort_key() for p in self.equations), tuple(p.sort_key() for p in self.inequations))

    def format(self, names=None) -> str:
        eqs = ", ".join(p.format(names) for p in self.equations)
        ineqs = ", ".join(p.format(names) for p in self.inequations)
        return f"({{{eqs}}}, {{{ineqs}}})"


@dataclass(frozen=True)
class RegularityStatus:
    regular_algebraic: bool
    regular_differential: bool
    explicit_nondiff_ineqs: bool
    regular_set_verified: str = UNVERIFIED


def is_explicit_ode(p: DiffPoly, rk: Ranking | None = None) -> DerivVar | None:
    """The base variable x if p is a scalar multiple of x' - g(x), else None."""
    ders = [v for v in p.derivvars() if v.order > 0]
    if len(ders) != 1 or ders[0].order != 1 or p.degree(ders[0]) != 1:
        return None
    v = ders[0]
    c = p.coeff(v, 1)
    if not c.is_constant():
        return None
    return v


def is_triangular(A: Iterable[DiffPoly], rk: Ranking) -> bool:
    leaders = []
    for p in A:
        if p.is_constant():
            return False
        leaders.append(rk.leader(p))
    return len(leaders) == len(set(leaders))


def separants_present(A: Iterable[DiffPoly], S: Iterable[DiffPoly], rk: Ranking) -> bool:
    S = list(S)
    return all(in_set(separant(p, rk), S) for p in A)


def partially_reduced_set(A: list, rk: Ranking) -> bool:
    for i, p in enumerate(A):
        for j, q in enumerate(A):
            if i != j and not reduced_flags(p, q, rk)[0]:
                return False
    return True


def classify(sys: DiffSystem, rk: Ranking, verify_regular_set: bool = False, budget: Budget | None = None) -> RegularityStatus:
    A, S = list(sys.equations), list(sys.inequations)
    reg_alg = is_triangular(A, rk) and separants_present(A, S, rk)
    reg_diff = (
        reg_alg
        and partially_reduced_set(A, rk)
        and all(reduced_flags(s, q, rk)[0] for s in S for q in A)
    )
    explicit = all(s.is_nondifferential() for s in S) and all(
        p.is_nondifferential() or is_explicit_ode(p) is not None for p in A
    )
    status = UNVERIFIED
    if verify_regular_set and reg_alg:
        status = VERIFIED if regular_set_check(A, rk, budget) else FAILED
    return RegularityStatus(reg_alg, reg_diff, explicit, status)


def regular_set_check(A: list, rk: Ranking, budget: Budget | None = None) -> bool:
    """Each initial is a non-zerodivisor modulo the saturation of the lower elements.

    Uses: f is regular modulo I iff I : f^infinity = I.
    """
    chain = sorted(A, key=lambda p: rk.key(rk.leader(p)))
    for j in range(1, len(chain)):
        lower = chain[:j]
        prod = ONE
        for p in lower:
            prod = prod * initial(p, rk)
        I = saturation(lower, prod, budget)
        i_j = initial(chain[j], rk)
        if not ideal_equal(saturation(I, i_j, budget), I, EXACT, budget):
            return False
    return True


def restrict(sys: DiffSystem) -> DiffSystem:
    return DiffSystem.make(
        [p for p in sys.equations if p.is_nondifferential()],
        [s for s in sys.inequations if s.is_nondifferential()],
    )


# ---------------------------------------------------------------------------
# ODE witness search


@dataclass(frozen=True)
class InEquations:
    var: int


@dataclass(frozen=True)
class Witnessed:
    """s * (x' - f) = sum(m * d^(k)) over ``divisors`` (nondifferential part and lower ODEs)."""

    var: int
    s: DiffPoly
    multiplier: DiffPoly  # the S-product the search started from
    divisors: tuple
    trace: PdivTrace = field(compare=False)

    def replays(self, F: VectorField) -> bool:
        return replay(self.multiplier * F.ode(self.var), list(self.divisors), self.trace).is_zero() and (
            self.trace.premultiplier() * self.multiplier == self.s
        )


@dataclass(frozen=True)
class Unknown:
    var: int
    reason: str


@dataclass(frozen=True)
class AssumptionStatus:
    entries: tuple

    @property
    def all_established(self) -> bool:
        return not any(isinstance(e, Unknown) for e in self.entries)

    def unknown_vars(self) -> list:
        return [e.var for e in self.entries if isinstance(e, Unknown)]


def s_products(S: list, max_factors: int = 3, max_power: int = 2):
    """The empty product first, then products of up to ``max_factors`` members of S."""
    S = [s for s in S if not s.is_constant()]
    yield ONE
    exps = []
    for r in range(1, min(max_factors, len(S)) + 1):
        for idx in itertools.combinations(range(len(S)), r):
            for pw in itertools.product(range(1, max_power + 1), repeat=r):
                exps.append((sum(pw), idx, pw))
    exps.sort()
    for _, idx, pw in exps:
        s = ONE
        for i, k in zip(idx, pw):
            s = s * S[i] ** k
        yield s


def in_s_closure(p: DiffPoly, S: Iterable[DiffPoly]) -> bool:
    """True when p divides a power of the product of S (up to a rational unit)."""
    prod = ONE
    for s in S:
        prod = prod * s
    while not p.is_constant():
        g = poly_gcd(p, prod)
        if g.is_constant():
            return False
        p = p.exact_div(g)
    return not p.is_zero()


def technical_assumption(
    sys: DiffSystem,
    F: VectorField,
    rk: Ranking | None = None,
    max_factors: int = 3,
    max_power: int = 2,
    max_candidates: int = 200,
) -> AssumptionStatus:
    rk = rk or Ranking.default(F.n)
    A = list(sys.equations)
    S = list(sys.inequations)
    present = {}
    for p in A:
        v = is_explicit_ode(p)
        if v is not None and same_up_to_scalar(p, F.ode(v.var)):
            present[v.var] = p
    nondiff = [p for p in A if p.is_nondifferential() and not p.is_constant()]
    entries = []
    for i in range(F.n):
        if i in present:
            entries.append(InEquations(i))
            continue
        lower = [F.ode(j) for j in sorted(present) if rk.pos(j) < rk.pos(i)]
        divisors = nondiff + lower
        ode = F.ode(i)
        found = None
        for count, s in enumerate(s_products(S, max_factors, max_power)):
            if count >= max_candidates:
                break
            if not divisors:
                break
            r, traces = reduce_by_set(s * ode, divisors, rk)
            if r.is_zero():
                tr = combine_traces(traces)
                if not in_s_closure(tr.premultiplier(), S):
                    continue
                found = Witnessed(i, tr.premultiplier() * s, s, tuple(divisors), tr)
                break
        entries.append(found if found is not None else Unknown(i, "no witness within the search budget"))
    return AssumptionStatus(tuple(entries))
