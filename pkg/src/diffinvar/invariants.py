"""Invariance checks for algebraic sets of polynomial vector fields.

The sufficient test asks whether every Lie derivative lies in the ideal.  The
converse direction needs the ideal to be radical and the variety to be
totally real; those hypotheses are either assumed by the caller, verified in
easy cases, or backed by a sign-change heuristic, and the verdict records which.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from ._gcd import poly_gcd
from .groebner import Budget, groebner_basis, is_unit_basis, member, normal_form, radical_member, saturation
from .lie import VectorField, lie
from .poly import ONE, DerivVar, DiffPoly, differentiate, evaluate
from .systems import DiffSystem, VERIFIED, UNVERIFIED, classify, technical_assumption

INVARIANT = "invariant"
NOT_INVARIANT = "not_invariant"
UNKNOWN = "unknown"

HEURISTIC = "heuristic"
FAILED = "failed"

SATINVAR = "Satinvar"
INVARCOR1 = "Invarcor1"
INVARCOR2 = "Invarcor2"
INVARCOR3 = "Invarcor3"
NO_THEOREM = "None"


@dataclass
class Verdict:
    value: str
    witness: list = field(default_factory=list)  # (index, lie derivative, evidence)
    assumptions: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.value == INVARIANT


def _nontrivial(A: Iterable[DiffPoly]) -> list:
    A = [p for p in A if not p.is_zero()]
    for p in A:
        if not p.is_nondifferential():
            from .errors import NotNondifferential

            raise NotNondifferential("invariance checks take nondifferential polynomials")
    return A


def check_sufficient(A: Iterable[DiffPoly], F: VectorField, budget: Budget | None = None) -> Verdict:
    """Invariant when every Lie derivative is in (A); Unknown otherwise."""
    A = _nontrivial(A)
    witness = []
    for i, p in enumerate(A):
        lp = lie(p, F)
        if not member(lp, A, budget=budget):
            return Verdict(UNKNOWN, [(i, lp, "not in ideal")])
        witness.append((i, lp, "in ideal"))
    return Verdict(INVARIANT, witness)


def is_squarefree(p: DiffPoly) -> bool:
    g = p
    for v in p.derivvars():
        g = poly_gcd(g, p.partial(v))
        if g.is_constant():
            return True
    return g.is_constant()


def radical_status(A: Sequence[DiffPoly]) -> str:
    """VERIFIED for linear generators or a single squarefree generator, else UNVERIFIED."""
    A = [p for p in A if not p.is_zero()]
    if all(p.total_degree() <= 1 for p in A):
        return VERIFIED
    if len(A) == 1 and is_squarefree(A[0]):
        return VERIFIED
    return UNVERIFIED


def _n_vars(polys: Iterable[DiffPoly], n: int | None) -> int:
    if n is not None:
        return n
    return 1 + max((v for p in polys for v in p.base_vars()), default=-1)


def _point_map(pt: tuple) -> dict:
    return {i: c for i, c in enumerate(pt)}


def sign_change_witness(p: DiffPoly, n: int | None = None, seed: int = 0, attempts: int = 2000, height: int = 10):
    """Rational points a, b with p(a) > 0 > p(b), or None within the budget."""
    n = max(_n_vars([p], n), 1)
    pos = neg = None

    def candidates():
        yield (Fraction(0),) * n
        for i in range(n):
            for s in (1, -1):
                e = [Fraction(0)] * n
                e[i] = Fraction(s)
                yield tuple(e)
        rng = random.Random(seed)
        for _ in range(attempts):
            yield tuple(Fraction(rng.randint(-height, height), rng.randint(1, height)) for _ in range(n))

    for pt in candidates():
        val = evaluate(p, _point_map(pt))
        if val > 0 and pos is None:
            pos = pt
        elif val < 0 and neg is None:
            neg = pt
        if pos is not None and neg is not None:
            return pos, neg
    return None


def check_invariant(
    A: Iterable[DiffPoly],
    F: VectorField,
    assume_radical: bool = False,
    assume_totally_real: bool = False,
    verify_radical: bool = True,
    seed: int = 0,
    budget: Budget | None = None,
) -> Verdict:
    A = _nontrivial(A)
    assumptions = []
    outside = None
    witness = []
    for i, p in enumerate(A):
        lp = lie(p, F)
        if member(lp, A, budget=budget):
            witness.append((i, lp, "in ideal"))
            continue
        if not radical_member(lp, A, budget):
            outside = (i, lp, "not in radical")
            break
        witness.append((i, lp, "in radical only"))
    if outside is None and all(w[2] == "in ideal" for w in witness):
        return Verdict(INVARIANT, witness)

    if assume_radical:
        radical_ok = True
        assumptions.append("radical_assumed")
    elif verify_radical and radical_status(A) == VERIFIED:
        radical_ok = True
        assumptions.append("radical_verified")
    else:
        radical_ok = False
    if assume_totally_real:
        real_ok = True
        assumptions.append("totally_real_assumed")
    else:
        n = max(_n_vars(A, None), F.n)
        real_ok = all(sign_change_witness(p, n, seed) is not None for p in A)
        if real_ok:
            assumptions.append("totally_real_heuristic")

    if outside is not None:
        if radical_ok and real_ok:
            return Verdict(NOT_INVARIANT, [outside], assumptions)
        return Verdict(UNKNOWN, [outside], assumptions)
    # every Lie derivative is in the radical: enough once (A) is known radical
    if radical_ok:
        return Verdict(INVARIANT, witness, assumptions)
    return Verdict(UNKNOWN, witness, assumptions)


def lie_closure(A: Iterable[DiffPoly], F: VectorField, cap: int = 10, budget: Budget | None = None):
    """(generators, closed, stage) of the ideal generated by A and its higher Lie derivatives."""
    gens = [p for p in A if not p.is_zero()]
    _nontrivial(gens)
    frontier = list(gens)
    stage = 0
    while True:
        basis = groebner_basis(gens, budget=budget) if gens else []
        if is_unit_basis(basis):
            return gens, True, stage
        new = []
        for p in frontier:
            lp = lie(p, F)
            if not normal_form(lp, basis + new).is_zero():
                new.append(lp)
        if not new:
            return gens, True, stage
        if stage >= cap:
            return gens, False, stage
        stage += 1
        gens = gens + new
        frontier = new


# ---------------------------------------------------------------------------
# per-branch classification


@dataclass
class BranchReport:
    index: int
    theorem: str
    checks: dict  # hypothesis name -> status
    generators: list  # describes the invariant
    inequations: list  # empty when the invariant needs no inequations
    evidence: dict = field(default_factory=dict)

    @property
    def empty(self) -> bool:
        return any(p.is_constant() and not p.is_zero() for p in self.generators)


@dataclass
class InvariantReport:
    branches: list = field(default_factory=list)

    def theorems(self) -> list:
        return [b.theorem for b in self.branches]


def exact_sample_point(A: Sequence[DiffPoly], S: Sequence[DiffPoly], n: int, height: int = 2, seed: int = 0, attempts: int = 500):
    """A rational point with A = 0 and S != 0, searching a small grid then random points."""
    rng = random.Random(seed)
    grid = range(-height, height + 1)

    def ok(pt):
        env = _point_map(pt)
        return all(evaluate(p, env) == 0 for p in A) and all(evaluate(s, env) != 0 for s in S)

    if n <= 6:
        for pt in itertools.product(grid, repeat=n):
            pt = tuple(Fraction(c) for c in pt)
            if ok(pt):
                return pt
    for _ in range(attempts):
        pt = tuple(Fraction(rng.randint(-height, height), rng.randint(1, height)) for _ in range(n))
        if ok(pt):
            return pt
    return None


def irreducible_quadric(p: DiffPoly, budget: Budget | None = None) -> bool:
    """True when p of degree <= 2 provably has no factorisation into two linear forms over C.

    Writes p = (a0 + sum a_i x_i)(b0 + sum b_i x_i) and checks that the
    coefficient system generates the unit ideal.
    """
    if p.total_degree() == 1:
        return True
    if p.total_degree() != 2:
        raise ValueError("only polynomials of degree 2 are handled")
    vs = sorted(p.derivvars())
    xs = set(vs)
    # unknown coefficients live in fresh base variables after every x_i
    base = 1 + max(v.var for v in vs)
    k = len(vs)
    a = [DiffPoly.var(base + i) for i in range(k + 1)]
    b = [DiffPoly.var(base + k + 1 + i) for i in range(k + 1)]
    lin = [ONE] + [DiffPoly.of(v) for v in vs]
    L1 = sum((ai * x for ai, x in zip(a, lin)), DiffPoly())
    L2 = sum((bi * x for bi, x in zip(b, lin)), DiffPoly())
    coeffs: dict = {}
    for m, c in (L1 * L2).terms.items():
        xm = tuple(t for t in m if t[0] in xs)
        rest = tuple(t for t in m if t[0] not in xs)
        coeffs[xm] = coeffs.get(xm, DiffPoly()) + DiffPoly._raw({rest: c})
    eqs = [c - DiffPoly.constant(p.terms.get(xm, 0)) for xm, c in coeffs.items()]
    return is_unit_basis(groebner_basis(eqs, budget=budget))


def jet_ideal(sys: DiffSystem) -> list:
    """Order-one truncation of [A]: A together with the first derivatives of its nondifferential part."""
    gens = list(sys.equations)
    gens += [differentiate(p) for p in sys.nondifferential()]
    return [g for g in gens if not g.is_zero()]


def monomial_condition(sys: DiffSystem, F: VectorField, budget: Budget | None = None):
    """Check t*(x_i' - f_i) in the jet ideal for every monomial t*x_i' of q', q nondifferential in A."""
    J = jet_ideal(sys)
    certs = []
    for q in sys.nondifferential():
        dq = differentiate(q)
        for i in range(F.n):
            c = dq.coeff(DerivVar(i, 1), 1)
            for m, _ in c.terms.items():
                t = DiffPoly._raw({m: Fraction(1)})
                target = t * F.ode(i)
                if not member(target, J, budget=budget):
                    return False, certs
                certs.append((q, i, t))
    return True, certs


def classify_branch(sys: DiffSystem, F: VectorField, index: int = 0, seed: int = 0,
                    budget: Budget | None = None, rk=None) -> BranchReport:
    A_x = sys.nondifferential()
    S = list(sys.inequations)
    if any(p.is_constant() and not p.is_zero() for p in A_x):
        return BranchReport(index, NO_THEOREM, {"consistent": FAILED}, [ONE], [])
    checks: dict = {}
    evidence: dict = {}
    reg = classify(sys, rk) if rk is not None else classify(sys, _default_rk(F))
    explicit = reg.regular_differential and reg.explicit_nondiff_ineqs
    checks["explicit_regular"] = VERIFIED if explicit else FAILED
    status = technical_assumption(sys, F, rk)
    checks["ode_in_saturation"] = VERIFIED if status.all_established else UNVERIFIED
    evidence["assumption"] = status
    if not (explicit and status.all_established):
        return BranchReport(index, NO_THEOREM, checks, list(A_x), S, evidence)

    prod = ONE
    for s in S:
        prod = prod * s
    sat = saturation(A_x, prod, budget) if A_x else []
    evidence["saturation"] = sat
    n = F.n

    # case 1: totally real constructible set, heuristic only
    real = [sign_change_witness(p, n, seed) for p in A_x]
    checks["totally_real"] = HEURISTIC if all(w is not None for w in real) else UNVERIFIED
    evidence["sign_change"] = real

    # case 2: irreducible real variety with a real solution
    pt = exact_sample_point(A_x, S, n, seed=seed)
    checks["nonempty"] = VERIFIED if pt is not None else UNVERIFIED
    evidence["sample_point"] = pt
    irreducible = UNVERIFIED
    if len(A_x) == 1 and A_x[0].total_degree() <= 2:
        irreducible = VERIFIED if irreducible_quadric(A_x[0], budget) else FAILED
    elif not A_x:
        irreducible = VERIFIED
    elif all(p.total_degree() == 1 for p in A_x):
        # a consistent linear system cuts out an affine subspace
        irreducible = VERIFIED if not is_unit_basis(groebner_basis(A_x, budget=budget)) else FAILED
    checks["irreducible"] = irreducible

    # case 3: [A] meets Q[x] in (A_x), and the monomial condition
    linear = all(p.total_degree() == 1 for p in A_x)
    prime = VERIFIED if irreducible == VERIFIED and (len(A_x) <= 1 or linear) else UNVERIFIED
    checks["prime"] = prime
    no_s = all(not member(s, A_x, budget=budget) for s in S) if A_x else True
    checks["no_inequation_in_ideal"] = VERIFIED if no_s else FAILED
    mono_ok, certs = monomial_condition(sys, F, budget)
    checks["monomial_condition"] = VERIFIED if mono_ok else FAILED
    evidence["monomial_certificates"] = certs

    if checks["nonempty"] == VERIFIED and irreducible == VERIFIED:
        return BranchReport(index, INVARCOR2, checks, list(A_x), [], evidence)
    if prime == VERIFIED and no_s and mono_ok:
        return BranchReport(index, INVARCOR3, checks, list(A_x), [], evidence)
    if checks["totally_real"] == HEURISTIC:
        return BranchReport(index, INVARCOR1, checks, sat, [], evidence)
    return BranchReport(index, SATINVAR, checks, sat, [], evidence)


def _default_rk(F: VectorField):
    from .ranking import Ranking

    return Ranking.default(F.n)


def classify_decomposition(dec, F: VectorField, seed: int = 0, budget: Budget | None = None) -> InvariantReport:
    rep = InvariantReport()
    for i, b in enumerate(dec.branches):
        rep.branches.append(classify_branch(b.system, F, i, seed, budget, dec.ranking))
    return rep
