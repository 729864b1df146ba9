"""RGA_o: regular differential decomposition of explicit ODE systems with constraints."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import AssumptionUnverified, NotApplicable, PreconditionViolated
from .groebner import Budget, saturation
from .lie import VectorField, substitute_derivatives
from .poly import ONE, DiffPoly
from .pseudodiv import GCD_FULL, pdiv_step
from .ranking import ORDERLY, Ranking, separant
from .systems import (
    AssumptionStatus,
    DiffSystem,
    RegularityStatus,
    classify,
    in_set,
    is_explicit_ode,
    is_triangular,
    same_up_to_scalar,
    technical_assumption,
)
from .triangulate import (
    PRUNE_CONSTANT,
    Event,
    RunLog,
    TriangulateOptions,
    normalize_equations,
    normalize_inequations,
    triangulate,
)


@dataclass
class RgaOptions:
    ranking: Ranking | None = None
    prune: str = PRUNE_CONSTANT
    assume: bool = False
    check_assumptions: bool = True
    verify_regular_set: bool = False
    budget: Budget | None = None
    log: RunLog | None = None


@dataclass
class Branch:
    system: DiffSystem
    trace: list
    regularity: RegularityStatus
    assumption: AssumptionStatus | None
    triangulate_calls: int = 0


@dataclass
class Decomposition:
    branches: list = field(default_factory=list)
    ranking: Ranking | None = None
    input_system: DiffSystem | None = None
    all_odes_in_input: bool = False

    def __len__(self) -> int:
        return len(self.branches)

    def systems(self) -> list:
        return [b.system for b in self.branches]


def _ode_var(p: DiffPoly, F: VectorField) -> int:
    v = is_explicit_ode(p)
    if v is None or not same_up_to_scalar(p, F.ode(v.var)):
        raise PreconditionViolated("differential equations must be members of x' - f(x)")
    return v.var


def _split(A: Iterable[DiffPoly], F: VectorField):
    nondiff, odes = [], {}
    for p in A:
        if p.is_nondifferential():
            nondiff.append(p)
        else:
            odes[_ode_var(p, F)] = F.ode(_ode_var(p, F))
    return nondiff, odes


def _offending_pair(nondiff: list, odes: dict, rk: Ranking):
    """Highest x_j with x_j' - f_j present and a nondifferential q led by x_j."""
    best = None
    for q in nondiff:
        if q.is_constant():
            continue
        lead = rk.leader(q)
        if lead.var in odes and (best is None or rk.pos(lead.var) > rk.pos(best[0])):
            best = (lead.var, q)
    return best


def eliminate_ode(sys: DiffSystem, F: VectorField, rk: Ranking):
    """Replace the highest offending ODE by a nondifferential pseudoremainder.

    Returns (new system, event); the event records (ode, q, r) together with
    the intermediate remainder before derivative substitution.
    """
    nondiff, odes = _split(sys.equations, F)
    pair = _offending_pair(nondiff, odes, rk)
    if pair is None:
        raise NotApplicable("system is partially reduced")
    j, q = pair
    ode = odes[j]
    r_tilde, _ = pdiv_step(ode, q, rk, GCD_FULL)
    r = substitute_derivatives(r_tilde, F)
    rest_odes = [o for i, o in odes.items() if i != j]
    new = DiffSystem.make(nondiff + [r] + rest_odes, sys.inequations)
    return new, Event("EliminateODE", (ode, q, r), note=r_tilde.format())


def rga_o(A: Iterable[DiffPoly], S: Iterable[DiffPoly], F: VectorField, opts: RgaOptions | None = None) -> Decomposition:
    opts = opts or RgaOptions()
    rk = opts.ranking or Ranking.default(F.n)
    if rk.flavor != ORDERLY:
        raise PreconditionViolated("RGA_o requires an orderly ranking")
    A, S = list(A), list(S)
    if any(not s.is_nondifferential() or s.is_zero() for s in S):
        raise PreconditionViolated("inequations must be nonzero and nondifferential")
    nondiff, odes = _split(A, F)
    input_sys = DiffSystem.make(nondiff + list(odes.values()), S)
    if not opts.assume:
        status = technical_assumption(input_sys, F, rk)
        if not status.all_established:
            raise AssumptionUnverified(f"no witness for the ODEs of variables {status.unknown_vars()}")
    log = opts.log
    tri_opts = TriangulateOptions(ranking=rk, prune=opts.prune, budget=opts.budget, log=log)
    results: dict = {}
    seen: set = set()

    def rec(nondiff: tuple, odes: dict, S: tuple, trace: tuple, calls: int):
        state = (nondiff, tuple(sorted(odes)), S)
        if state in seen:
            return
        seen.add(state)
        if any(p.is_constant() for p in nondiff):
            return
        triangular = is_triangular(nondiff, rk)
        seps_ok = triangular and all(in_set(separant(q, rk), S) for q in nondiff)
        pair = _offending_pair(list(nondiff), odes, rk) if seps_ok else None
        if seps_ok and pair is None:
            sys = DiffSystem.make(list(nondiff) + list(odes.values()), S)
            if sys not in results:
                results[sys] = (trace, calls)
            return
        if not seps_ok:
            for B, tr in triangulate(nondiff, S, tri_opts):
                rec(B.equations, odes, B.inequations, trace + tuple(tr), calls + 1)
            return
        j, q = pair
        ode = odes[j]
        r_tilde, _ = pdiv_step(ode, q, rk, GCD_FULL)
        r = substitute_derivatives(r_tilde, F)
        ev = Event("EliminateODE", (ode, q, r), note=r_tilde.format())
        if log is not None:
            log.max_degrees.append(max(r_tilde.total_degree(), r.total_degree()))
        rest = {i: o for i, o in odes.items() if i != j}
        for B, tr in triangulate(list(nondiff) + [r], S, tri_opts):
            rec(B.equations, rest, B.inequations, trace + (ev,) + tuple(tr), calls + 1)

    rec(normalize_equations(nondiff), odes, normalize_inequations(S), (), 0)

    dec = Decomposition(ranking=rk, input_system=input_sys, all_odes_in_input=len(odes) == F.n)
    for sys in sorted(results, key=DiffSystem.sort_key):
        trace, calls = results[sys]
        reg = classify(sys, rk, opts.verify_regular_set, opts.budget)
        assume = technical_assumption(sys, F, rk) if opts.check_assumptions else None
        dec.branches.append(Branch(sys, list(trace), reg, assume, calls))
        if log is not None:
            log.triangulate_calls.append(calls)
    return dec


def branch_saturation(sys: DiffSystem, budget: Budget | None = None) -> list:
    """Generators of (A ∩ Q[x]) : (prod S)^inf."""
    nondiff = [p for p in sys.equations if p.is_nondifferential()]
    prod = ONE
    for s in sys.inequations:
        prod = prod * s
    if not nondiff:
        return []
    return saturation(nondiff, prod, budget)


def invariant_decomposition(dec: Decomposition, F: VectorField) -> list:
    """(branch index, nondifferential generators, inequation generators) for every branch."""
    if not dec.all_odes_in_input:
        status = technical_assumption(dec.input_system, F, dec.ranking)
        if not status.all_established:
            raise PreconditionViolated("every ODE x' - f(x) must be in the input or witnessed")
    out = []
    for idx, b in enumerate(dec.branches):
        nondiff = [p for p in b.system.equations if p.is_nondifferential()]
        out.append((idx, nondiff, list(b.system.inequations)))
    return out
