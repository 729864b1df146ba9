"""Decomposition of algebraic systems into regular algebraic systems.

Each non-regular system (A, S) is split on whether the initial and the
separant of a chosen polynomial vanish, and single pseudodivision steps
lower the degree in the current target variable.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import NoTarget
from .groebner import Budget, radical_member
from .poly import ONE, DiffPoly
from .pseudodiv import GCD_FULL, pdiv_step
from .ranking import Ranking, initial, separant, tail
from .systems import DiffSystem, canonical, in_set, same_up_to_scalar, sort_polys

PRUNE_NONE = "none"
PRUNE_CONSTANT = "constant"
PRUNE_GROEBNER = "groebner"


@dataclass(frozen=True)
class Event:
    """One step of a branch: kind is one of SplitInitial, SplitSeparant,
    Pseudodivide, ReplaceByTail, EliminateODE, Prune."""

    kind: str
    polys: tuple = ()
    zero: bool = False
    note: str = ""


@dataclass
class RunLog:
    """Instrumentation filled in by triangulate and rga_o."""

    measure_pairs: list = field(default_factory=list)  # (parent, child) RankMeasures
    max_degrees: list = field(default_factory=list)  # max total degree per visited system
    pruned: list = field(default_factory=list)  # (reason, system)
    triangulate_calls: list = field(default_factory=list)  # per rga output path
    nodes: int = 0

    def max_degree(self) -> int:
        return max(self.max_degrees, default=0)


@dataclass
class TriangulateOptions:
    ranking: Ranking | None = None
    prune: str = PRUNE_CONSTANT
    budget: Budget | None = None
    log: RunLog | None = None
    max_nodes: int = 200_000


@dataclass(frozen=True, order=True)
class RankMeasure:
    target_pos: int
    max_deg_in_target: int
    count_max_deg: int
    count_leader_is_target: int
    min_deg_in_target: int
    target_var: int = field(compare=False, default=-1)

    def as_tuple(self) -> tuple:
        return (self.target_pos, self.max_deg_in_target, self.count_max_deg,
                self.count_leader_is_target, self.min_deg_in_target)


def normalize_equations(A: Iterable[DiffPoly]) -> tuple:
    return sort_polys(canonical(p) for p in A if not p.is_zero())


def normalize_inequations(S: Iterable[DiffPoly]) -> tuple:
    return sort_polys(canonical(s) for s in S if not s.is_constant())


def find_target(A: Iterable[DiffPoly], S: Iterable[DiffPoly], rk: Ranking):
    """Base variable of the highest leader that breaks regularity, or None."""
    S = list(S)
    groups: dict = {}
    for p in A:
        if p.is_constant():
            continue
        groups.setdefault(rk.leader(p), []).append(p)
    for lead in sorted(groups, key=rk.key, reverse=True):
        ps = groups[lead]
        if len(ps) > 1 or not in_set(separant(ps[0], rk), S):
            return lead
    return None


def rank_measure(A: Iterable[DiffPoly], S: Iterable[DiffPoly], rk: Ranking) -> RankMeasure:
    A = list(A)
    lead = find_target(A, S, rk)
    if lead is None:
        raise NoTarget("system is already regular")
    return _measure(A, lead, rk)


def _measure(A: list, lead, rk: Ranking) -> RankMeasure:
    degs = [p.degree(lead) for p in A if not p.is_constant() and rk.leader(p) == lead]
    top = max(degs)
    return RankMeasure(rk.pos(lead.var), top,
                       degs.count(top), len(degs), min(degs), lead.var)


def prune(A: Iterable[DiffPoly], S: Iterable[DiffPoly], strategy: str = PRUNE_CONSTANT, budget: Budget | None = None):
    """None to keep the branch, otherwise a reason string for dropping it."""
    A, S = list(A), list(S)
    if any(p.is_constant() and not p.is_zero() for p in A):
        return "nonzero constant equation"
    if any(s.is_zero() for s in S):
        return "zero inequation"
    if strategy == PRUNE_NONE:
        return None
    for p in A:
        for s in S:
            if same_up_to_scalar(p, s):
                return "equation equals an inequation"
    if strategy == PRUNE_CONSTANT:
        return None
    if strategy == PRUNE_GROEBNER:
        prod = ONE
        for s in S:
            prod = prod * s
        if A and radical_member(prod, A, budget):
            return "1 in saturation"
        return None
    raise ValueError(f"unknown prune strategy {strategy!r}")


def triangulate(A: Iterable[DiffPoly], S: Iterable[DiffPoly] = (), opts: TriangulateOptions | None = None) -> list:
    """Regular algebraic systems (with their event traces) whose saturations decompose (A):S^inf."""
    opts = opts or TriangulateOptions()
    A = list(A)
    S = list(S)
    for p in A + S:
        if not p.is_nondifferential():
            raise ValueError("triangulate takes nondifferential polynomials only")
    if any(s.is_zero() for s in S):
        raise ValueError("0 cannot be an inequation")
    n = 1 + max((v for p in A + S for v in p.base_vars()), default=0)
    rk = opts.ranking or Ranking.default(n)
    log = opts.log
    out: dict = {}
    seen: set = set()
    counter = [0]

    def rec(A: tuple, S: tuple, trace: tuple, parent: RankMeasure | None):
        if (A, S) in seen:
            return
        seen.add((A, S))
        counter[0] += 1
        if counter[0] > opts.max_nodes:
            from .errors import ResourceExceeded

            raise ResourceExceeded("triangulate node cap exceeded", {"nodes": counter[0]})
        if log is not None:
            log.nodes += 1
            log.max_degrees.append(max((p.total_degree() for p in A + S), default=0))
        reason = prune(A, S, opts.prune, opts.budget)
        if reason is not None:
            if log is not None:
                log.pruned.append((reason, DiffSystem.make(A, S)))
            return
        lead = find_target(A, S, rk)
        if lead is None:
            sys = DiffSystem.make(A, S)
            out.setdefault(sys, trace)
            return
        m = _measure(list(A), lead, rk)
        if log is not None and parent is not None:
            log.measure_pairs.append((parent, m))
        for child_A, child_S, events in _children(A, S, lead, rk):
            rec(normalize_equations(child_A), normalize_inequations(child_S), trace + events, m)

    rec(normalize_equations(A), normalize_inequations(S), (), None)
    return sorted(((sys, list(tr)) for sys, tr in out.items()), key=lambda t: t[0].sort_key())


def _pick_q(qs: list, lead):
    return min(qs, key=lambda p: (p.degree(lead), p.total_degree(), p.sort_key()))


def _pick_p(qs: list, q: DiffPoly, lead):
    rest = [p for p in qs if p != q]
    top = max((p.degree(lead), p.total_degree()) for p in rest)
    return min((p for p in rest if (p.degree(lead), p.total_degree()) == top), key=DiffPoly.sort_key)


def _children(A: tuple, S: tuple, lead, rk: Ranking):
    qs = [p for p in A if not p.is_constant() and rk.leader(p) == lead]
    q = _pick_q(qs, lead)
    i_q, t_q, s_q = initial(q, rk), tail(q, rk), separant(q, rk)
    others = [p for p in A if p != q]
    A_tilde = others + [i_q, t_q]
    S_hat = list(S) + [i_q]
    init_zero = (Event("SplitInitial", (q, i_q), zero=True), Event("ReplaceByTail", (q, t_q)))
    init_nonzero = (Event("SplitInitial", (q, i_q), zero=False),)
    if len(qs) > 1:
        p = _pick_p(qs, q, lead)
        r, _ = pdiv_step(p, q, rk, GCD_FULL)
        A_hat = [a for a in A if a != p] + [r]
        pd = Event("Pseudodivide", (p, q, r))
        return [
            (A_tilde, list(S), init_zero),
            (A_hat + [s_q], S_hat, init_nonzero + (pd, Event("SplitSeparant", (q, s_q), zero=True))),
            (A_hat, S_hat + [s_q], init_nonzero + (pd, Event("SplitSeparant", (q, s_q), zero=False))),
        ]
    if in_set(s_q, S_hat):
        return [
            (A_tilde, list(S), init_zero),
            (list(A), S_hat, init_nonzero),
        ]
    r, _ = pdiv_step(q, s_q, rk, GCD_FULL)
    return [
        (A_tilde, list(S), init_zero),
        (others + [s_q, r], S_hat,
         init_nonzero + (Event("SplitSeparant", (q, s_q), zero=True), Event("Pseudodivide", (q, s_q, r)))),
        (list(A), S_hat + [s_q], init_nonzero + (Event("SplitSeparant", (q, s_q), zero=False),)),
    ]


def replay_events(A: Iterable[DiffPoly], S: Iterable[DiffPoly], events: Iterable[Event]) -> DiffSystem:
    """Re-apply a branch trace to an input system (with the same normalisation)."""
    A = list(normalize_equations(A))
    S = list(normalize_inequations(S))
    for ev in events:
        if ev.kind == "SplitInitial":
            q, i_q = ev.polys
            (A if ev.zero else S).append(i_q)
        elif ev.kind == "ReplaceByTail":
            q, t_q = ev.polys
            A = [a for a in A if a != q] + [t_q]
        elif ev.kind == "SplitSeparant":
            q, s_q = ev.polys
            (A if ev.zero else S).append(s_q)
        elif ev.kind in ("Pseudodivide", "EliminateODE"):
            p, q, r = ev.polys
            A = [a for a in A if a != p] + [r]
        else:
            raise ValueError(f"unknown event {ev.kind}")
        A = list(normalize_equations(A))
        S = list(normalize_inequations(S))
    return DiffSystem.make(A, S)
