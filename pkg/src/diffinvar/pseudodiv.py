"""Algebraic and differential pseudodivision with replayable traces."""
from __future__ import annotations

from dataclasses import dataclass, field

from ._gcd import poly_gcd
from .errors import NothingToReduce, ResourceExceeded
from .poly import ONE, DerivVar, DiffPoly, differentiate
from .ranking import Ranking

GCD_FULL = "gcd"
GCD_NONE = "none"


@dataclass
class PdivTrace:
    """Certificate for sep_factor * init_factor * p - sum(m * q_ref^(k)) = r."""

    sep_factor: DiffPoly = ONE
    init_factor: DiffPoly = ONE
    combination: list = field(default_factory=list)  # (multiplier, order, ref)
    remainders: list = field(default_factory=list)  # remainder after each single step

    def premultiplier(self) -> DiffPoly:
        return self.sep_factor * self.init_factor

    def _absorb(self, alpha: DiffPoly, is_sep: bool, mult: DiffPoly, k: int, ref) -> None:
        if alpha != ONE:
            if is_sep:
                self.sep_factor = self.sep_factor * alpha
            else:
                self.init_factor = self.init_factor * alpha
            self.combination = [(m * alpha, kk, rr) for m, kk, rr in self.combination]
        for j, (m, kk, rr) in enumerate(self.combination):
            if kk == k and rr == ref:
                self.combination[j] = (m + mult, kk, rr)
                break
        else:
            self.combination.append((mult, k, ref))
        self.combination = [c for c in self.combination if not c[0].is_zero()]


def _derivative(q: DiffPoly, k: int) -> DiffPoly:
    for _ in range(k):
        q = differentiate(q)
    return q


def _target(p: DiffPoly, q: DiffPoly, rk: Ranking):
    """(k, v): the derivative order of q to use and the variable to eliminate, or None."""
    lead = rk.leader(q)
    top = None
    for w in p.derivvars():
        if w.var == lead.var and w.order > lead.order and (top is None or w.order > top.order):
            top = w
    if top is not None:
        return top.order - lead.order, top
    if p.degree(lead) >= q.degree(lead):
        return 0, lead
    return None


def _single_step(p: DiffPoly, q: DiffPoly, k: int, v: DerivVar, gcd_mode: str):
    qk = _derivative(q, k)
    e = qk.degree(v)
    d = p.degree(v)
    c = p.coeff(v, d)
    i = qk.coeff(v, e)
    if i.is_constant():
        alpha = ONE
        beta = c.scale(1 / i.constant_value())
    elif gcd_mode == GCD_NONE:
        alpha = i
        beta = c
    else:
        g = poly_gcd(i, c)
        alpha = i.exact_div(g).primitive()
        beta = (c * alpha).exact_div(i)
    mult = beta * DiffPoly.of(v) ** (d - e)
    r = alpha * p - mult * qk
    return r, alpha, mult


def pdiv_step(p: DiffPoly, q: DiffPoly, rk: Ranking, gcd_mode: str = GCD_FULL, ref=0):
    """One premultiply-and-subtract step; targets the highest proper derivative first."""
    tgt = _target(p, q, rk)
    if tgt is None:
        raise NothingToReduce("p is already reduced with respect to q")
    k, v = tgt
    r, alpha, mult = _single_step(p, q, k, v, gcd_mode)
    trace = PdivTrace()
    trace._absorb(alpha, k > 0, mult, k, ref)
    trace.remainders.append(r)
    return r, trace


def diff_pseudo_div(p: DiffPoly, q: DiffPoly, rk: Ranking, gcd_mode: str = GCD_FULL, ref=0):
    """Reduce p with respect to q; returns (r, trace)."""
    if q.is_constant():
        raise ValueError("divisor must be non-constant")
    trace = PdivTrace()
    while True:
        tgt = _target(p, q, rk)
        if tgt is None:
            return p, trace
        k, v = tgt
        p, alpha, mult = _single_step(p, q, k, v, gcd_mode)
        trace._absorb(alpha, k > 0, mult, k, ref)
        trace.remainders.append(p)


def reduced_flags(p: DiffPoly, q: DiffPoly, rk: Ranking) -> tuple:
    """(partially_reduced, reduced) of p with respect to q."""
    lead = rk.leader(q)
    partially = not any(w.var == lead.var and w.order > lead.order for w in p.derivvars())
    return partially, partially and p.degree(lead) < q.degree(lead)


def reduce_by_set(p: DiffPoly, A, rk: Ranking, gcd_mode: str = GCD_FULL, max_steps: int = 10_000):
    """Reduce p by every element of A, highest-ranked leader first.

    Returns (r, traces); each trace refers to its divisor by index in A.
    """
    A = list(A)
    leaders = [rk.leader(a) for a in A]
    traces = []
    for _ in range(max_steps):
        best = None
        for idx, a in enumerate(A):
            if reduced_flags(p, a, rk)[1]:
                continue
            key = (rk.key(leaders[idx]), _neg_key(a))
            if best is None or key > best[0]:
                best = (key, idx)
        if best is None:
            return p, traces
        idx = best[1]
        p, tr = diff_pseudo_div(p, A[idx], rk, gcd_mode, ref=idx)
        traces.append(tr)
    raise ResourceExceeded("reduce_by_set did not terminate within the step budget", {"steps": max_steps})


class _neg_key:
    """Inverts canonical order so that max() picks the least polynomial."""

    __slots__ = ("k",)

    def __init__(self, p: DiffPoly):
        self.k = p.sort_key()

    def __lt__(self, other):
        return self.k > other.k

    def __gt__(self, other):
        return self.k < other.k

    def __eq__(self, other):
        return self.k == other.k


def combine_traces(traces: list) -> PdivTrace:
    """Fold sequential traces r_j = f_j r_{j-1} - q_j into one trace for the first dividend."""
    out = PdivTrace()
    for tr in traces:
        alpha_s, alpha_i = tr.sep_factor, tr.init_factor
        alpha = alpha_s * alpha_i
        out.sep_factor = out.sep_factor * alpha_s
        out.init_factor = out.init_factor * alpha_i
        comb = [(m * alpha, k, r) for m, k, r in out.combination]
        for m, k, r in tr.combination:
            for j, (m2, k2, r2) in enumerate(comb):
                if k2 == k and r2 == r:
                    comb[j] = (m2 + m, k2, r2)
                    break
            else:
                comb.append((m, k, r))
        out.combination = [c for c in comb if not c[0].is_zero()]
        out.remainders.extend(tr.remainders)
    return out


def replay(p: DiffPoly, divisors, trace: PdivTrace) -> DiffPoly:
    """Evaluate sep_factor * init_factor * p - sum(m * divisor^(k))."""
    if isinstance(divisors, DiffPoly):
        divisors = [divisors]
    acc = trace.sep_factor * trace.init_factor * p
    for m, k, ref in trace.combination:
        acc = acc - m * _derivative(divisors[ref], k)
    return acc


def verify_trace(p: DiffPoly, q, r: DiffPoly, trace: PdivTrace) -> bool:
    """True iff the trace identity replays exactly to r."""
    try:
        return replay(p, q, trace) == r
    except (IndexError, TypeError):
        return False
