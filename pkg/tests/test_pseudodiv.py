import random

import pytest
from hypothesis import given, settings, strategies as st

from diffinvar import DiffRing, Ranking, diff_pseudo_div, pdiv_step, verify_trace
from diffinvar.errors import NothingToReduce
from diffinvar.pseudodiv import GCD_NONE, combine_traces, reduce_by_set, reduced_flags, replay

from helpers import random_nonconstant, random_poly

R = DiffRing("x y")
RK = R.ranking("y > x")


def test_golden_example_and_trace():
    p, q = R("(x+1)*y'' + x^4"), R("(x^2-1)*y'^2")
    r, tr = diff_pseudo_div(p, q, RK)
    assert r == R("(x^2-1)*(x-1)*y'*x^4")
    assert tr.remainders[0] == R("(x-1)*y'*x^4 - x*x'*y'^2")
    assert tr.sep_factor == R("x*y' - y'")
    assert tr.init_factor == R("x^2 - 1")
    assert verify_trace(p, q, r, tr)


def test_no_gcd_mode_still_replays():
    p, q = R("(x+1)*y'' + x^4"), R("(x^2-1)*y'^2")
    r, tr = diff_pseudo_div(p, q, RK, GCD_NONE)
    assert verify_trace(p, q, r, tr)
    assert reduced_flags(r, q, RK)[1]


def test_single_step_algebraic():
    X = DiffRing("x")
    r, tr = pdiv_step(X("x^2 - 1"), X("2*x"), X.ranking("x"))
    assert r == X("-1")
    with pytest.raises(NothingToReduce):
        pdiv_step(X("3"), X("2*x"), X.ranking("x"))


def test_reduce_by_set_lorenz():
    L = DiffRing("x y z")
    rk = L.ranking("x > y > z")
    A = [L("y' - 2*x + y + x*z"), L("z' - x*y + z"), L("2*x^2 - y^2 - z^2")]
    p = L("x*(x' - y + x)")
    r, traces = reduce_by_set(p, A, rk)
    assert r.is_zero()
    tr = combine_traces(traces)
    assert replay(p, A, tr).is_zero()
    r2, traces2 = reduce_by_set(L("x' - y + x"), A, rk)
    assert r2.is_zero() and combine_traces(traces2).premultiplier() == L("x")


seeds = st.integers(0, 10**6)


@given(seeds)
@settings(max_examples=150, deadline=None)
def test_trace_identity_random(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    rk = Ranking(rng.choice(["orderly", "elim"]), tuple(rng.sample(range(n), n)))
    p = random_poly(rng, n, 3, order=1, terms=4)
    q = random_nonconstant(rng, n, 3, order=1, terms=3)
    r, tr = diff_pseudo_div(p, q, rk)
    assert verify_trace(p, q, r, tr)
    assert reduced_flags(r, q, rk)[1] or r.is_zero()
    # determinacy
    r2, tr2 = diff_pseudo_div(p, q, rk)
    assert r2 == r and tr2.combination == tr.combination and tr2.remainders == tr.remainders


@given(seeds)
@settings(max_examples=150, deadline=None)
def test_single_step_degree_bound(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    rk = Ranking.default(n)
    p = random_nonconstant(rng, n, 3, order=1, terms=4)
    q = random_nonconstant(rng, n, 3, order=1, terms=3)
    try:
        r, tr = pdiv_step(p, q, rk)
    except NothingToReduce:
        return
    assert r.is_zero() or r.total_degree() <= p.total_degree() + q.total_degree()
    assert verify_trace(p, q, r, tr)


@given(seeds)
@settings(max_examples=80, deadline=None)
def test_reduce_by_set_certificate(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    rk = Ranking.default(n)
    A = [random_nonconstant(rng, n, 2, order=1, terms=3) for _ in range(rng.randint(1, 2))]
    p = random_poly(rng, n, 3, order=1, terms=4)
    r, traces = reduce_by_set(p, A, rk)
    assert replay(p, A, combine_traces(traces)) == r
