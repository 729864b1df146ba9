import random

import pytest
from hypothesis import given, settings, strategies as st

from diffinvar import (
    DiffRing,
    DiffSystem,
    Ranking,
    RgaOptions,
    RunLog,
    VectorField,
    branch_saturation,
    rga_o,
)
from diffinvar.errors import AssumptionUnverified, NotApplicable, PreconditionViolated
from diffinvar.groebner import radical_member
from diffinvar.pseudodiv import reduce_by_set
from diffinvar.rga import eliminate_ode, invariant_decomposition

from helpers import lorenz_field, random_poly

L = DiffRing("x y z")
RK = L.ranking("x > y > z")
F = lorenz_field(L)
CONE = L("2*x^2 - y^2 - z^2")


def lorenz_dec(**kw):
    return rga_o(F.odes() + [CONE], [], F, RgaOptions(ranking=RK, **kw))


def test_odes_alone_unchanged():
    X = DiffRing("x")
    G = VectorField([X("x^2 - 1")])
    dec = rga_o(G.odes(), [], G)
    assert dec.systems() == [DiffSystem.make(G.odes())]


def test_lorenz_branches():
    log = RunLog()
    dec = lorenz_dec(log=log)
    generic = DiffSystem.make([L("y' - 2*x + y + x*z"), L("z' - x*y + z"), CONE], [L("x")])
    assert generic in dec.systems()
    for b in dec.branches:
        assert b.regularity.regular_differential and b.regularity.explicit_nondiff_ineqs
        assert b.assumption.all_established
        assert radical_member(CONE, branch_saturation(b.system)) or not branch_saturation(b.system)
        assert b.triangulate_calls <= F.n + 1
    assert log.triangulate_calls == [b.triangulate_calls for b in dec.branches]


def test_lorenz_invariant_decomposition():
    pieces = invariant_decomposition(lorenz_dec(), F)
    assert len(pieces) == 3
    for _, gens, ineqs in pieces:
        assert all(s.is_nondifferential() for s in ineqs)
        sat = branch_saturation(DiffSystem.make(gens, ineqs))
        # each piece lies inside the cone
        assert radical_member(CONE, sat)


def test_constant_nondifferential_part_is_empty():
    dec = rga_o(F.odes() + [L("1")], [], F, RgaOptions(ranking=RK))
    assert dec.branches == []
    assert invariant_decomposition(dec, F) == []


def test_requires_orderly_ranking():
    with pytest.raises(PreconditionViolated):
        rga_o(F.odes(), [], F, RgaOptions(ranking=L.ranking("x > y > z", "elim")))


def test_rejects_foreign_ode():
    with pytest.raises(PreconditionViolated):
        rga_o([L("x' - y")], [], F, RgaOptions(ranking=RK))


def test_unverified_assumption():
    A = [L("y' - 2*x + y + x*z"), L("z' - x*y + z"), CONE]
    with pytest.raises(AssumptionUnverified):
        rga_o(A, [], F, RgaOptions(ranking=RK))
    dec = rga_o(A, [], F, RgaOptions(ranking=RK, assume=True))
    assert dec.branches
    with pytest.raises(PreconditionViolated):
        invariant_decomposition(dec, F)
    # with x as an inequation the missing ODE has a witness
    dec = rga_o(A, [L("x")], F, RgaOptions(ranking=RK))
    assert len(invariant_decomposition(dec, F)) == len(dec)


def test_eliminate_ode_lorenz():
    sys = DiffSystem.make(F.odes() + [CONE], [L("x")])
    new, ev = eliminate_ode(sys, F, RK)
    ode, q, r = ev.polys
    assert ode == F.ode(0) and q == CONE
    assert r.is_nondifferential()
    assert F.ode(0) not in new.equations
    # r lies in the ideal generated by the old system, shown by reduction to zero
    rem, _ = reduce_by_set(r, [CONE], RK)
    assert rem.is_zero() or radical_member(r, [CONE])


def test_eliminate_ode_not_applicable():
    with pytest.raises(NotApplicable):
        eliminate_ode(DiffSystem.make([L("y' - 2*x + y + x*z"), CONE], [L("x")]), F, RK)
    with pytest.raises(NotApplicable):
        eliminate_ode(DiffSystem.make([F.ode(2), L("x - y")], [L("1")]), F, RK)


@given(st.integers(0, 10**6))
@settings(max_examples=30, deadline=None)
def test_random_branches_regular_with_ode_subset(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 2)
    R = DiffRing(" ".join("xy"[:n]))
    G = VectorField([random_poly(rng, n, 2) for _ in range(n)])
    nondiff = [p for p in (random_poly(rng, n, 2) for _ in range(rng.randint(1, 2))) if not p.is_constant()]
    rk = Ranking.default(n)
    log = RunLog()
    dec = rga_o(G.odes() + nondiff, [], G, RgaOptions(ranking=rk, log=log))
    inputs = set(G.odes())
    for b in dec.branches:
        assert b.regularity.regular_differential
        assert set(b.system.differential()) <= inputs
        assert b.triangulate_calls <= n + 1
        assert b.assumption.all_established
    assert R is not None
