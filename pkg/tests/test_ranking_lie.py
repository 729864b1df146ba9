import pytest
from hypothesis import given, strategies as st

from diffinvar import DerivVar, DiffRing, Ranking, VectorField, initial, lie, lis, separant, substitute_derivatives, tail
from diffinvar.errors import ConstantPolynomial, NotNondifferential, OrderTooHigh
from diffinvar.poly import differentiate

from helpers import lorenz_field

perm = st.permutations(range(3))
flavor = st.sampled_from(["orderly", "elim"])
dv = st.builds(DerivVar, st.integers(0, 2), st.integers(0, 4))


@given(flavor, perm, dv, dv, dv)
def test_ranking_is_total_order(fl, order, a, b, c):
    rk = Ranking(fl, tuple(order))
    assert (rk.compare(a, b) > 0) == (rk.compare(b, a) < 0)
    assert (rk.compare(a, b) == 0) == (a == b)
    if rk.compare(a, b) < 0 and rk.compare(b, c) < 0:
        assert rk.compare(a, c) < 0


@given(flavor, perm, dv, dv)
def test_ranking_respects_differentiation(fl, order, a, b):
    rk = Ranking(fl, tuple(order))
    assert rk.compare(a, a.prime()) < 0
    if rk.compare(a, b) < 0:
        assert rk.compare(a.prime(), b.prime()) < 0


def test_orderly_versus_elimination():
    R = DiffRing("x y")
    p = R("x'' + y'")
    assert lis(p, R.ranking("y > x"))[0] == R.dv("x", 2)
    assert lis(p, R.ranking("y > x", "elim"))[0] == R.dv("y", 1)


def test_lis_example():
    R = DiffRing("x y")
    rk = R.ranking("y > x")
    p = R("x*(x+1)*y''^2 + x'*y'' + x^4")
    assert lis(p, rk) == (R.dv("y", 2), R("x^2 + x"), R("2*x*(x+1)*y'' + x'"))
    assert tail(p, rk) == R("x'*y'' + x^4")
    with pytest.raises(ConstantPolynomial):
        initial(R("3"), rk)


def test_lie_lorenz_cone():
    L = DiffRing("x y z")
    F = lorenz_field(L)
    p = L("2*x^2 - y^2 - z^2")
    assert lie(p, F) == -2 * p
    assert lie(L("x"), F) == L("y - x")
    assert lie(p, F, 2) == 4 * p
    with pytest.raises(NotNondifferential):
        lie(L("x'"), F)


def test_substitute_derivatives():
    L = DiffRing("x y z")
    F = lorenz_field(L)
    assert substitute_derivatives(L("x' + z"), F) == L("y - x + z")
    with pytest.raises(OrderTooHigh):
        substitute_derivatives(L("x''"), F)


def test_vector_field_odes():
    L = DiffRing("x y z")
    F = lorenz_field(L)
    assert F.ode(0) == L("x' - y + x")
    assert len(F.odes()) == 3
    with pytest.raises(Exception):
        VectorField([L("x'")])


def test_separant_is_partial_in_leader():
    R = DiffRing("x y")
    rk = R.ranking("y > x")
    p = R("x*y'^3 + y' + x")
    assert separant(p, rk) == R("3*x*y'^2 + 1")
    assert differentiate(p).coeff(R.dv("y", 2), 1) == separant(p, rk)
