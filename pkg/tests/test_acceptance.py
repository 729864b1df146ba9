"""Acceptance criteria 1-12.  Each test prints one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` or directly with python.
"""
import random
import time

import pytest

from diffinvar import (
    DiffRing,
    VectorField,
    RgaOptions,
    RunLog,
    TriangulateOptions,
    branch_saturation,
    check_sufficient,
    degree_audit,
    diff_pseudo_div,
    groebner_basis,
    ideal_equal,
    intersect,
    lie,
    lie_closure,
    lis,
    member,
    r_bound,
    radical_member,
    rga_o,
    rtower,
    saturation,
    substitute_derivatives,
    t_bound,
    tower,
    triangulate,
    verify_trace,
)
from diffinvar.bounds import Magnitude, certified_lt
from diffinvar.groebner import RADICAL, radical_contains
from diffinvar.invariants import INVARIANT
from diffinvar.poly import differentiate
from diffinvar.ranking import Ranking
from diffinvar.validate import drift
from helpers import lorenz_field, product, random_field, random_nonconstant, random_poly, random_system

# pinned limits and tolerances
T1_SECONDS = 1.0
T2_SECONDS = 1.0
T3_SECONDS = 10.0
T4_SECONDS = 10.0
T5_SECONDS = 1.0
T6_SECONDS = 300.0
T7_SECONDS = 60.0
T8_SECONDS = 600.0
T11_SECONDS = 120.0
T12_SECONDS = 30.0
C8_INSTANCES = 50
C8_SEED = 2024
C11_SAMPLES = 500
C11_SEED = 11
C12_HORIZON = 5.0
C12_STEP = 1e-3
C12_DRIFT_TOL = 1e-4
C12_HALVING_TOL = 1e-6
C12_ESCAPE = 1e-1
C12_ESCAPE_HORIZON = 1.0

LORENZ = DiffRing("x y z")
F_LORENZ = lorenz_field(LORENZ)
CONE = LORENZ("2*x^2 - y^2 - z^2")


def report(num: int, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num:2d}: {detail}"
    print(line)
    _LINES.append(line)


_LINES: list = []


@pytest.fixture(autouse=True)
def _show(capsys):
    yield
    if _LINES:
        with capsys.disabled():
            print("\n" + _LINES[-1])
        _LINES.clear()


def _timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


def test_criterion_01_pseudodivision_golden():
    R = DiffRing("x y")
    rk = R.ranking("y > x")
    p, q = R("(x+1)*y'' + x^4"), R("(x^2-1)*y'^2")
    (r, tr), dt = _timed(lambda: diff_pseudo_div(p, q, rk))
    expected = R("(x^2-1)*(x-1)*y'*x^4")
    intermediate = R("(x-1)*y'*x^4 - x*x'*y'^2")
    ok = r == expected and intermediate in tr.remainders and verify_trace(p, q, r, tr) and dt < T1_SECONDS
    report(1, ok, f"remainder {R.format(r)}; intermediate seen={intermediate in tr.remainders}; {dt:.3f}s")
    assert ok


def test_criterion_02_leader_initial_separant():
    R = DiffRing("x y")
    p = R("x*(x+1)*y''^2 + x'*y'' + x^4")
    (lead, init, sep), dt = _timed(lambda: lis(p, R.ranking("y > x")))
    ok = (lead == R.dv("y", 2) and init == R("x*(x+1)") and sep == R("2*x*(x+1)*y'' + x'")
          and dt < T2_SECONDS)
    report(2, ok, f"leader y'', initial {R.format(init)}, separant {R.format(sep)}; {dt:.3f}s")
    assert ok


def test_criterion_03_jet_membership():
    J = DiffRing("x y z")
    gens = [J("y' - 2*x + y + x*z"), J("z' - x*y + z"), CONE, J("4*x*x' - 2*y*y' - 2*z*z'")]
    res, dt = _timed(lambda: member(J("x*(x' - y + x)"), gens))
    ok = res is True and dt < T3_SECONDS
    report(3, ok, f"x(x'-y+x) in ideal: {res}; {dt:.3f}s")
    assert ok


def test_criterion_04_coefficient_system_inconsistent():
    C = DiffRing("a1 a2 b1 b2 c1 c2")
    polys = [C(s) for s in ("a1*a2 - 2", "b1*b2 + 1", "c1*c2 + 1",
                            "a1*b2 + a2*b1", "a1*c2 + a2*c1", "b1*c2 + b2*c1")]
    basis, dt = _timed(lambda: groebner_basis(polys))
    ok = [str(g) for g in basis] == ["1"] and dt < T4_SECONDS
    report(4, ok, f"basis {[str(g) for g in basis]}; {dt:.3f}s")
    assert ok


def test_criterion_05_cone_lie_derivative():
    def run():
        ld = lie(CONE, F_LORENZ)
        bridge = substitute_derivatives(differentiate(CONE), F_LORENZ)
        return ld, bridge, check_sufficient([CONE], F_LORENZ)

    (ld, bridge, verdict), dt = _timed(run)
    ok = ld == -2 * CONE and bridge == ld and verdict.value == INVARIANT and dt < T5_SECONDS
    report(5, ok, f"lie = {LORENZ.format(ld)}; verdict {verdict.value}; {dt:.3f}s")
    assert ok


PARAM = DiffRing("x y z a b c")
CHAINS = [
    ["a", "b", "c"],
    ["2*x^2 - y^2 - z^2", "a + 2*c", "b - c"],
    ["x", "y", "c"],
    ["x - y", "y^2 - 1", "z - 1", "a + b + c"],
    ["x", "y", "z"],
]


def test_criterion_06_parametric_lorenz_chains():
    P = PARAM
    F = VectorField([P("y - x"), P("2*x - y - x*z"), P("x*y - z"), P("0"), P("0"), P("0")])
    A = F.odes() + [P("a*x^2 + b*y^2 + c*z^2")]
    opts = RgaOptions(ranking=P.ranking("x > y > z > a > b > c"), prune="groebner", check_assumptions=False)

    def run():
        dec = rga_o(A, [], F, opts)
        sats = [branch_saturation(b.system) for b in dec.branches]
        chains = [[P(s) for s in ch] for ch in CHAINS]
        found = [any(ideal_equal(s, ch, RADICAL) for s in sats) for ch in chains]
        covered = [any(radical_contains(s, ch) for ch in chains) for s in sats]
        return dec, found, covered

    (dec, found, covered), dt = _timed(run)
    ok = all(found) and all(covered) and dt < T6_SECONDS
    report(6, ok, f"{len(dec.branches)} branches; chains matched {found}; "
                  f"every branch inside a chain ideal: {all(covered)}; {dt:.1f}s")
    assert ok


def test_criterion_07_maximal_invariant():
    def run():
        dec = rga_o(F_LORENZ.odes() + [CONE], [], F_LORENZ, RgaOptions(ranking=LORENZ.ranking("x > y > z")))
        sats = [branch_saturation(b.system) for b in dec.branches]
        inter = intersect(sats)
        gens, closed, stage = lie_closure([CONE], F_LORENZ)
        return inter, ideal_equal(inter, [CONE], RADICAL), closed, stage, gens

    (inter, eq, closed, stage, gens), dt = _timed(run)
    ok = eq and closed and stage == 0 and ideal_equal(gens, inter, RADICAL) and dt < T7_SECONDS
    report(7, ok, f"intersection radically equal to (cone): {eq}; Lie closure closed at stage {stage}; {dt:.2f}s")
    assert ok


def _criterion8_runs():
    rng = random.Random(C8_SEED)
    runs = []
    for _ in range(C8_INSTANCES):
        A, S, n, d = random_system(rng)
        log = RunLog()
        res = triangulate(A, S, TriangulateOptions(ranking=Ranking.default(n), log=log))
        runs.append((A, S, n, d, res, log))
    return runs


_C8 = {}


def c8_runs():
    if "runs" not in _C8:
        _C8["runs"], _C8["time"] = _timed(_criterion8_runs)
    return _C8["runs"]


def test_criterion_08_triangulate_soundness():
    t = time.perf_counter()
    runs = c8_runs()
    bad = []
    for k, (A, S, n, d, res, log) in enumerate(runs):
        sats = [saturation(list(s.equations), product(s.inequations)) for s, _ in res]
        forward = all(radical_member(p, sat) for sat in sats for p in A)
        base = saturation(A, product(S))
        back = all(radical_member(g, base) for g in intersect(sats))
        if not (forward and back):
            bad.append(k)
    dt = time.perf_counter() - t
    ok = not bad and dt < T8_SECONDS
    report(8, ok, f"{len(runs)} random instances, failures {bad}; {dt:.2f}s")
    assert ok


def test_criterion_09_rank_measure_decreases():
    runs = c8_runs()
    pairs = [(p, c) for *_, log in runs for p, c in log.measure_pairs]
    bad = [(p, c) for p, c in pairs if not c < p]
    ok = not bad and len(pairs) > 0
    report(9, ok, f"{len(pairs)} parent/child measure pairs, {len(bad)} non-decreasing")
    assert ok


def test_criterion_10_degree_bounds():
    exact = (t_bound(1, 1), t_bound(2, 1), t_bound(1, 2), r_bound(1, 1))
    values_ok = [m == Magnitude.exact(v) for m, v in zip(exact, (2, 10, 10, 39))]
    tri_grid = [certified_lt(t_bound(d, n), tower(d, n)) for d in range(1, 5) for n in range(1, 4)]
    rga_grid = [certified_lt(r_bound(d, n), rtower(d, n)) for d in (1, 2) for n in (1, 2)]
    audits = [degree_audit(log, d, n) for A, S, n, d, res, log in c8_runs()]
    ok = all(values_ok) and all(v is True for v in tri_grid) and all(v is True for v in rga_grid) and all(audits)
    report(10, ok, f"T/R values {values_ok}; T<Tower on 12 grid points: {sum(v is True for v in tri_grid)}/12; "
                   f"R<RTower on 4: {sum(v is True for v in rga_grid)}/4; audits {sum(audits)}/{len(audits)}")
    assert ok


def test_criterion_11_trace_and_derivation_laws():
    rng = random.Random(C11_SEED)
    t = time.perf_counter()
    trace_fail = law_fail = bridge_fail = 0
    for _ in range(C11_SAMPLES):
        n = rng.randint(1, 3)
        rk = Ranking(rng.choice(["orderly", "elim"]), tuple(rng.sample(range(n), n)))
        p = random_poly(rng, n, 3, order=1, terms=4)
        q = random_nonconstant(rng, n, 3, order=1, terms=3)
        r, tr = diff_pseudo_div(p, q, rk)
        trace_fail += not verify_trace(p, q, r, tr)
    for _ in range(C11_SAMPLES):
        n = rng.randint(1, 3)
        F = random_field(rng, n)
        p, q = random_poly(rng, n, 3), random_poly(rng, n, 3)
        law_fail += lie(p + q, F) != lie(p, F) + lie(q, F)
        law_fail += lie(p * q, F) != lie(p, F) * q + p * lie(q, F)
        bridge_fail += substitute_derivatives(differentiate(p), F) != lie(p, F)
    dt = time.perf_counter() - t
    ok = trace_fail == 0 and law_fail == 0 and bridge_fail == 0 and dt < T11_SECONDS
    report(11, ok, f"trace failures {trace_fail}/{C11_SAMPLES}; derivation-law failures {law_fail}; "
                   f"bridge failures {bridge_fail}; {dt:.2f}s")
    assert ok


def test_criterion_12_numerical_drift():
    def run():
        cone = drift([CONE], F_LORENZ, (1.0, 1.0, 1.0), C12_HORIZON, C12_STEP)
        plane = drift([LORENZ("x")], F_LORENZ, (0.0, 1.0, 0.0), C12_ESCAPE_HORIZON, C12_STEP)
        return cone, plane

    (cone, plane), dt = _timed(run)
    ok = (cone.max_residual <= C12_DRIFT_TOL and cone.discrepancy <= C12_HALVING_TOL
          and plane.max_residual > C12_ESCAPE and dt < T12_SECONDS)
    report(12, ok, f"cone drift {cone.max_residual:.2e} (halving {cone.discrepancy:.2e}); "
                   f"plane drift {plane.max_residual:.2e}; {dt:.2f}s")
    assert ok


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-v"]))
