"""Floating-point corroboration of invariance: sample points, RK4 trajectories, drift.

Nothing here feeds back into the exact verdicts.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .lie import VectorField
from .poly import DerivVar, DiffPoly


def compile_poly(p: DiffPoly, n: int):
    """Vectorised float evaluator x -> p(x) for a nondifferential polynomial."""
    terms = []
    for m, c in p.terms.items():
        exps = np.zeros(n, dtype=int)
        for v, e in m:
            exps[v.var] = e
        terms.append((float(c), exps))

    def f(x):
        x = np.asarray(x, dtype=float)
        total = 0.0
        for c, exps in terms:
            total += c * np.prod(x ** exps)
        return total

    return f


def compile_field(F: VectorField):
    comps = [compile_poly(f, F.n) for f in F]

    def rhs(x):
        return np.array([g(x) for g in comps])

    return rhs


def sample_points(A: Sequence[DiffPoly], n: int, box: float = 2.0, tol: float = 1e-10,
                  attempts: int = 50, seed: int = 0, starts=None) -> list:
    """Points in [-box, box]^n where every generator is within tol of zero (damped Newton)."""
    A = [p for p in A if not p.is_zero()]
    if any(p.is_constant() for p in A):
        return []
    if not A:
        return [np.zeros(n)]
    funcs = [compile_poly(p, n) for p in A]
    jac = [[compile_poly(p.partial(DerivVar(i)), n) for i in range(n)] for p in A]
    rng = np.random.default_rng(seed)
    seeds = [np.asarray(s, dtype=float) for s in (starts or [])]
    seeds += [rng.uniform(-box, box, n) for _ in range(attempts)]
    out = []
    for x in seeds:
        x = x.copy()
        for _ in range(60):
            r = np.array([f(x) for f in funcs])
            if np.max(np.abs(r)) <= tol:
                break
            J = np.array([[g(x) for g in row] for row in jac])
            step, *_ = np.linalg.lstsq(J, -r, rcond=None)
            lam = 1.0
            base = np.linalg.norm(r)
            while lam > 1e-4:
                cand = x + lam * step
                if np.linalg.norm([f(cand) for f in funcs]) < base:
                    break
                lam /= 2
            x = x + lam * step
        r = np.array([f(x) for f in funcs])
        if np.max(np.abs(r)) <= tol and np.all(np.abs(x) <= box):
            if not any(np.allclose(x, y) for y in out):
                out.append(x)
    return out


@dataclass
class Trajectory:
    times: np.ndarray
    states: np.ndarray
    overflow: bool = False


def integrate(F: VectorField, x0, h: float, steps: int) -> Trajectory:
    """Classical fixed-step RK4."""
    if h <= 0:
        raise ValueError("step size must be positive")
    rhs = compile_field(F)
    x = np.asarray(x0, dtype=float)
    states = np.empty((steps + 1, len(x)))
    states[0] = x
    overflow = False
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(steps):
            k1 = rhs(x)
            k2 = rhs(x + h / 2 * k1)
            k3 = rhs(x + h / 2 * k2)
            k4 = rhs(x + h * k3)
            x = x + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
            if not np.all(np.isfinite(x)):
                overflow = True
                states = states[: k + 1]
                break
            states[k + 1] = x
    times = h * np.arange(len(states))
    return Trajectory(times, states, overflow)


@dataclass
class DriftReport:
    start: tuple
    horizon: float
    step: float
    residuals: list  # max relative residual per generator
    discrepancy: float  # step-halving difference of the residual profiles
    overflow: bool = False
    profile: list = field(default_factory=list, repr=False)

    @property
    def max_residual(self) -> float:
        return max(self.residuals, default=0.0)


def _profile(funcs, degs, traj: Trajectory, stride: int = 1) -> np.ndarray:
    states = traj.states[::stride]
    out = np.empty((len(states), len(funcs)))
    for i, x in enumerate(states):
        norm = np.linalg.norm(x)
        for j, (f, d) in enumerate(zip(funcs, degs)):
            out[i, j] = abs(f(x)) / (1.0 + norm ** d)
    return out


def drift(A: Sequence[DiffPoly], F: VectorField, x0, horizon: float = 5.0, h: float = 1e-3) -> DriftReport:
    """Relative residual |p(x(t))| / (1 + |x(t)|^deg p) along an RK4 trajectory, with a step-halving rerun."""
    A = [p for p in A if not p.is_zero()]
    n = F.n
    funcs = [compile_poly(p, n) for p in A]
    degs = [p.total_degree() for p in A]
    steps = int(round(horizon / h))
    coarse = integrate(F, x0, h, steps)
    fine = integrate(F, x0, h / 2, 2 * steps)
    pc = _profile(funcs, degs, coarse)
    pf = _profile(funcs, degs, fine, stride=2)
    m = min(len(pc), len(pf))
    disc = float(np.max(np.abs(pc[:m] - pf[:m]))) if m and funcs else 0.0
    residuals = [float(np.max(pc[:, j])) for j in range(len(funcs))] if len(pc) else []
    return DriftReport(tuple(float(c) for c in x0), horizon, h, residuals, disc,
                       coarse.overflow or fine.overflow, pc.max(axis=1).tolist() if funcs else [])
