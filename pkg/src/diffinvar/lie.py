"""Polynomial vector fields and Lie derivatives."""
from __future__ import annotations

from typing import Iterable

from .errors import NotNondifferential, OrderTooHigh
from .poly import ZERO, DerivVar, DiffPoly, partial


class VectorField:
    """The right-hand side f = (f_0, ..., f_{n-1}) of x' = f(x)."""

    __slots__ = ("components",)

    def __init__(self, components: Iterable[DiffPoly]):
        comps = tuple(components)
        for f in comps:
            if not f.is_nondifferential():
                raise NotNondifferential("vector field entries must be nondifferential")
        self.components = comps

    @property
    def n(self) -> int:
        return len(self.components)

    def __getitem__(self, i: int) -> DiffPoly:
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def __eq__(self, other) -> bool:
        return isinstance(other, VectorField) and self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def ode(self, i: int) -> DiffPoly:
        """The explicit equation x_i' - f_i."""
        return DiffPoly.var(i, 1) - self.components[i]

    def odes(self) -> list:
        return [self.ode(i) for i in range(self.n)]

    def derivative_map(self) -> dict:
        return {DerivVar(i, 1): f for i, f in enumerate(self.components)}


def lie(p: DiffPoly, F: VectorField, k: int = 1) -> DiffPoly:
    """k-fold Lie derivative of p along F."""
    if not p.is_nondifferential():
        raise NotNondifferential("lie derivative needs a nondifferential polynomial")
    for _ in range(k):
        acc = ZERO
        for v in p.derivvars():
            acc = acc + partial(p, v) * F[v.var]
        p = acc
    return p


def substitute_derivatives(p: DiffPoly, F: VectorField) -> DiffPoly:
    """Replace every first derivative x_i' by f_i."""
    if p.order() > 1:
        raise OrderTooHigh("only first derivatives can be substituted")
    return p.subs(F.derivative_map())
