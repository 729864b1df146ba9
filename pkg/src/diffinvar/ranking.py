"""Differential rankings and leader / initial / separant extraction."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ConstantPolynomial
from .poly import DerivVar, DiffPoly, partial

ORDERLY = "orderly"
ELIMINATION = "elim"


@dataclass(frozen=True)
class Ranking:
    """Orderly or elimination ranking over a base-variable order.

    ``order`` lists base variable indices from highest to lowest.
    """

    flavor: str
    order: tuple

    def __post_init__(self):
        if self.flavor not in (ORDERLY, ELIMINATION):
            raise ValueError(f"unknown ranking flavor {self.flavor!r}")
        if sorted(self.order) != list(range(len(self.order))):
            raise ValueError("ranking order must be a permutation of 0..n-1")
        object.__setattr__(self, "_pos", {v: len(self.order) - 1 - i for i, v in enumerate(self.order)})

    @classmethod
    def default(cls, n: int, flavor: str = ORDERLY) -> "Ranking":
        """x_{n-1} > ... > x_0."""
        return cls(flavor, tuple(range(n - 1, -1, -1)))

    @property
    def n(self) -> int:
        return len(self.order)

    def pos(self, var: int) -> int:
        """Rank position of a base variable; larger means higher."""
        return self._pos[var]

    def key(self, v: DerivVar) -> tuple:
        if self.flavor == ORDERLY:
            return (v.order, self._pos[v.var])
        return (self._pos[v.var], v.order)

    def compare(self, a: DerivVar, b: DerivVar) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def leader(self, p: DiffPoly) -> DerivVar:
        vs = p.derivvars()
        if not vs:
            raise ConstantPolynomial("constant polynomial has no leader")
        return max(vs, key=self.key)


def lis(p: DiffPoly, rk: Ranking) -> tuple:
    """(leader, initial, separant) of a non-constant polynomial."""
    v = rk.leader(p)
    d = p.degree(v)
    return v, p.coeff(v, d), partial(p, v)


def initial(p: DiffPoly, rk: Ranking) -> DiffPoly:
    v = rk.leader(p)
    return p.coeff(v, p.degree(v))


def separant(p: DiffPoly, rk: Ranking) -> DiffPoly:
    return partial(p, rk.leader(p))


def tail(p: DiffPoly, rk: Ranking) -> DiffPoly:
    """p minus its initial times the top power of its leader."""
    v = rk.leader(p)
    d = p.degree(v)
    return p - p.coeff(v, d) * DiffPoly.of(v) ** d
