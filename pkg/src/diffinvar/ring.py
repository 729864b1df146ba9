"""Named variable universes for building and printing polynomials."""
from __future__ import annotations

from .parsing import parse_expression
from .poly import DerivVar, DiffPoly
from .ranking import ELIMINATION, ORDERLY, Ranking


class DiffRing:
    """A list of base-variable names, e.g. ``DiffRing("x y z")``."""

    __slots__ = ("names", "_index")

    def __init__(self, names):
        if isinstance(names, str):
            names = names.split()
        self.names = list(names)
        self._index = {n: i for i, n in enumerate(self.names)}

    @property
    def n(self) -> int:
        return len(self.names)

    def __call__(self, text: str) -> DiffPoly:
        return parse_expression(text, self.names)

    def parse(self, text: str) -> DiffPoly:
        return parse_expression(text, self.names)

    def var(self, name: str, order: int = 0) -> DiffPoly:
        return DiffPoly.var(self._index[name], order)

    def dv(self, name: str, order: int = 0) -> DerivVar:
        return DerivVar(self._index[name], order)

    def gens(self) -> list:
        return [DiffPoly.var(i) for i in range(self.n)]

    def format(self, p: DiffPoly) -> str:
        return p.format(self.names)

    def ranking(self, spec: str, flavor: str = ORDERLY) -> Ranking:
        """Ranking from text such as ``"x > y > z"`` or ``"y < x"``."""
        if "<" in spec:
            order = [s.strip() for s in spec.split("<")][::-1]
        else:
            order = [s.strip() for s in spec.split(">")]
        if flavor not in (ORDERLY, ELIMINATION):
            raise ValueError(flavor)
        return Ranking(flavor, tuple(self._index[n] for n in order))
