"""Tokenizer and recursive-descent parsers for polynomials and system files."""
from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import SpecSyntaxError, UndeclaredVariable
from .poly import DiffPoly

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<num>\d+)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()';=>,])
    """,
    re.VERBOSE,
)

KEYWORDS = {"vars", "ranking", "field", "eqs", "ineqs"}


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list:
    out = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise SpecSyntaxError(line, pos - line_start + 1, f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            out.append(Token(kind, m.group(), line, m.start() - line_start + 1))
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


class _Cursor:
    def __init__(self, tokens: list):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def at(self, text: str) -> bool:
        t = self.tokens[self.i]
        return t.kind == "op" and t.text == text

    def expect(self, text: str) -> Token:
        t = self.next()
        if t.kind != "op" or t.text != text:
            raise SpecSyntaxError(t.line, t.col, f"expected {text!r}, found {t.text or 'end of input'!r}")
        return t


class _ExprParser:
    def __init__(self, cur: _Cursor, names: dict):
        self.cur = cur
        self.names = names

    def expr(self) -> DiffPoly:
        acc = self.term()
        while self.cur.at("+") or self.cur.at("-"):
            op = self.cur.next().text
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> DiffPoly:
        acc = self.unary()
        while self.cur.at("*") or self.cur.at("/"):
            tok = self.cur.next()
            rhs = self.unary()
            if tok.text == "*":
                acc = acc * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise SpecSyntaxError(tok.line, tok.col, "division only by a nonzero rational")
                acc = acc.scale(1 / rhs.constant_value())
        return acc

    def unary(self) -> DiffPoly:
        if self.cur.at("-"):
            self.cur.next()
            return -self.unary()
        if self.cur.at("+"):
            self.cur.next()
            return self.unary()
        return self.power()

    def power(self) -> DiffPoly:
        base = self.atom()
        if self.cur.at("^"):
            self.cur.next()
            paren = self.cur.at("(")
            if paren:
                self.cur.next()
            t = self.cur.next()
            if t.kind != "num":
                raise SpecSyntaxError(t.line, t.col, "exponent must be a natural number")
            if paren:
                self.cur.expect(")")
            base = base ** int(t.text)
        return base

    def atom(self) -> DiffPoly:
        t = self.cur.next()
        if t.kind == "num":
            return DiffPoly.constant(Fraction(int(t.text)))
        if t.kind == "name":
            if t.text not in self.names:
                raise UndeclaredVariable(f"line {t.line}, col {t.col}: undeclared variable {t.text!r}")
            k = 0
            while self.cur.at("'"):
                self.cur.next()
                k += 1
            return DiffPoly.var(self.names[t.text], k)
        if t.kind == "op" and t.text == "(":
            e = self.expr()
            self.cur.expect(")")
            return e
        raise SpecSyntaxError(t.line, t.col, f"unexpected {t.text or 'end of input'!r}")


def parse_expression(text: str, names: list) -> DiffPoly:
    cur = _Cursor(tokenize(text))
    p = _ExprParser(cur, {n: i for i, n in enumerate(names)}).expr()
    t = cur.peek()
    if t.kind != "eof":
        raise SpecSyntaxError(t.line, t.col, f"trailing input {t.text!r}")
    return p


@dataclass
class SystemSpec:
    """Parsed contents of a system file."""

    variables: list
    field: dict = dc_field(default_factory=dict)  # var index -> DiffPoly
    equations: list = dc_field(default_factory=list)
    inequations: list = dc_field(default_factory=list)
    ranking: tuple | None = None  # (flavor, [names highest first])
    options: dict = dc_field(default_factory=dict)

    def vector_field(self):
        from .lie import VectorField
        from .poly import ZERO

        return VectorField([self.field.get(i, ZERO) for i in range(len(self.variables))])

    def make_ranking(self):
        from .ranking import Ranking

        if self.ranking is None:
            return Ranking.default(len(self.variables))
        flavor, order = self.ranking
        idx = {n: i for i, n in enumerate(self.variables)}
        return Ranking(flavor, tuple(idx[n] for n in order))

    def to_text(self) -> str:
        names = self.variables
        lines = ["vars " + " ".join(names) + ";"]
        if self.ranking is not None:
            flavor, order = self.ranking
            lines.append(f"ranking {flavor} " + " > ".join(order) + ";")
        if self.field:
            parts = [f"{names[i]}' = {self.field[i].format(names, True)};" for i in sorted(self.field)]
            lines.append("field " + " ".join(parts))
        lines.append("eqs " + " ".join(p.format(names, True) + ";" for p in self.equations) if self.equations else "eqs ;")
        lines.append("ineqs " + " ".join(p.format(names, True) + ";" for p in self.inequations) if self.inequations else "ineqs ;")
        return "\n".join(lines) + "\n"


def parse_spec(text: str) -> SystemSpec:
    """Parse the system-file grammar (vars / ranking / field / eqs / ineqs)."""
    cur = _Cursor(tokenize(text))
    spec = None
    names: dict = {}
    section = None
    while cur.peek().kind != "eof":
        t = cur.peek()
        if t.kind == "name" and t.text in KEYWORDS:
            cur.next()
            section = t.text
            if section == "vars":
                if spec is not None:
                    raise SpecSyntaxError(t.line, t.col, "duplicate vars declaration")
                vs = []
                while cur.peek().kind == "name":
                    n = cur.next()
                    if n.text in KEYWORDS:
                        raise SpecSyntaxError(n.line, n.col, f"reserved word {n.text!r}")
                    if n.text in vs:
                        raise SpecSyntaxError(n.line, n.col, f"duplicate variable {n.text!r}")
                    vs.append(n.text)
                cur.expect(";")
                spec = SystemSpec(variables=vs)
                names = {n: i for i, n in enumerate(vs)}
                section = None
                continue
            if spec is None:
                raise SpecSyntaxError(t.line, t.col, "vars must be declared first")
            if section == "ranking":
                _parse_ranking(cur, spec, names)
                section = None
                continue
            if cur.at(";"):
                cur.next()
                continue
        elif section in ("field", "eqs", "ineqs") and spec is not None:
            pass
        else:
            raise SpecSyntaxError(t.line, t.col, f"unexpected {t.text!r}")
        if section == "field":
            _parse_assignment(cur, spec, names)
        else:
            p = _ExprParser(cur, names).expr()
            cur.expect(";")
            if section == "eqs":
                spec.equations.append(p)
            else:
                if p.is_zero():
                    raise SpecSyntaxError(t.line, t.col, "inequation is identically zero")
                spec.inequations.append(p)
    if spec is None:
        t = cur.peek()
        raise SpecSyntaxError(t.line, t.col, "missing vars declaration")
    return spec


def _parse_ranking(cur: _Cursor, spec: SystemSpec, names: dict) -> None:
    t = cur.next()
    if t.kind != "name" or t.text not in ("orderly", "elim"):
        raise SpecSyntaxError(t.line, t.col, "ranking flavor must be 'orderly' or 'elim'")
    order = []
    while True:
        n = cur.next()
        if n.kind != "name" or n.text not in names:
            raise SpecSyntaxError(n.line, n.col, f"expected a declared variable, found {n.text!r}")
        order.append(n.text)
        if cur.at(">"):
            cur.next()
            continue
        cur.expect(";")
        break
    if sorted(order) != sorted(spec.variables):
        raise SpecSyntaxError(t.line, t.col, "ranking must list every variable exactly once")
    spec.ranking = (t.text, order)


def _parse_assignment(cur: _Cursor, spec: SystemSpec, names: dict) -> None:
    n = cur.next()
    if n.kind != "name" or n.text not in names:
        raise SpecSyntaxError(n.line, n.col, f"expected a declared variable, found {n.text!r}")
    cur.expect("'")
    cur.expect("=")
    i = names[n.text]
    if i in spec.field:
        raise SpecSyntaxError(n.line, n.col, f"{n.text}' assigned twice")
    rhs = _ExprParser(cur, names).expr()
    if not rhs.is_nondifferential():
        raise SpecSyntaxError(n.line, n.col, "field entries must be nondifferential")
    cur.expect(";")
    spec.field[i] = rhs
