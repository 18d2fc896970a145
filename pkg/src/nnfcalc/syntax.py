"""ASCII concrete syntax.

    formula := disj
    disj    := conj ("|" conj)*
    conj    := unit ("&" unit)*
    unit    := "~" unit | ("A" | "E") var unit | atom | "(" formula ")"
    atom    := PRED "(" var ("," var)* ")"

A quantifier binds the smallest unit that follows it, so ``A x1 F(x1) & G(x1)``
leaves the second ``x1`` unbound; wider scopes need parentheses.
"""

from __future__ import annotations

import re
from typing import List, Optional, Tuple

from .formula import (
    And, Atom, Exists, Forall, Formula, Not, Or, SAT, Sat, Var, free_vars,
)

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<pred>[A-Z][A-Za-z0-9]*)
  | (?P<var>[a-z][0-9]+(?:_[0-9]+)*)
  | (?P<sat>sat\b)
  | (?P<punct>[()~&|,])
    """,
    re.VERBOSE,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        where = f" at line {line}, column {col}" if line else ""
        super().__init__(message + where)
        self.line = line
        self.col = col


def _tokenize(text: str) -> List[Tuple[str, str, int, int]]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        value = m.group()
        col = pos - line_start + 1
        if kind == "ws":
            for i, ch in enumerate(value):
                if ch == "\n":
                    line += 1
                    line_start = pos + i + 1
        else:
            if kind == "pred" and value in ("A", "E"):
                kind = "quant"
            tokens.append((kind, value, line, col))
        pos = m.end()
    tokens.append(("eof", "", line, pos - line_start + 1))
    return tokens


def _parse_var(name: str) -> Var:
    head, *subs = name.split("_")
    return Var(head[0], int(head[1:]), tuple(int(s) for s in subs))


class _Parser:
    def __init__(self, text: str, allow_y0: bool, allow_sat: bool):
        self.tokens = _tokenize(text)
        self.i = 0
        self.allow_y0 = allow_y0
        self.allow_sat = allow_sat

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind: Optional[str] = None, value: Optional[str] = None):
        tok = self.tokens[self.i]
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = repr(value) if value else kind
            got = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise ParseError(f"syntax error: expected {want}, got {got}", tok[2], tok[3])
        self.i += 1
        return tok

    def variable(self) -> Var:
        tok = self.take("var")
        v = _parse_var(tok[1])
        if v.kind == "y" and v.base == 0 and not self.allow_y0:
            raise ParseError("variable y0 is reserved", tok[2], tok[3])
        return v

    def formula(self) -> Formula:
        left = self.conj()
        while self.peek()[1] == "|":
            self.take()
            left = Or(left, self.conj())
        return left

    def conj(self) -> Formula:
        left = self.unit()
        while self.peek()[1] == "&":
            self.take()
            left = And(left, self.unit())
        return left

    def unit(self) -> Formula:
        kind, value, line, col = self.peek()
        if value == "~":
            self.take()
            return Not(self.unit())
        if kind == "quant":
            self.take()
            v = self.variable()
            body = self.unit()
            return Forall(v, body) if value == "A" else Exists(v, body)
        if value == "(":
            self.take()
            inner = self.formula()
            self.take(value=")")
            return inner
        if kind == "sat" and self.allow_sat:
            self.take()
            return SAT
        if kind == "pred":
            self.take()
            if self.peek()[1] != "(":
                raise ParseError(f"predicate {value} needs at least one argument", line, col)
            self.take()
            args = [self.variable()]
            while self.peek()[1] == ",":
                self.take()
                args.append(self.variable())
            self.take(value=")")
            return Atom(value, tuple(args))
        got = "end of input" if kind == "eof" else repr(value)
        raise ParseError(f"syntax error: unexpected {got}", line, col)


def parse(text: str, allow_y0: bool = False, allow_sat: bool = False) -> Formula:
    p = _Parser(text, allow_y0, allow_sat)
    f = p.formula()
    p.take("eof")
    unbound = free_vars(f)
    if unbound:
        names = ", ".join(sorted(str(v) for v in unbound))
        raise ParseError(f"unbound variable {names}")
    return f


def to_text(f: Formula) -> str:
    if isinstance(f, Atom):
        return f"{f.pred}({','.join(str(a) for a in f.args)})"
    if isinstance(f, Sat):
        return "sat"
    if isinstance(f, Not):
        return "~" + _unit(f.body)
    if isinstance(f, (Forall, Exists)):
        q = "A" if isinstance(f, Forall) else "E"
        return f"{q} {f.var} {_unit(f.body)}"
    if isinstance(f, And):
        left = _unit(f.left) if isinstance(f.left, Or) else to_text(f.left)
        return f"{left} & {_unit(f.right)}"
    left = to_text(f.left)
    right = to_text(f.right)
    if isinstance(f.right, Or):
        right = f"({right})"
    return f"{left} | {right}"


def _unit(f: Formula) -> str:
    text = to_text(f)
    return f"({text})" if isinstance(f, (And, Or)) else text
