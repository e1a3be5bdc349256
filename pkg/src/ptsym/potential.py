"""Recursive-descent parser for one-variable potential expressions ``V(x)``.

Grammar (lowest to highest precedence)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' unary)?          # right-associative
    atom   := NUMBER | 'x' | FUNC '(' expr ')' | '(' expr ')'

``-x^2`` parses as ``-(x^2)`` and ``2^-1`` is allowed.  There is no unary plus.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import PotentialSyntaxError, UnknownFunctionError, UnknownIdentifierError

FUNCTIONS = {
    "exp": np.exp,
    "sin": np.sin,
    "cos": np.cos,
    "tanh": np.tanh,
    "abs": np.abs,
    "sqrt": np.sqrt,
}

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))"
)


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Expr"


Expr = Union[Num, Var, Neg, BinOp, Call]


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise PotentialSyntaxError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, pos = self.take()
        if val != value:
            found = "end of input" if kind == "end" else repr(val)
            raise PotentialSyntaxError(f"expected {value!r}, found {found}", pos)

    def expr(self) -> Expr:
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Expr:
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            return BinOp("^", base, self.unary())
        return base

    def atom(self) -> Expr:
        kind, val, pos = self.take()
        if kind == "num":
            return Num(float(val))
        if kind == "name":
            if val == "x":
                return Var()
            if val in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(val, arg)
            if self.peek()[:2] == ("op", "("):
                raise UnknownFunctionError(f"unknown function {val!r}", pos)
            raise UnknownIdentifierError(f"unknown identifier {val!r}", pos)
        if (kind, val) == ("op", "("):
            node = self.expr()
            self.expect(")")
            return node
        found = "end of input" if kind == "end" else repr(val)
        raise PotentialSyntaxError(f"unexpected {found}", pos)


def parse_potential(text: str) -> Expr:
    if not text or not text.strip():
        raise PotentialSyntaxError("empty expression", 0)
    parser = _Parser(text)
    node = parser.expr()
    kind, val, pos = parser.peek()
    if kind != "end":
        raise PotentialSyntaxError(f"unexpected {val!r}", pos)
    return node


def evaluate(node: Expr, x):
    """Evaluate ``node`` at scalar or array ``x``."""
    if isinstance(node, Num):
        return np.full(np.shape(x), node.value)
    if isinstance(node, Var):
        return np.asarray(x, dtype=float)
    if isinstance(node, Neg):
        return -evaluate(node.operand, x)
    if isinstance(node, Call):
        with np.errstate(all="ignore"):
            return FUNCTIONS[node.func](evaluate(node.arg, x))
    a, b = evaluate(node.left, x), evaluate(node.right, x)
    with np.errstate(all="ignore"):
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if node.op == "/":
            return a / b
        return np.power(a, b)


def format_expr(node: Expr) -> str:
    """Fully parenthesized text that parses back to an equivalent tree."""
    if isinstance(node, Num):
        return repr(node.value)
    if isinstance(node, Var):
        return "x"
    if isinstance(node, Neg):
        return f"(-{format_expr(node.operand)})"
    if isinstance(node, Call):
        return f"{node.func}({format_expr(node.arg)})"
    return f"({format_expr(node.left)} {node.op} {format_expr(node.right)})"
