"""Recursive-descent parser for commutative and noncommutative expressions.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := "-" unary | power
    power  := atom ("^" INT)?
    atom   := INT | INT "/" INT | "i" | NAME | "(" expr ")"
            | ("m" | "h") "[" expr "]"        (noncommutative mode only)

``p/q`` with integer literals is a single rational token; there is no
general division.  Juxtaposition is rejected, and ``i`` is reserved for the
imaginary unit.  In noncommutative mode variables may only appear inside
``m[...]``/``h[...]``, whose arguments are commutative expressions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ParseError
from .poly import CPoly, Registry
from .scalar import I, GScalar, as_scalar

__all__ = [
    "Token",
    "tokenize",
    "Num",
    "Imag",
    "Var",
    "Neg",
    "BinOp",
    "Pow",
    "Apply",
    "parse_expr",
    "to_text",
    "eval_poly",
    "eval_env",
    "parse_poly",
    "parse_env",
    "parse_scalar",
]

COMMUTATIVE = "commutative"
NONCOMMUTATIVE = "noncommutative"

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t]+)
  | (?P<nl>\n)
  | (?P<rat>\d+\s*/\s*\d+)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*^()\[\]])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # int, rat, name, op, end
    text: str
    line: int
    col: int


def tokenize(src: str, source: str | None = None) -> list:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            raise ParseError(f"unexpected character {src[pos]!r}", line, pos - line_start + 1, source)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind != "ws":
            out.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    out.append(Token("end", "", line, pos - line_start + 1))
    return out


# -- syntax tree ---------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Imag:
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Var:
    name: str
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Neg:
    arg: object
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class BinOp:
    op: str  # "+", "-", "*"
    left: object
    right: object
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Apply:
    kind: str  # "m" or "h"
    arg: object
    pos: tuple = field(default=(0, 0), compare=False)


class _Parser:
    def __init__(self, src: str, mode: str, source: str | None):
        if mode not in (COMMUTATIVE, NONCOMMUTATIVE):
            raise ValueError(f"unknown mode {mode!r}")
        self.tokens = tokenize(src, source)
        self.i = 0
        self.mode = mode
        self.source = source
        self.depth = 0  # nesting inside m[...] / h[...]

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.col, self.source)

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def accept(self, text: str) -> Token | None:
        if self.tok.kind == "op" and self.tok.text == text:
            return self.advance()
        return None

    def expect(self, text: str) -> Token:
        t = self.accept(text)
        if t is None:
            raise self.error(f"expected {text!r}, found {self._found()}")
        return t

    def _found(self) -> str:
        return "end of input" if self.tok.kind == "end" else repr(self.tok.text)

    def parse(self):
        if self.tok.kind == "end":
            raise self.error("empty expression")
        node = self.expr()
        if self.tok.kind != "end":
            if self.tok.kind in ("int", "rat", "name") or self.tok.text in ("(",):
                raise self.error(f"expected an operator before {self._found()} (use explicit '*')")
            raise self.error(f"unexpected {self._found()}")
        return node

    def expr(self):
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance()
            node = BinOp(op.text, node, self.term(), (op.line, op.col))
        return node

    def term(self):
        node = self.unary()
        while (op := self.accept("*")) is not None:
            node = BinOp("*", node, self.unary(), (op.line, op.col))
        return node

    def unary(self):
        if (op := self.accept("-")) is not None:
            return Neg(self.unary(), (op.line, op.col))
        return self.power()

    def power(self):
        node = self.atom()
        if (op := self.accept("^")) is not None:
            t = self.tok
            if t.kind != "int":
                raise self.error(f"exponent must be a non-negative integer, found {self._found()}")
            self.advance()
            node = Pow(node, int(t.text), (op.line, op.col))
        return node

    def atom(self):
        t = self.tok
        pos = (t.line, t.col)
        if t.kind == "int":
            self.advance()
            return Num(Fraction(int(t.text)), pos)
        if t.kind == "rat":
            self.advance()
            p, q = (int(s) for s in t.text.split("/"))
            if q == 0:
                raise self.error("zero denominator", t)
            return Num(Fraction(p, q), pos)
        if t.kind == "name":
            self.advance()
            if t.text == "i":
                return Imag(pos)
            if self.mode == NONCOMMUTATIVE and t.text in ("m", "h") and self.tok.text == "[":
                if self.depth:
                    raise self.error("m[...] and h[...] cannot be nested", t)
                self.advance()
                self.depth += 1
                arg = self.expr()
                self.depth -= 1
                self.expect("]")
                return Apply(t.text, arg, pos)
            if self.mode == NONCOMMUTATIVE and not self.depth:
                raise self.error(f"variable {t.text!r} must appear inside m[...] or h[...]", t)
            return Var(t.text, pos)
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        raise self.error(f"unexpected {self._found()}")


def parse_expr(src: str, mode: str = COMMUTATIVE, source: str | None = None):
    return _Parser(src, mode, source).parse()


# -- printing ------------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2}


def _prec(node) -> int:
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return 3
    if isinstance(node, Pow):
        return 4
    return 5


def to_text(node) -> str:
    """Canonical text with minimal parentheses; reparses to an equal tree."""

    def wrap(child, need):
        s = to_text(child)
        return f"({s})" if _prec(child) < need else s

    if isinstance(node, Num):
        v = node.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(node, Imag):
        return "i"
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Apply):
        return f"{node.kind}[{to_text(node.arg)}]"
    if isinstance(node, Neg):
        return "-" + wrap(node.arg, 3)
    if isinstance(node, Pow):
        return f"{wrap(node.base, 5)}^{node.exp}"
    if isinstance(node, BinOp):
        p = _PREC[node.op]
        sep = "*" if node.op == "*" else f" {node.op} "
        return wrap(node.left, p) + sep + wrap(node.right, p + 1)
    raise TypeError(f"not an expression node: {node!r}")


# -- evaluation ----------------------------------------------------------------


def _fold(node, leaf, ring_one):
    """Evaluate with ``leaf`` for variables/applications and ring arithmetic."""
    if isinstance(node, Num):
        return ring_one * as_scalar(node.value)
    if isinstance(node, Imag):
        return ring_one * I
    if isinstance(node, (Var, Apply)):
        return leaf(node)
    if isinstance(node, Neg):
        return -_fold(node.arg, leaf, ring_one)
    if isinstance(node, Pow):
        return _fold(node.base, leaf, ring_one) ** node.exp
    a = _fold(node.left, leaf, ring_one)
    b = _fold(node.right, leaf, ring_one)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    return a * b


def eval_poly(node, registry: Registry, source: str | None = None, allowed=None) -> CPoly:
    """CPoly value of a commutative tree; ``allowed`` optionally limits variable indices."""

    def leaf(n):
        if isinstance(n, Apply):
            raise ParseError(f"{n.kind}[...] is not allowed here", *n.pos, source)
        if n.name not in registry.names:
            raise ParseError(f"unknown variable {n.name!r}", *n.pos, source)
        k = registry.index(n.name)
        if allowed is not None and k not in allowed:
            raise ParseError(f"variable {n.name!r} is not allowed here", *n.pos, source)
        return registry.var(k)

    return _fold(node, leaf, registry.one())


def eval_env(node, alg, source: str | None = None):
    """EnvElement value of a noncommutative tree; factor order is kept."""

    def leaf(n):
        if isinstance(n, Var):
            raise ParseError(f"variable {n.name!r} must appear inside m[...] or h[...]", *n.pos, source)
        p = eval_poly(n.arg, alg.registry, source)
        return alg.m(p) if n.kind == "m" else alg.h(p)

    return _fold(node, leaf, alg.one())


def parse_poly(src: str, registry: Registry, source: str | None = None) -> CPoly:
    return eval_poly(parse_expr(src, COMMUTATIVE, source), registry, source)


def parse_env(src: str, alg, source: str | None = None):
    return eval_env(parse_expr(src, NONCOMMUTATIVE, source), alg, source)


_NO_VARS = Registry(())


def parse_scalar(src: str, source: str | None = None) -> GScalar:
    """A scalar literal such as ``3/2 + 2*i``."""
    return parse_poly(src, _NO_VARS, source).coefficient(())
