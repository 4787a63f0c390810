"""Minimal arithmetic expression grammar for problem files.

Supported: real literals, the variables t and y, + - * / ^, parentheses and
the functions sin, cos, exp.  Expressions compile to plain Python callables
(t, y) -> float; overflow collapses to inf and invalid operations to nan so
the numerical layers can apply their own non-finite handling.
"""

import math
import re
from dataclasses import dataclass
from typing import Callable

__all__ = ["ExpressionError", "Expression", "compile_expression"]

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_]+)"
    r"|(?P<op>[-+*/^()]))"
)

_FUNCTIONS = {"sin": math.sin, "cos": math.cos, "exp": math.exp}


class ExpressionError(ValueError):
    """Grammar violation, reported with a character position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (position {position})")
        self.position = position


@dataclass(frozen=True)
class Expression:
    """A compiled expression; callable as f(t, y)."""

    source: str
    _fn: Callable[[float, float], float]

    def __call__(self, t: float, y: float = 0.0) -> float:
        return self._fn(t, y)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None or match.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            bad_at = len(text) - len(stripped)
            raise ExpressionError(f"unexpected character {text[bad_at]!r}", bad_at)
        kind = match.lastgroup
        tokens.append((kind, match.group(kind), match.start(kind)))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def advance(self):
        tok = self.peek()
        if tok is not None:
            self.i += 1
        return tok

    def expect_op(self, op: str):
        tok = self.peek()
        if tok is None or tok[0] != "op" or tok[1] != op:
            pos = tok[2] if tok else len(self.text)
            raise ExpressionError(f"expected {op!r}", pos)
        self.advance()

    def parse(self) -> Callable[[float, float], float]:
        fn = self.expr()
        tok = self.peek()
        if tok is not None:
            raise ExpressionError(f"unexpected token {tok[1]!r}", tok[2])
        return fn

    def expr(self):
        fn = self.term()
        while True:
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] in "+-":
                self.advance()
                rhs = self.term()
                if tok[1] == "+":
                    fn = (lambda a, b: lambda t, y: a(t, y) + b(t, y))(fn, rhs)
                else:
                    fn = (lambda a, b: lambda t, y: a(t, y) - b(t, y))(fn, rhs)
            else:
                return fn

    def term(self):
        fn = self.factor()
        while True:
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] in "*/":
                self.advance()
                rhs = self.factor()
                if tok[1] == "*":
                    fn = (lambda a, b: lambda t, y: a(t, y) * b(t, y))(fn, rhs)
                else:
                    fn = (lambda a, b: lambda t, y: _safe_div(a(t, y), b(t, y)))(fn, rhs)
            else:
                return fn

    def factor(self):
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] in "+-":
            self.advance()
            inner = self.factor()
            if tok[1] == "-":
                return lambda t, y: -inner(t, y)
            return inner
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "^":
            self.advance()
            expo = self.factor()  # right-associative
            return lambda t, y: _safe_pow(base(t, y), expo(t, y))
        return base

    def atom(self):
        tok = self.advance()
        if tok is None:
            raise ExpressionError("unexpected end of expression", len(self.text))
        kind, value, pos = tok
        if kind == "number":
            c = float(value)
            return lambda t, y: c
        if kind == "name":
            if value == "t":
                return lambda t, y: t
            if value == "y":
                return lambda t, y: y
            if value in _FUNCTIONS:
                func = _FUNCTIONS[value]
                self.expect_op("(")
                inner = self.expr()
                self.expect_op(")")
                return (lambda f, g: lambda t, y: _safe_call(f, g(t, y)))(func, inner)
            raise ExpressionError(f"unknown name {value!r}", pos)
        if kind == "op" and value == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ExpressionError(f"unexpected token {value!r}", pos)


def _safe_div(a: float, b: float) -> float:
    try:
        return a / b
    except ZeroDivisionError:
        if a == 0.0:
            return math.nan
        return math.copysign(math.inf, a) * math.copysign(1.0, b)


def _safe_pow(a: float, b: float) -> float:
    try:
        return float(a**b)
    except OverflowError:
        return math.inf
    except (ValueError, ZeroDivisionError):
        return math.nan


def _safe_call(f, x: float) -> float:
    try:
        return f(x)
    except (OverflowError, ValueError):
        return math.inf if f is math.exp else math.nan


def compile_expression(text: str) -> Expression:
    """Parse and compile ``text``; raises ExpressionError with a position."""
    if not text.strip():
        raise ExpressionError("empty expression", 0)
    return Expression(text, _Parser(text).parse())
