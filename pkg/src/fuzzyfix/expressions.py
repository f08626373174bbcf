"""A small arithmetic expression language for maps and gauges.

Grammar (operator precedence low to high, ``^`` right-associative):

    expr      := term (('+' | '-') term)*
    term      := factor (('*' | '/') factor)*
    factor    := base ('^' factor)?
    base      := NUMBER | IDENT | IDENT '(' args ')' | '(' expr ')'
    condition := expr ('<' | '<=' | '>' | '>=' | '==') expr

Builtins: ``min``, ``max`` (two or more arguments), ``exp``, ``ln``,
``abs`` (one argument), ``piecewise(condition, a, b)``.  Comparisons are
only valid as the first argument of ``piecewise``.  Free variables are
restricted to ``x``, ``t``, ``tau``, ``s``.  There is no recursion and no
looping; evaluation is total on the declared domain or raises a domain
error carrying the source span.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Iterator, Optional

ALLOWED_VARIABLES = ("x", "t", "tau", "s")

# builtin name -> (min arity, max arity or None for unbounded)
BUILTINS = {"min": (2, None), "max": (2, None), "exp": (1, 1), "ln": (1, 1),
            "abs": (1, 1), "piecewise": (3, 3)}

CMP_OPS = ("<=", ">=", "==", "<", ">")


class ExpressionError(ValueError):
    """Parse or evaluation failure with a 1-based source position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Span:
    line: int = field(compare=False, default=1)
    column: int = field(compare=False, default=1)


@dataclass(frozen=True)
class Num:
    value: float
    span: Span = field(compare=False, default=Span())


@dataclass(frozen=True)
class Var:
    name: str
    span: Span = field(compare=False, default=Span())


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object
    span: Span = field(compare=False, default=Span())


@dataclass(frozen=True)
class Cmp:
    op: str
    left: object
    right: object
    span: Span = field(compare=False, default=Span())


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple
    span: Span = field(compare=False, default=Span())


_TOKEN_RE = re.compile(r"""
    (?P<number>\d+(\.\d*)?([eE][+-]?\d+)?|\.\d+([eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<cmp><=|>=|==|<|>)
  | (?P<op>[-+*/^])
  | (?P<lparen>\()
  | (?P<rparen>\))
  | (?P<comma>,)
  | (?P<ws>\s+)
""", re.VERBOSE)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int
    column: int


def _tokenize(src: str) -> Iterator[_Token]:
    line, col = 1, 1
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            raise ExpressionError(f"unexpected character {src[pos]!r}", line, col)
        kind = m.lastgroup
        text = m.group()
        if kind != "ws":
            yield _Token(kind, text, line, col)
        newlines = text.count("\n")
        if newlines:
            line += newlines
            col = len(text) - text.rfind("\n")
        else:
            col += len(text)
        pos = m.end()
    yield _Token("eof", "", line, col)


class _Parser:
    def __init__(self, src: str):
        self.tokens = list(_tokenize(src))
        self.pos = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.current
        self.pos += 1
        return tok

    def error(self, message: str, tok: Optional[_Token] = None):
        tok = tok or self.current
        raise ExpressionError(message, tok.line, tok.column)

    def expect(self, kind: str, what: str) -> _Token:
        if self.current.kind != kind:
            self.error(f"expected {what}, found "
                       f"{self.current.text or 'end of input'!r}")
        return self.advance()

    def parse(self):
        tree = self.expr()
        if self.current.kind != "eof":
            self.error(f"unexpected trailing input {self.current.text!r}")
        return tree

    def expr(self):
        node = self.term()
        while self.current.kind == "op" and self.current.text in "+-":
            op = self.advance()
            right = self.term()
            node = BinOp(op.text, node, right, Span(op.line, op.column))
        return node

    def term(self):
        node = self.factor()
        while self.current.kind == "op" and self.current.text in "*/":
            op = self.advance()
            right = self.factor()
            node = BinOp(op.text, node, right, Span(op.line, op.column))
        return node

    def factor(self):
        node = self.base()
        if self.current.kind == "op" and self.current.text == "^":
            op = self.advance()
            right = self.factor()      # right-associative
            node = BinOp("^", node, right, Span(op.line, op.column))
        return node

    def base(self):
        tok = self.current
        if tok.kind == "number":
            self.advance()
            return Num(float(tok.text), Span(tok.line, tok.column))
        if tok.kind == "ident":
            self.advance()
            if self.current.kind == "lparen":
                return self.call(tok)
            if tok.text not in ALLOWED_VARIABLES:
                if tok.text in BUILTINS:
                    self.error(f"builtin {tok.text!r} needs arguments", tok)
                self.error(f"unknown identifier {tok.text!r}", tok)
            return Var(tok.text, Span(tok.line, tok.column))
        if tok.kind == "lparen":
            self.advance()
            node = self.expr()
            self.expect("rparen", "')'")
            return node
        self.error(f"unexpected token {tok.text or 'end of input'!r}")

    def call(self, name_tok: _Token):
        name = name_tok.text
        if name not in BUILTINS:
            self.error(f"unknown identifier {name!r}", name_tok)
        self.expect("lparen", "'('")
        args = []
        if self.current.kind != "rparen":
            first = name == "piecewise"
            while True:
                args.append(self.condition() if first else self.expr())
                first = False
                if self.current.kind == "comma":
                    self.advance()
                    continue
                break
        self.expect("rparen", "')'")
        lo, hi = BUILTINS[name]
        if len(args) < lo or (hi is not None and len(args) > hi):
            expected = str(lo) if hi == lo else (f"at least {lo}" if hi is None
                                                 else f"{lo} to {hi}")
            self.error(f"{name} takes {expected} argument(s), got {len(args)}",
                       name_tok)
        if name == "piecewise" and not isinstance(args[0], Cmp):
            self.error("piecewise condition must be a comparison", name_tok)
        return Call(name, tuple(args), Span(name_tok.line, name_tok.column))

    def condition(self):
        left = self.expr()
        if self.current.kind != "cmp":
            return left     # arity/shape validation happens in the caller
        op = self.advance()
        right = self.expr()
        return Cmp(op.text, left, right, Span(op.line, op.column))


def parse_expression(src: str):
    """Parse a source string into an expression tree with source spans."""
    return _Parser(src).parse()


def free_variables(tree) -> set[str]:
    if isinstance(tree, Var):
        return {tree.name}
    if isinstance(tree, (BinOp, Cmp)):
        return free_variables(tree.left) | free_variables(tree.right)
    if isinstance(tree, Call):
        out: set[str] = set()
        for a in tree.args:
            out |= free_variables(a)
        return out
    return set()


def evaluate(tree, env: dict) -> float:
    """Evaluate a tree in an environment mapping variable names to floats.

    Only the selected branch of a piecewise is evaluated.  Raises
    :class:`ExpressionError` for missing variables and domain failures
    (division by zero, log of a nonpositive value).
    """
    if isinstance(tree, Num):
        return tree.value
    if isinstance(tree, Var):
        try:
            return float(env[tree.name])
        except KeyError:
            raise ExpressionError(f"variable {tree.name!r} is not bound",
                                  tree.span.line, tree.span.column) from None
    if isinstance(tree, BinOp):
        left = evaluate(tree.left, env)
        right = evaluate(tree.right, env)
        if tree.op == "+":
            return left + right
        if tree.op == "-":
            return left - right
        if tree.op == "*":
            return left * right
        if tree.op == "/":
            if right == 0.0:
                raise ExpressionError("division by zero", tree.span.line,
                                      tree.span.column)
            return left / right
        try:
            return float(left ** right)
        except (OverflowError, ValueError, ZeroDivisionError) as exc:
            raise ExpressionError(f"power failed: {exc}", tree.span.line,
                                  tree.span.column) from None
    if isinstance(tree, Cmp):
        left = evaluate(tree.left, env)
        right = evaluate(tree.right, env)
        return {"<": left < right, "<=": left <= right, ">": left > right,
                ">=": left >= right, "==": left == right}[tree.op]
    if isinstance(tree, Call):
        if tree.name == "piecewise":
            cond = evaluate(tree.args[0], env)
            return evaluate(tree.args[1] if cond else tree.args[2], env)
        args = [evaluate(a, env) for a in tree.args]
        if tree.name == "min":
            return min(args)
        if tree.name == "max":
            return max(args)
        if tree.name == "exp":
            return math.exp(args[0])
        if tree.name == "abs":
            return abs(args[0])
        if tree.name == "ln":
            if args[0] <= 0.0:
                raise ExpressionError(f"ln of nonpositive value {args[0]!r}",
                                      tree.span.line, tree.span.column)
            return math.log(args[0])
    raise TypeError(f"not an expression node: {tree!r}")


def pretty(tree) -> str:
    """Canonical fully parenthesised rendering; reparsing yields the same tree."""
    if isinstance(tree, Num):
        return repr(tree.value)
    if isinstance(tree, Var):
        return tree.name
    if isinstance(tree, BinOp):
        return f"({pretty(tree.left)} {tree.op} {pretty(tree.right)})"
    if isinstance(tree, Cmp):
        # comparisons live only at the head of a piecewise and take no parens
        return f"{pretty(tree.left)} {tree.op} {pretty(tree.right)}"
    if isinstance(tree, Call):
        return f"{tree.name}({', '.join(pretty(a) for a in tree.args)})"
    raise TypeError(f"not an expression node: {tree!r}")
