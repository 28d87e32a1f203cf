"""A small arithmetic expression language in one free variable t.

Grammar (whitespace insignificant, '^' right-associative)::

    expr    := term (('+'|'-') term)*
    term    := factor (('*'|'/') factor)*
    factor  := unary ('^' factor)?
    unary   := '-' unary | primary
    primary := number | 't' | 'pi' | 'e' | ident '(' expr ')' | '(' expr ')'

Because the base of '^' is a full ``unary`` production, a leading minus
binds tighter than the exponent: ``-t^2`` parses as ``(-t)^2`` while a
minus on the right, as in ``t^-2``, negates only the exponent. ``2e3`` is
one numeric literal (exponent notation); ``2*e`` is needed to multiply by
Euler's number.

Functions: sin, cos, exp, ln, sqrt, abs, floor, frac, gamma, digamma.
``frac(x)`` is x - floor(x). Unknown names are rejected at parse time.

Trees are immutable dataclasses with structural equality; source offsets
are carried on the side and ignored by comparisons, so
``parse(unparse(tree)) == tree`` for any tree built by the parser or with
nonnegative finite literals.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Callable, Union

from . import numkit
from .errors import EvalError, NonFiniteInput, ParseError, PoleError

__all__ = [
    "ExprAst",
    "Number",
    "Variable",
    "Constant",
    "Unary",
    "Binary",
    "Call",
    "FUNCTIONS",
    "parse",
    "evaluate",
    "unparse",
    "as_function",
]

FUNCTIONS = ("sin", "cos", "exp", "ln", "sqrt", "abs", "floor", "frac", "gamma", "digamma")

_CONSTANTS = {"pi": math.pi, "e": math.e}

# Exponents with |k| <= this are evaluated by repeated multiplication; larger
# or fractional exponents go through exp(y*ln x), which needs x > 0.
_MAX_INT_POW = 32

# Nesting bound so arbitrarily hostile input cannot overflow the Python stack.
_MAX_DEPTH = 200


@dataclass(frozen=True)
class Number:
    value: float
    pos: int | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Variable:
    pos: int | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Constant:
    name: str  # "pi" or "e"
    pos: int | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Unary:
    op: str  # "-"
    operand: "ExprAst"
    pos: int | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Binary:
    op: str  # one of + - * / ^
    left: "ExprAst"
    right: "ExprAst"
    pos: int | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Call:
    func: str
    arg: "ExprAst"
    pos: int | None = field(default=None, compare=False, repr=False)


ExprAst = Union[Number, Variable, Constant, Unary, Binary, Call]


# ------------------------------------------------------------------ parsing

_NUMBER_RE = re.compile(r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?", re.ASCII)
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*", re.ASCII)


@dataclass(frozen=True)
class _Token:
    kind: str  # "num" | "ident" | "op" | "end"
    text: str
    pos: int


def _tokenize(source: str) -> list[_Token]:
    tokens = []
    i = 0
    n = len(source)
    while i < n:
        c = source[i]
        if c.isspace():
            i += 1
            continue
        if c in "+-*/^()":
            tokens.append(_Token("op", c, i))
            i += 1
            continue
        m = _NUMBER_RE.match(source, i)
        if m:
            tokens.append(_Token("num", m.group(), i))
            i = m.end()
            continue
        m = _IDENT_RE.match(source, i)
        if m:
            tokens.append(_Token("ident", m.group(), i))
            i = m.end()
            continue
        raise ParseError(i, f"unexpected character {c!r}")
    tokens.append(_Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.k = 0
        self.depth = 0

    def peek(self) -> _Token:
        return self.tokens[self.k]

    def advance(self) -> _Token:
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect_op(self, text: str) -> _Token:
        tok = self.peek()
        if tok.kind == "op" and tok.text == text:
            return self.advance()
        raise ParseError(tok.pos, f"unexpected {_describe(tok)}", expected=f"'{text}'")

    def expr(self) -> ExprAst:
        self.depth += 1
        if self.depth > _MAX_DEPTH:
            raise ParseError(self.peek().pos, "expression nests too deeply")
        try:
            node = self.term()
            while self.peek().kind == "op" and self.peek().text in "+-":
                op = self.advance()
                node = Binary(op.text, node, self.term(), pos=op.pos)
            return node
        finally:
            self.depth -= 1

    def term(self) -> ExprAst:
        node = self.factor()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.advance()
            node = Binary(op.text, node, self.factor(), pos=op.pos)
        return node

    def factor(self) -> ExprAst:
        base = self.unary()
        if self.peek().kind == "op" and self.peek().text == "^":
            op = self.advance()
            return Binary("^", base, self.factor(), pos=op.pos)
        return base

    def unary(self) -> ExprAst:
        self.depth += 1
        if self.depth > _MAX_DEPTH:
            raise ParseError(self.peek().pos, "expression nests too deeply")
        try:
            tok = self.peek()
            if tok.kind == "op" and tok.text == "-":
                self.advance()
                return Unary("-", self.unary(), pos=tok.pos)
            return self.primary()
        finally:
            self.depth -= 1

    def primary(self) -> ExprAst:
        tok = self.peek()
        if tok.kind == "num":
            self.advance()
            return Number(float(tok.text), pos=tok.pos)
        if tok.kind == "ident":
            self.advance()
            name = tok.text
            if name == "t":
                return Variable(pos=tok.pos)
            if name in _CONSTANTS:
                return Constant(name, pos=tok.pos)
            if name in FUNCTIONS:
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                return Call(name, arg, pos=tok.pos)
            raise ParseError(
                tok.pos,
                f"unknown name {name!r}",
                expected="'t', 'pi', 'e', or one of " + ", ".join(FUNCTIONS),
            )
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            node = self.expr()
            self.expect_op(")")
            return node
        raise ParseError(tok.pos, f"unexpected {_describe(tok)}", expected="primary")


def _describe(tok: _Token) -> str:
    return "end of input" if tok.kind == "end" else f"{tok.kind} {tok.text!r}"


def parse(source: str | bytes) -> ExprAst:
    """Parse expression text into an AST; raises :class:`ParseError` only.

    Byte input is decoded as UTF-8 first; invalid bytes are a parse error at
    the offending offset, so the function is total over arbitrary inputs.
    """
    if isinstance(source, (bytes, bytearray)):
        try:
            source = source.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(exc.start, "input is not valid UTF-8") from None
    parser = _Parser(_tokenize(source))
    node = parser.expr()
    tok = parser.peek()
    if tok.kind != "end":
        raise ParseError(tok.pos, f"unexpected trailing {_describe(tok)}", expected="end of input")
    return node


# --------------------------------------------------------------- evaluation


def evaluate(ast: ExprAst, t: float) -> float:
    """Evaluate the tree at the given value of t.

    Follows binary64 arithmetic; overflow saturates to infinity. Raises
    :class:`EvalError` (division-by-zero, domain, pole) pinned to the
    offending node.
    """
    return _eval(ast, t)


def _eval(node: ExprAst, t: float) -> float:
    if isinstance(node, Number):
        return node.value
    if isinstance(node, Variable):
        return t
    if isinstance(node, Constant):
        return _CONSTANTS[node.name]
    if isinstance(node, Unary):
        return -_eval(node.operand, t)
    if isinstance(node, Binary):
        left = _eval(node.left, t)
        right = _eval(node.right, t)
        op = node.op
        if op == "+":
            return left + right
        if op == "-":
            return left - right
        if op == "*":
            return left * right
        if op == "/":
            if right == 0.0:
                raise EvalError(EvalError.DIVISION_BY_ZERO, "division by zero", node)
            return left / right
        return _power(left, right, node)
    if isinstance(node, Call):
        return _call(node, _eval(node.arg, t))
    raise TypeError(f"not an expression node: {node!r}")


def _power(x: float, y: float, node: Binary) -> float:
    if math.isfinite(y) and y == math.floor(y) and abs(y) <= _MAX_INT_POW:
        k = int(y)
        if k < 0 and x == 0.0:
            raise EvalError(EvalError.DIVISION_BY_ZERO, "zero to a negative power", node)
        acc = 1.0
        for _ in range(abs(k)):
            acc *= x
        return 1.0 / acc if k < 0 else acc
    if x < 0.0:
        raise EvalError(
            EvalError.DOMAIN, f"negative base {x!r} with non-integer exponent", node
        )
    if x == 0.0:
        if y > 0.0:
            return 0.0
        raise EvalError(EvalError.DIVISION_BY_ZERO, "zero to a non-positive power", node)
    try:
        return math.exp(y * math.log(x))
    except OverflowError:
        return math.inf


def _call(node: Call, v: float) -> float:
    name = node.func
    if name == "sin":
        return math.sin(v)
    if name == "cos":
        return math.cos(v)
    if name == "exp":
        try:
            return math.exp(v)
        except OverflowError:
            return math.inf
    if name == "ln":
        if not v > 0.0:
            raise EvalError(EvalError.DOMAIN, f"ln of non-positive value {v!r}", node)
        return math.log(v)
    if name == "sqrt":
        if v < 0.0:
            raise EvalError(EvalError.DOMAIN, f"sqrt of negative value {v!r}", node)
        return math.sqrt(v)
    if name == "abs":
        return abs(v)
    if name == "floor":
        if not math.isfinite(v):
            raise EvalError(EvalError.DOMAIN, f"floor of non-finite value {v!r}", node)
        return float(math.floor(v))
    if name == "frac":
        if not math.isfinite(v):
            raise EvalError(EvalError.DOMAIN, f"frac of non-finite value {v!r}", node)
        return v - math.floor(v)
    if name == "gamma":
        return _gamma(v, node)
    if name == "digamma":
        try:
            return numkit.digamma(v)
        except PoleError as exc:
            raise EvalError(EvalError.POLE, str(exc), node) from None
        except NonFiniteInput as exc:
            raise EvalError(EvalError.DOMAIN, str(exc), node) from None
    raise TypeError(f"unknown function node: {name!r}")


def _gamma(v: float, node: Call) -> float:
    if not math.isfinite(v):
        raise EvalError(EvalError.DOMAIN, f"gamma of non-finite value {v!r}", node)
    if v > 0.0:
        try:
            return math.exp(numkit.ln_gamma(v))
        except OverflowError:
            return math.inf
    if v == math.floor(v):
        raise EvalError(EvalError.POLE, f"gamma has a pole at {v!r}", node)
    # Reflection for negative non-integers: Gamma(v) = pi / (sin(pi v) Gamma(1-v)).
    try:
        denom = math.sin(math.pi * v) * math.exp(numkit.ln_gamma(1.0 - v))
    except OverflowError:
        return 0.0
    return math.pi / denom


# ---------------------------------------------------------------- unparsing

_LEVEL_ADD, _LEVEL_MUL, _LEVEL_UNARY, _LEVEL_POW, _LEVEL_ATOM = 1, 2, 3, 4, 5


def _level(node: ExprAst) -> int:
    if isinstance(node, Binary):
        if node.op == "^":
            return _LEVEL_POW
        return _LEVEL_MUL if node.op in "*/" else _LEVEL_ADD
    if isinstance(node, Unary) or (isinstance(node, Number) and node.value < 0):
        return _LEVEL_UNARY
    return _LEVEL_ATOM


def unparse(ast: ExprAst) -> str:
    """Render a tree back to canonical source text.

    Binary operators get single surrounding spaces except '^', which binds
    tightly; numeric literals render via ``repr`` (so ``2.0``, not ``2``);
    parentheses are inserted exactly where the grammar needs them, so
    ``parse(unparse(tree))`` is structurally equal to ``tree``. Negative or
    non-finite literals are not produced by the parser; a negative literal
    renders with a leading '-', which reparses as negation of the positive
    literal (same value, canonicalized shape).
    """
    return _emit(ast)


def _paren(node: ExprAst, needed: bool) -> str:
    text = _emit(node)
    return f"({text})" if needed else text


def _emit(node: ExprAst) -> str:
    if isinstance(node, Number):
        return repr(node.value)
    if isinstance(node, Variable):
        return "t"
    if isinstance(node, Constant):
        return node.name
    if isinstance(node, Call):
        return f"{node.func}({_emit(node.arg)})"
    if isinstance(node, Unary):
        # The operand must be a unary production: a '-' chain over an atom.
        inner = node.operand
        needs = _level(inner) not in (_LEVEL_UNARY, _LEVEL_ATOM)
        return "-" + _paren(inner, needs)
    if isinstance(node, Binary):
        op = node.op
        if op == "^":
            # Base must be a unary production; exponent is a factor, so a
            # nested '^' on the right stays bare (right associativity).
            left = _paren(node.left, _level(node.left) not in (_LEVEL_UNARY, _LEVEL_ATOM))
            right = _paren(node.right, _level(node.right) < _LEVEL_UNARY)
            return f"{left}^{right}"
        if op in "*/":
            left = _paren(node.left, _level(node.left) < _LEVEL_MUL)
            right = _paren(node.right, _level(node.right) <= _LEVEL_MUL)
            return f"{left} {op} {right}"
        left = _paren(node.left, False)
        right = _paren(node.right, _level(node.right) <= _LEVEL_ADD)
        return f"{left} {op} {right}"
    raise TypeError(f"not an expression node: {node!r}")


def as_function(source: str | bytes | ExprAst) -> Callable[[float], float]:
    """Compile expression text (or an already-parsed tree) to a callable."""
    ast = parse(source) if isinstance(source, (str, bytes, bytearray)) else source
    def fn(t: float) -> float:
        return _eval(ast, t)
    fn.ast = ast  # type: ignore[attr-defined]
    return fn
