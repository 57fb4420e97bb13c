"""A small arithmetic language for kernels and right-hand sides in config files.

Grammar (EBNF)::

    expr    = term { ("+" | "-") term } ;
    term    = unary { ("*" | "/") unary } ;
    unary   = "-" unary | power ;
    power   = primary [ "^" unary ] ;           (* right-associative *)
    primary = number | name | call | "(" expr ")" ;
    call    = func "(" [ expr ] ")" ;
    func    = "sqrt" | "sin" | "cos" | "exp" | "log" | "abs" | "pi" ;
    number  = digits [ "." digits ] [ ("e" | "E") [ "+" | "-" ] digits ]
            | "." digits [ exponent ] ;
    name    = letter { letter | digit | "_" } ;

``-2^2`` is ``-(2^2) = -4``. There is no implicit multiplication, and ``pi()``
is a call so that ``pi`` stays free for use as a parameter name. The
variables are ``t`` and ``tau``; every other name is a parameter.

Evaluation is vectorized: bindings may be floats or numpy arrays.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import ExprDomainError, ExprSyntaxError, UnboundNameError

__all__ = [
    "Num",
    "Name",
    "Neg",
    "BinOp",
    "Call",
    "Expr",
    "parse",
    "to_source",
    "evaluate",
    "free_names",
    "FUNCTIONS",
]


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Name:
    id: str


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
    args: tuple


Expr = Union[Num, Name, Neg, BinOp, Call]

FUNCTIONS = {"sqrt": 1, "sin": 1, "cos": 1, "exp": 1, "log": 1, "abs": 1, "pi": 0}

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z][A-Za-z0-9_]*)
  | (?P<op>[-+*/^(),])
    """,
    re.VERBOSE,
)

_START = ("number", "name", "'('", "'-'")


@dataclass(frozen=True)
class _Tok:
    kind: str  # num | name | op | end
    text: str
    offset: int  # byte offset


def _tokenize(source: str) -> list[_Tok]:
    toks = []
    pos = 0
    byte = 0
    while pos < len(source):
        m = _TOKEN.match(source, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {source[pos]!r}", byte)
        text = m.group()
        if m.lastgroup != "ws":
            toks.append(_Tok(m.lastgroup, text, byte))
        pos = m.end()
        byte += len(text.encode("utf-8"))
    toks.append(_Tok("end", "", byte))
    return toks


class _Parser:
    def __init__(self, source: str):
        self.toks = _tokenize(source)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def _is(self, text: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == text

    def _fail(self, expected):
        tok = self.tok
        what = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ExprSyntaxError(f"unexpected {what}", tok.offset, expected)

    def _expect(self, text: str):
        if not self._is(text):
            self._fail((repr(text),))
        self.i += 1

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "end":
            self._fail(("operator", "end of input"))
        return e

    def expr(self) -> Expr:
        left = self.term()
        while self._is("+") or self._is("-"):
            op = self.tok.text
            self.i += 1
            left = BinOp(op, left, self.term())
        return left

    def term(self) -> Expr:
        left = self.unary()
        while self._is("*") or self._is("/"):
            op = self.tok.text
            self.i += 1
            left = BinOp(op, left, self.unary())
        return left

    def unary(self) -> Expr:
        if self._is("-"):
            self.i += 1
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.primary()
        if self._is("^"):
            self.i += 1
            return BinOp("^", base, self.unary())
        return base

    def primary(self) -> Expr:
        tok = self.tok
        if tok.kind == "num":
            value = float(tok.text)
            if not np.isfinite(value):
                raise ExprSyntaxError(f"numeric literal {tok.text!r} overflows", tok.offset)
            self.i += 1
            return Num(value)
        if tok.kind == "name":
            self.i += 1
            if not self._is("("):
                return Name(tok.text)
            if tok.text not in FUNCTIONS:
                raise ExprSyntaxError(f"unknown function {tok.text!r}", tok.offset, sorted(FUNCTIONS))
            self.i += 1
            args = () if self._is(")") else (self.expr(),)
            self._expect(")")
            if len(args) != FUNCTIONS[tok.text]:
                raise ExprSyntaxError(
                    f"{tok.text}() takes {FUNCTIONS[tok.text]} argument(s), got {len(args)}", tok.offset
                )
            return Call(tok.text, args)
        if self._is("("):
            self.i += 1
            e = self.expr()
            self._expect(")")
            return e
        self._fail(_START)


def parse(source: str) -> Expr:
    """Parse ``source`` into an expression tree.

    Raises :class:`~chebsie.errors.ExprSyntaxError` carrying the byte offset
    of the offending token and the set of tokens that would have been
    accepted there.
    """
    return _Parser(source).parse()


def to_source(e: Expr) -> str:
    """Serialize ``e`` so that ``parse(to_source(e)) == e``."""
    if isinstance(e, Num):
        return repr(e.value)
    if isinstance(e, Name):
        return e.id
    if isinstance(e, Neg):
        return f"(-{to_source(e.operand)})"
    if isinstance(e, BinOp):
        return f"({to_source(e.left)} {e.op} {to_source(e.right)})"
    if isinstance(e, Call):
        return f"{e.func}({', '.join(to_source(a) for a in e.args)})"
    raise TypeError(f"not an expression node: {e!r}")


def free_names(e: Expr) -> set[str]:
    if isinstance(e, Name):
        return {e.id}
    if isinstance(e, Neg):
        return free_names(e.operand)
    if isinstance(e, BinOp):
        return free_names(e.left) | free_names(e.right)
    if isinstance(e, Call):
        return set().union(*(free_names(a) for a in e.args)) if e.args else set()
    return set()


def _sqrt(x):
    if np.any(x < 0):
        raise ExprDomainError("sqrt", _first(x, x < 0))
    return np.sqrt(x)


def _log(x):
    if np.any(x <= 0):
        raise ExprDomainError("log", _first(x, x <= 0))
    return np.log(x)


def _first(x, mask):
    return float(np.asarray(x)[np.asarray(mask)].flat[0]) if np.ndim(x) else float(x)


_IMPL = {
    "sqrt": _sqrt,
    "log": _log,
    "sin": np.sin,
    "cos": np.cos,
    "exp": np.exp,
    "abs": np.abs,
}


def _ev(e, env):
    if isinstance(e, Num):
        return np.float64(e.value)
    if isinstance(e, Name):
        try:
            return env[e.id]
        except KeyError:
            raise UnboundNameError(e.id) from None
    if isinstance(e, Neg):
        return -_ev(e.operand, env)
    if isinstance(e, BinOp):
        a = _ev(e.left, env)
        b = _ev(e.right, env)
        if e.op == "+":
            return a + b
        if e.op == "-":
            return a - b
        if e.op == "*":
            return a * b
        if e.op == "/":
            return a / b
        out = np.power(a, b)
        bad = np.isnan(out) & ~np.isnan(a) & ~np.isnan(b)
        if np.any(bad):
            raise ExprDomainError("pow", _first(a * np.ones_like(out), bad))
        return out
    if e.func == "pi":
        return np.float64(np.pi)
    return _IMPL[e.func](_ev(e.args[0], env))


def evaluate(e: Expr, bindings) -> float | np.ndarray:
    """Evaluate ``e`` in IEEE double precision.

    ``bindings`` maps every free name to a float or array; arrays broadcast.
    """
    env = {k: np.asarray(v, dtype=float) if np.ndim(v) else np.float64(v) for k, v in bindings.items()}
    with np.errstate(all="ignore"):
        out = _ev(e, env)
    return float(out) if np.ndim(out) == 0 else out
