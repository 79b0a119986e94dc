"""Mean-expression syntax trees, parser and canonical formatter.

Grammar (ASCII, case-sensitive, whitespace-insensitive)::

    expr := "arith" | "geom" | "harm" | "rms" | "min" | "max" | "log"
          | "power(" num ")" | "gini(" num "," num ")"
          | "env(e1)" | "env(e2)" | "env(table(" num ":" num {"," num ":" num} "))"
          | "compose(" expr "," expr "," expr ")"
          | "invariant(" expr "," expr ")"

Aliases are expanded while parsing, so ``harm`` parses to ``Gini(0, -1)``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Union

from .errors import ParseError

__all__ = [
    "Gini", "LogMean", "MinMean", "MaxMean", "EnvelopeSpec", "Envelope",
    "Compose", "Invariant", "MeanExpr", "ALIASES", "parse_mean", "format_mean",
    "contains_envelope", "walk",
]


@dataclass(frozen=True)
class Gini:
    p: float
    q: float

    def __post_init__(self):
        object.__setattr__(self, "p", float(self.p))
        object.__setattr__(self, "q", float(self.q))
        if not (math.isfinite(self.p) and math.isfinite(self.q)):
            raise ValueError("Gini parameters must be finite")


@dataclass(frozen=True)
class LogMean:
    pass


@dataclass(frozen=True)
class MinMean:
    pass


@dataclass(frozen=True)
class MaxMean:
    pass


ENVELOPE_KINDS = ("e1", "e2", "table")


@dataclass(frozen=True)
class EnvelopeSpec:
    """Envelope function e on (0, 1] with t <= e(t) <= 1.

    ``kind`` is ``"e1"``, ``"e2"`` or ``"table"``. A table is a tuple of
    ``(t, e(t))`` pairs interpolated linearly in (log t, log e).
    """

    kind: str
    table: tuple = field(default=())

    def __post_init__(self):
        if self.kind not in ENVELOPE_KINDS:
            raise ValueError(f"unknown envelope kind {self.kind!r}")
        if self.kind != "table":
            if self.table:
                raise ValueError("only table envelopes carry samples")
            return
        pts = tuple(sorted((float(t), float(e)) for t, e in self.table))
        if not pts:
            raise ValueError("table envelope needs at least one sample")
        for t, e in pts:
            if not 0.0 < t <= 1.0:
                raise ValueError(f"table abscissa {t!r} outside (0, 1]")
            if not t <= e <= 1.0:
                raise ValueError(f"table value e({t!r}) = {e!r} violates t <= e(t) <= 1")
        if len({t for t, _ in pts}) != len(pts):
            raise ValueError("duplicate table abscissae")
        object.__setattr__(self, "table", pts)


@dataclass(frozen=True)
class Envelope:
    spec: EnvelopeSpec


@dataclass(frozen=True)
class Compose:
    """K(M(x, y), N(x, y))."""

    K: "MeanExpr"
    M: "MeanExpr"
    N: "MeanExpr"


@dataclass(frozen=True)
class Invariant:
    """The (M, N)-invariant mean, realised by Gauss iteration."""

    M: "MeanExpr"
    N: "MeanExpr"


MeanExpr = Union[Gini, LogMean, MinMean, MaxMean, Envelope, Compose, Invariant]

ALIASES = {
    "arith": Gini(1, 0),
    "geom": Gini(0, 0),
    "harm": Gini(0, -1),
    "rms": Gini(2, 0),
    "min": MinMean(),
    "max": MaxMean(),
    "log": LogMean(),
}


def walk(expr):
    """Yield every node of ``expr`` in pre-order."""
    yield expr
    if isinstance(expr, Compose):
        for child in (expr.K, expr.M, expr.N):
            yield from walk(child)
    elif isinstance(expr, Invariant):
        yield from walk(expr.M)
        yield from walk(expr.N)


def contains_envelope(expr) -> bool:
    return any(isinstance(node, Envelope) for node in walk(expr))


# --- tokenizer -------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[(),:])
    """,
    re.VERBOSE,
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        return ParseError(message, self.text, tok[2])

    def expect(self, value):
        tok = self.advance()
        if tok[1] != value or tok[0] == "num":
            found = tok[1] or "end of input"
            raise self.error(f"expected {value!r}, found {found!r}", tok)
        return tok

    def number(self):
        tok = self.advance()
        if tok[0] != "num":
            found = tok[1] or "end of input"
            raise self.error(f"expected a number, found {found!r}", tok)
        value = float(tok[1])
        if not math.isfinite(value):
            raise self.error("number out of range", tok)
        return value

    def args(self, parse_one, name, arity):
        """Parse ``( a, b, ... )`` and check the argument count."""
        self.expect("(")
        items = [parse_one()]
        while self.peek()[1] == ",":
            self.advance()
            items.append(parse_one())
        tok = self.peek()
        if tok[1] != ")":
            found = tok[1] or "end of input"
            raise self.error(f"expected ',' or ')', found {found!r}", tok)
        if arity is not None and len(items) != arity:
            raise self.error(f"{name} takes {arity} argument(s), got {len(items)}", tok)
        self.advance()
        return items

    def expr(self):
        tok = self.advance()
        if tok[0] != "ident":
            found = tok[1] or "end of input"
            raise self.error(f"expected a mean name, found {found!r}", tok)
        name = tok[1]
        if name in ALIASES:
            if self.peek()[1] == "(":
                raise self.error(f"{name} takes no arguments")
            return ALIASES[name]
        if name == "power":
            (p,) = self.args(self.number, name, 1)
            return Gini(p, 0.0)
        if name == "gini":
            p, q = self.args(self.number, name, 2)
            return Gini(p, q)
        if name == "compose":
            K, M, N = self.args(self.expr, name, 3)
            return Compose(K, M, N)
        if name == "invariant":
            M, N = self.args(self.expr, name, 2)
            return Invariant(M, N)
        if name == "env":
            (spec,) = self.args(self.envelope, name, 1)
            return Envelope(spec)
        raise self.error(f"unknown identifier {name!r}", tok)

    def envelope(self):
        tok = self.advance()
        if tok[1] in ("e1", "e2"):
            return EnvelopeSpec(tok[1])
        if tok[1] == "table":
            pairs = self.args(self.table_pair, "table", None)
            try:
                return EnvelopeSpec("table", tuple(pairs))
            except ValueError as exc:
                raise self.error(str(exc), tok) from None
        raise self.error(f"unknown envelope {tok[1]!r}", tok)

    def table_pair(self):
        t = self.number()
        self.expect(":")
        return (t, self.number())


def parse_mean(text: str) -> MeanExpr:
    """Parse a mean expression.

    >>> parse_mean("invariant(geom, arith)")
    Invariant(M=Gini(p=0.0, q=0.0), N=Gini(p=1.0, q=0.0))
    """
    parser = _Parser(text)
    result = parser.expr()
    tok = parser.peek()
    if tok[0] != "end":
        raise parser.error(f"trailing input {tok[1]!r}", tok)
    return result


def _fmt_num(x: float) -> str:
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def format_mean(expr: MeanExpr) -> str:
    """Canonical text for ``expr``; ``parse_mean`` inverts it."""
    if isinstance(expr, Gini):
        return f"gini({_fmt_num(expr.p)},{_fmt_num(expr.q)})"
    if isinstance(expr, LogMean):
        return "log"
    if isinstance(expr, MinMean):
        return "min"
    if isinstance(expr, MaxMean):
        return "max"
    if isinstance(expr, Envelope):
        spec = expr.spec
        if spec.kind == "table":
            body = ",".join(f"{_fmt_num(t)}:{_fmt_num(e)}" for t, e in spec.table)
            return f"env(table({body}))"
        return f"env({spec.kind})"
    if isinstance(expr, Compose):
        return f"compose({format_mean(expr.K)},{format_mean(expr.M)},{format_mean(expr.N)})"
    if isinstance(expr, Invariant):
        return f"invariant({format_mean(expr.M)},{format_mean(expr.N)})"
    raise TypeError(f"not a mean expression: {expr!r}")
