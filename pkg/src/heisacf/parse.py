"""Parsing and canonical formatting of polynomial expressions in x, y, t.

Grammar (LL(1))::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' uint)?
    base   := 'x' | 'y' | 't' | number | number VAR | '(' expr ')' | '-' factor
    number := digits ('/' digits)?

``number VAR`` is the only implicit product: a literal written directly
against a single variable, as in ``3x`` or ``1/2t^2`` (the exponent binds
to the variable).  ``3yt`` is rejected; write ``3*y*t``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError
from .poly import DEFAULT_MAX_DEGREE, ONE, Poly3, T, X, Y

__all__ = ["parse", "format_poly", "PolyExpr"]

_VARS = {"x": X, "y": Y, "t": T}
_AFTER_FACTOR = frozenset({"'+'", "'-'", "'*'", "')'", "end of input"})
_BASE_START = frozenset({"'x'", "'y'", "'t'", "number", "'('", "'-'"})


@dataclass(frozen=True)
class _Tok:
    kind: str  # num, var, op, eof
    text: str
    start: int
    end: int


def _tokenize(src: str) -> list[_Tok]:
    toks = []
    i, n = 0, len(src)
    while i < n:
        ch = src[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            if j < n and src[j] == "/":
                k = j + 1
                while k < n and src[k].isdigit():
                    k += 1
                if k == j + 1:
                    raise ParseError("incomplete rational literal", _byte_offset(src, k), frozenset({"digit"}))
                j = k
            toks.append(_Tok("num", src[i:j], i, j))
            i = j
        elif ch in _VARS:
            toks.append(_Tok("var", ch, i, i + 1))
            i += 1
        elif ch in "+-*^()":
            toks.append(_Tok("op", ch, i, i + 1))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", _byte_offset(src, i), _BASE_START | _AFTER_FACTOR)
    toks.append(_Tok("eof", "", n, n))
    return toks


def _byte_offset(src: str, pos: int) -> int:
    return len(src[:pos].encode("utf-8"))


class _Parser:
    def __init__(self, src: str, max_degree: int):
        self.src = src
        self.max_degree = max_degree
        self.toks = _tokenize(src)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, expected: frozenset[str], what: str | None = None) -> ParseError:
        tok = self.tok
        desc = what or ("end of input" if tok.kind == "eof" else f"token {tok.text!r}")
        return ParseError(f"unexpected {desc}", _byte_offset(self.src, tok.start), expected)

    def advance(self) -> _Tok:
        tok = self.tok
        self.i += 1
        return tok

    def is_op(self, ch: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == ch

    def parse(self) -> Poly3:
        value = self.expr()
        if self.tok.kind != "eof":
            raise self.fail(_AFTER_FACTOR)
        return value

    def expr(self) -> Poly3:
        value = self.term()
        while self.is_op("+") or self.is_op("-"):
            op = self.advance().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Poly3:
        value = self.factor()
        while self.is_op("*"):
            self.advance()
            value = value * self.factor()
        return value

    def factor(self) -> Poly3:
        value, exponent_taken = self.base()
        if self.is_op("^"):
            if exponent_taken:
                raise self.fail(_AFTER_FACTOR)
            self.advance()
            value = self.power(value)
        return value

    def power(self, value: Poly3) -> Poly3:
        tok = self.tok
        if tok.kind != "num" or "/" in tok.text:
            raise self.fail(frozenset({"unsigned integer"}))
        self.advance()
        e = int(tok.text)
        at = _byte_offset(self.src, tok.start)
        if e > self.max_degree:
            raise ParseError(f"exponent {e} exceeds the maximum degree {self.max_degree}", at)
        if not value.is_zero() and value.degree * e > self.max_degree:
            raise ParseError(
                f"power has Heisenberg degree {value.degree * e}, above the maximum {self.max_degree}", at
            )
        return value**e

    def base(self) -> tuple[Poly3, bool]:
        tok = self.tok
        if tok.kind == "var":
            self.advance()
            return _VARS[tok.text], False
        if tok.kind == "num":
            self.advance()
            num, _, den = tok.text.partition("/")
            if den and int(den) == 0:
                raise ParseError("zero denominator in rational literal", _byte_offset(self.src, tok.start))
            c = Fraction(int(num), int(den) if den else 1)
            nxt = self.tok
            if nxt.kind == "var" and nxt.start == tok.end:
                self.advance()
                var = _VARS[nxt.text]
                if self.is_op("^"):
                    self.advance()
                    var = self.power(var)
                return var * c, True
            return ONE * c, False
        if self.is_op("("):
            self.advance()
            value = self.expr()
            if not self.is_op(")"):
                raise self.fail(frozenset({"')'", "'+'", "'-'", "'*'"}))
            self.advance()
            return value, False
        if self.is_op("-"):
            self.advance()
            return -self.factor(), True
        raise self.fail(_BASE_START)


def parse(s: str, max_degree: int = DEFAULT_MAX_DEGREE) -> Poly3:
    """Parse an expression such as ``"x - 3*y*t - 2*x^3"`` into a Poly3."""
    if not s or not s.strip():
        raise ParseError("empty expression", 0, _BASE_START)
    return _Parser(s, max_degree).parse()


@dataclass(frozen=True)
class PolyExpr:
    """Source text together with its canonical polynomial."""

    source: str
    poly: Poly3

    @classmethod
    def from_source(cls, source: str, max_degree: int = DEFAULT_MAX_DEGREE) -> "PolyExpr":
        return cls(source, parse(source, max_degree))


def _fmt_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _fmt_monomial(m) -> str:
    parts = []
    for name, e in zip("xyt", m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(p: Poly3) -> str:
    """Canonical rendering: graded-lex order, ``a`` or ``a/b`` coefficients."""
    if p.is_zero():
        return "0"
    out = []
    for idx, (m, c) in enumerate(p.items()):
        mono = _fmt_monomial(m)
        mag = abs(c)
        if not mono:
            body = _fmt_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_fmt_rational(mag)}*{mono}"
        if idx == 0:
            out.append(f"-{body}" if c < 0 else body)
        else:
            out.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(out)
