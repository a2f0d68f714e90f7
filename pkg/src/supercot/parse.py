"""Recursive-descent parser for supercotangent polynomial expressions.

Grammar (whitespace insignificant)::

    expr     := ['-'] term (('+'|'-') term)*
    term     := factor (('*'|'/') factor)*
    factor   := rational | const ('^' sint)? | var ('^' uint)? | '(' expr ')'
    const    := 'h' | 'i' | 's'
    var      := ('x'|'p'|'xi') uint
    rational := uint ('/' uint)?

A '/' divisor must be an invertible constant (rational, i, s or a power
of h), which covers inputs like ``h/2 * xi1*xi2``.  Exponents on h may
be negative, matching the Laurent scalar ring.
"""

from __future__ import annotations

from fractions import Fraction

from .coeff import Scalar
from .superpoly import SuperPolynomial


class ParseError(ValueError):
    """Syntax or range error, carrying the 0-based input position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_CONSTS = {
    "h": lambda: Scalar.h(),
    "i": Scalar.i,
    "s": Scalar.sqrt2,
}


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take_uint(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected a number", start)
        return int(self.text[start : self.pos])

    def take_name(self) -> tuple[str, int]:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
        return self.text[start : self.pos], start

    def accept(self, char: str) -> bool:
        if self.peek() == char:
            self.pos += 1
            return True
        return False

    def expect(self, char: str) -> None:
        if not self.accept(char):
            raise ParseError(f"expected {char!r}", self.pos)


class _Parser:
    def __init__(self, text: str, n: int):
        self.tok = _Tokenizer(text)
        self.n = n

    def parse(self) -> SuperPolynomial:
        value = self.expr()
        self.tok.skip_ws()
        if self.tok.pos < len(self.tok.text):
            raise ParseError("unexpected trailing input", self.tok.pos)
        return value

    def expr(self) -> SuperPolynomial:
        negate = self.tok.accept("-")
        value = self.term()
        if negate:
            value = -value
        while True:
            if self.tok.accept("+"):
                value = value + self.term()
            elif self.tok.accept("-"):
                value = value - self.term()
            else:
                return value

    def term(self) -> SuperPolynomial:
        value = self.factor()
        while True:
            if self.tok.accept("*"):
                value = value * self.factor()
            elif self.tok.accept("/"):
                at = self.tok.pos
                divisor = self.factor()
                value = value * _constant_inverse(divisor, at)
            else:
                return value

    def factor(self) -> SuperPolynomial:
        tok = self.tok
        char = tok.peek()
        if char == "(":
            tok.pos += 1
            inner = self.expr()
            tok.expect(")")
            return inner
        if char.isdigit():
            num = tok.take_uint()
            if tok.accept("/"):
                den = tok.take_uint()
                if den == 0:
                    raise ParseError("zero denominator", tok.pos)
                return SuperPolynomial.constant(self.n, Fraction(num, den))
            return SuperPolynomial.constant(self.n, num)
        if char.isalpha():
            name, start = tok.take_name()
            if name in _CONSTS:
                base = _CONSTS[name]()
                if tok.accept("^"):
                    negative = tok.accept("-")
                    power = tok.take_uint()
                    if name != "h" and negative:
                        raise ParseError("negative power only allowed on h", start)
                    base = _scalar_power(base, -power if negative else power, name)
                return SuperPolynomial.constant(self.n, base)
            if name in ("x", "p", "xi"):
                index = tok.take_uint()
                if not 1 <= index <= self.n:
                    raise ParseError(
                        f"variable index {index} exceeds dimension {self.n}", start
                    )
                if name == "x":
                    var = SuperPolynomial.var_x(self.n, index)
                elif name == "p":
                    var = SuperPolynomial.var_p(self.n, index)
                else:
                    var = SuperPolynomial.var_xi(self.n, index)
                if tok.accept("^"):
                    power = tok.take_uint()
                    result = SuperPolynomial.one(self.n)
                    for _ in range(power):
                        result = result * var
                    return result
                return var
            raise ParseError(f"unknown symbol {name!r}", start)
        raise ParseError("expected a factor", tok.pos)


def _scalar_power(base: Scalar, power: int, name: str) -> Scalar:
    if name == "h":
        return Scalar.h(power=power)
    result = Scalar.one()
    for _ in range(power):
        result = result * base
    return result


def _constant_inverse(divisor: SuperPolynomial, position: int) -> SuperPolynomial:
    items = list(divisor.items())
    n = divisor.n
    zero_key = ((0,) * n, (0,) * n, ())
    if len(items) != 1 or items[0][0] != zero_key:
        raise ParseError("divisor must be an invertible constant", position)
    try:
        inverse = items[0][1].inv()
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"cannot divide: {exc}", position) from None
    return SuperPolynomial.constant(n, inverse)


def sp_parse(text: str, n: int) -> SuperPolynomial:
    """Parse an expression into canonical form in dimension n."""
    return _Parser(text, n).parse()
