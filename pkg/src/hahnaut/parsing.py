"""Text syntax for exponents, coefficients, series and matrices.

Grammar (whitespace is ignored)::

    series    := [sign] term (sign term)* [ '+' 'O' '(' 't' '^' exponent ')' ]
    term      := coeff [ '*' monomial ] | monomial
    monomial  := 't' [ '^' exponent ]
    exponent  := int | '-' int | '(' rational ')' | '[' rational (',' rational)* ']'
    coeff     := rational | '(' quad ')'
    quad      := [sign] atom (sign atom)*        atom := rational ['r'] | 'r'

``r`` stands for sqrt(m) of the configured coefficient field.  Printing is
canonical (ascending exponents, ``+ O(t^e)`` for finite cutoffs) and is the
exact inverse of parsing.
"""
from __future__ import annotations

from fractions import Fraction

from .coeffs import FieldDescriptor, QuadraticElement
from .errors import ParseError
from .exponents import INF, Exponent, GroupDescriptor

__all__ = [
    "parse_exponent",
    "parse_field_element",
    "parse_series",
    "parse_matrix",
    "format_exponent",
    "format_field_element",
    "format_series",
]


class _Reader:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self):
        t = self.text
        while self.pos < len(t) and t[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str):
        if self.peek() != ch:
            found = self.peek() or "end of input"
            raise ParseError(f"expected {ch!r}, found {found!r}", self.text, self.pos)
        self.pos += 1

    def at_end(self) -> bool:
        return self.peek() == ""

    def error(self, msg: str):
        raise ParseError(msg, self.text, self.pos)

    def integer(self) -> int:
        self.skip()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            self.pos = start
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def unsigned_rational(self) -> Fraction:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected a number")
        num = int(self.text[start:self.pos])
        if self.peek() == "/":
            self.pos += 1
            self.skip()
            dstart = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if self.pos == dstart:
                self.error("expected a denominator")
            den = int(self.text[dstart:self.pos])
            if den == 0:
                self.pos = dstart
                self.error("zero denominator")
            return Fraction(num, den)
        return Fraction(num)

    def rational(self) -> Fraction:
        sign = 1
        ch = self.peek()
        if ch and ch in "+-":
            self.pos += 1
            sign = -1 if ch == "-" else 1
        return sign * self.unsigned_rational()


def _exponent(r: _Reader) -> Exponent:
    ch = r.peek()
    if ch == "(":
        r.take("(")
        q = r.rational()
        r.take(")")
        return Exponent((q,))
    if ch == "[":
        r.take("[")
        coords = [r.rational()]
        while r.peek() == ",":
            r.take(",")
            coords.append(r.rational())
        r.take("]")
        return Exponent(coords)
    if ch == "-" or ch.isdigit():
        return Exponent((r.integer(),))
    r.error("expected an exponent")


def parse_exponent(text: str, group: GroupDescriptor | None = None) -> Exponent:
    """``3``, ``3/2``, ``(3/2)`` or ``[1, -2/3]``."""
    r = _Reader(text)
    ch = r.peek()
    if ch and ch in "([":
        g = _exponent(r)
    else:
        g = Exponent((r.rational(),))
    if not r.at_end():
        r.error("trailing characters")
    if group is not None:
        group.check(g)
    return g


def _quad(r: _Reader, field: FieldDescriptor):
    total = field.zero()
    first = True
    while True:
        ch = r.peek()
        sign = 1
        if ch and ch in "+-":
            r.pos += 1
            sign = -1 if ch == "-" else 1
        elif not first:
            break
        ch = r.peek()
        if ch == "r":
            q, is_r = Fraction(1), True
            r.pos += 1
        elif ch.isdigit():
            q = r.unsigned_rational()
            is_r = r.peek() == "r"
            if is_r:
                r.pos += 1
        else:
            r.error("expected a coefficient")
        if is_r:
            if not field.is_quadratic:
                r.pos -= 1
                r.error("'r' requires a quadratic coefficient field")
            total = total + field.element(0, sign * q)
        else:
            total = total + field.element(sign * q)
        first = False
    return total


def _coeff(r: _Reader, field: FieldDescriptor):
    if r.peek() == "(":
        r.take("(")
        c = _quad(r, field)
        r.take(")")
        return c
    return field.element(r.unsigned_rational())


def parse_field_element(text: str, field: FieldDescriptor):
    """``3/2``, ``-1`` or ``(1+2r)``."""
    r = _Reader(text)
    c = _quad(r, field) if r.peek() != "(" else _coeff(r, field)
    if not r.at_end():
        r.error("trailing characters")
    return c


def parse_series(
    text: str,
    group: GroupDescriptor | None = None,
    field: FieldDescriptor | None = None,
    cutoff=INF,
):
    """Parse the series grammar; an ``O(t^e)`` term sets the cutoff."""
    from .series import Series

    group = group or GroupDescriptor.integer(1)
    field = field or FieldDescriptor.rationals()
    r = _Reader(text)
    terms: list = []
    first = True
    while True:
        ch = r.peek()
        if ch == "" and not first:
            break
        sign = 1
        if ch and ch in "+-":
            r.pos += 1
            sign = -1 if ch == "-" else 1
        elif not first:
            r.error("expected '+' or '-'")
        ch = r.peek()
        if ch == "O":
            if sign < 0 or first:
                r.error("O-term must be added at the end")
            r.pos += 1
            r.take("(")
            r.take("t")
            r.take("^")
            cutoff = _exponent(r)
            r.take(")")
            if not r.at_end():
                r.error("O-term must be last")
            break
        if ch == "t":
            c = field.one()
            g = _monomial(r, group)
        else:
            c = _coeff(r, field)
            if r.peek() == "*":
                r.take("*")
                if r.peek() != "t":
                    r.error("expected 't'")
                g = _monomial(r, group)
            else:
                g = group.zero()
        if len(g) != group.dimension:
            raise ParseError(
                f"exponent has {len(g)} coordinates, group has {group.dimension}", text, r.pos
            )
        terms.append((g, c if sign > 0 else -c))
        first = False
    if cutoff is not INF and not isinstance(cutoff, Exponent):
        cutoff = Exponent(cutoff) if isinstance(cutoff, (tuple, list)) else Exponent((cutoff,))
    if cutoff is not INF and len(cutoff) != group.dimension:
        raise ParseError("cutoff has the wrong number of coordinates", text, r.pos)
    if not group.is_rational:
        for g, _ in terms:
            group.check(g)
        group.check(cutoff)
    return Series(terms, cutoff, group, field)


def _monomial(r: _Reader, group: GroupDescriptor) -> Exponent:
    r.take("t")
    if r.peek() == "^":
        r.take("^")
        return _exponent(r)
    if group.dimension != 1:
        r.error("bare 't' needs an exponent vector in rank > 1")
    return Exponent((1,))


def parse_matrix(text: str) -> tuple:
    """``[[1, 1], [0, 1]]`` with rational entries."""
    r = _Reader(text)
    r.take("[")
    rows = []
    while True:
        r.take("[")
        row = [r.rational()]
        while r.peek() == ",":
            r.take(",")
            row.append(r.rational())
        r.take("]")
        rows.append(tuple(row))
        if r.peek() == ",":
            r.take(",")
            continue
        break
    r.take("]")
    if not r.at_end():
        r.error("trailing characters")
    return tuple(rows)


# -- printing ----------------------------------------------------------------


def format_exponent(g) -> str:
    """Exponent literal accepted after ``t^``."""
    if len(g) == 1:
        q = g[0]
        if q.denominator == 1 and q >= 0:
            return str(q.numerator)
        return f"({q})"
    return "[" + ",".join(str(c) for c in g) + "]"


def format_field_element(c) -> str:
    if isinstance(c, QuadraticElement) and c.q:
        sign = "-" if c.q < 0 else "+"
        return f"({c.p}{sign}{abs(c.q)}r)"
    if isinstance(c, QuadraticElement):
        c = c.p
    return str(Fraction(c))


def _split_sign(c):
    """(is_negative, magnitude-string) for term printing."""
    if isinstance(c, QuadraticElement):
        if c.q:
            return False, format_field_element(c)
        c = c.p
    c = Fraction(c)
    return c < 0, str(abs(c))


def format_series(a) -> str:
    parts: list[str] = []
    for g, c in a.items():
        neg, mag = _split_sign(c)
        if g.is_zero():
            body = mag
        else:
            mono = "t" if (len(g) == 1 and g[0] == 1) else f"t^{format_exponent(g)}"
            body = mono if mag == "1" else f"{mag}*{mono}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    if not parts:
        parts.append("0")
    if a.cutoff is not INF:
        parts.append(f"+ O(t^{format_exponent(a.cutoff)})")
    return " ".join(parts)
