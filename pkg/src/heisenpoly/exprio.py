"""Text grammar, parser and printer for operator expressions and scalars.

Grammar (whitespace insignificant, offsets are 0-based)::

    expr   := '-'? term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' '-'? nat)?
    base   := generator | scalar | '(' expr ')'
    scalar := nat ('/' nat)? | 'q' | 'v' | 'alpha' | 'eps' | 'c' | '{' nat '}'

Generators are the algebra's own names (a, b, a1.., b1.., A, B); implicit
multiplication is rejected, so ``b*a`` is a product while ``ba`` is an
unknown name.  ``q`` maps to v**2 internally and ``v`` denotes q**(1/2);
``{k}`` is the q-number literal.  Negative exponents are accepted for the
scalar bases q and v only (Laurent coefficients print that way); generator
exponents must be non-negative integers.

Printing is deterministic: words sorted by descending total degree, then
ascending by letter sequence, coefficients in the exact v/q token forms the
parser accepts, so ``parse(print_poly(p))`` reproduces p.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .ncalg import AlgebraSpec, NCPoly
from .scalars import CoeffPoly, _term_text, qnum


class ParseError(ValueError):
    """Syntax or name error, carrying the 0-based byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"offset {offset}: {message}")
        self.offset = offset


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z][A-Za-z0-9]*)|([{}()+\-*^]))")

_SCALARS = {"q", "v", "alpha", "eps", "c"}


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise ParseError(f"unexpected character {text[at]!r}", at)
        if m.group(1):
            tokens.append(("num", m.group(1), m.start(1)))
        elif m.group(2):
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3):
            tokens.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    """Recursive-descent evaluator over either an algebra or the scalar ring."""

    def __init__(self, text: str, algebra: AlgebraSpec | None):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.algebra = algebra

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, val, off = self.peek()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", off)
        self.take()

    # value helpers -----------------------------------------------------

    def _scalar(self, c: CoeffPoly):
        return self.algebra.scalar(c) if self.algebra is not None else c

    def _symbol(self, name: str, off: int):
        if name in _SCALARS:
            return self._scalar(CoeffPoly.monomial(
                v={"q": 2, "v": 1}.get(name, 0),
                alpha=1 if name == "alpha" else 0,
                eps=1 if name == "eps" else 0,
                c=1 if name == "c" else 0))
        if self.algebra is None:
            raise ParseError(f"generator {name!r} not allowed in a scalar expression", off)
        try:
            return self.algebra.gen(name)
        except KeyError:
            m = re.fullmatch(r"([ab])(\d+)", name)
            if m and self.algebra.kind in ("classical", "qplane"):
                p = self.algebra.pairs
                if int(m.group(2)) > p:
                    raise ParseError(
                        f"generator index {m.group(2)} exceeds p={p}", off) from None
            raise ParseError(
                f"unknown generator {name!r} for the {self.algebra.kind} algebra", off) from None

    # grammar -------------------------------------------------------------

    def parse(self):
        value = self.expr()
        kind, val, off = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", off)
        return value

    def expr(self):
        kind, val, off = self.peek()
        negate = kind == "op" and val == "-"
        if negate:
            self.take()
        value = self.term()
        if negate:
            value = -value
        while True:
            kind, val, off = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                value = value + rhs if val == "+" else value - rhs
            else:
                return value

    def term(self):
        value = self.factor()
        while True:
            kind, val, off = self.peek()
            if kind == "op" and val == "*":
                self.take()
                value = value * self.factor()
            else:
                return value

    def factor(self):
        value = self.base()
        kind, val, off = self.peek()
        if kind == "op" and val == "^":
            self.take()
            sign = 1
            kind, val, off = self.peek()
            if kind == "op" and val == "-":
                sign = -1
                self.take()
            kind, val, off = self.peek()
            if kind != "num" or "/" in val:
                raise ParseError("exponent must be an integer literal", off)
            self.take()
            e = sign * int(val)
            if e >= 0:
                return value ** e
            return self._negative_power(value, e, off)
        return value

    def _negative_power(self, value, e: int, off: int):
        if isinstance(value, NCPoly):
            terms = value._t
            if list(terms) != [()]:
                raise ParseError("negative exponents require a scalar base", off)
            inner = CoeffPoly._raw(dict(terms[()]))
            return self._scalar(_invert_pow(inner, e, off))
        return _invert_pow(value, e, off)

    def base(self):
        kind, val, off = self.take()
        if kind == "num":
            if "/" in val:
                num, den = val.split("/")
                return self._scalar(CoeffPoly.number(Fraction(int(num), int(den))))
            return self._scalar(CoeffPoly.number(int(val)))
        if kind == "name":
            return self._symbol(val, off)
        if kind == "op" and val == "(":
            value = self.expr()
            self.expect_op(")")
            return value
        if kind == "op" and val == "{":
            nkind, nval, noff = self.take()
            if nkind != "num" or "/" in nval:
                raise ParseError("q-number literal needs an integer", noff)
            self.expect_op("}")
            return self._scalar(qnum(int(nval)))
        raise ParseError(f"unexpected {val!r}" if val else "unexpected end of input", off)


def _invert_pow(c: CoeffPoly, e: int, off: int) -> CoeffPoly:
    terms = c.terms
    if len(terms) != 1:
        raise ParseError("negative exponents require a monomial scalar base", off)
    ((exps, val),) = terms.items()
    if exps[1] or exps[2] or exps[3]:
        raise ParseError("negative exponents are limited to q, v and rationals", off)
    scale = Fraction(val) ** e
    if scale.denominator == 1:
        scale = scale.numerator
    return CoeffPoly.monomial(scale, v=exps[0] * e)


def parse(text: str, algebra: AlgebraSpec) -> NCPoly:
    """Parse an operator expression; the result is normal-ordered."""
    return _Parser(text, algebra).parse().normal_order()


def parse_scalar(text: str) -> CoeffPoly:
    """Parse a coefficient-ring expression."""
    return _Parser(text, None).parse()


# -- printing -----------------------------------------------------------------


def _word_text(word: tuple, algebra: AlgebraSpec) -> str:
    names = algebra.gen_names
    return "*".join(
        names[word[i]] + (f"^{word[i + 1]}" if word[i + 1] > 1 else "")
        for i in range(0, len(word), 2))


def _word_sort_key(word: tuple):
    letters = tuple(g for i in range(0, len(word), 2) for g in [word[i]] * word[i + 1])
    return (-len(letters), letters)


def print_poly(p: NCPoly) -> str:
    """Canonical text form; inverse of parse on canonical polynomials."""
    if not p.is_normal:
        raise ValueError("print_poly requires a normal-ordered polynomial")
    if p.is_zero:
        return "0"
    atoms = []  # (is_negative, magnitude text)
    for word in sorted(p._t, key=_word_sort_key):
        coeff = CoeffPoly._raw(dict(p._t[word]))
        if not word:
            for exps, val in coeff.sorted_terms():
                text = _term_text(exps, val, report=False)
                atoms.append((text.startswith("-"), text.lstrip("-")))
            continue
        wtext = _word_text(word, p.algebra)
        terms = coeff.sorted_terms()
        if len(terms) == 1:
            exps, val = terms[0]
            ctext = _term_text(exps, val, report=False)
            neg = ctext.startswith("-")
            ctext = ctext.lstrip("-")
            atoms.append((neg, wtext if ctext == "1" else f"{ctext}*{wtext}"))
        else:
            inner = []
            for exps, val in terms:
                text = _term_text(exps, val, report=False)
                if inner:
                    inner.append(("- " if text.startswith("-") else "+ ") + text.lstrip("-"))
                else:
                    inner.append(text)
            atoms.append((False, f"({' '.join(inner)})*{wtext}"))
    first_neg, first = atoms[0]
    parts = [("-" + first) if first_neg else first]
    for neg, text in atoms[1:]:
        parts.append(("- " if neg else "+ ") + text)
    return " ".join(parts)
