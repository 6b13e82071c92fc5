"""Text forms of fields, scalars, and series, with parsers that invert them.

Grammar, whitespace insensitive:

    field  := "GF" "(" p ["," d [";" "modulus" "=" INT ("," INT)*]] ")"
            | "Laurent" "(" field ")"
    series := ["-"] term (("+"|"-") term)* ["mod" "z" "^" INT]
    term   := factor ("*" factor)*          at most one z factor per term
    factor := "z" ["^" INT] | scalar atom
    scalar := INT | "x" ["^" INT] | "t" ["^" ["-"] INT]
            | "O" "(" "t" "^" ["-"] INT ")" | "(" scalar sum ")"

x is the generator of an extension field, t the Laurent variable, and
O(t^k) a zero known only to precision k.  Everything the printers in this
module emit parses back to an equal object, truncations and precision
markers included.
"""

from __future__ import annotations

import math

from .coeff_rings import (
    DEFAULT_TPREC,
    FieldElement,
    FiniteField,
    LaurentRing,
    LaurentScalar,
)
from .errors import ParseError
from .formal_series import TruncatedSeries, series as make_series

_OPS = set("+-*^(),;=")


def _tokenize(text: str):
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("int", int(text[i:j]), i))
            i = j
        elif ch.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(("name", text[i:j], i))
            i = j
        elif ch in _OPS:
            toks.append(("op", ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", text, i)
    toks.append(("end", "", n))
    return toks


class _Parser:
    def __init__(self, text: str, tprec: int = DEFAULT_TPREC):
        self.text = text
        self.toks = _tokenize(text)
        self.k = 0
        self.tprec = tprec

    # -- token plumbing ----------------------------------------------------

    def _peek(self):
        return self.toks[self.k]

    def _take(self):
        tok = self.toks[self.k]
        self.k += 1
        return tok

    def _at_op(self, ch: str) -> bool:
        kind, val, _ = self._peek()
        return kind == "op" and val == ch

    def _at_name(self, name: str) -> bool:
        kind, val, _ = self._peek()
        return kind == "name" and val == name

    def _expect_op(self, ch: str):
        kind, val, pos = self._take()
        if kind != "op" or val != ch:
            raise ParseError(f"expected {ch!r}", self.text, pos)

    def _expect_int(self) -> int:
        kind, val, pos = self._take()
        if kind != "int":
            raise ParseError("expected an integer", self.text, pos)
        return val

    def _expect_name(self, name: str):
        kind, val, pos = self._take()
        if kind != "name" or val != name:
            raise ParseError(f"expected {name!r}", self.text, pos)

    def _expect_end(self):
        kind, _, pos = self._peek()
        if kind != "end":
            raise ParseError("trailing input", self.text, pos)

    def _signed_int(self) -> int:
        if self._at_op("-"):
            self._take()
            return -self._expect_int()
        return self._expect_int()

    # -- fields ------------------------------------------------------------

    def field(self):
        kind, val, pos = self._peek()
        if kind == "name" and val == "Laurent":
            self._take()
            self._expect_op("(")
            inner = self.field()
            if not isinstance(inner, FiniteField):
                raise ParseError("Laurent coefficients must form a finite field",
                                 self.text, pos)
            self._expect_op(")")
            return LaurentRing(inner, self.tprec)
        if kind == "name" and val == "GF":
            self._take()
            self._expect_op("(")
            p = self._expect_int()
            d, modulus = 1, None
            if self._at_op(","):
                self._take()
                d = self._expect_int()
                if self._at_op(";"):
                    self._take()
                    self._expect_name("modulus")
                    self._expect_op("=")
                    modulus = [self._expect_int()]
                    while self._at_op(","):
                        self._take()
                        modulus.append(self._expect_int())
                    modulus = tuple(modulus)
            self._expect_op(")")
            return FiniteField(p, d, modulus)
        raise ParseError("expected GF(...) or Laurent(GF(...))", self.text, pos)

    # -- scalars and series ------------------------------------------------

    def _scalar_atom(self, ring):
        kind, val, pos = self._take()
        if kind == "int":
            return ring.from_int(val)
        if kind == "op" and val == "(":
            s = self._scalar_sum(ring)
            self._expect_op(")")
            return s
        if kind == "name" and val == "x":
            fld = ring.field if isinstance(ring, LaurentRing) else ring
            if fld.d == 1:
                raise ParseError("x needs an extension field", self.text, pos)
            e = 1
            if self._at_op("^"):
                self._take()
                e = self._expect_int()
            g = fld.gen() ** e
            return ring.embed(g) if isinstance(ring, LaurentRing) else g
        if kind == "name" and val == "t":
            if not isinstance(ring, LaurentRing):
                raise ParseError("t needs Laurent coefficients", self.text, pos)
            e = 1
            if self._at_op("^"):
                self._take()
                e = self._signed_int()
            return ring.t(e)
        if kind == "name" and val == "O":
            if not isinstance(ring, LaurentRing):
                raise ParseError("O(t^k) needs Laurent coefficients",
                                 self.text, pos)
            self._expect_op("(")
            self._expect_name("t")
            self._expect_op("^")
            e = self._signed_int()
            self._expect_op(")")
            return ring.element({}, tprec=e)
        raise ParseError("expected a coefficient", self.text, pos)

    def _term(self, ring, allow_z: bool):
        """One product of factors; returns (coefficient or None, z exponent)."""
        coeff = None
        zexp = 0
        seen_z = False
        while True:
            kind, val, pos = self._peek()
            if kind == "name" and val == "z":
                if not allow_z:
                    raise ParseError("z cannot appear inside a coefficient",
                                     self.text, pos)
                if seen_z:
                    raise ParseError("two z factors in one term", self.text, pos)
                self._take()
                zexp = 1
                if self._at_op("^"):
                    self._take()
                    zexp = self._expect_int()
                seen_z = True
            else:
                atom = self._scalar_atom(ring)
                coeff = atom if coeff is None else coeff * atom
            if self._at_op("*"):
                self._take()
                continue
            return coeff, zexp

    def _scalar_sum(self, ring):
        total = None
        sign = 1
        if self._at_op("-"):
            self._take()
            sign = -1
        while True:
            coeff, _ = self._term(ring, allow_z=False)
            if coeff is None:
                raise ParseError("empty coefficient", self.text, self._peek()[2])
            if sign < 0:
                coeff = -coeff
            total = coeff if total is None else total + coeff
            if self._at_op("+"):
                self._take()
                sign = 1
            elif self._at_op("-"):
                self._take()
                sign = -1
            else:
                return total

    def series(self, ring) -> TruncatedSeries:
        entries: dict = {}
        sign = 1
        if self._at_op("-"):
            self._take()
            sign = -1
        while True:
            coeff, zexp = self._term(ring, allow_z=True)
            if coeff is None:
                coeff = ring.one()
            if sign < 0:
                coeff = -coeff
            prev = entries.get(zexp)
            entries[zexp] = coeff if prev is None else prev + coeff
            if self._at_op("+"):
                self._take()
                sign = 1
            elif self._at_op("-"):
                self._take()
                sign = -1
            else:
                break
        n_trunc = None
        if self._at_name("mod"):
            self._take()
            self._expect_name("z")
            self._expect_op("^")
            n_trunc = self._expect_int()
        return make_series(ring, entries, n_trunc)


def parse_field(text: str, tprec: int = DEFAULT_TPREC):
    """A FiniteField or LaurentRing from its literal."""
    p = _Parser(text, tprec)
    ring = p.field()
    p._expect_end()
    return ring


def parse_series(text: str, ring) -> TruncatedSeries:
    """A series in z over the given ring from its literal."""
    p = _Parser(text)
    s = p.series(ring)
    p._expect_end()
    return s


def parse_scalar(text: str, ring):
    """A single coefficient (no z) from its literal."""
    p = _Parser(text)
    s = p._scalar_sum(ring)
    p._expect_end()
    return s


# -- printers ---------------------------------------------------------------


def field_to_str(ring) -> str:
    if isinstance(ring, LaurentRing):
        return f"Laurent({field_to_str(ring.field)})"
    return repr(ring)


def _wrap_coefficient(c) -> bool:
    if isinstance(c, LaurentScalar):
        return c._term_count() > 1
    return c._needs_parens()


def series_to_str(s: TruncatedSeries) -> str:
    one = s.ring.one()
    parts = []
    for e, c in enumerate(s.coeffs):
        if c.is_certified_zero():
            continue
        if e == 0:
            parts.append(str(c))
            continue
        z = "z" if e == 1 else f"z^{e}"
        if c == one:
            parts.append(z)
        else:
            cs = str(c)
            if _wrap_coefficient(c):
                cs = f"({cs})"
            parts.append(f"{cs}*{z}")
    body = " + ".join(parts) if parts else "0"
    if s.n_trunc is not None:
        body = f"{body} mod z^{s.n_trunc}"
    return body


def scalar_to_jsonable(x):
    """Prime-field values as ints, everything else as its literal text."""
    if isinstance(x, FieldElement) and x.field.d == 1:
        return x.coords[0]
    return str(x)


def index_to_jsonable(i):
    """Jump indices: finite ints pass through, the two non-values get names."""
    if i is None:
        return "beyond-truncation"
    if i is math.inf:
        return "infinite"
    return i


def fraction_to_str(fr) -> str:
    return f"{fr.numerator}/{fr.denominator}"
