"""Coefficient rings: finite fields GF(p^d) and Laurent-series scalars over them.

A field element is a coordinate vector over the prime field with respect to the
power basis 1, x, ..., x^(d-1) of F_p[x] modulo a monic irreducible modulus of
degree d.  For d = 1 the vector has length one and arithmetic is plain integer
arithmetic mod p.  Moduli are verified irreducible at construction by exhaustive
trial division (intended working range d <= 8, small p).

A Laurent scalar represents an element of GF(p^d)((t)) as a window of stored
coefficients starting at exponent v0 together with a precision marker:

    value = sum_i coeffs[i] * t^(v0 + i),  coefficients known for exponents < tprec

tprec is None for exact elements (the value IS the finite sum; typically a
polynomial in t, possibly times a power of t).  The distinction between an exact
zero and "zero to precision tprec" is load bearing: the valuation of the former
is +infinity, the valuation of the latter is indeterminate and asking for it
raises.  Canonical form strips zero coefficients at both ends of the window, so
a nonzero stored leading coefficient certifies the valuation v0 exactly.

Norms on these rings are never materialized as floats anywhere in the library;
all size comparisons go through valuations (integers here, Fractions where
slopes and bounds appear).
"""

from __future__ import annotations

import math

import numpy as np

from .errors import (
    CompositeP,
    DivisionByZero,
    IndeterminateValuation,
    NoSuchRoot,
    NonIntegralCoefficient,
    POrderRequested,
    ParabolicLabError,
    ReducibleModulus,
    ScalarRingMismatch,
)

DEFAULT_TPREC = 64


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def _prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending."""
    out = []
    k = 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


# Polynomials over F_p as little-endian int lists, used only for modulus checks.

def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _prem(a, b, p):
    """Remainder of a mod b over F_p; b need not be monic."""
    a = _ptrim([c % p for c in a])
    b = _ptrim([c % p for c in b])
    db = len(b) - 1
    binv = pow(b[-1], -1, p)
    while a and len(a) - 1 >= db:
        c = a[-1] * binv % p
        s = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[s + i] = (a[s + i] - c * bc) % p
        _ptrim(a)
    return a


def _is_irreducible(coeffs, p):
    """Trial division by every monic polynomial of degree 1..deg/2."""
    d = len(coeffs) - 1
    if d == 1:
        return True
    if coeffs[0] == 0:
        return False
    for e in range(1, d // 2 + 1):
        for code in range(p ** e):
            g = []
            c = code
            for _ in range(e):
                g.append(c % p)
                c //= p
            g.append(1)
            if not _prem(coeffs, g, p):
                return False
    return True


class FiniteField:
    """The field GF(p^d), doubling as the scalar-ring descriptor for series."""

    __slots__ = ("p", "d", "modulus", "order", "_red_rows", "_npred", "_zero", "_one")

    def __init__(self, p: int, d: int = 1, modulus: tuple[int, ...] | None = None):
        if not _is_prime(p):
            raise CompositeP(f"characteristic {p} is not prime")
        if d < 1:
            raise ParabolicLabError(f"extension degree must be positive, got {d}")
        self.p = p
        self.d = d
        self.order = p ** d
        if modulus is None:
            modulus = self._default_modulus(p, d)
        else:
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != d + 1:
                raise ParabolicLabError(
                    f"modulus needs {d + 1} coefficients for degree {d}, got {len(modulus)}")
            if modulus[-1] != 1:
                raise ParabolicLabError("modulus must be monic")
            if d > 1 and not _is_irreducible(list(modulus), p):
                raise ReducibleModulus(f"modulus {list(modulus)} factors over GF({p})")
        self.modulus = modulus
        # coordinates of x^k mod modulus for k = 0 .. 2d-2, as rows
        rows = [[1 if i == k else 0 for i in range(d)] for k in range(d)]
        if d > 1:
            top = [(-modulus[i]) % p for i in range(d)]  # x^d
            row = top
            rows.append(row)
            for _ in range(d - 2):
                nxt = [0] + row[:-1]
                carry = row[-1]
                for i in range(d):
                    nxt[i] = (nxt[i] + carry * top[i]) % p
                rows.append(nxt)
                row = nxt
        self._red_rows = tuple(tuple(r) for r in rows)
        self._npred = np.array(rows, dtype=np.int64)
        self._zero = FieldElement(self, (0,) * d)
        self._one = FieldElement(self, (1,) + (0,) * (d - 1))

    @staticmethod
    def _default_modulus(p, d):
        if d == 1:
            return (0, 1)
        for code in range(p ** d):
            g = []
            c = code
            for _ in range(d):
                g.append(c % p)
                c //= p
            g.append(1)
            if _is_irreducible(g, p):
                return tuple(g)
        raise ParabolicLabError("no irreducible modulus found")  # pragma: no cover

    @property
    def char(self) -> int:
        return self.p

    def zero(self) -> "FieldElement":
        return self._zero

    def one(self) -> "FieldElement":
        return self._one

    def from_int(self, n: int) -> "FieldElement":
        return FieldElement(self, (n % self.p,) + (0,) * (self.d - 1))

    def element(self, coords) -> "FieldElement":
        coords = tuple(int(c) % self.p for c in coords)
        if len(coords) > self.d:
            raise ParabolicLabError(f"{len(coords)} coordinates for degree {self.d}")
        coords = coords + (0,) * (self.d - len(coords))
        return FieldElement(self, coords)

    def gen(self) -> "FieldElement":
        """The class of x; only meaningful for d >= 2."""
        if self.d == 1:
            return self._one
        return FieldElement(self, (0, 1) + (0,) * (self.d - 2))

    def half(self, m: int) -> "FieldElement":
        """The field value of the integer m/2: exact halving when m is even,
        multiplication by the inverse of 2 otherwise (odd characteristic only)."""
        if m % 2 == 0:
            return self.from_int(m // 2)
        if self.p == 2:
            raise ParabolicLabError("cannot halve an odd integer in characteristic 2")
        return self.from_int((m % self.p) * pow(2, -1, self.p) % self.p)

    def elements(self):
        """All field elements in deterministic order (base-p counting)."""
        for n in range(self.order):
            coords = []
            c = n
            for _ in range(self.d):
                coords.append(c % self.p)
                c //= self.p
            yield FieldElement(self, tuple(coords))

    def __call__(self, value):
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ScalarRingMismatch(f"{value!r} is not in {self!r}")
            return value
        if isinstance(value, int):
            return self.from_int(value)
        return self.element(value)

    def __eq__(self, other):
        return (isinstance(other, FiniteField) and self.p == other.p
                and self.d == other.d and self.modulus == other.modulus)

    def __hash__(self):
        return hash(("FiniteField", self.p, self.d, self.modulus))

    def __repr__(self):
        if self.d == 1:
            return f"GF({self.p})"
        return f"GF({self.p},{self.d};modulus={','.join(map(str, self.modulus))})"


class FieldElement:
    __slots__ = ("field", "coords")

    def __init__(self, field: FiniteField, coords: tuple[int, ...]):
        self.field = field
        self.coords = coords

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ScalarRingMismatch("field elements from different fields")
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.field.p
        return FieldElement(self.field, tuple(
            (a + b) % p for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.field.p
        return FieldElement(self.field, tuple(
            (a - b) % p for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, tuple((-a) % p for a in self.coords))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        F = self.field
        p, d = F.p, F.d
        if d == 1:
            return FieldElement(F, ((self.coords[0] * other.coords[0]) % p,))
        a, b = self.coords, other.coords
        prod = [0] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        out = [0] * d
        for k, ck in enumerate(prod):
            if ck:
                row = F._red_rows[k]
                for i in range(d):
                    out[i] += ck * row[i]
        return FieldElement(F, tuple(c % p for c in out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise DivisionByZero("inverse of zero field element")
        return self ** (self.field.order - 2)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    # Uniform scalar interface shared with LaurentScalar: over an exact field
    # every zero test is certain.
    def is_certified_zero(self) -> bool:
        return self.is_zero()

    def is_certified_nonzero(self) -> bool:
        return not self.is_zero()

    def valuation_lower_bound(self):
        return math.inf if self.is_zero() else 0

    def __bool__(self):
        return not self.is_zero()

    def multiplicative_order(self) -> int:
        if self.is_zero():
            raise DivisionByZero("zero has no multiplicative order")
        e = self.field.order - 1
        for r in _prime_factors(e):
            while e % r == 0 and (self ** (e // r)) == self.field.one():
                e //= r
        return e

    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.field.from_int(other)
        return (isinstance(other, FieldElement) and self.field == other.field
                and self.coords == other.coords)

    def __hash__(self):
        return hash((self.field, self.coords))

    def _needs_parens(self) -> bool:
        return sum(1 for c in self.coords if c) > 1

    def __str__(self):
        if self.field.d == 1:
            return str(self.coords[0])
        terms = []
        for j, c in enumerate(self.coords):
            if c == 0:
                continue
            if j == 0:
                terms.append(str(c))
            else:
                xp = "x" if j == 1 else f"x^{j}"
                terms.append(xp if c == 1 else f"{c}*{xp}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"{self!s} in {self.field!r}"


def root_of_unity(field: FiniteField, q: int) -> FieldElement:
    """An element of exact multiplicative order q, found via a primitive element.

    Raises POrderRequested if the characteristic divides q (no such root can
    exist in characteristic p) and NoSuchRoot if q does not divide p^d - 1.
    """
    if q < 1:
        raise ParabolicLabError(f"order must be positive, got {q}")
    if q % field.p == 0:
        raise POrderRequested(
            f"order {q} is divisible by the characteristic {field.p}")
    e = field.order - 1
    if q == 1:
        return field.one()
    if e % q != 0:
        raise NoSuchRoot(f"{field!r} has no element of order {q}")
    primes = _prime_factors(e)
    for g in field.elements():
        if g.is_zero():
            continue
        if all((g ** (e // r)) != field.one() for r in primes):
            return g ** (e // q)
    raise NoSuchRoot(f"no primitive element found in {field!r}")  # pragma: no cover


def smallest_field_with_root(p: int, q: int) -> FiniteField:
    """The smallest extension of GF(p) containing an element of order q."""
    if q < 1:
        raise ParabolicLabError(f"order must be positive, got {q}")
    if q > 1 and q % p == 0:
        raise POrderRequested(
            f"order {q} is divisible by the characteristic {p}")
    d = 1
    while (p ** d - 1) % q:
        d += 1
    return FiniteField(p, d)


def ring_of(x):
    """The structure a scalar belongs to: its FiniteField or its LaurentRing."""
    return x.ring if isinstance(x, LaurentScalar) else x.field


def half_scalar(ring, m: int):
    """m/2 as a scalar of ring, computed as an integer when m is even.

    For odd m the characteristic must be odd (the inverse of 2 exists).
    Accepts a FiniteField or a LaurentRing.
    """
    if isinstance(ring, LaurentRing):
        return ring.embed(ring.field.half(m))
    return ring.half(m)


class LaurentRing:
    """Descriptor for GF(p^d)((t)) as a coefficient ring for series.

    tprec is the default absolute t-precision used when an inversion has to
    expand a geometric series; individual calls can override it.
    """

    __slots__ = ("field", "tprec")

    def __init__(self, field: FiniteField, tprec: int = DEFAULT_TPREC):
        self.field = field
        self.tprec = tprec

    @property
    def char(self) -> int:
        return self.field.p

    def zero(self) -> "LaurentScalar":
        return LaurentScalar(self, 0, (), None)

    def one(self) -> "LaurentScalar":
        return LaurentScalar(self, 0, (self.field.one(),), None)

    def from_int(self, n: int) -> "LaurentScalar":
        return self.embed(self.field.from_int(n))

    def embed(self, c: FieldElement) -> "LaurentScalar":
        """The constant c as an exact Laurent scalar."""
        if c.field != self.field:
            raise ScalarRingMismatch("constant from a different residue field")
        if c.is_zero():
            return self.zero()
        return LaurentScalar(self, 0, (c,), None)

    def monomial(self, c, exp: int) -> "LaurentScalar":
        c = self.field(c) if not isinstance(c, FieldElement) else self.field(c)
        if c.is_zero():
            return self.zero()
        return LaurentScalar(self, exp, (c,), None)

    def t(self, exp: int = 1) -> "LaurentScalar":
        return self.monomial(1, exp)

    def element(self, pairs, tprec: int | None = None) -> "LaurentScalar":
        """Build from {exponent: coefficient} (coefficients int or FieldElement)."""
        if not pairs:
            return LaurentScalar(self, 0, (), tprec)
        exps = sorted(pairs)
        v0 = exps[0]
        coeffs = [self.field.zero()] * (exps[-1] - v0 + 1)
        for e, c in pairs.items():
            coeffs[e - v0] = self.field(c)
        return _make_laurent(self, v0, coeffs, tprec)

    def __call__(self, value):
        if isinstance(value, LaurentScalar):
            if value.ring != self:
                raise ScalarRingMismatch(f"{value!r} is not over {self!r}")
            return value
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, FieldElement):
            return self.embed(value)
        return self.element(value)

    def __eq__(self, other):
        return isinstance(other, LaurentRing) and self.field == other.field

    def __hash__(self):
        return hash(("LaurentRing", self.field))

    def __repr__(self):
        return f"Laurent({self.field!r})"


def _make_laurent(ring, v0, coeffs, tprec):
    """Canonicalize: clip to precision, strip zero coefficients at both ends."""
    coeffs = list(coeffs)
    if tprec is not None:
        keep = tprec - v0
        if keep <= 0:
            coeffs = []
        elif len(coeffs) > keep:
            coeffs = coeffs[:keep]
    while coeffs and coeffs[0].is_zero():
        coeffs.pop(0)
        v0 += 1
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    if not coeffs:
        return LaurentScalar(ring, 0, (), tprec)
    return LaurentScalar(ring, v0, tuple(coeffs), tprec)


class LaurentScalar:
    __slots__ = ("ring", "v0", "coeffs", "tprec")

    def __init__(self, ring, v0, coeffs, tprec):
        self.ring = ring
        self.v0 = v0
        self.coeffs = coeffs
        self.tprec = tprec

    @property
    def field(self) -> FiniteField:
        return self.ring.field

    def is_exact(self) -> bool:
        return self.tprec is None

    def is_certified_zero(self) -> bool:
        return not self.coeffs and self.tprec is None

    def is_certified_nonzero(self) -> bool:
        return bool(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def valuation(self) -> int:
        """Exact t-adic valuation.  +inf for the exact zero; raises for a
        truncated zero, whose valuation is merely bounded below by tprec."""
        if self.coeffs:
            return self.v0
        if self.tprec is None:
            return math.inf
        raise IndeterminateValuation(
            f"zero to precision O(t^{self.tprec}); valuation unknown")

    def valuation_lower_bound(self):
        if self.coeffs:
            return self.v0
        return math.inf if self.tprec is None else self.tprec

    def residue(self) -> FieldElement:
        """Coefficient of t^0.  Requires an integral element whose reduction is
        determined by the stored data."""
        if not self.coeffs:
            if self.tprec is None or self.tprec >= 1:
                return self.field.zero()
            raise IndeterminateValuation(
                f"reduction of a zero known only to O(t^{self.tprec})")
        if self.v0 < 0:
            raise NonIntegralCoefficient(f"valuation {self.v0} < 0")
        if self.tprec is not None and self.tprec < 1:
            raise IndeterminateValuation("t^0 coefficient beyond stored precision")
        if self.v0 > 0:
            return self.field.zero()
        return self.coeffs[0]

    def coefficient(self, exp: int) -> FieldElement:
        """Stored coefficient of t^exp (zero when certified)."""
        if self.tprec is not None and exp >= self.tprec:
            raise IndeterminateValuation(f"t^{exp} beyond precision O(t^{self.tprec})")
        i = exp - self.v0
        if not self.coeffs or i < 0 or i >= len(self.coeffs):
            return self.field.zero()
        return self.coeffs[i]

    def clip(self, tprec: int) -> "LaurentScalar":
        """Forget everything at or above exponent tprec."""
        tp = tprec if self.tprec is None else min(self.tprec, tprec)
        return _make_laurent(self.ring, self.v0, list(self.coeffs), tp)

    def shift(self, k: int) -> "LaurentScalar":
        """Multiply by t^k."""
        if not self.coeffs:
            tp = None if self.tprec is None else self.tprec + k
            return LaurentScalar(self.ring, 0, (), tp)
        tp = None if self.tprec is None else self.tprec + k
        return LaurentScalar(self.ring, self.v0 + k, self.coeffs, tp)

    def _coerce(self, other):
        if isinstance(other, LaurentScalar):
            if other.ring != self.ring:
                raise ScalarRingMismatch("Laurent scalars over different fields")
            return other
        if isinstance(other, int):
            return self.ring.from_int(other)
        if isinstance(other, FieldElement):
            return self.ring.embed(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.tprec is None:
            tp = other.tprec
        elif other.tprec is None:
            tp = self.tprec
        else:
            tp = min(self.tprec, other.tprec)
        if not self.coeffs and not other.coeffs:
            return LaurentScalar(self.ring, 0, (), tp)
        starts = [x.v0 for x in (self, other) if x.coeffs]
        ends = [x.v0 + len(x.coeffs) for x in (self, other) if x.coeffs]
        lo, hi = min(starts), max(ends)
        acc = [self.field.zero()] * (hi - lo)
        for x in (self, other):
            for i, c in enumerate(x.coeffs):
                acc[x.v0 + i - lo] = acc[x.v0 + i - lo] + c
        return _make_laurent(self.ring, lo, acc, tp)

    __radd__ = __add__

    def __neg__(self):
        return LaurentScalar(self.ring, self.v0,
                             tuple(-c for c in self.coeffs), self.tprec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_certified_zero() or other.is_certified_zero():
            return self.ring.zero()
        la = self.valuation_lower_bound()
        lb = other.valuation_lower_bound()
        if not self.coeffs or not other.coeffs:
            # at least one truncated zero: product is zero to the combined bound
            return LaurentScalar(self.ring, 0, (), la + lb)
        tp = None
        if self.tprec is not None:
            tp = self.tprec + other.v0
        if other.tprec is not None:
            t2 = other.tprec + self.v0
            tp = t2 if tp is None else min(tp, t2)
        acc = [self.field.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                acc[i + j] = acc[i + j] + a * b
        return _make_laurent(self.ring, self.v0 + other.v0, acc, tp)

    __rmul__ = __mul__

    def inverse(self, tprec: int | None = None) -> "LaurentScalar":
        """Multiplicative inverse.

        The result is exact only for monomials; otherwise the geometric series
        is expanded to the best precision supported by the input, capped by the
        requested absolute precision (default: the ring's working precision).
        """
        if not self.coeffs:
            if self.tprec is None:
                raise DivisionByZero("inverse of the exact zero")
            raise IndeterminateValuation(
                f"inverse of a zero known only to O(t^{self.tprec})")
        v = self.v0
        if self.tprec is None and len(self.coeffs) == 1 and tprec is None:
            return LaurentScalar(self.ring, -v, (self.coeffs[0].inverse(),), None)
        rels = []
        if self.tprec is not None:
            rels.append(self.tprec - v)
        if tprec is not None:
            rels.append(tprec + v)
        r = min(rels) if rels else self.ring.tprec
        if r <= 0:
            return LaurentScalar(self.ring, 0, (), -v + r)
        u = list(self.coeffs[:r])
        u += [self.field.zero()] * (r - len(u))
        u0inv = u[0].inverse()
        w = [self.field.zero()] * r
        w[0] = u0inv
        for k in range(1, r):
            s = self.field.zero()
            for j in range(1, k + 1):
                if u[j].is_zero():
                    continue
                s = s + u[j] * w[k - j]
            w[k] = -(u0inv * s)
        return _make_laurent(self.ring, -v, w, -v + r)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, FieldElement)):
            other = self._coerce(other)
        if not isinstance(other, LaurentScalar) or other.ring != self.ring:
            return False
        return (self.v0 == other.v0 and self.coeffs == other.coeffs
                and self.tprec == other.tprec)

    def __hash__(self):
        return hash((self.ring, self.v0, self.coeffs, self.tprec))

    def _term_count(self) -> int:
        return len([c for c in self.coeffs if c]) + (0 if self.tprec is None else 1)

    def _needs_parens(self) -> bool:
        if self._term_count() > 1:
            return True
        # a single composite field coefficient times a power of t still prints
        # as a product, which is unambiguous; only sums need parentheses
        return self.coeffs != () and self.tprec is None and self.v0 == 0 \
            and self.coeffs[0]._needs_parens()

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            e = self.v0 + i
            cs = str(c)
            cpar = f"({cs})" if c._needs_parens() else cs
            if e == 0:
                terms.append(cpar if c._needs_parens() else cs)
            else:
                tp = "t" if e == 1 else f"t^{e}"
                terms.append(tp if c == self.field.one() else f"{cpar}*{tp}")
        if self.tprec is not None:
            terms.append(f"O(t^{self.tprec})")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"({self!s}) over {self.ring!r}"
