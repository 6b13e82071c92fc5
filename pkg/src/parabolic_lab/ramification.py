"""Ramification data of a parabolic germ under iteration.

For f with multiplier of order q the series f^(q*p^n) is tangent to the
identity and the jump i_n is the order of (f^(q*p^n)(z) - z)/z; delta_n is the
coefficient sitting just above the jump.  These grow at least geometrically:
i_n >= q(p^(n+1) - 1)/(p - 1), and a germ attaining equality at every level is
minimally ramified.  The iterative residue turns that infinite family of
equalities into one scalar test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    IndeterminateValuation,
    NotMinimallyRamifiedAtLevelZero,
    TruncationTooSmall,
)
from .coeff_rings import half_scalar, ring_of
from .formal_series import ParabolicGerm, identity
from .literals import index_to_jsonable, scalar_to_jsonable
from .normal_form import reduced_leading_pair


def ramification_lower_bound(p: int, q: int, n: int) -> int:
    """The least possible jump at level n: q(p^(n+1) - 1)/(p - 1)."""
    return q * (p ** (n + 1) - 1) // (p - 1)


@dataclass(frozen=True)
class ProfileEntry:
    """One level of the profile.

    i is an int when the jump is exactly determined, math.inf when the
    iterate is certified to be the identity, and None when the difference
    vanishes through the truncation window (the jump is beyond it).  delta
    is the leading coefficient when i is a finite int, otherwise None.
    """

    n: int
    i: object
    delta: object


@dataclass
class RamificationProfile:
    q: int
    N: int | None
    entries: list

    def i(self, n: int):
        return self.entries[n].i

    def delta(self, n: int):
        return self.entries[n].delta

    def to_jsonable(self):
        return {
            "q": self.q,
            "N": self.N,
            "entries": [
                {
                    "n": e.n,
                    "i": index_to_jsonable(e.i),
                    "delta": None if e.delta is None else scalar_to_jsonable(e.delta),
                }
                for e in self.entries
            ],
        }


def ramification_profile(f: ParabolicGerm, n_max: int = 2,
                         N: int | None = None) -> RamificationProfile:
    """Jumps and leading coefficients of f^(q*p^n) for n = 0..n_max.

    Work happens modulo z^N; N defaults to the stored truncation of f, or for
    exact polynomial input to the window that decides minimality at n_max.
    Exact germs of degree one are iterated exactly instead, which is how an
    identity iterate (i infinite) gets certified.  Once a level vanishes
    through the window every later level does too and they are all reported
    beyond truncation.
    """
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    q, p = f.q, f.char
    s = f.series
    if N is None:
        N = s.n_trunc if s.n_trunc is not None else (
            ramification_lower_bound(p, q, n_max) + q + 1)
    keep_exact = s.is_exact() and s.degree() <= 1
    work = s if keep_exact else s.truncate(N)
    cur = work.iterate(q)
    entries = []
    blocked = False
    for n in range(n_max + 1):
        if blocked:
            entries.append(ProfileEntry(n, None, None))
            continue
        if n > 0:
            cur = cur.iterate(p)
        diff = cur - identity(cur.ring, cur.n_trunc)
        o = diff.order()
        if o is None:
            if n == 0:
                raise TruncationTooSmall(
                    f"f^q - z vanishes through the window z^{N}; raise N")
            blocked = True
            entries.append(ProfileEntry(n, None, None))
        elif o is math.inf:
            entries.append(ProfileEntry(n, math.inf, None))
        else:
            entries.append(ProfileEntry(n, o - 1, diff.coeff(o)))
    return RamificationProfile(q=q, N=work.n_trunc, entries=entries)


def resit(f: ParabolicGerm):
    """The iterative residue (q+1)/2 - a_2/a_1^2 of the reduced form of f.

    Defined only when i_0(f^q) = q, equivalently when the reduced a_1 is
    nonzero; otherwise the residue does not exist and asking for it raises.
    """
    a1, a2 = reduced_leading_pair(f)
    if a1.is_certified_zero():
        raise NotMinimallyRamifiedAtLevelZero(
            "i_0(f^q) > q, the iterative residue is undefined")
    if not a1.is_certified_nonzero():
        raise IndeterminateValuation("a1 is zero only to stored precision")
    half = half_scalar(ring_of(a1), f.q + 1)
    return half - a2 / (a1 * a1)


@dataclass
class Verdict:
    """Minimality verdict with a witness for the deciding condition."""

    minimal: bool
    mode: str
    witness: dict
    profile: RamificationProfile | None = None

    def to_jsonable(self):
        out = {"minimal": self.minimal, "mode": self.mode,
               "witness": self.witness}
        if self.profile is not None:
            out["profile"] = self.profile.to_jsonable()
        return out


def is_minimally_ramified(f: ParabolicGerm, mode: str = "criterion",
                          n_max: int = 2, N: int | None = None) -> Verdict:
    """Decide minimal ramification.

    criterion mode evaluates the scalar test: i_0(f^q) = q, the iterative
    residue nonzero, and in characteristic two also different from one.
    definitional mode compares each jump up to n_max against the least
    possible value; it needs a window of ramification_lower_bound(n_max)+q+1.
    """
    if mode == "criterion":
        return _criterion_verdict(f)
    if mode == "definitional":
        return _definitional_verdict(f, n_max, N)
    raise ValueError(f"unknown mode {mode!r}")


def _criterion_verdict(f: ParabolicGerm) -> Verdict:
    try:
        r = resit(f)
    except NotMinimallyRamifiedAtLevelZero:
        return Verdict(False, "criterion",
                       {"failed": "level-zero", "detail": "i_0(f^q) > q"})
    if r.is_certified_zero():
        return Verdict(False, "criterion", {"failed": "resit-zero"})
    if not r.is_certified_nonzero():
        raise IndeterminateValuation(
            "the iterative residue is zero only to stored precision")
    if f.char == 2:
        d = r - f.series.ring.one()
        if d.is_certified_zero():
            return Verdict(False, "criterion",
                           {"failed": "resit-one", "resit": scalar_to_jsonable(r)})
        if not d.is_certified_nonzero():
            raise IndeterminateValuation(
                "resit - 1 is zero only to stored precision")
    return Verdict(True, "criterion", {"resit": scalar_to_jsonable(r)})


def _definitional_verdict(f: ParabolicGerm, n_max: int,
                          N: int | None) -> Verdict:
    q, p = f.q, f.char
    needed = ramification_lower_bound(p, q, n_max) + q + 1
    if N is None:
        N = f.n_trunc if f.n_trunc is not None else needed
    if N < needed:
        raise TruncationTooSmall(
            f"definitional check up to n_max={n_max} needs a window of {needed}")
    prof = ramification_profile(f, n_max, N)
    for e in prof.entries:
        least = ramification_lower_bound(p, q, e.n)
        if e.i == least:
            continue
        # A level beyond the window still decides: the window exceeds the
        # least value, so the jump is strictly above it.
        witness = {"n": e.n, "i": index_to_jsonable(e.i), "least": least}
        return Verdict(False, "definitional", witness, prof)
    return Verdict(True, "definitional", {"n_max": n_max}, prof)


@dataclass
class QuasiInvarianceReport:
    """Comparison of ramification data before and after conjugation."""

    ok: bool
    n_max: int
    scale: object
    rows: list

    def to_jsonable(self):
        return {"ok": self.ok, "n_max": self.n_max,
                "scale": scalar_to_jsonable(self.scale), "rows": self.rows}


def check_quasi_invariance(f: ParabolicGerm, h, n_max: int = 1,
                           N: int | None = None) -> QuasiInvarianceReport:
    """Conjugate f by h and compare profiles.

    The jumps must agree level by level and the leading coefficients must
    scale by h'(0)^(i_n).  Levels beyond the window carry no claim and are
    reported with matched = None.
    """
    q, p = f.q, f.char
    if N is None:
        met = f.series._meet(h)
        N = met if met is not None else (
            ramification_lower_bound(p, q, n_max) + q + 1)
    fhat = f.conjugate(h, n_trunc=N)
    prof_f = ramification_profile(f, n_max, N)
    prof_c = ramification_profile(fhat, n_max, N)
    c = h.coeff(1)
    ok = True
    rows = []
    for ef, ec in zip(prof_f.entries, prof_c.entries):
        row = {"n": ef.n, "i": index_to_jsonable(ef.i),
               "i_conjugate": index_to_jsonable(ec.i)}
        if ef.i != ec.i:
            row["matched"] = False
            ok = False
        elif isinstance(ef.i, int):
            expected = (c ** ef.i) * ef.delta
            match = (ec.delta - expected).is_certified_zero()
            row["delta"] = scalar_to_jsonable(ef.delta)
            row["delta_conjugate"] = scalar_to_jsonable(ec.delta)
            row["expected"] = scalar_to_jsonable(expected)
            row["matched"] = match
            ok = ok and match
        else:
            row["matched"] = None
        rows.append(row)
    return QuasiInvarianceReport(ok=ok, n_max=n_max, scale=c, rows=rows)
