"""Closed-form iterate coefficients against brute-force composition.

Every formula here has an iteration oracle: build the germ, compose it the
stated number of times, read coefficients out of the window, compare
exactly.  The frozen tuples were produced by those oracles and pinned.
"""

import pytest
from random import Random

from parabolic_lab import (
    MismatchWitness,
    ParabolicGerm,
    SupportViolation,
    TruncationTooSmall,
    chi_xi,
    delta_tower,
    ell_iterate_quadratic,
    identity,
    iterate_q_closed,
    parse_series,
    ramification_lower_bound,
    root_of_unity,
    semiconj_check,
    series,
    smallest_field_with_root,
    verify_main_lemma,
)
from parabolic_lab.samplers import (
    STANDARD_PAIRS,
    random_coeff_tuple,
    random_reduced_germ,
    standard_field,
)

from conftest import germ


# -- chi and xi ------------------------------------------------------------

@pytest.mark.parametrize("p,q,n,a1,a2,chi,xi", [
    (3, 1, 1, 1, 0, 1, 2),
    (3, 1, 1, 1, 1, 0, 0),
    (2, 1, 2, 1, 1, 0, 0),
    (3, 2, 1, 1, 2, 2, 1),
    (5, 4, 1, 2, 3, 3, 2),
])
def test_chi_xi_frozen_values(p, q, n, a1, a2, chi, xi):
    field = smallest_field_with_root(p, q)
    pair = chi_xi(p, q, n, field.from_int(a1), field.from_int(a2))
    assert pair.chi == field.from_int(chi)
    assert pair.xi == field.from_int(xi)


def test_chi_xi_validates_arguments():
    field = smallest_field_with_root(3, 1)
    one = field.one()
    with pytest.raises(ValueError):
        chi_xi(3, 1, 0, one, one)
    with pytest.raises(ValueError):
        chi_xi(3, 3, 1, one, one)
    with pytest.raises(ValueError):
        chi_xi(5, 1, 1, one, one)  # coefficients live in characteristic 3


def test_chi_xi_char_two_recursion():
    # one level up: chi doubles through chi*xi, xi squares
    field = smallest_field_with_root(2, 3)
    rng = Random(3)
    for _ in range(10):
        a1 = field.from_int(rng.randrange(1, field.order))
        a2 = field.from_int(rng.randrange(field.order))
        lo = chi_xi(2, 3, 1, a1, a2)
        hi = chi_xi(2, 3, 2, a1, a2)
        assert hi.chi == lo.chi * lo.xi
        assert hi.xi == lo.xi * lo.xi


def test_main_lemma_report_shape():
    rep = verify_main_lemma(3, 1, 1, (1, 0), N=10)
    assert rep.ok and rep.mismatch is None
    assert rep.p == 3 and rep.q == 1 and rep.n == 1
    # the verified window is the bound plus 2q+1, independent of N
    assert rep.window == ramification_lower_bound(3, 1, 1) + 3
    doc = rep.to_jsonable()
    assert doc["ok"] is True
    assert doc["chi"] == 1 and doc["xi"] == 2


@pytest.mark.parametrize("p,q", STANDARD_PAIRS)
def test_main_lemma_sampled(p, q):
    field = standard_field(p, q)
    rng = Random(100 + p * 10 + q)
    for n in (1, 2):
        for _ in range(5):
            a = random_coeff_tuple(rng, field)
            rep = verify_main_lemma(p, q, n, a, field=field, strict=True)
            assert rep.ok


def test_main_lemma_extension_field_case():
    # q = 4 over characteristic 3 needs the quadratic extension
    field = smallest_field_with_root(3, 4)
    assert field.d == 2
    rep = verify_main_lemma(3, 4, 1, (field.gen(), field.one()), field=field)
    assert rep.ok


def test_main_lemma_window_too_small():
    with pytest.raises(TruncationTooSmall):
        verify_main_lemma(3, 1, 1, (1, 0), N=6)


# -- the q-fold iterate in reduced coordinates -----------------------------

def test_iterate_q_frozen_values(F3):
    g2 = root_of_unity(F3, 2)
    got = iterate_q_closed(g2, 2, F3.one(), F3.from_int(2))
    assert [str(c) for c in got] == ["1", "2", "1"]
    got1 = iterate_q_closed(F3.one(), 1, F3.from_int(2), F3.one())
    assert [str(c) for c in got1] == ["1", "2", "1"]


def test_iterate_q_rejects_wrong_order(F3):
    with pytest.raises(ValueError):
        iterate_q_closed(F3.from_int(2), 1, F3.one(), F3.one())


def test_iterate_q_matches_composition():
    rng = Random(41)
    for p, q in STANDARD_PAIRS:
        field = standard_field(p, q)
        g = root_of_unity(field, q)
        for _ in range(5):
            a1 = field.from_int(rng.randrange(field.order))
            a2 = field.from_int(rng.randrange(field.order))
            N = 3 * q + 1
            f = series(field, {1: g, q + 1: g * a1, 2 * q + 1: g * a2}, N)
            fq = f.iterate(q)
            u0, u1, u2 = iterate_q_closed(g, q, a1, a2)
            assert fq.coeff(1) == u0
            assert fq.coeff(q + 1) == u1
            assert fq.coeff(2 * q + 1) == u2


def test_ell_iterate_frozen_values(F3):
    got = ell_iterate_quadratic(2, F3.one(), F3.one())
    assert [str(c) for c in got] == ["2", "1"]
    # multiples of the characteristic are legal iteration counts
    gotp = ell_iterate_quadratic(3, F3.one(), F3.from_int(2))
    assert [str(c) for c in gotp] == ["0", "0"]


def test_ell_iterate_matches_composition(F5):
    rng = Random(8)
    for _ in range(8):
        a = F5.from_int(rng.randrange(5))
        b = F5.from_int(rng.randrange(5))
        f = series(F5, {1: F5.one(), 2: a, 3: b}, 4)
        for ell in (1, 2, 3, 5, 6):
            it = f.iterate(ell)
            c2, c3 = ell_iterate_quadratic(ell, a, b)
            assert it.coeff(2) == c2
            assert it.coeff(3) == c3


# -- difference towers -----------------------------------------------------

def test_delta_tower_frozen_example(F2):
    f = parse_series("z + z^2 mod z^6", F2)
    top = delta_tower(f, 2)
    assert (top - parse_series("2*z^3 + z^4 mod z^6", F2)).order() is None


def test_delta_tower_p_steps_recover_the_iterate():
    rng = Random(14)
    for p in (2, 3, 5):
        field = standard_field(p, 1)
        for _ in range(10):
            f = series(field,
                       {1: field.one(),
                        **{i: field.from_int(rng.randrange(p))
                           for i in range(2, 6)}}, 12)
            lhs = delta_tower(f, p)
            rhs = f.iterate(p) - identity(field, 12)
            assert (lhs - rhs).order() is None


def test_delta_tower_requires_vanishing_base(F3):
    from parabolic_lab import NonzeroConstantTerm
    with pytest.raises(NonzeroConstantTerm):
        delta_tower(parse_series("1 + z mod z^5", F3), 1)


# -- semiconjugacy ---------------------------------------------------------

def test_semiconj_frozen_example(F3):
    g = germ("2*z + 2*z^3 + z^5 mod z^30", F3)
    rep = semiconj_check(g, 2)
    assert rep.ok and rep.q == 2 and rep.m == 2
    assert rep.window == 30


def test_semiconj_sampled():
    rng = Random(6)
    for p, q in [(3, 2), (5, 2), (5, 4)]:
        field = standard_field(p, q)
        for _ in range(5):
            g = random_reduced_germ(rng, field, q, N=4 * q + 2)
            for m in (q, q * p):
                assert semiconj_check(g, m).ok


def test_semiconj_rejects_off_support_germs(F3):
    with pytest.raises(SupportViolation):
        semiconj_check(germ("2*z + z^2 mod z^10", F3), 2)
