"""Field and Laurent-scalar arithmetic, plus the root-of-unity helpers."""

import pytest
from hypothesis import given, settings, strategies as st

from parabolic_lab import (
    CompositeP,
    DivisionByZero,
    FiniteField,
    IndeterminateValuation,
    LaurentRing,
    NoSuchRoot,
    POrderRequested,
    ReducibleModulus,
    ScalarRingMismatch,
    half_scalar,
    ring_of,
    root_of_unity,
    smallest_field_with_root,
)


FIELDS = [FiniteField(2), FiniteField(3), FiniteField(5),
          FiniteField(2, 2), FiniteField(3, 2)]


def elements(field):
    return st.integers(0, field.order - 1).map(field.from_int)


# -- finite fields ---------------------------------------------------------

def test_construction_rejects_composite_characteristic():
    with pytest.raises(CompositeP):
        FiniteField(4)
    with pytest.raises(CompositeP):
        FiniteField(1)


def test_construction_rejects_reducible_modulus():
    # x^2 - 1 = (x-1)(x+1) over GF(3)
    with pytest.raises(ReducibleModulus):
        FiniteField(3, 2, modulus=(2, 0, 1))


@pytest.mark.parametrize("field", FIELDS, ids=lambda f: f"GF({f.order})")
@given(data=st.data())
@settings(max_examples=40, deadline=None)
def test_field_axioms(field, data):
    a = data.draw(elements(field))
    b = data.draw(elements(field))
    c = data.draw(elements(field))
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + field.zero() == a
    assert a * field.one() == a
    assert a - a == field.zero()
    if b != field.zero():
        assert (a / b) * b == a


@pytest.mark.parametrize("field", FIELDS, ids=lambda f: f"GF({f.order})")
@given(data=st.data())
@settings(max_examples=25, deadline=None)
def test_frobenius_is_additive(field, data):
    a = data.draw(elements(field))
    b = data.draw(elements(field))
    p = field.p
    assert (a + b) ** p == a ** p + b ** p


def test_every_nonzero_element_has_multiplicative_order_dividing_group():
    field = FiniteField(3, 2)
    for a in field.elements():
        if a != field.zero():
            assert a ** (field.order - 1) == field.one()


def test_division_by_zero():
    field = FiniteField(5)
    with pytest.raises(DivisionByZero):
        field.one() / field.zero()


def test_zero_power_zero_is_one():
    # the closed forms rely on the empty-product convention
    field = FiniteField(3)
    assert field.zero() ** 0 == field.one()


# -- roots of unity --------------------------------------------------------

@pytest.mark.parametrize("p,q,expected_degree", [
    (2, 1, 1), (3, 1, 1), (3, 2, 1), (5, 1, 1), (5, 2, 1), (5, 4, 1),
    (2, 3, 2), (3, 4, 2), (2, 7, 3),
])
def test_smallest_field_with_root(p, q, expected_degree):
    field = smallest_field_with_root(p, q)
    assert field.p == p
    assert field.d == expected_degree
    g = root_of_unity(field, q)
    assert g ** q == field.one()
    for d in range(1, q):
        if q % d == 0:
            assert g ** d != field.one()


def test_root_of_unity_exact_order_required():
    with pytest.raises(NoSuchRoot):
        root_of_unity(FiniteField(5), 3)  # 3 does not divide 4


def test_root_of_unity_rejects_p_power_order():
    with pytest.raises(POrderRequested):
        root_of_unity(FiniteField(3), 3)
    with pytest.raises(POrderRequested):
        smallest_field_with_root(2, 6)


def test_half_scalar_odd_characteristic():
    F5 = FiniteField(5)
    # (q+1)/2 for q = 2: 3/2 = 3 * inverse(2) = 3 * 3 = 9 = 4 mod 5
    assert half_scalar(F5, 3) == F5.from_int(4)
    assert half_scalar(F5, 3) + half_scalar(F5, 3) == F5.from_int(3)


# -- Laurent scalars -------------------------------------------------------

def laurent_elems(ring, exact=True):
    field = ring.field
    coeff = st.integers(0, field.order - 1)
    return st.builds(
        lambda v, cs: ring.element({v + i: field.from_int(c)
                                   for i, c in enumerate(cs)},
                                  None if exact else v + len(cs)),
        st.integers(-3, 3), st.lists(coeff, min_size=0, max_size=4))


@pytest.fixture(scope="module")
def R3():
    return LaurentRing(FiniteField(3))


@given(data=st.data())
@settings(max_examples=50, deadline=None)
def test_laurent_ring_axioms(R3, data):
    a = data.draw(laurent_elems(R3))
    b = data.draw(laurent_elems(R3))
    c = data.draw(laurent_elems(R3))
    assert ((a + b) + c - (a + (b + c))).is_certified_zero()
    assert ((a * b) * c - (a * (b * c))).is_certified_zero()
    assert (a * (b + c) - (a * b + a * c)).is_certified_zero()
    assert (a * R3.one() - a).is_certified_zero()


@given(data=st.data())
@settings(max_examples=50, deadline=None)
def test_laurent_valuation_is_multiplicative(R3, data):
    a = data.draw(laurent_elems(R3))
    b = data.draw(laurent_elems(R3))
    if a.is_certified_zero() or b.is_certified_zero():
        return
    assert (a * b).valuation() == a.valuation() + b.valuation()


@given(data=st.data())
@settings(max_examples=50, deadline=None)
def test_laurent_division_inverts_multiplication(R3, data):
    a = data.draw(laurent_elems(R3, exact=False))
    b = data.draw(laurent_elems(R3))
    if b.is_certified_zero():
        with pytest.raises(DivisionByZero):
            a / b
        return
    d = (a / b) * b - a
    # exact inputs cancel exactly; truncated ones cancel through their window
    if not d.is_certified_zero():
        with pytest.raises(IndeterminateValuation):
            d.valuation()


def test_truncated_zero_has_indeterminate_valuation(R3):
    field = R3.field
    clipped = R3.element({}, 4)  # zero up to t^4, unknown beyond
    assert not clipped.is_certified_zero()
    with pytest.raises(IndeterminateValuation):
        clipped.valuation()
    assert clipped.valuation_lower_bound() == 4
    exact = R3.element({}, None)
    assert exact.is_certified_zero()
    assert exact.valuation_lower_bound() == float("inf")


def test_valuation_of_exact_scalar(R3):
    field = R3.field
    s = R3.element({-2: field.one(), 1: field.from_int(2)}, None)
    assert s.valuation() == -2
    assert s.valuation_lower_bound() == -2


def test_scalar_rings_do_not_mix(R3):
    other = LaurentRing(FiniteField(5))
    with pytest.raises(ScalarRingMismatch):
        R3.one() + other.one()


def test_ring_of_dispatch(R3):
    F3 = R3.field
    assert ring_of(F3.one()) is F3
    assert ring_of(R3.one()) is R3


def test_embed_keeps_residue_arithmetic(R3):
    F3 = R3.field
    a = R3.embed(F3.from_int(2))
    assert (a * a - R3.embed(F3.from_int(1))).is_certified_zero()
    assert a.valuation() == 0
