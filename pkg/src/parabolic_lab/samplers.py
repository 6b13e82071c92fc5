"""Seeded generators for the randomized sweeps.

Everything takes an explicit random.Random so a sweep is reproducible from
its seed alone; nothing here touches global state.  The CLI and the
acceptance suite both draw from these, which keeps "50 random germs" meaning
the same fifty germs everywhere.

The six (p, q) pairs exercised throughout are the small cases where every
branch of the theory shows up: both parities of p, q = 1 against q > 1, and
a q that needs a proper field extension for its multiplier.
"""

from __future__ import annotations

from random import Random

from .coeff_rings import (
    FiniteField,
    LaurentRing,
    root_of_unity,
    smallest_field_with_root,
)
from .errors import ParabolicLabError
from .formal_series import ParabolicGerm, TruncatedSeries, series
from .normal_form import normal_form_criterion, reduced_leading_pair
from .ramification import ramification_lower_bound

STANDARD_PAIRS = ((2, 1), (3, 1), (3, 2), (5, 1), (5, 2), (5, 4))


def standard_field(p: int, q: int) -> FiniteField:
    return smallest_field_with_root(p, q)


def default_window(p: int, q: int, n_max: int = 2) -> int:
    """A window wide enough to read the profile through level n_max."""
    return ramification_lower_bound(p, q, n_max) + q + 1


def random_element(rng: Random, field: FiniteField):
    return field.element(tuple(rng.randrange(field.p) for _ in range(field.d)))


def random_nonzero(rng: Random, field: FiniteField):
    while True:
        x = random_element(rng, field)
        if not x.is_zero():
            return x


def random_coeff_tuple(rng: Random, field: FiniteField, k: int = 2):
    return tuple(random_element(rng, field) for _ in range(k))


def random_vanishing_series(rng: Random, field: FiniteField,
                            N: int) -> TruncatedSeries:
    """Any series with f(0) = 0; the linear term may be zero or non-unit."""
    entries = {e: random_element(rng, field) for e in range(1, N)}
    return series(field, entries, N)


def random_parabolic_germ(rng: Random, field: FiniteField, q: int,
                          N: int | None = None) -> ParabolicGerm:
    """gamma*z + random tail mod z^N, with at least one tail term nonzero so
    the profile is defined (a bare gamma*z truncation has nothing to measure)."""
    p = field.p
    if N is None:
        N = default_window(p, q)
    gamma = root_of_unity(field, q)
    while True:
        entries = {e: random_element(rng, field) for e in range(2, N)}
        if any(not c.is_zero() for c in entries.values()):
            entries[1] = gamma
            return ParabolicGerm(series(field, entries, N))


def random_reduced_germ(rng: Random, field: FiniteField, q: int,
                        N: int | None = None,
                        j_max: int | None = None) -> ParabolicGerm:
    """gamma*z*(1 + sum a_j z^(jq)) with random a_j, at least one nonzero."""
    p = field.p
    if N is None:
        N = default_window(p, q)
    gamma = root_of_unity(field, q)
    top = (N - 2) // q
    if j_max is not None:
        top = min(top, j_max)
    if top < 1:
        raise ParabolicLabError(f"window {N} leaves no room for a tail")
    while True:
        a = [random_element(rng, field) for _ in range(top)]
        if any(not c.is_zero() for c in a):
            entries = {1: gamma}
            for j, c in enumerate(a, start=1):
                entries[j * q + 1] = gamma * c
            return ParabolicGerm(series(field, entries, N))


def random_coordinate_change(rng: Random, field: FiniteField,
                             N: int) -> TruncatedSeries:
    entries = {e: random_element(rng, field) for e in range(2, N)}
    entries[1] = random_nonzero(rng, field)
    return series(field, entries, N)


def random_integral_scalar(rng: Random, ring: LaurentRing, t_max: int = 3):
    """A polynomial in t with random residue-field coefficients."""
    return ring.element({e: random_element(rng, ring.field)
                         for e in range(t_max + 1)})


def random_polynomial_germ(rng: Random, ring: LaurentRing, q: int,
                           degree: int = 3, t_max: int = 2) -> ParabolicGerm:
    """An exact polynomial germ over O_k with multiplier of order q.

    Coefficients are integral by construction; the top coefficient is forced
    nonzero so the degree is what it says.
    """
    gamma = ring.embed(root_of_unity(ring.field, q))
    while True:
        entries = {e: random_integral_scalar(rng, ring, t_max)
                   for e in range(2, degree + 1)}
        if entries[degree].is_certified_nonzero():
            entries[1] = gamma
            return ParabolicGerm(series(ring, entries, None))


def random_minimal_polynomial_germ(rng: Random, ring: LaurentRing, q: int,
                                   degree: int = 3, t_max: int = 2,
                                   tries: int = 200) -> ParabolicGerm:
    """Retry random_polynomial_germ until the minimal-ramification criterion
    certifies it; deterministic in the rng state."""
    p = ring.char
    for _ in range(tries):
        f = random_polynomial_germ(rng, ring, q, degree, t_max)
        try:
            a1, a2 = reduced_leading_pair(f)
        except ParabolicLabError:
            continue
        if normal_form_criterion(a1, a2, p, q):
            return f
    raise ParabolicLabError(
        f"no criterion-certified germ found in {tries} draws")
