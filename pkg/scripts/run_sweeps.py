#!/usr/bin/env python3
"""Run every randomized verification sweep across the standard (p, q) pairs.

Thin driver over the library sweeps the CLI exposes one at a time; exits
nonzero if any case in any sweep fails.
"""

import argparse
import sys
import time
from random import Random

from parabolic_lab import (
    check_quasi_invariance,
    delta_tower,
    identity,
    semiconj_check,
    series,
    verify_main_lemma,
)
from parabolic_lab.samplers import (
    STANDARD_PAIRS,
    random_coeff_tuple,
    random_coordinate_change,
    random_parabolic_germ,
    random_reduced_germ,
    standard_field,
)


def sweep_main_lemma(seed, cases):
    bad = 0
    for p, q in STANDARD_PAIRS:
        field = standard_field(p, q)
        rng = Random(seed)
        for n in (1, 2):
            for _ in range(cases):
                rep = verify_main_lemma(p, q, n, random_coeff_tuple(rng, field),
                                        field=field)
                bad += not rep.ok
    return bad


def sweep_delta_tower(seed, cases):
    bad = 0
    for p in (2, 3, 5):
        field = standard_field(p, 1)
        rng = Random(seed)
        for _ in range(cases):
            f = series(field,
                       {1: field.one(),
                        **{i: field.from_int(rng.randrange(p))
                           for i in range(2, 7)}}, 12)
            d = delta_tower(f, p) - (f.iterate(p) - identity(field, 12))
            bad += d.order() is not None
    return bad


def sweep_semiconj(seed, cases):
    bad = 0
    for p, q in STANDARD_PAIRS:
        field = standard_field(p, q)
        rng = Random(seed)
        for _ in range(cases):
            g = random_reduced_germ(rng, field, q, N=4 * q + 2)
            for m in (q, q * p):
                bad += not semiconj_check(g, m).ok
    return bad


def sweep_quasi_invariance(seed, cases):
    bad = 0
    for p, q in STANDARD_PAIRS:
        field = standard_field(p, q)
        rng = Random(seed)
        for _ in range(cases):
            f = random_parabolic_germ(rng, field, q)
            h = random_coordinate_change(rng, field, f.n_trunc)
            bad += not check_quasi_invariance(f, h, 1).ok
    return bad


SWEEPS = [
    ("closed-form iterates", sweep_main_lemma),
    ("difference tower", sweep_delta_tower),
    ("semiconjugacy", sweep_semiconj),
    ("quasi-invariance", sweep_quasi_invariance),
]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=2026)
    ap.add_argument("--cases", type=int, default=50,
                    help="cases per (p, q) pair per sweep")
    args = ap.parse_args()

    failures = 0
    for name, fn in SWEEPS:
        t0 = time.monotonic()
        bad = fn(args.seed, args.cases)
        dt = time.monotonic() - t0
        status = "ok" if bad == 0 else f"{bad} FAILED"
        print(f"{name:24s} {status:12s} ({dt:.1f}s)")
        failures += bad
    return 0 if failures == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
