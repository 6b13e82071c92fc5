"""Command line front end.

Every subcommand parses its inputs completely, runs one library operation or
one randomized sweep, and prints a single JSON document.  Output is
deterministic: field order is fixed, rationals are "num/den" strings, floats
never appear, and sweeps derive every sample from the mandatory --seed.

Exit codes: 0 for success (including a bound that degenerates to "no
information"), 1 when a verification fails (a mismatch witness or a broken
internal consistency such as a division that should have been exact), 2 for
unusable input (bad literals, missing flags, windows too small to start).
"""

from __future__ import annotations

import argparse
import json
import sys
from random import Random

from .closed_forms import (
    chi_xi,
    delta_tower,
    ell_iterate_quadratic,
    iterate_q_closed,
    semiconj_check,
    verify_main_lemma,
)
from .coeff_rings import (
    DEFAULT_TPREC,
    root_of_unity,
    smallest_field_with_root,
)
from .errors import (
    IndeterminateValuation,
    MismatchWitness,
    NonIntegralCoefficient,
    NotDivisible,
    NotMinimallyRamifiedAtLevelZero,
    ParabolicLabError,
    ResitUndefined,
    TruncationTooSmall,
    UnboundedBound,
)
from .formal_series import ParabolicGerm, identity
from .literals import (
    index_to_jsonable,
    parse_field,
    parse_scalar,
    parse_series,
    scalar_to_jsonable,
    series_to_str,
)
from .normal_form import mq_evaluate, to_normal_form
from .ramification import (
    check_quasi_invariance,
    is_minimally_ramified,
    ramification_profile,
    resit,
)
from .samplers import (
    default_window,
    random_coeff_tuple,
    random_coordinate_change,
    random_parabolic_germ,
    random_reduced_germ,
    random_vanishing_series,
    standard_field,
)
from .valuation_geometry import (
    cycle_valuations,
    newton_polygon,
    periodic_valuation_bound,
)

MAIN_LEMMA_CASES = 50
SEMICONJ_CASES = 50
DELTA_TOWER_CASES = 100
QUASI_CASES = 50

# exit codes
OK = 0
VERIFICATION_FAILED = 1
INPUT_ERROR = 2


def _emit(doc, path: str | None):
    text = json.dumps(doc, indent=2) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _germ(args) -> ParabolicGerm:
    if not args.field or not args.series:
        raise ParabolicLabError("this command needs --field and --series")
    ring = parse_field(args.field, args.tprec)
    return ParabolicGerm(parse_series(args.series, ring))


def _require(args, **flags):
    for name, value in flags.items():
        if value is None:
            raise ParabolicLabError(f"this command needs --{name}")


def _coeff_list(text: str, field):
    return [parse_scalar(part, field) for part in text.split(",")]


def _field_for(args):
    if args.field:
        ring = parse_field(args.field, args.tprec)
    else:
        ring = smallest_field_with_root(args.p, args.q)
    return ring


# -- subcommand bodies -----------------------------------------------------


def _cmd_ramify(args):
    f = _germ(args)
    prof = ramification_profile(f, n_max=args.nmax, N=args.N)
    doc = {
        "q": prof.q,
        "N": prof.N,
        "i": [index_to_jsonable(e.i) for e in prof.entries],
        "delta": [None if e.delta is None else scalar_to_jsonable(e.delta)
                  for e in prof.entries],
    }
    try:
        doc["resit"] = scalar_to_jsonable(resit(f))
    except (NotMinimallyRamifiedAtLevelZero, IndeterminateValuation) as e:
        doc["resit"] = None
        doc["resit_note"] = str(e)
    return doc, OK


def _cmd_minimal(args):
    f = _germ(args)
    crit = is_minimally_ramified(f, mode="criterion", n_max=args.nmax, N=args.N)
    defi = is_minimally_ramified(f, mode="definitional", n_max=args.nmax,
                                 N=args.N)
    doc = {
        "criterion": crit.to_jsonable(),
        "definitional": defi.to_jsonable(),
        "agree": crit.minimal == defi.minimal,
        "mq": scalar_to_jsonable(mq_evaluate(f)),
    }
    return doc, OK


def _cmd_normalize(args):
    f = _germ(args)
    return to_normal_form(f, N=args.N).to_jsonable(), OK


def _cmd_closed_form(args):
    mode = args.mode or "chi-xi"
    if mode != "ell" and args.q is None:
        raise ParabolicLabError(f"{mode} needs --q")
    if mode == "chi-xi":
        if args.p is None or args.n is None:
            raise ParabolicLabError("chi-xi needs --p and --n")
        field = _field_for(args)
        a1, a2 = _coeff_list(args.coeffs, field)
        pair = chi_xi(args.p, args.q, args.n, a1, a2)
        return {"mode": "chi-xi", **pair.to_jsonable()}, OK
    if mode == "iterate-q":
        if args.p is None:
            raise ParabolicLabError("iterate-q needs --p")
        field = _field_for(args)
        gamma = root_of_unity(field, args.q)
        a1, a2 = _coeff_list(args.coeffs, field)
        c0, c1, c2 = iterate_q_closed(gamma, args.q, a1, a2)
        return {"mode": "iterate-q", "q": args.q,
                "gamma": scalar_to_jsonable(gamma),
                "unit_coeffs": [scalar_to_jsonable(c) for c in (c0, c1, c2)],
                }, OK
    if mode == "ell":
        # --n carries the iteration count here; it need not be coprime to p
        if args.n is None:
            raise ParabolicLabError("ell mode needs --n (the iterate count)")
        if args.field is not None:
            field = parse_field(args.field, args.tprec)
        elif args.p is not None:
            field = smallest_field_with_root(args.p, 1)
        else:
            raise ParabolicLabError("ell mode needs --field or --p")
        a, b = _coeff_list(args.coeffs, field)
        c2, c3 = ell_iterate_quadratic(args.n, a, b)
        return {"mode": "ell", "ell": args.n,
                "c2": scalar_to_jsonable(c2),
                "c3": scalar_to_jsonable(c3)}, OK
    raise ParabolicLabError(f"unknown closed-form mode {mode!r}")


def _sweep_doc(kind, args, cases, failures, extra=None):
    doc = {"sweep": kind}
    if extra:
        doc.update(extra)
    doc["cases"] = cases
    doc["seed"] = args.seed
    doc["failures"] = sorted(failures, key=lambda c: c["case"])
    doc["ok"] = not failures
    return doc, (OK if not failures else VERIFICATION_FAILED)


def _cmd_verify_main_lemma(args):
    _require(args, p=args.p, q=args.q, n=args.n)
    if args.coeffs is not None:
        field = _field_for(args)
        a = _coeff_list(args.coeffs, field)
        rep = verify_main_lemma(args.p, args.q, args.n, a, N=args.N,
                                field=field)
        return rep.to_jsonable(), (OK if rep.ok else VERIFICATION_FAILED)
    if args.seed is None:
        raise ParabolicLabError("verify main-lemma needs --coeffs or --seed")
    field = _field_for(args)
    rng = Random(args.seed)
    failures = []
    for i in range(MAIN_LEMMA_CASES):
        a = random_coeff_tuple(rng, field)
        rep = verify_main_lemma(args.p, args.q, args.n, a, N=args.N,
                                field=field)
        if not rep.ok:
            failures.append({"case": i,
                             "coeffs": [scalar_to_jsonable(c) for c in a],
                             "mismatch": rep.mismatch})
    return _sweep_doc("main-lemma", args, MAIN_LEMMA_CASES, failures,
                      {"p": args.p, "q": args.q, "n": args.n})


def _cmd_verify_semiconj(args):
    if args.seed is None:
        raise ParabolicLabError("verify semiconj needs --seed")
    _require(args, p=args.p, q=args.q)
    field = standard_field(args.p, args.q)
    rng = Random(args.seed)
    failures = []
    for i in range(SEMICONJ_CASES):
        g = random_reduced_germ(rng, field, args.q, N=args.N)
        for m in (args.q, args.q * args.p):
            rep = semiconj_check(g, m)
            if not rep.ok:
                failures.append({"case": i, "m": m,
                                 "series": series_to_str(g.series),
                                 "mismatch": rep.mismatch})
    return _sweep_doc("semiconj", args, SEMICONJ_CASES, failures,
                      {"p": args.p, "q": args.q})


def _cmd_verify_delta_tower(args):
    if args.seed is None:
        raise ParabolicLabError("verify delta-tower needs --seed")
    _require(args, p=args.p)
    p = args.p
    field = smallest_field_with_root(p, 1)
    N = args.N or 12
    rng = Random(args.seed)
    failures = []
    for i in range(DELTA_TOWER_CASES):
        f = random_vanishing_series(rng, field, N)
        lhs = delta_tower(f, p)
        rhs = f.iterate(p) - identity(field, N)
        o = (lhs - rhs).order()
        if o is not None:
            failures.append({"case": i, "series": series_to_str(f),
                             "mismatch": o})
    return _sweep_doc("delta-tower", args, DELTA_TOWER_CASES, failures,
                      {"p": p, "N": N})


def _cmd_verify_quasi(args):
    if args.seed is None:
        raise ParabolicLabError("verify quasi-invariance needs --seed")
    _require(args, p=args.p, q=args.q)
    field = standard_field(args.p, args.q)
    rng = Random(args.seed)
    failures = []
    for i in range(QUASI_CASES):
        f = random_parabolic_germ(rng, field, args.q, N=args.N)
        h = random_coordinate_change(rng, field, f.n_trunc)
        rep = check_quasi_invariance(f, h, n_max=args.nmax)
        if not rep.ok:
            failures.append({"case": i, "series": series_to_str(f.series),
                             "change": series_to_str(h),
                             "rows": rep.to_jsonable()["rows"]})
    return _sweep_doc("quasi-invariance", args, QUASI_CASES, failures,
                      {"p": args.p, "q": args.q, "n_max": args.nmax})


def _cmd_bounds(args):
    _require(args, n=args.n)
    f = _germ(args)
    try:
        cert = periodic_valuation_bound(f, args.n)
    except UnboundedBound as e:
        return {"n": args.n, "bound_valuation": "no-information",
                "reason": str(e)}, OK
    return cert.to_jsonable(), OK


def _cmd_cycle_valuations(args):
    _require(args, n=args.n)
    f = _germ(args)
    return cycle_valuations(f, args.n, N=args.N).to_jsonable(), OK


def _cmd_newton(args):
    _require(args, field=args.field, poly=args.poly)
    ring = parse_field(args.field, args.tprec)
    poly = parse_series(args.poly, ring)
    pg = newton_polygon(poly)
    doc = pg.to_jsonable()
    doc["root_valuations"] = [
        {"valuation": f"{v.numerator}/{v.denominator}", "count": c}
        for v, c in pg.root_valuations()]
    return doc, OK


# -- wiring ----------------------------------------------------------------


def _add_common(sp, *names):
    if "field" in names:
        sp.add_argument("--field", help="coefficient field literal")
    if "series" in names:
        sp.add_argument("--series", help="germ literal, e.g. 'z + z^2'")
    if "poly" in names:
        sp.add_argument("--poly", help="polynomial literal")
    if "coeffs" in names:
        sp.add_argument("--coeffs", help="comma-separated scalar literals")
    if "pqn" in names:
        sp.add_argument("--p", type=int)
        sp.add_argument("--q", type=int)
        sp.add_argument("--n", type=int)
    if "nmax" in names:
        sp.add_argument("--nmax", type=int, default=2)
    if "nmax1" in names:
        sp.add_argument("--nmax", type=int, default=1)
    if "N" in names:
        sp.add_argument("--N", type=int)
    if "mode" in names:
        sp.add_argument("--mode", choices=["chi-xi", "iterate-q", "ell"])
    if "seed" in names:
        sp.add_argument("--seed", type=int)
    sp.add_argument("--tprec", type=int, default=DEFAULT_TPREC)
    sp.add_argument("--json-out", dest="json_out", metavar="PATH")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="parabolic-lab",
        description="Exact arithmetic for parabolic germs over fields of "
                    "positive characteristic.")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("ramify", help="ramification profile and resit")
    _add_common(sp, "field", "series", "nmax", "N")
    sp.set_defaults(fn=_cmd_ramify)

    sp = sub.add_parser("minimal", help="minimal ramification, both modes")
    _add_common(sp, "field", "series", "nmax", "N")
    sp.set_defaults(fn=_cmd_minimal)

    sp = sub.add_parser("normalize", help="conjugate onto exponents 1 mod q")
    _add_common(sp, "field", "series", "N")
    sp.set_defaults(fn=_cmd_normalize)

    sp = sub.add_parser("closed-form",
                        help="iterate coefficients in closed form")
    _add_common(sp, "field", "coeffs", "pqn", "mode")
    sp.set_defaults(fn=_cmd_closed_form)

    vp = sub.add_parser("verify", help="oracle sweeps and single checks")
    vsub = vp.add_subparsers(dest="check", required=True)

    sp = vsub.add_parser("main-lemma")
    _add_common(sp, "field", "coeffs", "pqn", "N", "seed")
    sp.set_defaults(fn=_cmd_verify_main_lemma)

    sp = vsub.add_parser("semiconj")
    _add_common(sp, "pqn", "N", "seed")
    sp.set_defaults(fn=_cmd_verify_semiconj)

    sp = vsub.add_parser("delta-tower")
    _add_common(sp, "pqn", "N", "seed")
    sp.set_defaults(fn=_cmd_verify_delta_tower)

    sp = vsub.add_parser("quasi-invariance")
    _add_common(sp, "pqn", "nmax1", "N", "seed")
    sp.set_defaults(fn=_cmd_verify_quasi)

    sp = sub.add_parser("bounds", help="periodic point valuation bound")
    _add_common(sp, "field", "series", "pqn")
    sp.set_defaults(fn=_cmd_bounds)

    sp = sub.add_parser("cycle-valuations",
                        help="root valuations of the period-q*p^n quotient")
    _add_common(sp, "field", "series", "pqn", "N")
    sp.set_defaults(fn=_cmd_cycle_valuations)

    sp = sub.add_parser("newton", help="Newton polygon of a polynomial")
    _add_common(sp, "field", "poly")
    sp.set_defaults(fn=_cmd_newton)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        doc, code = args.fn(args)
    except (MismatchWitness, NotDivisible, NonIntegralCoefficient) as e:
        doc = {"error": str(e), "kind": type(e).__name__}
        if isinstance(e, MismatchWitness) and e.exponent is not None:
            doc["exponent"] = e.exponent
        _emit(doc, args.json_out)
        return VERIFICATION_FAILED
    except ParabolicLabError as e:
        _emit({"error": str(e), "kind": type(e).__name__}, args.json_out)
        return INPUT_ERROR
    except (TypeError, ValueError) as e:
        _emit({"error": str(e), "kind": type(e).__name__}, args.json_out)
        return INPUT_ERROR
    _emit(doc, args.json_out)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
