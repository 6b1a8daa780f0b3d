"""Command line interface: ``ktypes <command> [options]``.

Exit status is 0 on success, 1 when a verification fails and 2 on invalid input.
Negative vectors must be attached to their flag, e.g. ``--mu=-3,1``.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from . import goldens, kstruct, spin, verify
from .config import BUNDLED, ConfigError, resolve
from .exact import WeightVector
from .kstruct import InvalidKType

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


# ----------------------------------------------------------------- formatting


def parse_vector_arg(text: str) -> WeightVector:
    try:
        return WeightVector(Fraction(x.strip()) for x in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"cannot parse vector {text!r}: use comma-separated rationals like 3,-1/2") from exc


def encode_rational(x: Fraction) -> list:
    x = Fraction(x)
    return [x.numerator, x.denominator]


def decode_rational(pair) -> Fraction:
    return Fraction(pair[0], pair[1])


def encode_vector(v) -> list:
    return [encode_rational(x) for x in v]


def decode_vector(data) -> WeightVector:
    return WeightVector(decode_rational(p) for p in data)


def fmt(v) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def emit(record: dict, as_json: bool, text: str) -> None:
    print(json.dumps(record, sort_keys=True) if as_json else text)


def _real_form(name_or_path: str):
    try:
        return resolve(name_or_path)
    except ConfigError as exc:
        raise InputError(str(exc)) from exc


def _check_dim(rf, v: WeightVector, what: str) -> WeightVector:
    if len(v) != rf.rank:
        raise InputError(f"{what} has {len(v)} coordinates but {rf.name or 'the real form'} has rank {rf.rank}")
    return v


# ----------------------------------------------------------------- commands


def cmd_lambda(args) -> int:
    rf = _real_form(args.config)
    mu = _check_dim(rf, parse_vector_arg(args.mu), "mu")
    kstruct.validate_ktype(rf, mu)
    shifted = mu + rf.two_rho_c
    system = kstruct._chamber_for(rf, mu)
    value = kstruct.lambda_a(rf, mu) if args.which == "a" else kstruct.lambda_u(rf, mu)
    record = {
        "config": rf.name,
        "mu": encode_vector(mu),
        "mu_plus_2rho_c": encode_vector(shifted),
        "positive_system": [encode_vector(a) for a in system.positive],
        "two_rho": encode_vector(system.two_rho),
        "which": args.which,
        "lambda": encode_vector(value),
    }
    text = (
        f"mu={fmt(mu)}  mu+2rho_c={fmt(shifted)}  "
        f"positive={{{', '.join(fmt(a) for a in system.positive)}}}  2rho={fmt(system.two_rho)}  "
        f"lambda_{args.which}={fmt(value)}"
    )
    emit(record, args.json, text)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    rf = _real_form(args.config)
    if args.mode == "fiber":
        if args.lambda_u is None:
            raise InputError("--lambda-u is required for --mode fiber")
        lam = _check_dim(rf, parse_vector_arg(args.lambda_u), "lambda_u")
        ktypes = kstruct.enumerate_B_lambda_u(rf, lam)
    else:
        mu_z = _check_dim(rf, parse_vector_arg(args.mu_z), "mu_z") if args.mu_z else WeightVector.zero(rf.rank)
        try:
            if args.mode == "unitarily-small":
                ktypes = kstruct.enumerate_unitarily_small(rf, mu_z)
            else:
                ktypes = kstruct.enumerate_small(rf, mu_z)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    weights = sorted(k.mu for k in ktypes)
    rows = []
    for mu in weights:
        flags = kstruct.condition_flags(rf, mu)
        rows.append((mu, flags))
        if args.json:
            print(json.dumps({"mu": encode_vector(mu), "conditions": flags}, sort_keys=True))
    if args.json:
        print(json.dumps({"count": len(rows), "mode": args.mode, "config": rf.name}, sort_keys=True))
        return EXIT_OK
    width = max([len(fmt(m)) for m, _ in rows] + [2])
    print("mu".ljust(width) + "  " + "  ".join(kstruct.CONDITIONS))
    for mu, flags in rows:
        print(fmt(mu).ljust(width) + "  " + "  ".join("y" if flags[c] else "n" for c in kstruct.CONDITIONS))
    print(f"count: {len(rows)}")
    return EXIT_OK


def _weights_up_to(rf, max_norm) -> list:
    r = Fraction(max_norm)
    return kstruct.dominant_ktypes_in_ball(rf, WeightVector.zero(rf.rank), r * r)


def cmd_verify(args) -> int:
    names = list(BUNDLED) if args.config == "all" else [args.config]
    suites = list(verify.SUITES) if args.suite == "all" else [args.suite]
    results = []
    for suite in suites:
        if suite == "clifford":
            dims = range(1, args.clifford_max + 1)
            results += [("-", r) for r in verify.clifford_suite(dims)]
            continue
        for name in names:
            rf = _real_form(name)
            if suite == "thm6.7" and args.max_norm is not None:
                rs = verify.seven_way_suite(rf, _weights_up_to(rf, args.max_norm))
            elif suite == "prop3.1c" and args.lambda_u:
                rs = verify.bijection_suite(rf, [_check_dim(rf, parse_vector_arg(x), "lambda_u") for x in args.lambda_u])
            else:
                rs = verify.run_suite(suite, rf, samples=args.samples, seed=args.seed)
            results += [(rf.name, r) for r in rs]
    ok = all(r.ok for _, r in results)
    for name, r in results:
        if args.json:
            print(json.dumps({"config": name, "property": r.name, "checked": r.checked, "failed": r.failed,
                              "failures": r.failures, "ok": r.ok}, sort_keys=True))
        else:
            print(r.line())
    summary = f"{'PASS' if ok else 'FAIL'}: {sum(r.ok for _, r in results)}/{len(results)} properties"
    if args.json:
        print(json.dumps({"ok": ok, "properties": len(results)}, sort_keys=True))
    else:
        print(summary)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_examples(args) -> int:
    diffs = goldens.compare_all()
    status = EXIT_OK
    for name in goldens.GOLDEN_NAMES:
        diff = diffs[name]
        if args.json:
            print(json.dumps({"table": name, "match": diff is None, "mismatch": diff}, sort_keys=True))
        elif diff is None:
            print(f"{name}: match")
        else:
            print(f"{name}: MISMATCH at {diff}")
        if diff is not None:
            status = EXIT_FAIL
    return status


def cmd_spin(args) -> int:
    rf = _real_form(args.config)
    weights = spin.spin_weights(rf)
    highest = sorted(spin.spin_highest_weights(rf))
    square_ok = spin.wedge_equals_spin_square(rf)
    if args.json:
        print(json.dumps({
            "config": rf.name,
            "spin_weights": [[encode_vector(w), m] for w, m in sorted(weights.items())],
            "highest_weights": [encode_vector(w) for w in highest],
            "wedge_dimension": spin.wedge_p_weights(rf).size,
            "wedge_equals_spin_square": square_ok,
        }, sort_keys=True))
    else:
        print(f"spin weights ({weights.size}): " + " ".join(
            fmt(w) + (f"x{m}" if m > 1 else "") for w, m in sorted(weights.items())))
        print("highest weights: " + " ".join(fmt(w) for w in highest))
        print(f"wedge p: {spin.wedge_p_weights(rf).size} weights; equals spin x spin: {'yes' if square_ok else 'no'}")
    return EXIT_OK if square_ok else EXIT_FAIL


def cmd_dirac(args) -> int:
    rf = _real_form(args.config)
    mu_t = _check_dim(rf, parse_vector_arg(args.mu_tilde), "mu_tilde") if args.mu_tilde else rf.rho_n
    phi = _check_dim(rf, parse_vector_arg(args.phi), "phi") if args.phi else rf.rho
    value = spin.dirac_square_eigenvalue(rf, mu_t, phi)
    hull = spin.in_spin_hull(rf, mu_t, phi)
    record = {
        "config": rf.name,
        "mu_tilde": encode_vector(mu_t),
        "phi": encode_vector(phi),
        "eigenvalue": encode_rational(value),
        "inequality": value >= 0,
        "in_hull": hull,
    }
    text = (f"mu~={fmt(mu_t)}  phi={fmt(phi)}  |mu~+rho_c|^2-|phi|^2={value}  "
            f"inequality={'holds' if value >= 0 else 'fails'}  in hull={'yes' if hull else 'no'}")
    emit(record, args.json, text)
    return EXIT_OK


# ----------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ktypes", description="Exact K-type combinatorics for real reductive groups.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, default_config=None):
        p.add_argument("--config", default=default_config, required=default_config is None,
                       help=f"bundled name ({', '.join(BUNDLED)}) or path to a JSON config")
        p.add_argument("--json", action="store_true", help="line-delimited JSON records")

    p = sub.add_parser("lambda", help="lambda_a or lambda_u of one K-type")
    common(p)
    p.add_argument("--mu", required=True, help="highest weight, e.g. --mu=5,-1")
    p.add_argument("--which", choices=("a", "u"), default="u")
    p.set_defaults(func=cmd_lambda)

    p = sub.add_parser("enumerate", help="list unitarily small or small K-types, or a lambda_u fiber")
    common(p)
    p.add_argument("--mode", choices=("unitarily-small", "small", "fiber"), default="unitarily-small")
    p.add_argument("--mu-z", help="central part (default 0)")
    p.add_argument("--lambda-u", help="target value for --mode fiber")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="run property suites")
    common(p, default_config="all")
    p.add_argument("--suite", choices=verify.SUITES + ("all",), default="all")
    p.add_argument("--samples", type=int, default=1000, help="random vectors for the projections suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-norm", type=Fraction, default=None,
                   help="for thm6.7: check every K-type with |mu| <= N instead of the default range")
    p.add_argument("--lambda-u", action="append", help="for prop3.1c: value to check (repeatable)")
    p.add_argument("--clifford-max", type=int, default=8, help="largest Clifford dimension to check")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("paper-examples", help="recompute the worked-example tables and diff against goldens")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_examples)

    p = sub.add_parser("spin", help="spin weights and the exterior algebra check")
    common(p)
    p.set_defaults(func=cmd_spin)

    p = sub.add_parser("dirac", help="Dirac inequality scalar and hull test")
    common(p)
    p.add_argument("--mu-tilde", help="default rho_n")
    p.add_argument("--phi", help="default rho")
    p.set_defaults(func=cmd_dirac)
    return ap


def main(argv: Optional[list] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InputError, InvalidKType, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
