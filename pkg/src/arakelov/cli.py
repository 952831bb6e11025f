"""Command-line surface: subcommand dispatch, field/divisor parsing, and
canonical JSON output.

Exit codes: 0 success, 2 mathematical failure (e.g. an uncertified class
group after the relation cap), 3 input error.  Output for a fixed
configuration and seed is byte-identical across runs and thread counts.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

import mpmath

from . import classgroup as _classgroup
from . import divisors as _divisors
from . import ideals as _ideals
from . import quadratic as _quadratic
from .field import build_field

EXIT_OK = 0
EXIT_MATH = 2
EXIT_INPUT = 3


class InputError(Exception):
    pass


class MathFailure(Exception):
    """Carries a JSON payload describing the (honest) failure."""

    def __init__(self, payload):
        super().__init__("mathematical failure")
        self.payload = payload


# ----- parsing --------------------------------------------------------------


def parse_poly(text):
    """Ascending integer coefficients of a monic polynomial in x, from
    strings like 'x^2+23' or 'x^3 - x - 1'."""
    import sympy

    x = sympy.Symbol("x")
    try:
        expr = sympy.sympify(text.replace("^", "**"), locals={"x": x})
        poly = sympy.Poly(expr, x)
    except (sympy.SympifyError, sympy.PolynomialError, SyntaxError, TypeError):
        raise InputError(f"cannot parse polynomial: {text!r}")
    coeffs = [sympy.Integer(c) for c in reversed(poly.all_coeffs())]
    if any(not c.is_integer for c in poly.all_coeffs()):
        raise InputError("polynomial coefficients must be integers")
    out = [int(c) for c in coeffs]
    if len(out) < 3:
        raise InputError("polynomial degree must be at least 2")
    if out[-1] != 1:
        raise InputError("polynomial must be monic")
    return out


def load_field(spec, precision):
    """NumberField from an inline polynomial or a JSON description file
    with keys poly / basis (optional) / mult_table (optional)."""
    if spec is None:
        raise InputError("--field is required")
    basis = None
    mult = None
    if os.path.exists(spec):
        try:
            with open(spec) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read field file: {exc}")
        if "poly" not in data:
            raise InputError("field file must contain 'poly'")
        poly = [int(c) for c in data["poly"]]
        if "basis" in data:
            basis = [[Fraction(str(x)) for x in row] for row in data["basis"]]
        if "mult_table" in data:
            mult = data["mult_table"]
    else:
        poly = parse_poly(spec)
    try:
        return build_field(poly, basis_input=basis, mult_table=mult,
                           precision=precision)
    except ValueError as exc:
        raise InputError(str(exc))


def load_divisor(F, text):
    """ArakelovDivisor from 'trivial', an inline JSON object, or a JSON
    file: {"ideal": {"hnf": [[..]], "denom": d}, "u": ["..", ..]} (u
    optional: defaults to the degree-zero section of the ideal)."""
    if text is None or text == "trivial":
        return _divisors.trivial_divisor(F).divisor
    if os.path.exists(text):
        with open(text) as fh:
            text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"cannot parse divisor JSON: {exc}")
    try:
        idl = data["ideal"]
        raw = _ideals.FractionalIdeal(F, [[int(x) for x in row]
                                          for row in idl["hnf"]],
                                      int(idl.get("denom", 1)))
        # canonicalize: the O_F-module generated by the given rows
        I = _ideals.hnf_from_generators(F, raw.basis_elements())
        if "u" in data:
            u = [mpmath.mpf(str(x)) for x in data["u"]]
            return _divisors.ArakelovDivisor(F, I, u)
        return _divisors.divisor_of_ideal(F, I)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad divisor description: {exc}")


def decimal(x, digits=20):
    return mpmath.nstr(mpmath.mpf(x), digits)


def emit(payload, output):
    text = json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"
    if output and output != "-":
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def divisor_json(D):
    if isinstance(D, _divisors.ReducedDivisor):
        D = D.divisor
    return D.to_json()


# ----- subcommand implementations ------------------------------------------


def _cmd_classgroup(args):
    F = load_field(args.field, args.precision)
    res = _classgroup.buchmann(F, seed=args.seed, Y=args.factor_base_bound,
                               cutoff_factor=args.euler_cutoff_factor,
                               relation_cap=args.relation_cap,
                               threads=args.threads)
    payload = res.to_json()
    if not res.certified:
        raise MathFailure(payload)
    return payload


def _cmd_deterministic(args):
    F = load_field(args.field, args.precision)
    try:
        res = _classgroup.deterministic_pic(
            F, cutoff_factor=args.euler_cutoff_factor)
    except ValueError as exc:
        raise MathFailure({"error": str(exc)})
    payload = res.to_json()
    payload["reduced_divisors"] = sum(len(c) for c in res.census)
    if not res.certified:
        raise MathFailure(payload)
    return payload


def _cmd_reduce(args):
    F = load_field(args.field, args.precision)
    D = load_divisor(F, args.divisor)
    try:
        red, f, v = _divisors.reduce_divisor(D)
    except ValueError as exc:
        raise InputError(str(exc))
    return {
        "reduced": divisor_json(red),
        "witness": [str(c) for c in f.coords],
        "carry": [decimal(x) for x in v],
        "is_reduced": bool(red.verify()),
    }


def _cmd_compose(args):
    F = load_field(args.field, args.precision)
    D1 = load_divisor(F, args.divisor)
    D2 = load_divisor(F, args.divisor2)
    r1, _, _ = _divisors.reduce_divisor(D1)
    r2, _, _ = _divisors.reduce_divisor(D2)
    red, f, v = _divisors.compose(r1, r2)
    return {
        "reduced": divisor_json(red),
        "witness": [str(c) for c in f.coords],
        "carry": [decimal(x) for x in v],
    }


def _cmd_invert(args):
    F = load_field(args.field, args.precision)
    D = load_divisor(F, args.divisor)
    r1, _, _ = _divisors.reduce_divisor(D)
    red, f, v = _divisors.invert(r1)
    return {
        "reduced": divisor_json(red),
        "witness": [str(c) for c in f.coords],
        "carry": [decimal(x) for x in v],
    }


def _parse_prime_spec(F, spec):
    """(PrimeIdeal, exponent) from 'p:i:e' -- the i-th prime over p (in
    canonical order) with exponent e."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise InputError("--prime expects p:index:exponent")
    try:
        p, i, e = int(parts[0]), int(parts[1]), int(parts[2])
    except ValueError:
        raise InputError("--prime expects integers p:index:exponent")
    try:
        primes = _ideals.split_prime(F, p)
    except ValueError as exc:
        raise InputError(str(exc))
    if not 0 <= i < len(primes):
        raise InputError(f"no prime of index {i} over {p}")
    return primes[i], e


def _cmd_jump(args):
    F = load_field(args.field, args.precision)
    finite = [_parse_prime_spec(F, s) for s in (args.prime or [])]
    m = F.r1 + F.r2
    if args.infinite:
        try:
            x = [mpmath.mpf(s) for s in args.infinite.split(",")]
        except ValueError:
            raise InputError("--infinite expects a comma-separated real list")
        if len(x) != m:
            raise InputError(f"--infinite expects {m} coordinates")
    else:
        x = [mpmath.mpf(0)] * m
    basis = _divisors.make_jump_basis(F, args.seed)
    red, v = _divisors.jump(F, finite, x, basis)
    return {
        "reduced": divisor_json(red),
        "carry": [decimal(c) for c in v],
    }


def _cmd_scan(args):
    F = load_field(args.field, args.precision)
    center = load_divisor(F, args.divisor)
    if args.scan_radius is None or args.scan_radius <= 0:
        raise InputError("--scan-radius must be positive")
    try:
        found = _divisors.scan(F, center, args.scan_radius, eps=args.eps)
    except ValueError as exc:
        raise InputError(str(exc))
    return {
        "count": len(found),
        "divisors": [divisor_json(red) for red in found],
    }


def _cmd_h0(args):
    F = load_field(args.field, args.precision)
    D = load_divisor(F, args.divisor)
    return {"h0": decimal(_divisors.h0(D))}


def _cmd_gamma(args):
    F = load_field(args.field, args.precision)
    D = load_divisor(F, args.divisor)
    return {"gamma": decimal(_divisors.hermite_gamma(D))}


def _cmd_forms(args):
    if args.disc is None:
        raise InputError("--disc is required")
    try:
        forms = _quadratic.enumerate_reduced_forms(args.disc)
    except ValueError as exc:
        raise InputError(str(exc))
    return {
        "disc": args.disc,
        "count": len(forms),
        "forms": [[q.a, q.b, q.c] for q in forms],
        "class_number": _quadratic.class_number_oracle(args.disc),
    }


def _cmd_regulator_cf(args):
    if args.disc is None:
        raise InputError("--disc is required")
    try:
        reg = _quadratic.cf_regulator(args.disc, prec=args.precision)
    except ValueError as exc:
        raise InputError(str(exc))
    return {"disc": args.disc, "regulator": decimal(reg)}


# ----- argument plumbing ----------------------------------------------------


def _default_precision():
    env = os.environ.get("ARAKELOV_PRECISION_BITS")
    if env:
        try:
            return int(env)
        except ValueError:
            raise InputError("ARAKELOV_PRECISION_BITS must be an integer")
    return 128


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser():
    parser = _Parser(prog="arakelov",
                     description="Arakelov class group toolkit")
    sub = parser.add_subparsers(dest="command")

    def add(name, fn, field=False, divisor=False, disc=False):
        p = sub.add_parser(name)
        p.set_defaults(fn=fn)
        p.add_argument("--precision", type=int, default=None,
                       help="working precision in bits (default 128, or "
                            "ARAKELOV_PRECISION_BITS)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--output", default=None,
                       help="output path (default stdout)")
        if field:
            p.add_argument("--field", default=None,
                           help="inline polynomial like 'x^2+23', or a JSON "
                                "field description file")
        if divisor:
            p.add_argument("--divisor", default="trivial",
                           help="'trivial', inline JSON, or a JSON file")
        if disc:
            p.add_argument("--disc", type=int, default=None)
        return p

    p = add("classgroup", _cmd_classgroup, field=True)
    p.add_argument("--factor-base-bound", type=int, default=None)
    p.add_argument("--euler-cutoff-factor", type=float, default=50.0)
    p.add_argument("--relation-cap", type=int, default=None)
    p.add_argument("--threads", type=int, default=1)

    p = add("deterministic", _cmd_deterministic, field=True)
    p.add_argument("--euler-cutoff-factor", type=float, default=50.0)

    add("reduce", _cmd_reduce, field=True, divisor=True)

    p = add("compose", _cmd_compose, field=True, divisor=True)
    p.add_argument("--divisor2", default="trivial")

    add("invert", _cmd_invert, field=True, divisor=True)

    p = add("jump", _cmd_jump, field=True)
    p.add_argument("--prime", action="append", default=None,
                   help="p:index:exponent, repeatable")
    p.add_argument("--infinite", default=None,
                   help="comma-separated infinite coordinates")

    p = add("scan", _cmd_scan, field=True, divisor=True)
    p.add_argument("--scan-radius", type=float, default=None)
    p.add_argument("--eps", type=float, default=None)

    add("h0", _cmd_h0, field=True, divisor=True)
    add("gamma", _cmd_gamma, field=True, divisor=True)
    add("forms", _cmd_forms, disc=True)
    add("regulator-cf", _cmd_regulator_cf, disc=True)
    return parser


def dispatch(argv):
    """Run a subcommand; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "command", None) is None:
            raise InputError("a subcommand is required")
        if args.precision is None:
            args.precision = _default_precision()
        if args.precision < 24:
            raise InputError("precision too low")
        if args.seed < 0:
            raise InputError("seed must be nonnegative")
        payload = args.fn(args)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except MathFailure as exc:
        emit(exc.payload, getattr(args, "output", None))
        return EXIT_MATH
    emit(payload, args.output)
    return EXIT_OK


def main():
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
