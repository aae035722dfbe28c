"""Command-line front end: eval, verify, mc, list.

Exit codes: 0 success, 1 a verification failed, 2 domain error,
3 numeric failure (pole, vanishing denominator, depth), 4 parse or usage error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from . import __version__
from .catalog import NAMES, entries, entry
from .catalog import verify as checks
from .errors import (CFKitError, DomainError, ExtensionFailedError, NumericError, ParseError,
                     UnsupportedEquationError)
from .exact import as_fraction, format_decimal, fraction_str, parse_rf
from .exact.rational import log10_abs
from .mc import DifferenceEquation, guess_parametric, guess_pattern, run_engine

EXIT_OK, EXIT_FAIL, EXIT_DOMAIN, EXIT_NUMERIC, EXIT_PARSE = 0, 1, 2, 3, 4
CHECKS = ("tail", "deq", "phi", "alt", "linkage")
ALT_POINTS = (0, 1, Fraction(5, 2))
DEQ_SPAN = 6
PATTERN_LEVELS = 6      # corrections computed for pattern fitting
TOLERANCE = {"deq": 20, "alt": 20}


class UsageError(CFKitError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_PARSE)


def _param(text: str):
    name, sep, value = text.partition("=")
    if not sep or not name.strip():
        raise argparse.ArgumentTypeError(f"expected name=value, got {text!r}")
    return name.strip(), value.strip()


def _bindings(pairs) -> dict:
    out = {}
    for name, value in pairs or ():
        if name in out:
            raise UsageError(f"parameter {name} given twice")
        out[name] = as_fraction(value)
    return out


def _params_json(env) -> dict:
    return {k: fraction_str(Fraction(v)) for k, v in sorted(env.items())}


def _sci(x: Fraction) -> str:
    return "0" if x == 0 else format_decimal(abs(x), 3)


def _emit(args, payload, text_lines):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _entry(name):
    try:
        return entry(name)
    except KeyError:
        raise UsageError(f"unknown entry {name!r}; choose from {', '.join(NAMES)}") from None


# -- list ---------------------------------------------------------------------------

def cmd_list(args) -> int:
    rows = []
    for e in entries():
        rows.append({"name": e.name, "description": e.description, "params": list(e.params),
                     "certificates": len(e.certificates), "min_n": e.min_n})
    lines = [f"{r['name']:<18} {('[' + ', '.join(r['params']) + ']') if r['params'] else '':<12} "
             f"{r['description']}" for r in rows]
    _emit(args, rows, lines)
    return EXIT_OK


# -- eval ---------------------------------------------------------------------------

def cmd_eval(args) -> int:
    e = _entry(args.entry)
    env = e.check_domain(_bindings(args.param))
    t = checks.total(e, args.n, env, args.depth, args.digits + 5)
    value = format_decimal(t.value, args.digits)
    ref = checks.reference_value(e, env, args.digits + 5)
    tail_err = abs(ref - t.value)
    plain_err = abs(ref - t.partial)
    floor = Fraction(1, 10 ** (args.digits + 5))
    if e.oracle_tolerance is not None:
        floor = max(floor, e.oracle_tolerance)
    gained = _digits_gained(plain_err, tail_err, floor)
    payload = {
        "entry": e.name, "params": _params_json(env), "n": args.n, "digits": args.digits,
        "value": value, "depth": t.depth, "converged": t.converged,
        "partial_sum_error": _sci(plain_err), "error_vs_reference": _sci(tail_err),
        "digits_gained": gained,
    }
    lines = [
        value,
        f"entry {e.name}{_params_text(env)}  n={args.n}  depth={t.depth}"
        + ("" if t.converged else "  (not converged)"),
        f"plain partial sum error {_sci(plain_err)}; with tail {_sci(tail_err)}"
        f" (about {gained} digits gained)",
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def _digits_gained(plain: Fraction, with_tail: Fraction, floor: Fraction) -> int:
    """log10(plain / with_tail), with errors below the reference precision clamped."""
    if plain <= floor:
        return 0
    return max(0, math.floor(log10_abs(plain) - log10_abs(max(with_tail, floor))))


def _params_text(env) -> str:
    return "".join(f" {k}={fraction_str(v)}" for k, v in sorted(env.items()))


# -- verify -------------------------------------------------------------------------

def _row(e, check, env, n, depth, residual, passed, detail=""):
    return {"entry": e.name, "check": check, "params": _params_json(env), "n": n,
            "depth": depth, "residual": residual, "pass": passed, "detail": detail}


def _check_tail(e, env, args):
    n = max(args.n, e.min_n)
    t = checks.total(e, n, env, args.depth, args.digits + 5)
    ref = checks.reference_value(e, env, args.digits + 5)
    tol = e.oracle_tolerance or Fraction(1, 10 ** args.digits)
    res = abs(ref - t.value)
    return [_row(e, "tail", env, n, t.depth, _sci(res), res < tol)]


def _check_deq(e, env, args):
    rows = []
    depth = args.depth
    tol = Fraction(1, 10 ** TOLERANCE["deq"])
    start = max(args.n, e.min_n)
    for m in range(start, start + DEQ_SPAN):
        res = checks.difference_equation_residual(e, m, env, depth, args.digits + 5)
        rows.append(_row(e, "deq", env, m, depth if depth is not None else "adaptive",
                         _sci(Fraction(res)), Fraction(res) < tol))
    return rows


def _check_phi(e, env, args):
    if e.numeric_only:
        return [_row(e, "phi", {}, None, None, None, None, "not available: numeric-only entry")]
    rows = []
    for rep in checks.phi_certificate(e):
        failed = [c.label for c in rep.checks if not c.passed]
        detail = f"{len(rep.checks)} identities" + (f"; failed: {'; '.join(failed)}" if failed else "")
        rows.append(_row(e, "phi", {}, None, None, "exact", rep.passed, f"{rep.label}: {detail}"))
    return rows


def _check_alt(e, env, args):
    if e.alternate is None:
        return [_row(e, "alt", env, None, None, None, None, "not available: no interleaved form")]
    depth = args.depth or 60
    tol = Fraction(1, 10 ** TOLERANCE["alt"])
    rows = []
    for x in ALT_POINTS:
        res = checks.alt_form_residual(e, x, env, depth)
        rows.append(_row(e, "alt", env, None, depth, _sci(Fraction(res)), Fraction(res) < tol,
                         f"x={fraction_str(Fraction(x))}"))
    return rows


def _check_linkage(e, env, args):
    if e.interleaved is None:
        return [_row(e, "linkage", {}, None, None, None, None, "not available: no interleaved form")]
    rep = checks.even_part_linkage(e, 15)
    detail = "elements 1..15 agree" if rep.passed else f"first mismatch at element {rep.mismatches[0][0]}"
    return [_row(e, "linkage", {}, None, None, "exact", rep.passed, detail)]


_RUNNERS = {"tail": _check_tail, "deq": _check_deq, "phi": _check_phi,
            "alt": _check_alt, "linkage": _check_linkage}
_PARAM_FREE = {"phi", "linkage"}


def cmd_verify(args) -> int:
    e = _entry(args.entry)
    if args.all:
        selected = list(CHECKS)
    else:
        selected = []
        for c in args.check or ():
            if c not in CHECKS:
                raise UsageError(f"unknown check {c!r}; choose from {', '.join(CHECKS)}")
            if c not in selected:
                selected.append(c)
        if not selected:
            raise UsageError("name at least one --check or pass --all")
    explicit = _bindings(args.param)
    bindings = [e.check_domain(explicit)] if (explicit or not e.params) else \
        [e.check_domain(b) for b in e.test_bindings]
    rows = []
    for c in sorted(selected):
        if c in _PARAM_FREE:
            rows += _RUNNERS[c](e, {}, args)
        else:
            for env in bindings:
                rows += _RUNNERS[c](e, env, args)
    ok = all(r["pass"] is not False for r in rows)
    lines = []
    for r in rows:
        status = {True: "PASS", False: "FAIL", None: "N/A "}[r["pass"]]
        bits = [f"{status} {r['check']:<8}"]
        if r["params"]:
            bits.append(" ".join(f"{k}={v}" for k, v in r["params"].items()))
        if r["n"] is not None:
            bits.append(f"n={r['n']}")
        if r["depth"] is not None:
            bits.append(f"depth={r['depth']}")
        if r["residual"] is not None:
            bits.append(f"residual={r['residual']}")
        if r["detail"]:
            bits.append(r["detail"])
        lines.append("  ".join(bits))
    lines.append(f"{e.name}: {'all checks pass' if ok else 'verification FAILED'}")
    _emit(args, {"entry": e.name, "pass": ok, "checks": rows}, lines)
    return EXIT_OK if ok else EXIT_FAIL


# -- mc ------------------------------------------------------------------------------

def _sweep(text):
    name, sep, values = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected name=v1,v2,..., got {text!r}")
    return name.strip(), [v.strip() for v in values.split(",") if v.strip()]


def cmd_mc(args) -> int:
    deq = DifferenceEquation(parse_rf(args.ratio), parse_rf(args.rhs))
    env = _bindings(args.param)
    if args.kmax < 0:
        raise UsageError("--kmax must be >= 0")
    if args.sweep:
        name, values = args.sweep
        if name in env:
            raise UsageError(f"{name} is both swept and fixed")
        if len(values) < 3:
            raise UsageError("--sweep needs at least three values")
        env = {**env, name: as_fraction(values[0])}
    payload = {"equation": deq.to_json(), "params": _params_json(env), "kmax": args.kmax}
    lines = [f"equation: {deq}" + (f"  with{_params_text(env)}" if env else "")]
    bound = deq.bind(env)
    try:
        run = run_engine(bound, max(args.kmax, PATTERN_LEVELS))
    except UnsupportedEquationError as exc:
        payload.update(status="unsupported", diagnostic=str(exc))
        lines.append(f"unsupported: {exc}")
        _emit(args, payload, lines)
        return EXIT_OK
    exact = run.errors[-1].exact
    shown = min(args.kmax + 1, len(run.corrections))
    rows = []
    for k, (mc, err) in enumerate(zip(run.corrections[:shown], run.errors[:shown])):
        order = "inf" if err.exact else str(err.decay_order)
        rows.append({"k": k, "correction": mc.to_json(), "text": str(mc), "decay_order": order,
                     "leading_constant": fraction_str(err.leading_constant), "exact": err.exact})
        lines.append(f"MC_{k}(m) = {mc}")
        if err.exact:
            lines.append("    T(m) = 0 identically: exact closed form")
        else:
            lines.append(f"    decay order {order}, T(m) + C/m^{order} = O(m^-{err.decay_order + 1}), "
                         f"C = {fraction_str(err.leading_constant)}")
    payload.update(status="exact" if exact else "ok", corrections=rows)
    rule = None if exact else guess_pattern(run.corrections)
    payload["pattern"] = rule.to_json() if rule else None
    if not exact:
        used = len(run.corrections) - 1
        lines.append(f"pattern (fitted on MC_0..MC_{used}): {rule}" if rule else
                     f"pattern: none found on MC_0..MC_{used}")
    if args.sweep:
        lifted = _run_sweep(deq, env, args)
        payload["parametric_pattern"] = lifted.to_json() if lifted else None
        lines.append(f"parametric pattern in {args.sweep[0]}: {lifted}" if lifted else
                     "parametric pattern: none found")
    _emit(args, payload, lines)
    return EXIT_OK


def _run_sweep(deq, env, args):
    name, values = args.sweep
    rules = {}
    for v in values:
        value = as_fraction(v)
        try:
            run = run_engine(deq.bind({**env, name: value}), max(args.kmax, PATTERN_LEVELS))
        except UnsupportedEquationError:
            return None
        rules[value] = guess_pattern(run.corrections)
    return guess_parametric(rules, name)


# -- entry point ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cfkit", description="Continued-fraction tails of Ramanujan-type series.")
    p.add_argument("--version", action="version", version=f"cfkit {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--param", action="append", type=_param, metavar="NAME=VALUE",
                        help="parameter binding, exact rational (repeatable)")
        sp.add_argument("--json", action="store_true", help="machine-readable output")

    sp = sub.add_parser("list", help="list catalog entries")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_list)

    for name, func, helptext in (("eval", cmd_eval, "evaluate partial sum plus continued-fraction tail"),
                                 ("verify", cmd_verify, "run verification checks on an entry")):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("entry")
        sp.add_argument("--n", type=int, default=8, help="split point n (default 8)")
        sp.add_argument("--depth", type=int, default=None, help="fixed depth (default: adaptive)")
        sp.add_argument("--digits", type=int, default=30)
        common(sp)
        sp.set_defaults(func=func)
        if name == "verify":
            sp.add_argument("--check", action="append", metavar="NAME", help=f"one of {', '.join(CHECKS)}")
            sp.add_argument("--all", action="store_true", help="run every check")

    sp = sub.add_parser("mc", help="correction functions for X_m - ratio(m) X_(m+1) = rhs(m)")
    sp.add_argument("--ratio", required=True)
    sp.add_argument("--rhs", default="1")
    sp.add_argument("--kmax", type=int, default=3)
    sp.add_argument("--sweep", type=_sweep, metavar="NAME=V1,V2,...",
                    help="also fit the level pattern as a function of one parameter")
    common(sp)
    sp.set_defaults(func=cmd_mc)
    return p


def _validate(args):
    if getattr(args, "digits", 1) < 1:
        raise UsageError("--digits must be >= 1")
    if getattr(args, "n", 0) < 0:
        raise UsageError("--n must be >= 0")
    if getattr(args, "depth", None) is not None and args.depth < 0:
        raise UsageError("--depth must be >= 0")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _validate(args)
        return args.func(args)
    except (ParseError, UsageError) as exc:
        print(f"cfkit: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DomainError as exc:
        print(f"cfkit: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (NumericError, ExtensionFailedError) as exc:
        print(f"cfkit: numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
