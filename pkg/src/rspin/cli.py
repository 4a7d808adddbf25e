"""Command-line front end.

Exit codes: 0 success or check passed, 1 check failed, 2 usage or IO error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from rspin.analysis import distinctness_check, is_semisimple, span_membership
from rspin.catalog import FamilyError, FamilySpec, divisors, make
from rspin.cyclotomic import CycQ
from rspin.evaluator import ExprSyntaxError, ExprTypeError, evaluate
from rspin.fileformat import FileFormatError, load, save
from rspin.frobenius import direct_sum, graded_tensor, pullback, verify
from rspin.graded import dense
from rspin.invariants import (DEFAULT_HORIZON, InvariantError, alpha_even_sequences,
                              alpha_odd_sequence, beta_via_dimension, profile)

MAX_HORIZON = 32
CAVEAT = "note: a finite prefix can only be consistent with membership, never prove it"


class UsageError(Exception):
    pass


def _fmt(v: CycQ) -> str:
    z = v.approx(1)
    if abs(z.imag) < 5e-13:
        approx = f"{z.real:.12g}"
    else:
        approx = f"{z.real:.12g}{z.imag:+.12g}i"
    return f"{v}    ~ {approx}"


def _horizon(n):
    if n is None:
        return DEFAULT_HORIZON
    if not 1 <= n <= MAX_HORIZON:
        raise UsageError(f"--horizon must be between 1 and {MAX_HORIZON}")
    return n


def _load(path):
    try:
        return load(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except FileFormatError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _save(alg, path):
    try:
        save(alg, path)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None
    print(f"wrote {alg.label} to {path}")
    return 0


def cmd_construct(args):
    kappa = None
    if args.kappa is not None:
        try:
            kappa = Fraction(args.kappa)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad --kappa {args.kappa!r}") from None
    try:
        alg = make(FamilySpec(args.family, args.r, kappa))
    except FamilyError as exc:
        raise UsageError(str(exc)) from None
    return _save(alg, args.output)


def cmd_verify(args):
    rep = verify(_load(args.file))
    if args.json:
        print(json.dumps(rep.to_json(), sort_keys=True, indent=1))
    else:
        print(f"# {rep.label}  r={rep.r}")
        print("\n".join(rep.lines()))
        print("all axioms pass" if rep.passed else f"failed: {', '.join(rep.failed())}")
    return 0 if rep.passed else 1


def cmd_invariants(args):
    p = profile(_load(args.file), _horizon(args.horizon))
    if args.json:
        print(json.dumps(p.to_json(), sort_keys=True, indent=1))
    else:
        print(p.table())
    return 0


def cmd_sum(args):
    return _save(direct_sum(_load(args.f1), _load(args.f2)), args.output)


def cmd_tensor(args):
    x, y = _load(args.f1), _load(args.f2)
    if x.r != y.r:
        raise UsageError(f"r differs: {x.r} vs {y.r}")
    return _save(graded_tensor(x, y), args.output)


def cmd_pullback(args):
    alg = _load(args.file)
    if args.r < 1 or args.r % alg.r:
        raise UsageError(f"target r={args.r} is not a multiple of {alg.r}")
    return _save(pullback(alg, args.r), args.output)


def cmd_semisimple(args):
    rep = is_semisimple(_load(args.file))
    print(f"semisimple: {'yes' if rep.semisimple else 'no'}  (radical dim {rep.radical_dim}, "
          f"trace form rank {rep.trace_form_rank}/{rep.total_dim})")
    return 0 if rep.semisimple else 1


def _report(name, rep):
    head = f"{name}: " if name else ""
    if rep.member_verdict == "inconsistent":
        print(f"{head}inconsistent: {rep.reason}")
    elif rep.member_verdict == "consistent":
        print(f"{head}consistent (order {rep.order}, horizon {rep.horizon_used})")
    else:
        print(f"{head}inconclusive: {rep.reason}")
    for j, c in enumerate(rep.recurrence_coeffs, 1):
        print(f"  c_{j} = {_fmt(c)}")


def cmd_span_check(args):
    if (args.file is None) == (args.sequence is None):
        raise UsageError("give exactly one of FILE or --sequence")
    if args.sequence is not None:
        try:
            seq = [CycQ.parse(t.strip()) for t in args.sequence.split(",") if t.strip()]
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad --sequence: {exc}") from None
        if len(seq) < 2:
            raise UsageError("--sequence needs at least two terms")
        reps = [("", span_membership(seq))]
    else:
        alg = _load(args.file)
        h = _horizon(args.horizon)
        if alg.r % 2:
            reps = [("alpha", span_membership(alpha_odd_sequence(alg, h), alg.r))]
        else:
            plus, minus = alpha_even_sequences(alg, h)
            reps = [("alpha+", span_membership(plus, alg.r)),
                    ("alpha-", span_membership(minus, alg.r))]
    for name, rep in reps:
        _report(name, rep)
    print(CAVEAT)
    return 1 if any(rep.member_verdict == "inconsistent" for _, rep in reps) else 0


def cmd_distinct(args):
    alg = _load(args.file)
    beta = {d: beta_via_dimension(alg, d) for d in divisors(alg.r)}
    for d, v in beta.items():
        print(f"beta_{d} = {_fmt(v)}")
    ok = distinctness_check(beta)
    print("distinct" if ok else "not distinct")
    return 0 if ok else 1


def cmd_eval(args):
    alg = _load(args.file)
    try:
        out = evaluate(args.expr, alg)
    except (ExprSyntaxError, ExprTypeError) as exc:
        raise UsageError(f"expression: {exc}") from None
    if isinstance(out, CycQ):
        print(_fmt(out))
        return 0
    print(f"map {out.dom.degrees} -> {out.cod.degrees}")
    for row in dense(out):
        print("  [" + ", ".join(str(v) for v in row) + "]")
    return 0


def build_parser():
    ap = argparse.ArgumentParser(prog="rspin", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a catalog algebra")
    p.add_argument("--family", required=True, choices=list("ABCDEF"))
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--kappa", help="scalar for family E, as P/Q")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check every axiom")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("invariants", help="closed-surface invariants")
    p.add_argument("file")
    p.add_argument("--horizon", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_invariants)

    for name, fn, help_ in (("sum", cmd_sum, "direct sum"), ("tensor", cmd_tensor, "graded tensor")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("f1")
        p.add_argument("f2")
        p.add_argument("-o", "--output", required=True)
        p.set_defaults(func=fn)

    p = sub.add_parser("pullback", help="re-index to a multiple of r")
    p.add_argument("file")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_pullback)

    p = sub.add_parser("semisimple", help="trace-form semisimplicity test")
    p.add_argument("file")
    p.set_defaults(func=cmd_semisimple)

    p = sub.add_parser("span-check", help="rational generating function test")
    p.add_argument("file", nargs="?")
    p.add_argument("--sequence")
    p.add_argument("--horizon", type=int)
    p.set_defaults(func=cmd_span_check)

    p = sub.add_parser("distinct", help="are the torus values pairwise distinct")
    p.add_argument("file")
    p.set_defaults(func=cmd_distinct)

    p = sub.add_parser("eval", help="evaluate a generator word")
    p.add_argument("file")
    p.add_argument("--expr", required=True)
    p.set_defaults(func=cmd_eval)
    return ap


def _join_negative_values(argv):
    # "--kappa -1/2" would otherwise be read as an unknown option
    out = []
    it = iter(argv)
    for tok in it:
        if tok in ("--kappa", "--sequence"):
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def run(argv=None) -> int:
    ap = build_parser()
    argv = _join_negative_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.func(args)
    except (UsageError, InvariantError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
