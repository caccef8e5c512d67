"""Command line front end.

Exit status: 0 on success or when every check passes, 1 when a check fails
(or an ideal membership query answers not-member), 2 on usage or parse
errors.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from fractions import Fraction

from .core import ContextError, Var
from .cosimplicial import (
    DeltaMap,
    check_cosimplicial_identities,
    check_cosimplicial_relations,
    check_ideal_preservation,
    inf_map,
)
from .derham import DForm, exterior_derivative, normalized_differential, phi, psi, theorem_check
from .infinitesimal import InfElement, normal_form, taylor_split
from .loci import D, DTILDE, KINDS, RBRACKET, generators, ideal_equality_check, ideal_member, to_difference
from .parsing import ParseError, parse_form, parse_poly
from .tangent import module_suite


class UsageError(ValueError):
    pass


def element_json(e: InfElement) -> list:
    return [{"monomial": str(mono) or "1", "coefficient": str(c)} for mono, c in e.items()]


def read_element(args, m: int) -> InfElement:
    p = parse_poly(args.expr, args.n, m, args.coords)
    if args.coords == "vertex":
        p = to_difference(p, args.n, m)
    return normal_form(p, args.n, m)


def level(args, default: int = 0) -> int:
    return default if args.m is None else args.m


# -- commands -----------------------------------------------------------------


def cmd_reduce(args):
    m = level(args)
    e = read_element(args, m)
    return str(e), {"result": str(e), "terms": element_json(e)}, 0


def cmd_map(args):
    try:
        theta = DeltaMap.parse(args.theta, args.target)
    except ValueError as exc:
        raise UsageError(f"--theta: {exc}") from None
    if args.m is not None and args.m != theta.source:
        raise UsageError(f"--m {args.m} does not match the source [{theta.source}] of --theta")
    e = read_element(args, theta.source)
    out = inf_map(theta, e)
    extra = {"theta": list(theta.values), "source": theta.source, "target": theta.target}
    return str(out), {"result": str(out), "terms": element_json(out), **extra}, 0


def cmd_phi(args):
    omega = phi(read_element(args, level(args)))
    return str(omega), {"result": str(omega), "form": omega.to_json()}, 0


def read_form(args) -> DForm:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        omega = parse_form(args.expr, args.n, args.m)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return omega


def cmd_psi(args):
    e = psi(read_form(args), args.convention)
    return str(e), {"result": str(e), "level": e.m, "terms": element_json(e)}, 0


def cmd_d(args):
    omega = exterior_derivative(read_form(args))
    return str(omega), {"result": str(omega), "form": omega.to_json()}, 0


def cmd_d0(args):
    m = level(args)
    out = normalized_differential(read_element(args, m))
    return str(out), {"result": str(out), "level": out.m, "terms": element_json(out)}, 0


def cmd_taylor(args):
    f = parse_poly(args.expr, args.n, None, "base")
    try:
        values = [Fraction(t.strip()) for t in args.point.split(",")]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--point: cannot read {args.point!r}") from None
    if len(values) != args.n:
        raise UsageError(f"--point needs {args.n} values")
    if args.order < 0:
        raise UsageError("--order must be non-negative")
    split = taylor_split(f, {Var.base(j + 1): c for j, c in enumerate(values)}, args.order)
    lines = [f"taylor: {split.taylor}"]
    rems = []
    for sigma, g in sorted(split.remainders.items(), reverse=True):
        lines.append(f"g[{','.join(map(str, sigma))}]: {g}")
        rems.append({"sigma": list(sigma), "g": str(g)})
    data = {
        "point": [str(c) for c in values],
        "order": args.order,
        "taylor": str(split.taylor),
        "remainders": rems,
    }
    return "\n".join(lines), data, 0


def cmd_ideal_member(args):
    m = level(args)
    coords = {D: "base", DTILDE: "difference"}.get(args.kind, args.coords)
    p = parse_poly(args.expr, args.n, m, coords)
    pres = generators(args.kind, args.coords, args.n, m)
    bound = max(p.degree(), 0) if args.deg_bound is None else args.deg_bound
    if bound < p.degree():
        raise UsageError(f"--deg-bound {bound} is below the degree {p.degree()} of the input")
    cert = ideal_member(p, pres, bound)
    if cert is None:
        return "not-member", {"member": False, "deg_bound": bound}, 1
    cert.verify()
    lines = ["member"]
    for idx, c in sorted(cert.combination.items()):
        lines.append(f"  ({c}) * [{pres.generators[idx]}]")
    lines.append(f"  verified: {cert.verified}")
    return "\n".join(lines), {"member": True, "deg_bound": bound, "certificate": cert.to_json()}, 0


def cmd_ideal_equality(args):
    m = level(args, 1)
    rep = ideal_equality_check(m, args.n, 2 if args.deg_bound is None else args.deg_bound)
    counts = ", ".join(f"{k}: {len(v)}" for k, v in sorted(rep.certificates.items()))
    status = "PASS" if rep.equal else "FAIL"
    lines = [f"ideal equality: {status} m={m} n={args.n}", f"  certificates {counts}"]
    lines += [f"  FAILED {f['case']}: {f['lhs']}" for f in rep.failures]
    return "\n".join(lines), rep.to_json(), 0 if rep.equal else 1


def cmd_check_derham(args):
    return theorem_check(args.n, level(args, args.n), args.deg, args.trials, args.seed)


def cmd_check_cosimplicial(args):
    m_max = level(args, 3)
    report = check_cosimplicial_identities(args.n, m_max, args.deg, args.trials, args.seed)
    for part in (check_cosimplicial_relations(m_max), check_ideal_preservation(args.n, m_max)):
        report.merge(part)
        report.extra[part.command] = part.cases
    return report


def cmd_check_modules(args):
    return module_suite(args.trials, args.seed)


# -- argument parsing ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    def global_flags(p: argparse.ArgumentParser, suppress: bool) -> argparse.ArgumentParser:
        # accepted before or after the subcommand; the copies on the
        # subcommands only override when given explicitly
        def default(value):
            return argparse.SUPPRESS if suppress else value

        p.add_argument("--n", type=int, default=default(1), help="dimension of the base (default 1)")
        p.add_argument("--m", type=int, default=default(None), help="simplicial level")
        p.add_argument("--coords", choices=["vertex", "difference"], default=default("difference"))
        p.add_argument("--format", choices=["text", "json"], default=default("text"))
        return p

    common = global_flags(argparse.ArgumentParser(add_help=False), suppress=True)

    checks = argparse.ArgumentParser(add_help=False)
    checks.add_argument("--deg", type=int, default=2, help="coefficient degree bound")
    checks.add_argument("--trials", type=int, default=50)
    checks.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(
        prog="infdr",
        description="Exact computations with infinitesimal cochains and polynomial differential forms. "
        "Powers are written **, wedges ^.",
    )
    global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, parents=(common,), expr=True):
        p = sub.add_parser(name, parents=list(parents), help=help_)
        if expr:
            p.add_argument("expr")
        p.set_defaults(func=func)
        return p

    add("reduce", cmd_reduce, "normal form of a level-m polynomial")
    p = add("map", cmd_map, "apply a monotone map [m] -> [m'] to an element")
    p.add_argument("--theta", required=True, help="values theta(0),...,theta(m), e.g. 0,1,1")
    p.add_argument("--target", type=int, default=None, help="target level (default max value)")
    add("phi", cmd_phi, "the form attached to a level-m element")
    p = add("psi", cmd_psi, "the level-m representative of a form")
    p.add_argument("--convention", choices=["normalized", "determinant"], default="normalized")
    add("d", cmd_d, "exterior derivative of a form")
    add("d0", cmd_d0, "normalized differential of a level-m element")
    p = add("taylor", cmd_taylor, "Taylor polynomial with polynomial remainders")
    p.add_argument("--point", required=True, help="comma separated rationals, one per base variable")
    p.add_argument("--order", type=int, required=True)

    ideal = sub.add_parser("ideal", help="ideal membership and equality").add_subparsers(dest="what", required=True)
    p = ideal.add_parser("member", parents=[common], help="certificate of membership, or not-member")
    p.add_argument("expr")
    p.add_argument("--kind", choices=list(KINDS), default=RBRACKET)
    p.add_argument("--deg-bound", type=int, default=None)
    p.set_defaults(func=cmd_ideal_member)
    p = ideal.add_parser("equality", parents=[common], help="both inclusions between the three presentations")
    p.add_argument("--deg-bound", type=int, default=None)
    p.set_defaults(func=cmd_ideal_equality)

    check = sub.add_parser("check", help="randomized verification harnesses").add_subparsers(dest="what", required=True)
    for name, func in (
        ("derham", cmd_check_derham),
        ("cosimplicial", cmd_check_cosimplicial),
        ("modules", cmd_check_modules),
    ):
        p = check.add_parser(name, parents=[common, checks])
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.n < 1:
        parser.error("--n must be at least 1")
    if args.m is not None and args.m < 0:
        parser.error("--m must be non-negative")
    try:
        result = args.func(args)
    except (ParseError, ContextError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if isinstance(result, tuple):
        text, data, code = result
        if args.format == "json":
            params = {"n": args.n, "m": args.m, "coords": args.coords}
            name = args.command if not getattr(args, "what", None) else f"{args.command} {args.what}"
            payload = {"command": name, "params": params, "input": getattr(args, "expr", None)}
            payload.update(data)
            print(json.dumps(payload, sort_keys=True, indent=2))
        else:
            print(text)
        return code

    report = result
    print(report.to_json() if args.format == "json" else report.to_text())
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
