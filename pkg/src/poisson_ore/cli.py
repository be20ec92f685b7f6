"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a check fails (witnesses are
printed), 2 for malformed input.  Output is plain text, one fact per line.
"""

from __future__ import annotations

import argparse
import sys

from .double_ore import de_from_step, de_suite, de_to_iterated
from .envelope import build_env
from .errors import (
    AlgebraError,
    InvalidParameter,
    InvalidStep,
    InvalidWitness,
    NoRationalRoot,
    NotIterated,
    NotPoisson,
    ParseError,
)
from .envelope.verify import envelope_suite
from .formats import read_bracket_source, read_matrix, read_quantum_params, read_skew_matrix, read_tower
from .parsing import parse_env, parse_poly, parse_scalar
from .poisson import (
    BracketTable,
    check_poisson_alpha_derivation,
    check_poisson_derivation,
    extend_bracket,
    jacobi_check,
)
from .quantum import compare_semiclassical, difference_problems, quantum_matrix_relations, semiclassical_table
from .rank2 import a_param_tower, classify, iso_witness_check, prop35_verify

__all__ = ["main", "run", "build_parser"]


class UsageError(Exception):
    pass


def _status(ok: bool) -> str:
    return "pass" if ok else "FAIL"


def _scalar_arg(text: str, what: str):
    try:
        return parse_scalar(text, source=what)
    except ParseError as exc:
        raise UsageError(str(exc)) from None


def _valid_tower(path):
    tower = read_tower(path)
    tower.validate()
    return tower


# -- subcommands ------------------------------------------------------------------


def cmd_bracket(args):
    src = read_bracket_source(args.file)
    table = src if isinstance(src, BracketTable) else src.table()
    a = parse_poly(args.a, table.registry, source="<arg 1>")
    b = parse_poly(args.b, table.registry, source="<arg 2>")
    return [str(extend_bracket(table, a, b))], 0


def cmd_verify_poisson(args):
    src = read_bracket_source(args.file)
    out, ok = [], True
    if isinstance(src, BracketTable):
        table = src
    else:
        tower = src
        reg = tower.registry
        for k, step in enumerate(tower.steps):
            lower, lv = tower.lower_table(k), tower.lower_variables(k)
            name = reg.names[step.var]
            w = check_poisson_derivation(lower, step.alpha, lv)
            out.append(f"step {name}: alpha Poisson derivation: " + ("pass" if w is None else "FAIL " + w.describe(reg)))
            ok &= w is None
            w = check_poisson_alpha_derivation(lower, step.alpha, step.delta, lv)
            out.append(
                f"step {name}: delta Poisson alpha-derivation: " + ("pass" if w is None else "FAIL " + w.describe(reg))
            )
            ok &= w is None
        table = tower.table()
    w = jacobi_check(table)
    out.append("jacobi: " + ("pass" if w is None else "FAIL " + w.describe(table.registry)))
    ok &= w is None
    return out, 0 if ok else 1


def cmd_env_nf(args):
    alg = build_env(_valid_tower(args.file))
    return [str(parse_env(args.expr, alg, source="<expr>"))], 0


def cmd_env_verify(args):
    alg = build_env(_valid_tower(args.file))
    rep = envelope_suite(alg, samples=args.samples, triples=args.triples, seed=args.seed)
    out = rep.lines()
    if not alg.tower.is_graded():
        out.append("hilbert: skipped (tower is not graded)")
    out.append(f"overall: {_status(rep.ok)}")
    return out, 0 if rep.ok else 1


def cmd_verify_de(args):
    tower = _valid_tower(args.file)
    alg = build_env(tower)
    reg = tower.registry
    steps = range(len(tower.steps)) if args.step is None else [tower.step_index(args.step)]
    out, ok = [], True
    for k in steps:
        name = reg.names[tower.steps[k].var]
        data = de_from_step(alg, k)
        rep = de_suite(alg, k, extra=args.samples, seed=args.seed, data=data)
        out += [f"step {name}: {line}" for line in rep.lines()]
        try:
            same = de_to_iterated(data) == alg.layers[k]
            out.append(f"step {name}: iterated form matches the Ore rules: {_status(same)}")
        except NotIterated as exc:
            same = False
            out.append(f"step {name}: iterated form: FAIL {exc}")
        ok &= rep.ok and same
    if not tower.steps:
        out.append("no steps")
    return out, 0 if ok else 1


def cmd_classify(args):
    c = read_skew_matrix(args.file)
    try:
        return [classify(c).line()], 0
    except NotPoisson as exc:
        return [f"not Poisson: {exc}"], 1
    except NoRationalRoot as exc:
        return [exc.verdict.line() + f" a^2={exc.invariant} (no root in Q(i))"], 0


def cmd_iso_check(args):
    c = read_skew_matrix(args.c)
    d = read_skew_matrix(args.d)
    m = read_matrix(args.witness)
    lam = _scalar_arg(args.lam, "<lambda>")
    try:
        res = iso_witness_check(m, lam, c, d)
    except InvalidWitness as exc:
        raise UsageError(f"{args.witness}: {exc}") from None
    return res.line().split("\n"), 0 if res.ok else 1


def _quantum_params(args):
    lam, p = None, None
    if args.p is not None:
        lam, p = read_quantum_params(args.p, args.n)
    if args.lam is not None:
        lam = _scalar_arg(args.lam, "<lambda>")
    if lam is None:
        lam = 1
    return lam, p


def cmd_quantum_matrices(args):
    lam, p = _quantum_params(args)
    table = semiclassical_table(quantum_matrix_relations(args.n, lam, p))
    return table.lines() + ["jacobi: pass"], 0


def cmd_compare(args):
    lam, p = _quantum_params(args)
    agree, diffs = compare_semiclassical(args.n, lam, p)
    out = []
    for case in ("l>i,m>j", "l>i,m<=j", "l=i,m>j"):
        a = sum(1 for x in agree if x[2] == case)
        d = sum(1 for x in diffs if x.case == case)
        out.append(f"case {case}: agree {a}/{a + d}")
    out += [d.line() for d in diffs]
    problems = difference_problems(args.n, diffs)
    out += [f"unexpected: {msg}" for msg in problems]
    out.append(
        "structure: "
        + _status(not problems)
        + " (differences only in case l>i,m>j, each oracle-printed = x_im*x_lj)"
    )
    return out, 0 if not problems else 1


def cmd_prop35(args):
    a = _scalar_arg(args.a, "<a>")
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    tower = a_param_tower(args.n, a)
    out = tower.table().lines()
    w = prop35_verify(args.n, a)
    out.append(f"prop35 n={args.n} a={a}: " + ("pass" if w is None else "FAIL " + w.describe()))
    return out, 0 if w is None else 1


# -- wiring ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="poisson-ore", description="Poisson-Ore towers and their enveloping algebras.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bracket", help="bracket of two polynomials")
    p.add_argument("file", help="tower or table file")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_bracket)

    verify = sub.add_parser("verify", help="axiom checks").add_subparsers(dest="what", required=True)
    p = verify.add_parser("poisson", help="derivation axioms and Jacobi")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify_poisson)
    p = verify.add_parser("de", help="double Ore extension data (D1)-(D3)")
    p.add_argument("file")
    p.add_argument("--step", default=None, help="step variable (default: all steps)")
    p.add_argument("--samples", type=int, default=20, help="random test elements per step")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify_de)

    env = sub.add_parser("env", help="enveloping algebra").add_subparsers(dest="what", required=True)
    p = env.add_parser("nf", help="normal form of a noncommutative expression")
    p.add_argument("file")
    p.add_argument("expr")
    p.set_defaults(func=cmd_env_nf)
    p = env.add_parser("verify", help="identity checks on seeded samples")
    p.add_argument("file")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--triples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_env_verify)

    p = sub.add_parser("classify", help="similarity class of a skew coefficient matrix")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("iso-check", help="check an isomorphism witness A(C) -> A(D)")
    p.add_argument("c")
    p.add_argument("d")
    p.add_argument("witness")
    p.add_argument("lam", metavar="lambda")
    p.set_defaults(func=cmd_iso_check)

    semi = sub.add_parser("semiclassical", help="quantum matrices").add_subparsers(dest="what", required=True)
    for name, func in (("quantum-matrices", cmd_quantum_matrices), ("compare", cmd_compare)):
        p = semi.add_parser(name)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--lambda", dest="lam", default=None)
        p.add_argument("--p", default=None, help="parameter file")
        p.set_defaults(func=func)

    p = sub.add_parser("prop35", help="Poisson-Ore presentation of A(a)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", required=True)
    p.set_defaults(func=cmd_prop35)
    return ap


def run(argv) -> tuple:
    """``(stdout text, stderr text, exit code)`` without touching the real streams."""
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return "", "", int(exc.code or 0)
    try:
        lines, code = args.func(args)
    except (ParseError, UsageError, InvalidParameter) as exc:
        return "", f"error: {exc}\n", 2
    except InvalidStep as exc:
        return f"invalid tower: {exc}\n", "", 1
    except KeyError as exc:
        return "", f"error: unknown name {exc}\n", 2
    except AlgebraError as exc:
        return "", f"error: {exc}\n", 2
    return "".join(line + "\n" for line in lines), "", code


def main(argv=None) -> int:
    out, err, code = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
