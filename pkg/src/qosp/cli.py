"""Command line front end: ``qosp <command> [options]``.

Exit status is 0 when every check passes, 1 when a check fails and 2 for
bad input (unknown algebra, parse errors, invalid options).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .algebra import (AlgebraFormatError, AlgebraSpec, CoverageError, format_algebra, get_builtin,
                      load_algebra, perturb, specialize)
from .casimir import casimir_report
from .expr import ExprSyntaxError, parse_expr, parse_scalar
from .rep import build_osp22, span_report, typo_repair_oracle, verify_all
from .rewrite import (OrientationError, StepBudgetExceeded, check_confluence, normal_form, orient,
                      step_budget_from_env)
from .scalar import T, LaurentPoly, as_fraction

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _load(name: str) -> AlgebraSpec:
    if os.path.exists(name):
        with open(name, encoding="utf-8") as fh:
            return load_algebra(fh.read())
    try:
        return get_builtin(name)
    except KeyError as e:
        raise UsageError(e.args[0]) from None


def _parse_mode(text: str):
    """'symbolic' -> None; 'q=VALUE' -> Fraction."""
    if text == "symbolic":
        return None
    if text.startswith("q="):
        try:
            return as_fraction(Fraction(text[2:]))
        except (ValueError, ZeroDivisionError):
            pass
    raise UsageError(f"bad --mode {text!r}; use 'symbolic' or 'q=VALUE'")


def _aliases(spec: AlgebraSpec):
    return {"q": LaurentPoly.var("t", T, 2)} if spec.parameters == T else {}


def _apply_perturbations(spec: AlgebraSpec, items) -> AlgebraSpec:
    for item in items or ():
        pair, sep, coeff = item.partition(":")
        names = [x.strip() for x in pair.split(",")]
        if not sep or len(names) != 2:
            raise UsageError(f"bad --perturb {item!r}; use 'A,B:coeff'")
        try:
            c = parse_scalar(coeff, spec.parameters, _aliases(spec))
        except ExprSyntaxError as e:
            raise UsageError(f"--perturb coefficient: {e}") from None
        try:
            spec = perturb(spec, names[0], names[1], c)
        except KeyError as e:
            raise UsageError(f"--perturb: {e.args[0]}") from None
    return spec


def _emit(args, data: dict, text: str) -> None:
    if args.output == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def _ns(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        lo, _, hi = part.partition("..")
        try:
            out.extend(range(int(lo), int(hi) + 1) if hi else [int(lo)])
        except ValueError:
            raise UsageError(f"bad n list {text!r}") from None
    if not out or min(out) < 1:
        raise UsageError("n must be a positive integer")
    return out


# -- commands -----------------------------------------------------------------

def cmd_verify(args) -> int:
    spec = _apply_perturbations(_load(args.algebra), args.perturb)
    if spec.partial:
        raise UsageError(f"{spec.name} is partial; verify needs an osp(2,2) table")
    q = _parse_mode(args.mode)
    if spec.parameters != T:
        # the representation realizes the one-parameter specialization
        spec = specialize(spec, "q", spec.name)
    reports = [verify_all(spec, build_osp22(n, q)) for n in _ns(args.n)]
    data = {"schema": 1, "reports": [r.to_dict() for r in reports]}
    lines = []
    for r in reports:
        lines.append(f"{r.algebra} n={r.n} {r.mode}: {r.relations_checked - len(r.failures)}"
                     f"/{r.relations_checked} relations hold")
        for f in r.failures:
            lines.append(f"  FAIL {f['relation_id']}: {len(f['residual_entries'])} nonzero residual entries")
    _emit(args, data if len(reports) > 1 else reports[0].to_dict(), "\n".join(lines))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_confluence(args) -> int:
    spec = _apply_perturbations(_load(args.algebra), args.perturb)
    sys_ = orient(spec)
    rep = check_confluence(sys_, step_budget=args.step_budget)
    lines = [f"{rep.algebra} ({rep.parameter_mode}): {rep.overlaps_total} overlaps, "
             f"{rep.overlaps_failed} failed"]
    for f in rep.failures:
        lines.append(f"  {'*'.join(f.word)}: {sys_.format(f.residual)}")
    _emit(args, rep.to_dict(), "\n".join(lines))
    return EXIT_OK if rep.confluent else EXIT_FAIL


def cmd_normal_form(args) -> int:
    spec = _load(args.algebra)
    sys_ = orient(spec)
    e = parse_expr(args.expr, spec.parameters, spec.generator_names, _aliases(spec))
    nf = normal_form(e, sys_, strategy=args.strategy, step_budget=args.step_budget)
    out = sys_.format(nf)
    _emit(args, {"schema": 1, "algebra": spec.name, "input": args.expr, "normal_form": out}, out)
    return EXIT_OK


def cmd_span(args) -> int:
    q = _parse_mode(args.mode)
    if q is None:
        raise UsageError("span ranks are computed at an evaluated q; use --mode q=VALUE")
    reports = [span_report(build_osp22(n), q, args.max_length) for n in _ns(args.n)]
    lines = [f"n={r['n']} q={r['q']}: ranks {r['ranks_by_word_length']} target {r['target_rank']} "
             + (f"saturated at length {r['saturating_length']}" if r["saturated"] else "NOT saturated")
             for r in reports]
    _emit(args, reports[0] if len(reports) == 1 else {"schema": 1, "reports": reports}, "\n".join(lines))
    return EXIT_OK if all(r["saturated"] for r in reports) else EXIT_FAIL


def cmd_casimir(args) -> int:
    q = _parse_mode(args.mode)
    if q is None:
        q = Fraction(2)
    d = casimir_report(_ns(args.n), q, symbolic=not args.no_symbolic).data
    lines = [f"osp(1,2) q={d['q']} n={d['ns']}"]
    for e in d["per_n"]:
        lines.append(f"  n={e['n']}: commutant dim {e['commutant_dim']}, central solutions "
                     f"{e['central_space_dim']}, scalars {e['scalars']}, closed form {e['closed_form']}")
    for s in d["sectors"]:
        els = "; ".join(x["element"] for x in s["elements"]) or "-"
        lines.append(f"  sector {s['sector']} (twist {s['twist']}): {s['match']}  [{els}]")
    sym = d.get("symbolic_twisted(-q)")
    if sym:
        lines.append(f"  symbolic twisted(-q) element {sym['element']}: value / closed form = "
                     f"{sym['ratio_to_closed_form']} for all n: {sym['ratfunc_equal_up_to_ratio']}")
    lines.append(f"closed form match: {d['matches_paper_formula']} (strictly central: {d['central_match']})")
    _emit(args, d, "\n".join(lines))
    return EXIT_OK if d["matches_paper_formula"] != "mismatch" else EXIT_FAIL


def cmd_oracle(args) -> int:
    d = typo_repair_oracle(_ns(args.n))
    d = {"schema": 1, **d}
    text = json.dumps(d, indent=2, sort_keys=True, default=str)
    _emit(args, json.loads(text), text)
    return EXIT_OK if d.get("frozen_table_matches_oracle") else EXIT_FAIL


def cmd_dump_algebra(args) -> int:
    spec = _apply_perturbations(_load(args.algebra), args.perturb)
    text = format_algebra(spec)
    _emit(args, {"schema": 1, "algebra": spec.name, "text": text}, text.rstrip("\n"))
    return EXIT_OK


# -- entry point --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qosp", description="Exact checks for quantum osp(2,2) and osp(1,2).")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, algebra="osp22q"):
        sp.add_argument("--output", choices=("text", "json"), default="text")
        if algebra is not None:
            sp.add_argument("--algebra", default=algebra, help="built-in name or path to an algebra file")
        return sp

    v = common(sub.add_parser("verify", help="check every relation in the representation"))
    v.add_argument("--n", default="1")
    v.add_argument("--mode", default="symbolic")
    v.add_argument("--perturb", action="append", metavar="A,B:COEFF")
    v.set_defaults(func=cmd_verify)

    c = common(sub.add_parser("confluence", help="diamond-lemma check of the normal ordering"), "osp22prs")
    c.add_argument("--perturb", action="append", metavar="A,B:COEFF")
    c.add_argument("--step-budget", type=int, default=None)
    c.set_defaults(func=cmd_confluence)

    nf = common(sub.add_parser("normal-form", help="normal-order an expression"), "osp22prs")
    nf.add_argument("--expr", required=True)
    nf.add_argument("--strategy", choices=("leftmost", "rightmost"), default="leftmost")
    nf.add_argument("--step-budget", type=int, default=None)
    nf.set_defaults(func=cmd_normal_form)

    s = common(sub.add_parser("span", help="rank of the word span by length"), None)
    s.add_argument("--n", default="1")
    s.add_argument("--mode", default="q=2")
    s.add_argument("--max-length", type=int, default=None)
    s.set_defaults(func=cmd_span)

    k = common(sub.add_parser("casimir", help="osp(1,2) central element search"), None)
    k.add_argument("--n", default="1..4")
    k.add_argument("--mode", default="q=2")
    k.add_argument("--no-symbolic", action="store_true", help="skip the symbolic confirmation")
    k.set_defaults(func=cmd_casimir)

    o = common(sub.add_parser("oracle", help="check the repaired relations against the representation"), None)
    o.add_argument("--n", default="1..3")
    o.set_defaults(func=cmd_oracle)

    d = common(sub.add_parser("dump-algebra", help="print an algebra in the text format"), "osp22prs")
    d.add_argument("--perturb", action="append", metavar="A,B:COEFF")
    d.set_defaults(func=cmd_dump_algebra)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "step_budget", None) is None and hasattr(args, "step_budget"):
        try:
            args.step_budget = step_budget_from_env()
        except ValueError:
            print("qosp: QOSP_STEP_BUDGET must be an integer", file=sys.stderr)
            return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, AlgebraFormatError, CoverageError, ExprSyntaxError, OrientationError) as e:
        print(f"qosp: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError, KeyError) as e:
        print(f"qosp: {e}", file=sys.stderr)
        return EXIT_USAGE
    except StepBudgetExceeded as e:
        print(f"qosp: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
