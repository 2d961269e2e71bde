"""Command-line interface: ``pubdec <command> ...``.

Exit status is 0 on success (or when a checked property holds), 1 when a
checked property is violated, and 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from fractions import Fraction
from pathlib import Path

from pubdec.axioms import AXIOMS, check_axiom
from pubdec.constraints import (
    RestrictivenessWarning,
    fixed_decisions,
    restrictiveness,
    verify_implication_equivalence,
)
from pubdec.deviations import enumerate_deviations
from pubdec.errors import ConstraintError, PubDecError
from pubdec.fileformat import load_instance, serialize_instance
from pubdec.fixtures import FIXTURE_NAMES, fixture
from pubdec.generate import GenSpec, generate_instance
from pubdec.oracle import brute_force_axiom_check, exists_satisfying_outcome
from pubdec.priceability import check_priceable_bound, extract_price_system, verify_price_system
from pubdec.reports import (
    dumps,
    issue_names,
    money,
    outcome_labels,
    prices_from_dict,
    prices_to_dict,
    report,
    trace_from_dict,
    trace_to_dict,
    voters,
)
from pubdec.rules import (
    replay_trace,
    run_greedy_mecora,
    run_ls_pav,
    run_mecora,
    run_mes,
)

RULES = ("mes", "mecora", "greedy-mecora", "lspav")


class UsageError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected an exact number such as 1/2, got {text!r}") from None


def resolve_instance(ref: str):
    """A path to an instance file, or the name of a built-in fixture."""
    path = Path(ref)
    if path.is_file():
        return load_instance(path)
    if ref in FIXTURE_NAMES:
        return fixture(ref)
    raise UsageError(f"{ref!r} is neither an instance file nor a fixture name")


def _read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def _emit(doc, out=None):
    text = dumps(doc) if isinstance(doc, dict) else doc
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# commands


def cmd_run(args):
    inst = resolve_instance(args.instance)
    initial = inst.parse_outcome(args.initial) if args.initial else None
    if args.rule == "mes":
        if initial is not None:
            raise UsageError("equal shares builds its outcome from scratch; --initial does not apply")
        w, trace = run_mes(inst, args.pricing)
    elif args.rule == "mecora":
        w, trace = run_mecora(inst, args.epsilon, initial)
    elif args.rule == "greedy-mecora":
        w, trace = run_greedy_mecora(inst, args.q, args.epsilon, initial)
    else:
        w, trace = run_ls_pav(inst, initial)
    if args.trace:
        Path(args.trace).write_text(dumps(trace_to_dict(inst, trace)))
    doc = report(
        "run",
        rule=args.rule,
        instance=inst.name,
        outcome=outcome_labels(inst, w),
        steps=len(trace.events),
        termination=trace.termination,
        budgets=[money(b) for b in trace.budgets],
    )
    if trace.prices is not None:
        doc["prices"] = [money(p) for p in trace.prices]
    _emit(doc)
    return 0


def _violation_doc(inst, verdict):
    wit = verdict.witness
    if hasattr(wit, "entitlement"):
        return {
            "group": voters(wit.group),
            "T": issue_names(inst, wit.agreed),
            "S": issue_names(inst, wit.issues),
            "target": outcome_labels(inst, wit.target),
            "entitlement": money(wit.entitlement),
            "max_satisfaction": wit.max_satisfaction,
        }
    group, T, S = wit
    return {"group": voters(group), "T": issue_names(inst, T), "S": issue_names(inst, S)}


def cmd_check(args):
    inst = resolve_instance(args.instance)
    w = inst.parse_outcome(args.outcome)
    if args.oracle:
        verdict = brute_force_axiom_check(inst, w, args.axiom, args.alpha, args.beta)
    else:
        verdict = check_axiom(inst, w, args.axiom, args.alpha, args.beta)
    doc = report(
        "check",
        axiom=args.axiom,
        params=[money(p) for p in verdict.params],
        outcome=outcome_labels(inst, w),
        satisfied=verdict.satisfied,
    )
    if not verdict.satisfied:
        doc["witness"] = _violation_doc(inst, verdict)
    _emit(doc)
    return 0 if verdict.satisfied else 1


def cmd_deviations(args):
    inst = resolve_instance(args.instance)
    w = inst.parse_outcome(args.outcome)
    wits = enumerate_deviations(inst, w)
    _emit(
        report(
            "deviations",
            outcome=outcome_labels(inst, w),
            witnesses=[
                {
                    "group": voters(x.group),
                    "S": issue_names(inst, x.issues),
                    "target": outcome_labels(inst, x.target),
                }
                for x in wits
            ],
        )
    )
    return 0


def cmd_classify(args):
    inst = resolve_instance(args.instance)
    fixed = sorted(fixed_decisions(inst.constraint))
    doc = report(
        "classify",
        instance=inst.name,
        n=inst.n,
        m=inst.m,
        outcomes=len(inst.constraint),
        binary=inst.is_binary,
        unconstrained=inst.is_unconstrained,
        ballots_feasible=inst.ballots_feasible,
        nfd=not fixed,
        fixed_decisions=[[inst.issue_names[t], inst.label(t, d)] for t, d in fixed],
    )
    if inst.implications is not None:
        eq = verify_implication_equivalence(inst)
        doc["implications_equivalent"] = eq.equivalent
        if eq.equivalent:
            try:
                with warnings.catch_warnings(record=True):
                    warnings.simplefilter("always", RestrictivenessWarning)
                    r = restrictiveness(inst, check=False)
                doc["k"] = r.k
                doc["max_reach"] = r.max_reach
                doc["notes"] = list(r.warnings)
            except ConstraintError as exc:
                doc["k"] = None
                doc["notes"] = [str(exc)]
    _emit(doc)
    return 0


def cmd_price(args):
    inst = resolve_instance(args.instance)
    if args.action == "extract":
        trace = trace_from_dict(inst, _read_json(args.trace))
        w, ps = extract_price_system(inst, trace)
        if args.out:
            Path(args.out).write_text(dumps(prices_to_dict(inst, ps)))
    else:
        if not args.outcome or not args.prices:
            raise UsageError("price verify needs --outcome and --prices")
        w = inst.parse_outcome(args.outcome)
        ps = prices_from_dict(inst, _read_json(args.prices))
    verdict = verify_price_system(inst, w, ps)
    doc = report(
        "price",
        action=args.action,
        outcome=outcome_labels(inst, w),
        valid=verdict.valid,
        failed=list(verdict.failed),
        violations=[msg for _, msg in verdict.violations],
    )
    if verdict.valid:
        bound = check_priceable_bound(inst, w, ps)
        doc["bound_holds"] = bound.holds
        doc["bound_witnesses_checked"] = bound.checked
    if args.action == "extract" and not args.out:
        doc["price_system"] = prices_to_dict(inst, ps)
    _emit(doc)
    return 0 if verdict.valid else 1


def cmd_oracle(args):
    inst = resolve_instance(args.instance)
    rep = exists_satisfying_outcome(inst, args.axiom, args.alpha, args.beta, method="oracle")
    _emit(
        report(
            "oracle-search",
            axiom=args.axiom,
            params=[money(p) for p in rep.params],
            verdicts=[{"outcome": outcome_labels(inst, w), "satisfied": ok} for w, ok in rep.verdicts],
            satisfying=[outcome_labels(inst, w) for w in rep.satisfying],
        )
    )
    return 0 if rep.exists else 1


def cmd_fixture(args):
    if args.action == "list":
        sys.stdout.write("".join(f"{name}\n" for name in FIXTURE_NAMES))
        return 0
    if not args.name:
        raise UsageError("fixture emit needs a fixture name")
    if args.name not in FIXTURE_NAMES:
        raise UsageError(f"unknown fixture {args.name!r}")
    _emit(serialize_instance(fixture(args.name)), args.out)
    return 0


def cmd_gen(args):
    inst = generate_instance(GenSpec.parse(args.spec))
    _emit(serialize_instance(inst), args.out)
    return 0


def cmd_replay(args):
    inst = resolve_instance(args.instance)
    trace = trace_from_dict(inst, _read_json(args.trace))
    state = replay_trace(inst, trace)
    ok = state.outcome == trace.outcome and state.budgets == trace.budgets
    if trace.prices is not None:
        ok = ok and state.prices == trace.prices
    _emit(
        report(
            "replay",
            rule=trace.rule,
            steps=state.steps,
            outcome=outcome_labels(inst, state.outcome),
            matches=ok,
        )
    )
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pubdec", description="Proportional public decisions under constraints.")
    sub = p.add_subparsers(dest="command", required=True)

    def instance_arg(sp):
        sp.add_argument("--instance", required=True, help="instance file or fixture name")

    sp = sub.add_parser("run", help="run a voting rule")
    sp.add_argument("rule", choices=RULES)
    instance_arg(sp)
    sp.add_argument("--pricing", choices=("unit", "fixed"), default="unit")
    sp.add_argument("--q", type=int, default=0)
    sp.add_argument("--epsilon", type=_fraction, default=Fraction(1))
    sp.add_argument("--initial", help="starting outcome, comma-separated labels")
    sp.add_argument("--trace", help="write the rule trace (JSON) here")
    sp.set_defaults(func=cmd_run)

    sp = sub.add_parser("check", help="check an axiom at an outcome")
    sp.add_argument("axiom", choices=AXIOMS)
    instance_arg(sp)
    sp.add_argument("--outcome", required=True)
    sp.add_argument("--alpha", type=_fraction, default=Fraction(1))
    sp.add_argument("--beta", type=_fraction, default=Fraction(0))
    sp.add_argument("--oracle", action="store_true", help="use the brute-force evaluator")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("deviations", help="list maximal deviating groups")
    instance_arg(sp)
    sp.add_argument("--outcome", required=True)
    sp.set_defaults(func=cmd_deviations)

    sp = sub.add_parser("classify", help="describe the constraint")
    instance_arg(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("price", help="verify or extract price systems")
    sp.add_argument("action", choices=("verify", "extract"))
    instance_arg(sp)
    sp.add_argument("--outcome")
    sp.add_argument("--prices", help="price-system JSON (verify)")
    sp.add_argument("--trace", help="MeCorA trace JSON (extract)")
    sp.add_argument("--out", help="write the extracted price system here")
    sp.set_defaults(func=cmd_price)

    sp = sub.add_parser("oracle", help="brute-force existence search")
    sp.add_argument("action", choices=("search",))
    sp.add_argument("axiom", choices=AXIOMS)
    instance_arg(sp)
    sp.add_argument("--alpha", type=_fraction, default=Fraction(1))
    sp.add_argument("--beta", type=_fraction, default=Fraction(0))
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("fixture", help="list or print built-in instances")
    sp.add_argument("action", choices=("list", "emit"))
    sp.add_argument("name", nargs="?")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_fixture)

    sp = sub.add_parser("gen", help="generate a random instance")
    sp.add_argument("--spec", required=True, help="e.g. n=4,m=3,profile=k-restrictive,k=2,seed=1")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("replay", help="replay a trace against its instance")
    instance_arg(sp)
    sp.add_argument("--trace", required=True)
    sp.set_defaults(func=cmd_replay)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "price" and args.action == "extract" and not args.trace:
        parser.error("price extract needs --trace")
    try:
        return args.func(args)
    except (UsageError, PubDecError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
