"""Exit criteria. Each test records one PASS/FAIL line, shown in the summary."""

import itertools
import random
import time
from fractions import Fraction

import pytest

from pubdec import (
    PriceSystem,
    brute_force_axiom_check,
    brute_force_deviations,
    build_graph,
    check_agr_ejr,
    check_axiom,
    check_coh_jr,
    check_cohesive_ejr,
    check_priceable_bound,
    deviation_closure,
    enumerate_deviations,
    exists_satisfying_outcome,
    extract_price_system,
    fixture,
    reachable,
    replay_trace,
    restrictiveness,
    run_greedy_mecora,
    run_ls_pav,
    run_mecora,
    run_mes,
    verify_price_system,
)
from pubdec.generate import GenSpec, generate_instance
from pubdec.rules import price_increments, step_bound

from conftest import record, small_instance

pytestmark = pytest.mark.acceptance

HALF = Fraction(1, 2)


def _summarise(checks):
    bad = [name for name, ok in checks if not ok]
    if not bad:
        return True, f"all {len(checks)} checks hold"
    return False, f"{len(checks) - len(bad)}/{len(checks)} hold; failing: " + "; ".join(bad)


def test_ac1_fixture_regressions():
    t0 = time.perf_counter()
    checks = []

    ex1 = fixture("example-1")
    passing = [w for w in ex1.constraint if check_agr_ejr(ex1, w, 1, 0)]
    checks.append((f"example-1 has no agrEJR outcome (passing: {passing})", not passing))

    prop3 = fixture("prop3")
    checks.append(("prop3 has no cohJR outcome", not any(check_coh_jr(prop3, w) for w in prop3.constraint)))

    p6 = fixture("prop6-m8")
    checks.append(
        ("prop6-m8 has no cohEJR-1 outcome", not any(check_cohesive_ejr(p6, w, 1) for w in p6.constraint))
    )
    cohjr_ok = [w for w in p6.constraint if check_coh_jr(p6, w)]
    checks.append((f"prop6-m8 has no cohJR outcome (passing: {len(cohjr_ok)} of {len(p6.constraint)})", not cohjr_ok))

    sec5 = fixture("sec5-agr")
    checks.append(("sec5-agr (1,1,0,0) passes agrEJR", bool(check_agr_ejr(sec5, (1, 1, 0, 0)))))
    checks.append(("sec5-agr (1,1,1,0) fails agrEJR", not check_agr_ejr(sec5, (1, 1, 1, 0))))
    checks.append(("sec5-agr (1,1,1,0) passes 1/2-agrEJR", bool(check_agr_ejr(sec5, (1, 1, 1, 0), HALF))))

    sec6 = fixture("sec6-price")
    grid = [Fraction(k, 2) for k in range(5)]
    priceable = []
    for combo in itertools.product(grid, repeat=sec6.m):
        # voter 2 agrees with (1,1,1,1) nowhere, so voter 1 funds every price
        prices = {(t, 1): p for t, p in enumerate(combo)}
        payments = {(0, t, 1): p for t, p in enumerate(combo)}
        ps = PriceSystem.build(sec6, prices, payments)
        v = verify_price_system(sec6, (1, 1, 1, 1), ps)
        if not set(v.failed) & {"P1", "P2", "P3", "P4"} and "P5" not in v.failed:
            priceable.append(combo)
    checks.append(("sec6-price (1,1,1,1) unpriceable with prices <= 2", not priceable))
    prices = {(0, 1): 2, (1, 1): 2, (2, 0): 2, (3, 0): 2}
    payments = {(0, 0, 1): 2, (0, 1, 1): 2, (1, 2, 0): 2, (1, 3, 0): 2}
    checks.append(
        (
            "sec6-price (1,1,0,0) with all prices 2 passes P1-P5",
            bool(verify_price_system(sec6, (1, 1, 0, 0), PriceSystem.build(sec6, prices, payments))),
        )
    )

    g = fixture("exm-graph")
    reach = reachable(build_graph((0, 0, 0, 0), g.implications, g.domains), (0, 1))
    checks.append(("exm-graph reach of (a1,1) has size 3", len(reach) == 3))

    elapsed = time.perf_counter() - t0
    checks.append((f"runtime {elapsed:.2f}s < 1s", elapsed < 1.0))
    ok, detail = _summarise(checks)
    record("AC1 fixture regressions", ok, detail)
    assert ok, detail


DIFF_AXIOMS = [
    ("cohjr", 1, 0),
    ("cohejr", 1, 0),
    ("cohejr-1", 1, 0),
    ("agrejr", 1, 0),
    ("agrejr", HALF, 0),
    ("agrejr", 1, 1),
]


def test_ac2_differential():
    t0 = time.perf_counter()
    seeds = 200
    mismatches = []
    outcomes = 0
    for seed in range(seeds):
        inst = small_instance(seed)
        assert inst.n <= 5 and inst.m <= 4 and len(inst.constraint) <= 6
        for w in inst.constraint:
            outcomes += 1
            for axiom, alpha, beta in DIFF_AXIOMS:
                fast = check_axiom(inst, w, axiom, alpha, beta).satisfied
                slow = brute_force_axiom_check(inst, w, axiom, alpha, beta).satisfied
                if fast != slow:
                    mismatches.append((seed, w, axiom, alpha, beta))
            if deviation_closure(enumerate_deviations(inst, w)) != brute_force_deviations(inst, w):
                mismatches.append((seed, w, "deviations"))
    elapsed = time.perf_counter() - t0
    ok = not mismatches and elapsed < 60
    detail = (
        f"{seeds} instances, {outcomes} outcomes, {len(DIFF_AXIOMS)} axiom settings + deviations, "
        f"{len(mismatches)} mismatches, {elapsed:.1f}s (< 60s)"
    )
    if mismatches:
        detail += f"; first {mismatches[:3]}"
    record("AC2 differential checkers vs oracle", ok, detail)
    assert ok, detail


def _k_instance(seed, ballots_feasible):
    r = random.Random(seed)
    m = r.randint(2, 4)
    k = r.randint(2, min(3, m))
    n = r.randint(1, 5)
    inst = generate_instance(
        GenSpec(n=n, m=m, profile="k-restrictive", k=k, ballots_feasible=ballots_feasible, seed=seed)
    )
    return inst, restrictiveness(inst).k


def test_ac3_guarantees():
    t0 = time.perf_counter()
    seeds = 100
    fails = {"mes-unit": [], "mes-fixed": [], "greedy-mecora": [], "ls-pav": []}
    for seed in range(seeds):
        r = random.Random(seed)
        inst = generate_instance(GenSpec(n=r.randint(1, 5), m=r.randint(1, 4), profile="unconstrained", seed=seed))
        w, _ = run_mes(inst)
        if not check_cohesive_ejr(inst, w, 1):
            fails["mes-unit"].append(seed)

        inst, k = _k_instance(seed, False)
        w, _ = run_mes(inst, "fixed")
        if not check_agr_ejr(inst, w, Fraction(1, k), 1):
            fails["mes-fixed"].append(seed)

        inst, k = _k_instance(seed, True)
        w, _ = run_greedy_mecora(inst, q=k - 1)
        if not check_agr_ejr(inst, w, 1, k - 1):
            fails["greedy-mecora"].append(seed)
        w, _ = run_ls_pav(inst)
        if not check_agr_ejr(inst, w, Fraction(2, k + 1), k - 1):
            fails["ls-pav"].append(seed)
    elapsed = time.perf_counter() - t0
    parts = [
        f"MES unit cohEJR-1 {seeds - len(fails['mes-unit'])}/{seeds}",
        f"MES fixed 1/k-agrEJR-1 {seeds - len(fails['mes-fixed'])}/{seeds}",
        f"Greedy MeCorA-(k-1) agrEJR-(k-1) {seeds - len(fails['greedy-mecora'])}/{seeds}",
        f"LS-PAV 2/(k+1)-agrEJR-(k-1) {seeds - len(fails['ls-pav'])}/{seeds}",
        f"{elapsed:.1f}s (< 120s)",
    ]
    bad = {rule: s[:5] for rule, s in fails.items() if s}
    if bad:
        parts.append(f"failing seeds {bad}")
    ok = not bad and elapsed < 120
    detail = ", ".join(parts)
    record("AC3 rule guarantees", ok, detail)
    assert ok, detail


def test_ac4_existence():
    seeds = 100
    counts = {"two-outcome nfd cohEJR": 0, "binary m<=3 nfd cohEJR": 0, "m=2 cohEJR-1": 0}
    disagreements = []
    for seed in range(seeds):
        r = random.Random(seed)
        sizes = tuple(r.choice((2, 2, 3)) for _ in range(r.randint(1, 4)))
        cases = [
            ("two-outcome nfd cohEJR", "cohejr",
             GenSpec(n=r.randint(1, 5), m=len(sizes), domain_sizes=sizes, profile="nfd", size=2, seed=seed)),
            ("binary m<=3 nfd cohEJR", "cohejr",
             GenSpec(n=r.randint(1, 5), m=(m := r.randint(1, 3)), profile="nfd", size=r.randint(2, 2**m), seed=seed)),
            ("m=2 cohEJR-1", "cohejr-1",
             GenSpec(n=r.randint(1, 5), m=2, domain_sizes=(r.choice((2, 3)), r.choice((2, 3))),
                     profile="random-c", size=r.randint(1, 4), seed=seed)),
        ]
        for label, axiom, spec in cases:
            inst = generate_instance(spec)
            fast = exists_satisfying_outcome(inst, axiom)
            slow = exists_satisfying_outcome(inst, axiom, method="oracle")
            if fast.satisfying != slow.satisfying:
                disagreements.append((label, seed))
            if fast.exists:
                counts[label] += 1
    ok = all(c == seeds for c in counts.values()) and not disagreements
    detail = ", ".join(f"{k} non-empty {v}/{seeds}" for k, v in counts.items())
    detail += f", checker/oracle disagreements {len(disagreements)}"
    record("AC4 existence", ok, detail)
    assert ok, detail


def test_ac5_priceability():
    seeds = 120
    invalid = []
    bound_fail = []
    valid = 0
    mixed = 0
    for seed in range(seeds):
        inst = small_instance(seed)
        mixed += any(len(d) > 2 for d in inst.domains)
        _, trace = run_mecora(inst, 1)
        w, ps = extract_price_system(inst, trace)
        v = verify_price_system(inst, w, ps)
        if not v:
            invalid.append((seed, v.failed))
            continue
        valid += 1
        if not check_priceable_bound(inst, w, ps):
            bound_fail.append(seed)
    ok = not invalid and not bound_fail
    detail = (
        f"{seeds} instances ({mixed} with non-binary issues): extracted systems valid {valid}/{seeds}"
        f"; bound holds on {valid - len(bound_fail)}/{valid} valid systems"
    )
    if invalid:
        detail += f"; invalid seeds {[s for s, _ in invalid[:6]]} fail {sorted({c for _, f in invalid for c in f})}"
    record("AC5 priceability of MeCorA outcomes", ok, detail)
    assert ok, detail


RULES = {
    "mes-unit": lambda inst: run_mes(inst),
    "mecora": lambda inst: run_mecora(inst, 1),
    "mecora-half": lambda inst: run_mecora(inst, HALF),
    "greedy-mecora": lambda inst: run_greedy_mecora(inst, q=1),
    "ls-pav": lambda inst: run_ls_pav(inst),
}


def test_ac6_trace_integrity():
    seeds = 100
    traces = 0
    problems = []
    for seed in range(seeds):
        inst = small_instance(seed)
        runs = dict(RULES)
        if seed % 2 == 0:
            k_inst = generate_instance(GenSpec(n=3, m=3, profile="k-restrictive", k=2, seed=seed))
            w, trace = run_mes(k_inst, "fixed")
            state = replay_trace(k_inst, trace)
            traces += 1
            if (state.outcome, state.budgets) != (w, trace.budgets):
                problems.append((seed, "mes-fixed"))
        for name, run in runs.items():
            w, trace = run(inst)
            traces += 1
            state = replay_trace(inst, trace)
            if state.outcome != w or state.budgets != trace.budgets:
                problems.append((seed, name, "replay"))
            if trace.prices is not None and state.prices != trace.prices:
                problems.append((seed, name, "prices"))
            eps = trace.params.get("epsilon")
            if eps is not None and not all(inc >= eps for _, _, inc in price_increments(trace)):
                problems.append((seed, name, "monotonicity"))
    ok = not problems
    detail = f"{traces} traces replayed bit-exactly with monotone prices; {len(problems)} problems"
    if problems:
        detail += f": {problems[:4]}"
    record("AC6 trace integrity", ok, detail)
    assert ok, detail


def test_ac7_lspav_step_bound():
    seeds = 200
    worst = Fraction(0)
    over = []
    for seed in range(seeds):
        inst = small_instance(seed)
        for initial in inst.constraint[:3]:
            _, trace = run_ls_pav(inst, initial)
            bound = step_bound(inst)
            if len(trace.events) > bound:
                over.append(seed)
            if bound:
                worst = max(worst, Fraction(len(trace.events)) / bound)
    ok = not over
    detail = f"{seeds} instances, up to 3 starts each; max steps/bound = {float(worst):.3f}; violations {len(over)}"
    record("AC7 LS-PAV step bound", ok, detail)
    assert ok, detail


def _best_time(inst, reps=3):
    best = float("inf")
    for _ in range(reps):
        t0 = time.perf_counter()
        for w in inst.constraint:
            enumerate_deviations(inst, w)
        best = min(best, time.perf_counter() - t0)
    return best


def test_ac_scaling_smoke():
    ratios = []
    for seed in (3, 4, 5):
        small = generate_instance(GenSpec(n=20, m=10, profile="random-c", size=60, seed=seed))
        large = generate_instance(GenSpec(n=20, m=10, profile="random-c", size=120, seed=seed))
        ratios.append(_best_time(large) / _best_time(small))
    ratio = min(ratios)
    ok = ratio <= 5.0
    detail = f"doubling |C| from 60 to 120 at n=20, m=10 costs x{ratio:.2f} (about 4 expected, limit 5)"
    record("AC8 cap-scaling smoke", ok, detail)
    assert ok, detail
