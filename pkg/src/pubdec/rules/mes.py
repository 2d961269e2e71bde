"""Method of Equal Shares over a constraint, with unit or reach-based pricing."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from pubdec.constraints import build_graph, reach_conflicts, reachable
from pubdec.errors import ConstraintError
from pubdec.model import Instance, extensions, is_extendable, supporters
from pubdec.rules.trace import Completion, Purchase, RuleTrace

UNIT = "unit"
FIXED = "fixed"
PRICINGS = (UNIT, FIXED)


def mes_min_rho(budgets, price) -> Optional[Fraction]:
    """Smallest ``rho`` with ``sum(min(rho, b)) >= price``, or ``None`` if unaffordable."""
    price = Fraction(price)
    if price < 0:
        raise ValueError("price must be non-negative")
    if price == 0:
        return Fraction(0)
    bs = sorted(Fraction(b) for b in budgets)
    if sum(bs, Fraction(0)) < price:
        return None
    paid = Fraction(0)
    k = len(bs)
    for j, b in enumerate(bs):
        rho = (price - paid) / (k - j)
        if rho <= b:
            return rho
        paid += b
    return None


def run_mes(instance: Instance, pricing: str = UNIT):
    """Run equal shares and return ``(outcome, trace)``.

    Each round looks at every undecided issue and decision that keeps the
    partial outcome extendable in C and buys the affordable one with the
    smallest per-head cost ``rho`` (ties: issue index, then decision code).
    Under ``fixed`` pricing the price of ``(t, d)`` is ``n`` times one plus
    the size of its reach set in the implication graph anchored at the
    current partial outcome, and a purchase also fixes that reach set when
    doing so is consistent and keeps the outcome extendable.
    """
    if pricing not in PRICINGS:
        raise ValueError(f"unknown pricing {pricing!r}; expected unit or fixed")
    if pricing == FIXED and instance.implications is None:
        raise ConstraintError("fixed pricing needs an implication set")
    n, m = instance.n, instance.m
    budgets = [Fraction(m)] * n
    partial = [None] * m
    events = []
    termination = "all issues decided"
    while None in partial:
        graph = build_graph(partial, instance.implications, instance.domains) if pricing == FIXED else None
        best = None
        candidates = 0
        for t in range(m):
            if partial[t] is not None:
                continue
            for d in range(len(instance.domains[t])):
                trial = list(partial)
                trial[t] = d
                if not is_extendable(instance, trial):
                    continue
                candidates += 1
                reach = reachable(graph, (t, d)) if graph is not None else frozenset()
                price = Fraction(n * (len(reach) + 1))
                sup = sorted(supporters(instance, t, d))
                rho = mes_min_rho([budgets[i] for i in sup], price)
                if rho is None:
                    continue
                if best is None or rho < best[0]:
                    best = (rho, t, d, price, sup, reach)
        if candidates == 0:
            termination = "no extendable decision"
            break
        if best is None:
            termination = "no affordable decision"
            break
        rho, t, d, price, sup, reach = best
        payments = []
        for i in sup:
            amount = min(rho, budgets[i])
            budgets[i] -= amount
            payments.append((i, amount))
        fixed = [(t, d)]
        partial[t] = d
        extra = _reach_fix(instance, partial, (t, d), reach)
        for u, e in extra:
            partial[u] = e
        fixed.extend(extra)
        events.append(Purchase(t, d, price, rho, tuple(payments), tuple(fixed)))
    if None in partial:
        completion = min(extensions(instance, partial))
        fill = tuple((t, completion[t]) for t in range(m) if partial[t] is None)
        events.append(Completion(fill))
        partial = list(completion)
    outcome = tuple(partial)
    trace = RuleTrace(
        rule="mes",
        params={"pricing": pricing},
        fingerprint=instance.fingerprint,
        n=n,
        m=m,
        budget=Fraction(m),
        initial=None,
        events=events,
        outcome=outcome,
        budgets=tuple(budgets),
        prices=None,
        termination=termination,
    )
    return outcome, trace


def _reach_fix(instance, partial, source, reach):
    """Reach-set pairs to fix alongside ``source``, or none if that would be unsound."""
    if not reach or reach_conflicts(source, reach):
        return []
    extra = sorted(reach)
    if any(partial[u] is not None for u, _ in extra):
        return []
    trial = list(partial)
    for u, e in extra:
        trial[u] = e
    return extra if is_extendable(instance, trial) else []
