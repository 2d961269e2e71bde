"""Audit logs for rule runs and their replay.

A :class:`RuleTrace` records every purchase (equal shares), flip (MeCorA
variants) or move (local search) together with the final state. Replaying a
trace against its instance rebuilds the outcome, the per-voter budgets and,
for flip-based rules, the prices and the per-issue payment ledger.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from pubdec.errors import TraceError
from pubdec.model import Instance


@dataclass(frozen=True)
class Purchase:
    issue: int
    decision: int
    price: Fraction
    rho: Fraction
    payments: tuple  # ((voter, amount), ...)
    fixed: tuple  # ((issue, decision), ...), the bought pair first
    kind: str = field(default="purchase", init=False)


@dataclass(frozen=True)
class Completion:
    fixed: tuple  # ((issue, decision), ...)
    kind: str = field(default="completion", init=False)


@dataclass(frozen=True)
class Flip:
    issues: tuple  # sorted S
    old: tuple  # decisions on S before the flip
    new: tuple
    old_prices: tuple
    new_prices: tuple
    group: tuple  # paying voters
    rho: Fraction
    refunds: tuple  # ((voter, issue, amount), ...)
    payments: tuple  # ((voter, issue, amount), ...)
    block: Optional[int] = None
    kind: str = field(default="flip", init=False)


@dataclass(frozen=True)
class Move:
    target: tuple
    issues: tuple
    group: tuple
    gain: Fraction
    kind: str = field(default="move", init=False)


@dataclass
class RuleTrace:
    rule: str
    params: dict
    fingerprint: str
    n: int
    m: int
    budget: Fraction
    initial: Optional[tuple]
    events: list
    outcome: tuple
    budgets: tuple
    prices: Optional[tuple]
    termination: str

    def flips(self):
        return [e for e in self.events if e.kind == "flip"]


@dataclass
class ReplayState:
    outcome: tuple
    budgets: tuple
    prices: Optional[tuple]
    ledger: Optional[tuple]  # per issue: {voter: amount} paid for its current decision
    steps: int


def replay_trace(instance: Instance, trace: RuleTrace) -> ReplayState:
    """Re-execute the recorded events from the initial state, validating each one."""
    if trace.fingerprint != instance.fingerprint:
        raise TraceError("trace was produced on a different instance")
    if (trace.n, trace.m) != (instance.n, instance.m):
        raise TraceError("trace dimensions do not match the instance")
    budgets = [Fraction(trace.budget)] * instance.n
    if trace.rule == "mes":
        return _replay_mes(instance, trace, budgets)
    if trace.rule in ("mecora", "greedy-mecora"):
        return _replay_flips(instance, trace, budgets)
    if trace.rule == "ls-pav":
        return _replay_moves(instance, trace, budgets)
    raise TraceError(f"unknown rule {trace.rule!r} in trace")


def verify_trace(instance: Instance, trace: RuleTrace) -> ReplayState:
    """Replay and require the recorded final state to match exactly."""
    state = replay_trace(instance, trace)
    if state.outcome != tuple(trace.outcome):
        raise TraceError("replayed outcome differs from the recorded one")
    if state.budgets != tuple(trace.budgets):
        raise TraceError("replayed budgets differ from the recorded ones")
    if trace.prices is not None and state.prices != tuple(trace.prices):
        raise TraceError("replayed prices differ from the recorded ones")
    return state


def _spend(budgets, voter, amount):
    if amount < 0 or amount > budgets[voter]:
        raise TraceError(f"voter {voter + 1} cannot pay {amount} from budget {budgets[voter]}")
    budgets[voter] -= amount


def _replay_mes(instance, trace, budgets):
    partial = [None] * instance.m
    steps = 0
    for ev in trace.events:
        if ev.kind == "purchase":
            steps += 1
            for t, d in ev.fixed:
                if partial[t] is not None:
                    raise TraceError(f"purchase fixes already decided issue {t + 1}")
                partial[t] = d
            total = Fraction(0)
            for voter, amount in ev.payments:
                if instance.profile[voter][ev.issue] != ev.decision:
                    raise TraceError(f"voter {voter + 1} paid for a decision they did not choose")
                if amount != min(ev.rho, budgets[voter]):
                    raise TraceError("payment does not equal min(rho, remaining budget)")
                _spend(budgets, voter, amount)
                total += amount
            if total != ev.price:
                raise TraceError("payments do not add up to the price")
        elif ev.kind == "completion":
            for t, d in ev.fixed:
                if partial[t] is not None:
                    raise TraceError(f"completion overwrites issue {t + 1}")
                partial[t] = d
        else:
            raise TraceError(f"unexpected {ev.kind} event in an equal-shares trace")
    if None in partial:
        raise TraceError("trace leaves issues undecided")
    return ReplayState(tuple(partial), tuple(budgets), None, None, steps)


def _replay_flips(instance, trace, budgets):
    if trace.initial is None:
        raise TraceError("flip trace has no initial outcome")
    w = list(trace.initial)
    prices = [Fraction(0)] * instance.m
    ledger = [dict() for _ in range(instance.m)]
    steps = 0
    for ev in trace.events:
        if ev.kind != "flip":
            raise TraceError(f"unexpected {ev.kind} event in a flip trace")
        steps += 1
        if tuple(w[t] for t in ev.issues) != tuple(ev.old):
            raise TraceError("flip does not start from the current decisions")
        if tuple(prices[t] for t in ev.issues) != tuple(ev.old_prices):
            raise TraceError("flip does not start from the current prices")
        expected = sorted((v, t, a) for t in ev.issues for v, a in ledger[t].items())
        if sorted(ev.refunds) != expected:
            raise TraceError("refunds do not match the payments they undo")
        for voter, t, amount in ev.refunds:
            budgets[voter] += amount
        for t in ev.issues:
            ledger[t] = {}
        for t, d in zip(ev.issues, ev.new):
            w[t] = d
        for t, p in zip(ev.issues, ev.new_prices):
            prices[t] = Fraction(p)
        for voter, t, amount in ev.payments:
            if instance.profile[voter][t] != w[t]:
                raise TraceError(f"voter {voter + 1} paid for a decision they did not choose")
            _spend(budgets, voter, amount)
            ledger[t][voter] = ledger[t].get(voter, Fraction(0)) + amount
        for t in ev.issues:
            if sum(ledger[t].values(), Fraction(0)) != prices[t]:
                raise TraceError(f"payments on issue {t + 1} do not add up to its new price")
        if tuple(w) not in instance.feasible:
            raise TraceError("flip leaves C")
    return ReplayState(tuple(w), tuple(budgets), tuple(prices), tuple(ledger), steps)


def _replay_moves(instance, trace, budgets):
    if trace.initial is None:
        raise TraceError("local-search trace has no initial outcome")
    w = tuple(trace.initial)
    steps = 0
    for ev in trace.events:
        if ev.kind != "move":
            raise TraceError(f"unexpected {ev.kind} event in a local-search trace")
        if tuple(ev.target) not in instance.feasible:
            raise TraceError("move leaves C")
        w = tuple(ev.target)
        steps += 1
    return ReplayState(w, tuple(budgets), None, None, steps)


def price_increments(trace: RuleTrace) -> list:
    """Per flip and issue, the price increase it caused."""
    return [
        (k, t, Fraction(new) - Fraction(old))
        for k, ev in enumerate(trace.flips())
        for t, old, new in zip(ev.issues, ev.old_prices, ev.new_prices)
    ]
