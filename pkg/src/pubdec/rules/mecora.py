"""MeCorA over a constraint and its greedy partitioned variant.

Both rules start from a feasible outcome with all prices at zero and every
voter holding ``m``. In each round a group that would rather see the
decisions on ``S`` changed may buy the change by raising each price on ``S``
by ``epsilon``; the previous payers for those issues get their money back.
The cheapest move per head wins and the rule stops when no move is
affordable.

Each payer's contribution ``min(rho, budget)`` is split over the issues of
``S`` in proportion to the new prices, so the payments for every issue add
up to its new price exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from pubdec.errors import CapExceeded, PubDecError
from pubdec.model import Instance
from pubdec.rules.mes import mes_min_rho
from pubdec.rules.trace import Flip, RuleTrace

DEFAULT_PARTITION_CAP = 16


@dataclass(frozen=True)
class AgreeingBlock:
    voters: frozenset
    agreed: frozenset  # T_x
    assignment: tuple  # common decisions on sorted(T_x)

    @property
    def product(self) -> int:
        return len(self.voters) * len(self.agreed)


def partition_agreeing_groups(instance: Instance, cap: int = DEFAULT_PARTITION_CAP) -> tuple:
    """Greedy partition of the voters into agreeing blocks of non-increasing ``|N| * |T|``.

    Each step picks, among the voters still unassigned, the issue set ``T``
    and common assignment on it whose supporters maximise ``|group| * |T|``.
    Ties go to the larger group, then the lexicographically smaller ``T``,
    then the smaller assignment.
    """
    if instance.m > cap:
        raise CapExceeded(f"{instance.m} issues exceed the partition cap of {cap}")
    remaining = list(range(instance.n))
    blocks = []
    while remaining:
        best = None
        for size in range(1, instance.m + 1):
            for T in combinations(range(instance.m), size):
                groups = {}
                for i in remaining:
                    b = instance.profile[i]
                    groups.setdefault(tuple(b[t] for t in T), []).append(i)
                for key, voters in groups.items():
                    rank = (-len(voters) * size, -len(voters), T, key)
                    if best is None or rank < best[0]:
                        best = (rank, voters, T, key)
        _, voters, T, key = best
        blocks.append(AgreeingBlock(frozenset(voters), frozenset(T), key))
        taken = set(voters)
        remaining = [i for i in remaining if i not in taken]
    return tuple(blocks)


def run_mecora(instance: Instance, epsilon=1, initial=None):
    """Run MeCorA from ``initial`` (default: the first member of C)."""
    return _run(instance, epsilon, initial, rule="mecora")


def run_greedy_mecora(instance: Instance, q: int = 0, epsilon=1, initial=None, partition=None):
    """Run Greedy MeCorA-``q``.

    Only whole blocks of the agreeing partition pay, only for issues inside
    their own ``T_x``, and never so that a member ends with satisfaction
    above ``|N(T_x)|/n * |T_x| - q``.
    """
    if q < 0 or int(q) != q:
        raise ValueError("q must be a non-negative integer")
    if partition is None:
        partition = partition_agreeing_groups(instance)
    return _run(instance, epsilon, initial, rule="greedy-mecora", q=int(q), partition=tuple(partition))


def _candidate_groups(instance, w, target, diff, partition, q):
    """Paying groups for moving ``w`` to ``target`` as ``(voters, block index)``."""
    if partition is None:
        group = tuple(
            i for i, b in enumerate(instance.profile) if all(b[t] == target[t] for t in diff)
        )
        return [(group, None)] if group else []
    out = []
    n = instance.n
    for x, block in enumerate(partition):
        if not set(diff) <= block.agreed:
            continue
        pos = {t: j for j, t in enumerate(sorted(block.agreed))}
        if any(block.assignment[pos[t]] != target[t] for t in diff):
            continue
        cap = Fraction(len(block.voters) * len(block.agreed), n) - q
        if any(
            sum(1 for a, c in zip(instance.profile[i], target) if a == c) > cap
            for i in block.voters
        ):
            continue
        out.append((tuple(sorted(block.voters)), x))
    return out


def _run(instance, epsilon, initial, rule, q=None, partition=None):
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    n, m = instance.n, instance.m
    w = instance.require_feasible(instance.constraint[0] if initial is None else initial)
    start = w
    budgets = [Fraction(m)] * n
    prices = [Fraction(0)] * m
    ledger = [dict() for _ in range(m)]
    events = []
    guard = n * m * m / epsilon
    while True:
        best = None
        for ci, target in enumerate(instance.constraint):
            if target == w:
                continue
            diff = tuple(t for t in range(m) if target[t] != w[t])
            total = sum((prices[t] + epsilon for t in diff), Fraction(0))
            for group, x in _candidate_groups(instance, w, target, diff, partition, q):
                rho = mes_min_rho([budgets[i] for i in group], total)
                if rho is None:
                    continue
                key = (rho, diff, tuple(target[t] for t in diff), ci, -1 if x is None else x)
                if best is None or key < best[0]:
                    best = (key, target, diff, group, x, total)
        if best is None:
            termination = "no affordable deviation"
            break
        if len(events) + 1 > guard:
            raise PubDecError(f"flip count exceeded the bound {guard}; prices failed to converge")
        (rho, *_), target, diff, group, x, total = best
        refunds = []
        for t in diff:
            for voter, amount in sorted(ledger[t].items()):
                budgets[voter] += amount
                refunds.append((voter, t, amount))
            ledger[t] = {}
        old_prices = tuple(prices[t] for t in diff)
        new_prices = tuple(p + epsilon for p in old_prices)
        payments = []
        for i in group:
            amount = min(rho, budgets[i])
            budgets[i] -= amount
            for t, p in zip(diff, new_prices):
                share = amount * p / total
                ledger[t][i] = share
                payments.append((i, t, share))
        for t, p in zip(diff, new_prices):
            prices[t] = p
        events.append(
            Flip(
                issues=diff,
                old=tuple(w[t] for t in diff),
                new=tuple(target[t] for t in diff),
                old_prices=old_prices,
                new_prices=new_prices,
                group=group,
                rho=rho,
                refunds=tuple(refunds),
                payments=tuple(payments),
                block=x,
            )
        )
        w = target
    params = {"epsilon": epsilon}
    if partition is not None:
        params["q"] = q
        params["partition"] = [
            {"voters": sorted(b.voters), "issues": sorted(b.agreed)} for b in partition
        ]
    trace = RuleTrace(
        rule=rule,
        params=params,
        fingerprint=instance.fingerprint,
        n=n,
        m=m,
        budget=Fraction(m),
        initial=start,
        events=events,
        outcome=w,
        budgets=tuple(budgets),
        prices=tuple(prices),
        termination=termination,
    )
    return w, trace


def final_ledger(trace: RuleTrace, m: int) -> tuple:
    """Per issue, ``{voter: amount}`` still held at termination of a flip trace."""
    ledger = [dict() for _ in range(m)]
    for ev in trace.flips():
        for t in ev.issues:
            ledger[t] = {}
        for voter, t, amount in ev.payments:
            ledger[t][voter] = ledger[t].get(voter, Fraction(0)) + amount
    return tuple(ledger)


__all__ = [
    "AgreeingBlock",
    "partition_agreeing_groups",
    "run_mecora",
    "run_greedy_mecora",
    "final_ledger",
]
