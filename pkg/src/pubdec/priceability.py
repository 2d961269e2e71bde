"""Price systems: exact condition checks, extraction from MeCorA runs, and the satisfaction bound.

A price system holds a payment ``p_i(t, d)`` for every voter, issue and
decision, and a price ``pi(t, d)`` for every issue and decision. For an
outcome ``w`` it is valid when

* P1: voters pay only for decisions on their own ballot;
* P2: no voter pays more than ``m`` in total;
* P3: payments for each chosen decision ``w_t`` add up to its price;
* P4: nobody pays for an unchosen decision;
* P5: no group with an ``(S, w)``-deviation holds, in unspent money, more
  than ``pi(t, w_t)`` for every issue ``t`` of ``S``.

For P5 only the maximal deviating group per target needs checking: unspent
money only grows when voters are added to a group.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Optional

from pubdec.axioms import agreeing_blocks, other_targets
from pubdec.deviations import DeviationWitness, enumerate_deviations
from pubdec.errors import ModelError, TraceError
from pubdec.model import Instance, satisfactions
from pubdec.rules.trace import RuleTrace, verify_trace


@dataclass(frozen=True)
class PriceSystem:
    """``payments[i][t][d]`` and ``prices[t][d]``, all exact and non-negative."""

    payments: tuple
    prices: tuple

    @classmethod
    def build(cls, instance: Instance, prices, payments=None) -> "PriceSystem":
        """From ``prices[t][d]`` (or ``{(t, d): price}``) and sparse ``{(i, t, d): amount}``."""
        dims = [len(dom) for dom in instance.domains]
        if isinstance(prices, dict):
            table = [[Fraction(0)] * k for k in dims]
            for (t, d), p in prices.items():
                table[t][d] = Fraction(p)
        else:
            table = [[Fraction(p) for p in row] for row in prices]
        pay = [[[Fraction(0)] * k for k in dims] for _ in range(instance.n)]
        for (i, t, d), amount in (payments or {}).items():
            pay[i][t][d] = Fraction(amount)
        ps = cls(tuple(tuple(tuple(r) for r in v) for v in pay), tuple(tuple(r) for r in table))
        ps.check_shape(instance)
        return ps

    def check_shape(self, instance: Instance) -> None:
        dims = [len(dom) for dom in instance.domains]
        if [len(r) for r in self.prices] != dims:
            raise ModelError("price table does not match the issue domains")
        if len(self.payments) != instance.n:
            raise ModelError(f"payments given for {len(self.payments)} voters, expected {instance.n}")
        for row in self.payments:
            if [len(r) for r in row] != dims:
                raise ModelError("payment table does not match the issue domains")
        for r in self.prices:
            if any(p < 0 for p in r):
                raise ModelError("prices must be non-negative")
        for row in self.payments:
            if any(a < 0 for r in row for a in r):
                raise ModelError("payments must be non-negative")

    def spent(self, i: int) -> Fraction:
        return sum((a for r in self.payments[i] for a in r), Fraction(0))


@dataclass(frozen=True)
class PriceVerdict:
    valid: bool
    violations: tuple  # (condition, message) pairs
    p5_witness: Optional[DeviationWitness] = None

    def __bool__(self):
        return self.valid

    @property
    def failed(self) -> tuple:
        return tuple(sorted({c for c, _ in self.violations}))


def verify_price_system(instance: Instance, w, ps: PriceSystem) -> PriceVerdict:
    w = instance.require_feasible(w)
    ps.check_shape(instance)
    m = instance.m
    out = []
    for i, ballot in enumerate(instance.profile):
        for t, row in enumerate(ps.payments[i]):
            for d, amount in enumerate(row):
                if d != ballot[t] and amount != 0:
                    out.append(("P1", f"voter {i + 1} pays {amount} for a decision off their ballot on issue {t + 1}"))
        if ps.spent(i) > m:
            out.append(("P2", f"voter {i + 1} spends {ps.spent(i)} > {m}"))
    for t in range(m):
        for d in range(len(instance.domains[t])):
            total = sum((ps.payments[i][t][d] for i in range(instance.n)), Fraction(0))
            if d == w[t] and total != ps.prices[t][d]:
                out.append(("P3", f"issue {t + 1}: payments {total} differ from price {ps.prices[t][d]}"))
            if d != w[t] and total != 0:
                out.append(("P4", f"issue {t + 1}: unchosen decision receives {total}"))
    witness = None
    for wit in enumerate_deviations(instance, w):
        leftover = sum((m - ps.spent(i) for i in wit.group), Fraction(0))
        if all(leftover > ps.prices[t][w[t]] for t in wit.issues):
            witness = wit
            out.append(
                ("P5", f"voters {_fmt(wit.group)} hold {leftover} unspent, above every price on S={_fmt(wit.issues)}")
            )
            break
    return PriceVerdict(not out, tuple(out), witness)


def extract_price_system(instance: Instance, trace: RuleTrace):
    """``(outcome, price system)`` read off a finished MeCorA run.

    Every decision of an issue is priced at that issue's final price and each
    voter's payments are the amounts still held at termination.
    """
    if trace.rule not in ("mecora", "greedy-mecora"):
        raise TraceError(f"cannot extract a price system from a {trace.rule} trace")
    state = verify_trace(instance, trace)
    prices = {(t, d): state.prices[t] for t, d in instance.decisions()}
    payments = {}
    for t, held in enumerate(state.ledger):
        for i, amount in held.items():
            payments[(i, t, state.outcome[t])] = amount
    return state.outcome, PriceSystem.build(instance, prices, payments)


@dataclass(frozen=True)
class BoundVerdict:
    holds: bool
    checked: int
    skipped_zero_price: int
    witness: Optional[tuple] = None  # (group, T, S, total satisfaction, bound)

    def __bool__(self):
        return self.holds


def check_priceable_bound(instance: Instance, w, ps: PriceSystem) -> BoundVerdict:
    """Total satisfaction of each cohesive deviating group versus ``n/q * |T| - |S|``.

    ``q`` is the largest price of ``w``'s decisions on ``S``. For a fixed
    ``(T, assignment, S)`` the smallest total satisfaction comes from the
    ``ceil(|T| n / m)`` least satisfied members, so only that group is tested.
    Witnesses with ``q = 0`` have no finite bound and are counted separately.
    """
    if not verify_price_system(instance, w, ps):
        raise ModelError("price system is not valid for this outcome")
    w = tuple(w)
    n, m = instance.n, instance.m
    sats = satisfactions(instance, w)
    targets = other_targets(instance, w)
    checked = skipped = 0
    for T, voters, key in agreeing_blocks(instance):
        need = ceil(Fraction(len(T) * n, m))
        if len(voters) < need:
            continue
        pos = {t: j for j, t in enumerate(T)}
        lowest = sorted(voters, key=lambda i: (sats[i], i))[:need]
        total = sum(sats[i] for i in lowest)
        for target, diff in targets:
            if not all(t in pos and target[t] == key[pos[t]] for t in diff):
                continue
            q = max(ps.prices[t][w[t]] for t in diff)
            if q == 0:
                skipped += 1
                continue
            checked += 1
            bound = Fraction(n) / q * len(T) - len(diff)
            if total < bound:
                return BoundVerdict(False, checked, skipped, (frozenset(lowest), frozenset(T), diff, total, bound))
    return BoundVerdict(True, checked, skipped)


def _fmt(items) -> str:
    return "{" + ",".join(str(x + 1) for x in sorted(items)) + "}"
