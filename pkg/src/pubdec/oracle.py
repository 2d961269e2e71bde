"""Brute-force reference semantics for deviations and the representation axioms.

Nothing here reuses the deviation engine or the axiom checkers: every
quantifier is evaluated directly over voter subsets and issue subsets, so the
two implementations can be compared against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

from pubdec.errors import CapExceeded
from pubdec.model import Instance

ORACLE_MAX_VOTERS = 8
ORACLE_MAX_ISSUES = 6
ORACLE_MAX_OUTCOMES = 16


def check_caps(instance: Instance, max_n=ORACLE_MAX_VOTERS, max_m=ORACLE_MAX_ISSUES, max_c=ORACLE_MAX_OUTCOMES):
    if instance.n > max_n:
        raise CapExceeded(f"{instance.n} voters exceed the oracle cap of {max_n}")
    if instance.m > max_m:
        raise CapExceeded(f"{instance.m} issues exceed the oracle cap of {max_m}")
    if len(instance.constraint) > max_c:
        raise CapExceeded(f"{len(instance.constraint)} outcomes exceed the oracle cap of {max_c}")


def _subsets(items):
    items = list(items)
    for size in range(1, len(items) + 1):
        yield from combinations(items, size)


def _deviates(instance, group, S, w) -> bool:
    first = instance.profile[group[0]]
    for i in group:
        b = instance.profile[i]
        for t in S:
            if b[t] != first[t] or b[t] == w[t]:
                return False
    moved = list(w)
    for t in S:
        moved[t] = first[t]
    return tuple(moved) in instance.feasible


def _sat(instance, i, w) -> int:
    return sum(1 for a, b in zip(instance.profile[i], w) if a == b)


def brute_force_deviations(instance: Instance, w, **caps) -> frozenset:
    """Every ``(group, S)`` with an ``(S, w)``-deviation, over all subsets of N and of I."""
    check_caps(instance, **caps)
    w = tuple(w)
    if w not in instance.feasible:
        raise ValueError("outcome is not in C")
    found = set()
    for group in _subsets(range(instance.n)):
        for S in _subsets(range(instance.m)):
            if _deviates(instance, group, S, w):
                found.add((frozenset(group), frozenset(S)))
    return frozenset(found)


@dataclass(frozen=True)
class OracleVerdict:
    axiom: str
    params: tuple
    satisfied: bool
    witness: Optional[tuple] = None  # (group, T, S)

    def __bool__(self):
        return self.satisfied


def brute_force_axiom_check(instance: Instance, w, axiom: str, alpha=1, beta=0, **caps) -> OracleVerdict:
    """Evaluate an axiom by looping over every group, every ``T`` it agrees on and every ``S`` inside ``T``."""
    check_caps(instance, **caps)
    w = tuple(w)
    if w not in instance.feasible:
        raise ValueError("outcome is not in C")
    alpha, beta = Fraction(alpha), Fraction(beta)
    n, m = instance.n, instance.m
    if axiom == "cohjr":
        params = ()
    elif axiom in ("cohejr", "cohejr-1"):
        params = (0 if axiom == "cohejr" else 1,)
    elif axiom == "agrejr":
        params = (alpha, beta)
    else:
        raise ValueError(f"unknown axiom {axiom!r}")
    for group in _subsets(range(n)):
        ballots = [instance.profile[i] for i in group]
        agreed = [t for t in range(m) if all(b[t] == ballots[0][t] for b in ballots)]
        sats = [_sat(instance, i, w) for i in group]
        for T in _subsets(agreed):
            if axiom == "cohjr":
                if len(T) != 1:
                    continue
                cohesive = len(group) * m >= n
                threshold = Fraction(1)
                max_s = 1
            elif axiom in ("cohejr", "cohejr-1"):
                cohesive = len(group) * m >= len(T) * n
                threshold = Fraction(len(T) - params[0])
                max_s = len(T)
            else:
                cohesive = True
                threshold = alpha * len(group) * len(T) / n - beta
                max_s = Fraction(len(T) * len(group), n)
            if not cohesive or not all(s < threshold for s in sats):
                continue
            for S in _subsets(T):
                if len(S) <= max_s and _deviates(instance, group, S, w):
                    return OracleVerdict(axiom, params, False, (frozenset(group), frozenset(T), frozenset(S)))
    return OracleVerdict(axiom, params, True)


@dataclass(frozen=True)
class SearchReport:
    axiom: str
    params: tuple
    verdicts: tuple  # ((outcome, satisfied), ...) in C order
    satisfying: tuple

    @property
    def exists(self) -> bool:
        return bool(self.satisfying)


def exists_satisfying_outcome(instance: Instance, axiom: str, alpha=1, beta=0, method: str = "checker", **caps) -> SearchReport:
    """Evaluate ``axiom`` at every member of C.

    ``method="checker"`` uses the axiom checkers, ``"oracle"`` the brute force.
    """
    check_caps(instance, **caps)
    if method == "oracle":
        def judge(w):
            return brute_force_axiom_check(instance, w, axiom, alpha, beta, **caps)
    elif method == "checker":
        from pubdec.axioms import check_axiom

        def judge(w):
            return check_axiom(instance, w, axiom, alpha, beta)
    else:
        raise ValueError("method must be 'checker' or 'oracle'")
    verdicts = []
    params = ()
    for w in instance.constraint:
        v = judge(w)
        params = v.params
        verdicts.append((w, v.satisfied))
    sat = tuple(w for w, ok in verdicts if ok)
    return SearchReport(axiom, params, tuple(verdicts), sat)
