"""Local-search PAV over group deviations."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from pubdec.deviations import enumerate_deviations
from pubdec.model import Instance, satisfactions
from pubdec.rules.trace import Move, RuleTrace


@lru_cache(maxsize=None)
def harmonic(k: int) -> Fraction:
    """``1 + 1/2 + ... + 1/k`` (0 for ``k = 0``)."""
    if k < 0:
        raise ValueError("harmonic number of a negative integer")
    return sum((Fraction(1, j) for j in range(1, k + 1)), Fraction(0))


def pav_score(instance: Instance, w) -> Fraction:
    return sum((harmonic(s) for s in satisfactions(instance, w)), Fraction(0))


def pav_upper_bound(instance: Instance) -> Fraction:
    """Score of a voter set that is fully satisfied: ``n * H(m)``."""
    return instance.n * harmonic(instance.m)


def step_bound(instance: Instance) -> Fraction:
    """Most moves a run can make: each adds at least ``n/m^2`` to a score capped by ``n H(m)``."""
    return instance.m**2 * pav_upper_bound(instance) / instance.n


def run_ls_pav(instance: Instance, initial=None):
    """Move to the first deviation target (scan order) that raises PAV by ``n/m^2`` or more."""
    n, m = instance.n, instance.m
    w = instance.require_feasible(instance.constraint[0] if initial is None else initial)
    start = w
    threshold = Fraction(n, m * m)
    score = pav_score(instance, w)
    events = []
    while True:
        for wit in enumerate_deviations(instance, w):
            gain = pav_score(instance, wit.target) - score
            if gain >= threshold:
                events.append(
                    Move(wit.target, wit.sorted_issues, tuple(sorted(wit.group)), gain)
                )
                w, score = wit.target, score + gain
                break
        else:
            break
    trace = RuleTrace(
        rule="ls-pav",
        params={},
        fingerprint=instance.fingerprint,
        n=n,
        m=m,
        budget=Fraction(m),
        initial=start,
        events=events,
        outcome=w,
        budgets=(Fraction(m),) * n,
        prices=None,
        termination="no improving deviation",
    )
    return w, trace
