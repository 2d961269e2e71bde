"""Feasible group deviations from a feasible outcome.

A group ``N'`` has an ``(S, w)``-deviation when its members agree with one
another on every issue of ``S``, all disagree with ``w`` there, and moving
``w`` to their common decisions on ``S`` lands inside C.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from pubdec.model import Instance, fix_decisions


@dataclass(frozen=True)
class DeviationWitness:
    group: frozenset
    issues: frozenset
    target: tuple
    source: tuple

    @property
    def sorted_issues(self) -> tuple:
        return tuple(sorted(self.issues))


def is_deviation(instance: Instance, group, issues, w) -> bool:
    """Decide whether ``group`` has an ``(issues, w)``-deviation."""
    w = instance.require_feasible(w)
    group, issues = frozenset(group), frozenset(issues)
    if not group:
        raise ValueError("a deviating group must be non-empty")
    if not issues:
        raise ValueError("a deviation needs a non-empty issue set")
    ballots = [instance.profile[i] for i in sorted(group)]
    first = ballots[0]
    for b in ballots:
        if any(b[t] != first[t] for t in issues):
            return False
        if any(b[t] == w[t] for t in issues):
            return False
    return fix_decisions(w, issues, first) in instance.feasible


def enumerate_deviations(instance: Instance, w) -> list:
    """Maximal deviating groups from ``w``, one per other member of C.

    For every ``w* != w`` in C (input order), ``S`` is the set of issues where
    the two differ and the group is every voter matching ``w*`` on all of
    ``S``. Targets with no such voter are skipped.
    """
    w = instance.require_feasible(w)
    out = []
    for target in instance.constraint:
        if target == w:
            continue
        diff = [t for t in range(instance.m) if target[t] != w[t]]
        group = frozenset(
            i for i, b in enumerate(instance.profile) if all(b[t] == target[t] for t in diff)
        )
        if group:
            out.append(DeviationWitness(group, frozenset(diff), target, w))
    return out


def deviation_closure(witnesses) -> set:
    """All (subgroup, S) pairs implied by maximal witnesses."""
    pairs = set()
    for wit in witnesses:
        members = sorted(wit.group)
        for size in range(1, len(members) + 1):
            for sub in combinations(members, size):
                pairs.add((frozenset(sub), wit.issues))
    return pairs
