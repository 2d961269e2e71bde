"""Justified-representation checks for a given feasible outcome.

Every check scans candidate groups by ``(T, assignment)``: ``T`` runs over
non-empty issue sets by size and then lexicographically, and for each ``T``
the assignments are the distinct ballot projections on ``T`` in lexicographic
order. The voters sharing a projection are the largest ``T``-agreeing group
with that assignment; which members to keep is decided per axiom, since the
deviation conditions depend only on ``(T, assignment)``.

A deviation ``S`` is admissible for ``(T, assignment)`` when it is the
difference set between ``w`` and some other member ``w*`` of C, lies inside
``T``, and ``w*`` matches the assignment on ``S``. The first admissible
target in C's input order is reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

from pubdec.errors import CapExceeded
from pubdec.model import Instance, satisfactions

DEFAULT_ISSUE_CAP = 16

COHJR = "cohjr"
COHEJR = "cohejr"
COHEJR_1 = "cohejr-1"
AGREJR = "agrejr"
AXIOMS = (COHJR, COHEJR, COHEJR_1, AGREJR)


@dataclass(frozen=True)
class Violation:
    """A group that witnesses an axiom violation at ``w``."""

    group: frozenset
    agreed: frozenset  # T
    issues: frozenset  # S
    target: tuple
    entitlement: Fraction
    max_satisfaction: int


@dataclass(frozen=True)
class AxiomVerdict:
    axiom: str
    params: tuple
    satisfied: bool
    witness: Optional[Violation] = None

    def __bool__(self):
        return self.satisfied


def _check_size(instance, cap):
    if instance.m > cap:
        raise CapExceeded(f"{instance.m} issues exceed the T-enumeration cap of {cap}")


def other_targets(instance, w):
    out = []
    for target in instance.constraint:
        if target != w:
            diff = frozenset(t for t in range(instance.m) if target[t] != w[t])
            out.append((target, diff))
    return out


def agreeing_blocks(instance):
    """Yield (T, voters sharing one projection on T, projection) in scan order."""
    for size in range(1, instance.m + 1):
        for T in combinations(range(instance.m), size):
            blocks = {}
            for i, b in enumerate(instance.profile):
                blocks.setdefault(tuple(b[t] for t in T), []).append(i)
            for key in sorted(blocks):
                yield T, blocks[key], key


def _admissible(T, key, targets, max_size=None):
    pos = {t: j for j, t in enumerate(T)}
    for target, diff in targets:
        if max_size is not None and len(diff) > max_size:
            continue
        if all(t in pos and target[t] == key[pos[t]] for t in diff):
            return target, diff
    return None


def check_cohesive_ejr(
    instance: Instance, w, offset: int = 0, cap: int = DEFAULT_ISSUE_CAP
) -> AxiomVerdict:
    """Cohesiveness EJR with threshold ``|T| - offset`` (offset 0: cohEJR, 1: cohEJR-1)."""
    if offset < 0:
        raise ValueError("offset must be non-negative")
    w = instance.require_feasible(w)
    _check_size(instance, cap)
    axiom = COHEJR if offset == 0 else COHEJR_1 if offset == 1 else f"cohejr-{offset}"
    sats = satisfactions(instance, w)
    targets = other_targets(instance, w)
    n, m = instance.n, instance.m
    for T, voters, key in agreeing_blocks(instance):
        need = len(T) - offset
        group = [i for i in voters if sats[i] < need]
        if not group or len(group) * m < len(T) * n:
            continue
        hit = _admissible(T, key, targets)
        if hit is not None:
            target, diff = hit
            return AxiomVerdict(
                axiom,
                (offset,),
                False,
                Violation(
                    frozenset(group),
                    frozenset(T),
                    diff,
                    target,
                    Fraction(need),
                    max(sats[i] for i in group),
                ),
            )
    return AxiomVerdict(axiom, (offset,), True)


def check_coh_jr(instance: Instance, w) -> AxiomVerdict:
    """Cohesiveness JR: single-issue groups of size at least n/m with zero satisfaction."""
    w = instance.require_feasible(w)
    sats = satisfactions(instance, w)
    n, m = instance.n, instance.m
    for t in range(m):
        for d in range(len(instance.domains[t])):
            if d == w[t]:
                continue
            group = [i for i, b in enumerate(instance.profile) if b[t] == d and sats[i] == 0]
            if not group or len(group) * m < n:
                continue
            target = w[:t] + (d,) + w[t + 1 :]
            if target in instance.feasible:
                return AxiomVerdict(
                    COHJR,
                    (),
                    False,
                    Violation(frozenset(group), frozenset([t]), frozenset([t]), target, Fraction(1), 0),
                )
    return AxiomVerdict(COHJR, (), True)


def check_agr_ejr(
    instance: Instance, w, alpha=1, beta=0, cap: int = DEFAULT_ISSUE_CAP
) -> AxiomVerdict:
    """alpha-agrEJR-beta: entitlement ``alpha * |N'|/n * |T| - beta``, deviation size ``<= |T||N'|/n``."""
    alpha, beta = Fraction(alpha), Fraction(beta)
    if not 0 < alpha <= 1:
        raise ValueError("alpha must lie in (0, 1]")
    if beta < 0:
        raise ValueError("beta must be non-negative")
    w = instance.require_feasible(w)
    _check_size(instance, cap)
    sats = satisfactions(instance, w)
    targets = other_targets(instance, w)
    n = instance.n
    for T, voters, key in agreeing_blocks(instance):
        members = sorted(voters, key=lambda i: (sats[i], i))
        for s in range(1, len(members) + 1):
            threshold = alpha * s * len(T) / n - beta
            worst = sats[members[s - 1]]
            if not worst < threshold:
                continue
            hit = _admissible(T, key, targets, max_size=len(T) * s // n)
            if hit is not None:
                target, diff = hit
                return AxiomVerdict(
                    AGREJR,
                    (alpha, beta),
                    False,
                    Violation(frozenset(members[:s]), frozenset(T), diff, target, threshold, worst),
                )
    return AxiomVerdict(AGREJR, (alpha, beta), True)


def check_axiom(instance: Instance, w, axiom: str, alpha=1, beta=0, cap: int = DEFAULT_ISSUE_CAP):
    """Dispatch by axiom name: ``cohjr``, ``cohejr``, ``cohejr-1`` or ``agrejr``."""
    if axiom == COHJR:
        return check_coh_jr(instance, w)
    if axiom == COHEJR:
        return check_cohesive_ejr(instance, w, 0, cap)
    if axiom == COHEJR_1:
        return check_cohesive_ejr(instance, w, 1, cap)
    if axiom == AGREJR:
        return check_agr_ejr(instance, w, alpha, beta, cap)
    raise ValueError(f"unknown axiom {axiom!r}; expected one of {', '.join(AXIOMS)}")
