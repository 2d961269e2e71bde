"""Fixed decisions, implication sets and outcome implication graphs.

A constraint given as an implication set is a conjunction of rules
``(a_x = d_x) -> (a_y = d_y)``. For an outcome (possibly partial) we build
the directed graph over all (issue, decision) vertices:

* rule edge ``(x, d_x) -> (y, d_y)`` whenever the rule exists and the outcome
  does not already pick ``d_y`` on ``y`` (an undecided ``y`` counts);
* contrapositive edges ``(y, d_y') -> (x, d_x')`` for every ``d_y' != d_y``
  and ``d_x' != d_x`` whenever the rule exists and the outcome picks ``d_x``
  on ``x``. Undecided antecedents never produce contrapositive edges.

The reach set of a vertex is everything on a path out of it, minus the vertex
itself (even when it lies on a cycle).
"""

from __future__ import annotations

import itertools
import warnings
from collections import deque
from dataclasses import dataclass
from typing import Optional

from pubdec.errors import CapExceeded, ConstraintError
from pubdec.model import ImplicationRule, Instance, product_size

__all__ = [
    "ImplicationRule",
    "OutcomeImplicationGraph",
    "Restrictiveness",
    "RestrictivenessWarning",
    "fixed_decisions",
    "has_nfd",
    "verify_implication_equivalence",
    "satisfying_assignments",
    "build_graph",
    "reachable",
    "restrictiveness",
]

DEFAULT_ENUMERATION_CAP = 2**20


class RestrictivenessWarning(UserWarning):
    """The implication set never forces any further decision (reported as k = 1)."""


def fixed_decisions(constraint) -> frozenset:
    """(issue, decision) pairs shared by every outcome of ``constraint``."""
    constraint = list(constraint)
    if not constraint:
        raise ConstraintError("fixed decisions of an empty constraint are undefined")
    first = constraint[0]
    return frozenset(
        (t, d) for t, d in enumerate(first) if all(w[t] == d for w in constraint)
    )


def has_nfd(constraint) -> bool:
    """True iff no issue has the same decision across the whole constraint."""
    return not fixed_decisions(constraint)


def satisfying_assignments(domains, rules, cap: int = DEFAULT_ENUMERATION_CAP) -> list:
    """Every full assignment (lexicographic order) satisfying all ``rules``."""
    size = product_size(domains)
    if size > cap:
        raise CapExceeded(f"domain product has {size} assignments, cap is {cap}")
    rules = list(rules)
    return [
        v
        for v in itertools.product(*(range(len(d)) for d in domains))
        if all(r.holds(v) for r in rules)
    ]


@dataclass(frozen=True)
class EquivalenceReport:
    equivalent: bool
    only_in_rules: tuple  # satisfy every rule but are not in C
    only_in_constraint: tuple  # in C but violate some rule

    def __bool__(self):
        return self.equivalent


def verify_implication_equivalence(
    instance: Instance, cap: int = DEFAULT_ENUMERATION_CAP
) -> EquivalenceReport:
    """Compare C against the assignments satisfying the instance's implication set."""
    if instance.implications is None:
        raise ConstraintError("instance carries no implication set")
    sat = satisfying_assignments(instance.domains, instance.implications, cap)
    sat_set = set(sat)
    only_rules = tuple(v for v in sat if v not in instance.feasible)
    only_c = tuple(c for c in instance.constraint if c not in sat_set)
    return EquivalenceReport(not only_rules and not only_c, only_rules, only_c)


@dataclass(frozen=True)
class OutcomeImplicationGraph:
    """Adjacency over all (issue, decision) vertices for one anchor outcome."""

    anchor: tuple
    vertices: tuple
    edges: dict  # vertex -> tuple of successor vertices, sorted

    def successors(self, v) -> tuple:
        return self.edges.get(v, ())

    def edge_set(self) -> frozenset:
        return frozenset((u, v) for u, succ in self.edges.items() for v in succ)


def build_graph(w, rules, domains) -> OutcomeImplicationGraph:
    """Outcome implication graph of ``rules`` anchored at ``w`` (``None`` = undecided)."""
    vertices = tuple((t, d) for t in range(len(domains)) for d in range(len(domains[t])))
    if len(w) != len(domains):
        raise ConstraintError(f"anchor has {len(w)} entries, expected {len(domains)}")
    adj = {}
    for rule in rules or ():
        (x, dx), (y, dy) = rule.antecedent, rule.consequent
        for t, d in (rule.antecedent, rule.consequent):
            if not (0 <= t < len(domains) and 0 <= d < len(domains[t])):
                raise ConstraintError(f"implication {rule} references an out-of-domain decision")
        if w[y] is None or w[y] != dy:
            adj.setdefault((x, dx), set()).add((y, dy))
        if w[x] is not None and w[x] == dx:
            for dy2 in range(len(domains[y])):
                if dy2 == dy:
                    continue
                for dx2 in range(len(domains[x])):
                    if dx2 != dx:
                        adj.setdefault((y, dy2), set()).add((x, dx2))
    edges = {v: tuple(sorted(s)) for v, s in adj.items()}
    return OutcomeImplicationGraph(tuple(w), vertices, edges)


def reachable(graph: OutcomeImplicationGraph, source) -> frozenset:
    """Vertices on some path out of ``source``, excluding ``source`` itself."""
    seen = {source}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in graph.successors(u):
            if v not in seen:
                seen.add(v)
                queue.append(v)
    seen.discard(source)
    return frozenset(seen)


def reach_conflicts(source, reach) -> list:
    """Issues that the source plus its reach set would set to two different decisions."""
    by_issue = {}
    for t, d in {source, *reach}:
        by_issue.setdefault(t, set()).add(d)
    return sorted(t for t, ds in by_issue.items() if len(ds) > 1)


@dataclass(frozen=True)
class Restrictiveness:
    k: int
    max_reach: int
    witness: Optional[tuple]  # (anchor outcome, source vertex) attaining max_reach
    warnings: tuple = ()


def restrictiveness(
    instance: Instance, cap: int = DEFAULT_ENUMERATION_CAP, check: bool = True
) -> Restrictiveness:
    """Classify the constraint: ``k - 1`` is the largest reach set over C and all vertices.

    With ``check`` the implication set is first verified against C. On binary
    instances a reach set that needs two decisions for the same issue makes
    the implication set unusable for fixing, and a :class:`ConstraintError`
    is raised. On non-binary issues the contrapositive edges fan out to every
    alternative decision by construction, so no such check applies there.
    """
    if instance.implications is None:
        raise ConstraintError("restrictiveness needs an implication set")
    if check and not verify_implication_equivalence(instance, cap):
        raise ConstraintError("implication set is not equivalent to the constraint")
    best, witness = -1, None
    for w in instance.constraint:
        graph = build_graph(w, instance.implications, instance.domains)
        for v in graph.vertices:
            reach = reachable(graph, v)
            if instance.is_binary and reach_conflicts(v, reach):
                raise ConstraintError(
                    f"implication set is inconsistent: from {v} at outcome {w} the reach set "
                    "needs two decisions for one issue"
                )
            if len(reach) > best:
                best, witness = len(reach), (w, v)
    notes = ()
    if best == 0:
        msg = "no implication forces any other decision; reporting k = 1"
        warnings.warn(msg, RestrictivenessWarning, stacklevel=2)
        notes = (msg,)
    return Restrictiveness(k=best + 1, max_reach=best, witness=witness, warnings=notes)
