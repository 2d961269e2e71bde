"""Election instances for public decisions under constraints.

Decisions are stored as integer codes into a per-issue label table, so binary
and non-binary issues are handled the same way. Voters and issues are
0-based here; user-facing output (reports, CLI) is 1-based.

An outcome is a tuple of codes, one per issue. A partial outcome is a tuple
whose undecided entries are ``None``.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

from pubdec.errors import InfeasibleOutcomeError, InstanceError, ModelError

Outcome = tuple  # tuple[int, ...]
PartialOutcome = tuple  # tuple[Optional[int], ...]

_TOKEN = re.compile(r"^[A-Za-z0-9_.+\-]+$")


@dataclass(frozen=True, order=True)
class ImplicationRule:
    """``(antecedent issue = decision) -> (consequent issue = decision)``."""

    antecedent: tuple  # (issue, code)
    consequent: tuple  # (issue, code)

    def holds(self, v: Sequence[int]) -> bool:
        x, dx = self.antecedent
        y, dy = self.consequent
        return v[x] != dx or v[y] == dy


@dataclass(frozen=True)
class Instance:
    """A validated election instance ``(profile, C)``.

    Build instances with :func:`validate_instance` (or the file parser);
    the constructor itself does not check invariants.
    """

    domains: tuple  # tuple[tuple[str, ...], ...]
    profile: tuple  # tuple[Outcome, ...]
    constraint: tuple  # tuple[Outcome, ...], input order kept
    implications: Optional[tuple] = None  # tuple[ImplicationRule, ...]
    issue_names: tuple = ()
    name: Optional[str] = None
    metadata: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def n(self) -> int:
        return len(self.profile)

    @property
    def m(self) -> int:
        return len(self.domains)

    @cached_property
    def feasible(self) -> frozenset:
        return frozenset(self.constraint)

    @cached_property
    def constraint_index(self) -> dict:
        return {w: k for k, w in enumerate(self.constraint)}

    @cached_property
    def ballots_feasible(self) -> bool:
        return all(b in self.feasible for b in self.profile)

    @cached_property
    def is_binary(self) -> bool:
        return all(len(d) == 2 for d in self.domains)

    @cached_property
    def is_unconstrained(self) -> bool:
        size = 1
        for d in self.domains:
            size *= len(d)
        return size == len(self.constraint)

    @cached_property
    def fingerprint(self) -> str:
        """Stable digest of the election data (name and metadata excluded)."""
        payload = repr(
            (self.domains, self.issue_names, self.profile, self.constraint, self.implications)
        )
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    def is_feasible(self, w) -> bool:
        return tuple(w) in self.feasible

    def require_feasible(self, w) -> Outcome:
        w = tuple(w)
        if len(w) != self.m:
            raise ModelError(f"outcome has {len(w)} entries, instance has {self.m} issues")
        if w not in self.feasible:
            raise InfeasibleOutcomeError(f"outcome {self.format_outcome(w)} is not in C")
        return w

    def label(self, t: int, d: int) -> str:
        return self.domains[t][d]

    def code(self, t: int, label: str) -> int:
        try:
            return self.domains[t].index(label)
        except ValueError:
            raise ModelError(
                f"decision {label!r} is not in the domain of issue {self.issue_names[t]}"
            ) from None

    def parse_outcome(self, text: str) -> Outcome:
        """Read a comma-separated list of decision labels in issue order."""
        labels = [s.strip() for s in text.split(",")]
        if len(labels) != self.m:
            raise ModelError(f"outcome {text!r} has {len(labels)} entries, expected {self.m}")
        return tuple(self.code(t, lab) for t, lab in enumerate(labels))

    def format_outcome(self, w) -> str:
        return ",".join("_" if d is None else self.domains[t][d] for t, d in enumerate(w))

    def decisions(self):
        """All (issue, code) pairs, in issue then code order."""
        return [(t, d) for t in range(self.m) for d in range(len(self.domains[t]))]


def agreement(v: Sequence, v2: Sequence) -> frozenset:
    """Issues on which two full assignments coincide."""
    if len(v) != len(v2):
        raise ModelError(f"cannot compare assignments of length {len(v)} and {len(v2)}")
    return frozenset(t for t, (a, b) in enumerate(zip(v, v2)) if a == b)


def satisfaction(instance: Instance, i: int, w: Sequence) -> int:
    """Number of issues on which voter ``i`` agrees with ``w``."""
    if not 0 <= i < instance.n:
        raise ModelError(f"voter index {i} out of range for {instance.n} voters")
    return len(agreement(instance.profile[i], w))


def satisfactions(instance: Instance, w: Sequence) -> tuple:
    if len(w) != instance.m:
        raise ModelError(f"outcome has {len(w)} entries, instance has {instance.m} issues")
    return tuple(sum(1 for a, b in zip(ballot, w) if a == b) for ballot in instance.profile)


def fix_decisions(w: Sequence, issues: Iterable[int], v: Sequence) -> tuple:
    """Copy of ``w`` with the entries on ``issues`` taken from ``v``.

    No feasibility check is done.
    """
    if len(w) != len(v):
        raise ModelError(f"cannot fix decisions between lengths {len(w)} and {len(v)}")
    out = list(w)
    for t in issues:
        if not 0 <= t < len(w):
            raise ModelError(f"issue index {t} out of range")
        out[t] = v[t]
    return tuple(out)


def supporters(instance: Instance, t: int, d: int) -> frozenset:
    """Voters whose ballot picks decision ``d`` on issue ``t``."""
    if not 0 <= t < instance.m:
        raise ModelError(f"issue index {t} out of range")
    if not 0 <= d < len(instance.domains[t]):
        raise ModelError(f"decision code {d} not in the domain of issue {t}")
    return frozenset(i for i, b in enumerate(instance.profile) if b[t] == d)


def is_extendable(instance: Instance, partial: Sequence) -> bool:
    """True iff some member of C agrees with every decided entry."""
    return any(_agrees_partial(c, partial) for c in instance.constraint)


def extensions(instance: Instance, partial: Sequence):
    return [c for c in instance.constraint if _agrees_partial(c, partial)]


def _agrees_partial(c, partial) -> bool:
    return all(p is None or p == x for p, x in zip(partial, c))


def default_issue_names(m: int) -> tuple:
    return tuple(f"a{t + 1}" for t in range(m))


def validate_instance(raw: dict) -> Instance:
    """Build an :class:`Instance` from plain data, collecting every violation.

    ``raw`` keys: ``domains`` (list of label lists), ``ballots`` and
    ``constraint`` (lists of label rows), and optionally ``issues`` (names),
    ``implications`` (list of ``((issue, label), (issue, label))`` with issue
    given by name or 0-based index), ``name`` and ``metadata``. Row entries
    are decision labels; integers are read as their string form.

    Raises :class:`InstanceError` carrying the full list of problems.
    """
    errors = []
    domains_raw = raw.get("domains")
    if not domains_raw:
        raise InstanceError(["no issues: at least one issue is required"])
    domains = []
    for t, dom in enumerate(domains_raw):
        labels = tuple(str(x) for x in dom)
        if len(labels) < 2:
            errors.append(f"issue {t + 1}: domain needs at least 2 decisions, got {len(labels)}")
        if len(set(labels)) != len(labels):
            errors.append(f"issue {t + 1}: duplicate decision labels in domain")
        for lab in labels:
            if not _TOKEN.match(lab):
                errors.append(f"issue {t + 1}: bad decision label {lab!r}")
        domains.append(labels)
    domains = tuple(domains)
    m = len(domains)

    names = tuple(str(x) for x in raw.get("issues") or default_issue_names(m))
    if len(names) != m:
        errors.append(f"{len(names)} issue names given for {m} issues")
        names = default_issue_names(m)
    if len(set(names)) != len(names):
        errors.append("duplicate issue names")
    for nm in names:
        if not _TOKEN.match(nm):
            errors.append(f"bad issue name {nm!r}")

    def encode_rows(rows, what):
        out = []
        for r, row in enumerate(rows):
            row = list(row)
            if len(row) != m:
                errors.append(f"{what} {r + 1}: has {len(row)} entries, expected {m}")
                continue
            codes = []
            for t, x in enumerate(row):
                code = _encode(domains[t], x)
                if code is None:
                    errors.append(
                        f"{what} {r + 1}: out-of-domain decision {x!r} on issue {names[t]}"
                    )
                codes.append(code)
            if None not in codes:
                out.append(tuple(codes))
        return out

    ballots = encode_rows(raw.get("ballots") or [], "ballot")
    if not raw.get("ballots"):
        errors.append("no ballots: at least one voter is required")
    constraint_rows = raw.get("constraint") or []
    if not constraint_rows:
        errors.append("empty constraint")
    constraint = encode_rows(constraint_rows, "constraint row")
    seen = set()
    for r, c in enumerate(constraint):
        if c in seen:
            errors.append(f"constraint row {r + 1}: duplicate constraint row")
        seen.add(c)

    implications = None
    if raw.get("implications") is not None:
        implications = []
        for r, rule in enumerate(raw["implications"]):
            try:
                (xa, xd), (ya, yd) = rule
            except (TypeError, ValueError):
                errors.append(f"implication {r + 1}: expected ((issue, decision), (issue, decision))")
                continue
            x = _issue_index(names, xa)
            y = _issue_index(names, ya)
            if x is None or y is None:
                errors.append(f"implication {r + 1}: unknown issue")
                continue
            if x == y:
                errors.append(f"implication {r + 1}: antecedent and consequent share issue {names[x]}")
                continue
            dx = _encode(domains[x], xd)
            dy = _encode(domains[y], yd)
            if dx is None or dy is None:
                errors.append(f"implication {r + 1}: out-of-domain decision")
                continue
            implications.append(ImplicationRule((x, dx), (y, dy)))
        implications = tuple(implications)

    if errors:
        raise InstanceError(errors)
    return Instance(
        domains=domains,
        profile=tuple(ballots),
        constraint=tuple(constraint),
        implications=implications,
        issue_names=names,
        name=raw.get("name"),
        metadata=dict(raw.get("metadata") or {}),
    )


def _encode(domain, x):
    if isinstance(x, bool):
        x = int(x)
    x = str(x)
    return domain.index(x) if x in domain else None


def _issue_index(names, a):
    if isinstance(a, int) and not isinstance(a, bool):
        return a if 0 <= a < len(names) else None
    return names.index(a) if a in names else None


def product_size(domains) -> int:
    size = 1
    for d in domains:
        size *= len(d)
    return size
