"""JSON documents for reports, rule traces and price systems.

Money is written as an exact fraction string (``"3/2"``, ``"2"``); voters and
issues are 1-based and decisions appear by label. Every document carries a
``format`` tag.
"""

from __future__ import annotations

import json
from fractions import Fraction

from pubdec.errors import TraceError
from pubdec.model import Instance
from pubdec.priceability import PriceSystem
from pubdec.rules.trace import Completion, Flip, Move, Purchase, RuleTrace

REPORT_TAG = "pubdec-report/1"
TRACE_TAG = "pubdec-trace/1"
PRICES_TAG = "pubdec-prices/1"


def money(x) -> str:
    return str(Fraction(x))


def read_money(s) -> Fraction:
    try:
        return Fraction(str(s))
    except (ValueError, ZeroDivisionError):
        raise TraceError(f"bad money value {s!r}") from None


def voters(group) -> list:
    return [i + 1 for i in sorted(group)]


def issue_names(instance: Instance, issues) -> list:
    return [instance.issue_names[t] for t in sorted(issues)]


def outcome_labels(instance: Instance, w) -> list:
    return [instance.label(t, d) for t, d in enumerate(w)]


def report(kind: str, **payload) -> dict:
    return {"format": REPORT_TAG, "kind": kind, **payload}


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


# traces


def trace_to_dict(instance: Instance, trace: RuleTrace) -> dict:
    lab = instance.label

    def pairs(items):
        return [[t + 1, lab(t, d)] for t, d in items]

    events = []
    for ev in trace.events:
        if ev.kind == "purchase":
            events.append(
                {
                    "kind": "purchase",
                    "issue": ev.issue + 1,
                    "decision": lab(ev.issue, ev.decision),
                    "price": money(ev.price),
                    "rho": money(ev.rho),
                    "payments": [[i + 1, money(a)] for i, a in ev.payments],
                    "fixed": pairs(ev.fixed),
                }
            )
        elif ev.kind == "completion":
            events.append({"kind": "completion", "fixed": pairs(ev.fixed)})
        elif ev.kind == "flip":
            events.append(
                {
                    "kind": "flip",
                    "issues": [t + 1 for t in ev.issues],
                    "old": [lab(t, d) for t, d in zip(ev.issues, ev.old)],
                    "new": [lab(t, d) for t, d in zip(ev.issues, ev.new)],
                    "old_prices": [money(p) for p in ev.old_prices],
                    "new_prices": [money(p) for p in ev.new_prices],
                    "group": voters(ev.group),
                    "rho": money(ev.rho),
                    "refunds": [[i + 1, t + 1, money(a)] for i, t, a in ev.refunds],
                    "payments": [[i + 1, t + 1, money(a)] for i, t, a in ev.payments],
                    "block": None if ev.block is None else ev.block + 1,
                }
            )
        else:
            events.append(
                {
                    "kind": "move",
                    "target": outcome_labels(instance, ev.target),
                    "issues": [t + 1 for t in ev.issues],
                    "group": voters(ev.group),
                    "gain": money(ev.gain),
                }
            )
    params = {}
    for key, value in trace.params.items():
        params[key] = money(value) if isinstance(value, Fraction) else value
    return {
        "format": TRACE_TAG,
        "rule": trace.rule,
        "params": params,
        "instance": trace.fingerprint,
        "n": trace.n,
        "m": trace.m,
        "budget": money(trace.budget),
        "initial": None if trace.initial is None else outcome_labels(instance, trace.initial),
        "events": events,
        "outcome": outcome_labels(instance, trace.outcome),
        "budgets": [money(b) for b in trace.budgets],
        "prices": None if trace.prices is None else [money(p) for p in trace.prices],
        "termination": trace.termination,
    }


def trace_from_dict(instance: Instance, doc: dict) -> RuleTrace:
    if doc.get("format") != TRACE_TAG:
        raise TraceError(f"not a trace document (format {doc.get('format')!r})")
    try:
        code = instance.code

        def outcome(labels):
            return tuple(code(t, x) for t, x in enumerate(labels))

        def pairs(items):
            return tuple((t - 1, code(t - 1, x)) for t, x in items)

        events = []
        for ev in doc["events"]:
            kind = ev["kind"]
            if kind == "purchase":
                t = ev["issue"] - 1
                events.append(
                    Purchase(
                        t,
                        code(t, ev["decision"]),
                        read_money(ev["price"]),
                        read_money(ev["rho"]),
                        tuple((i - 1, read_money(a)) for i, a in ev["payments"]),
                        pairs(ev["fixed"]),
                    )
                )
            elif kind == "completion":
                events.append(Completion(pairs(ev["fixed"])))
            elif kind == "flip":
                issues = tuple(t - 1 for t in ev["issues"])
                events.append(
                    Flip(
                        issues=issues,
                        old=tuple(code(t, x) for t, x in zip(issues, ev["old"])),
                        new=tuple(code(t, x) for t, x in zip(issues, ev["new"])),
                        old_prices=tuple(read_money(p) for p in ev["old_prices"]),
                        new_prices=tuple(read_money(p) for p in ev["new_prices"]),
                        group=tuple(i - 1 for i in ev["group"]),
                        rho=read_money(ev["rho"]),
                        refunds=tuple((i - 1, t - 1, read_money(a)) for i, t, a in ev["refunds"]),
                        payments=tuple((i - 1, t - 1, read_money(a)) for i, t, a in ev["payments"]),
                        block=None if ev.get("block") is None else ev["block"] - 1,
                    )
                )
            elif kind == "move":
                events.append(
                    Move(
                        outcome(ev["target"]),
                        tuple(t - 1 for t in ev["issues"]),
                        tuple(i - 1 for i in ev["group"]),
                        read_money(ev["gain"]),
                    )
                )
            else:
                raise TraceError(f"unknown event kind {kind!r}")
        params = dict(doc.get("params") or {})
        if "epsilon" in params:
            params["epsilon"] = read_money(params["epsilon"])
        return RuleTrace(
            rule=doc["rule"],
            params=params,
            fingerprint=doc["instance"],
            n=doc["n"],
            m=doc["m"],
            budget=read_money(doc["budget"]),
            initial=None if doc["initial"] is None else outcome(doc["initial"]),
            events=events,
            outcome=outcome(doc["outcome"]),
            budgets=tuple(read_money(b) for b in doc["budgets"]),
            prices=None if doc["prices"] is None else tuple(read_money(p) for p in doc["prices"]),
            termination=doc["termination"],
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise TraceError(f"malformed trace document: {exc}") from None


# price systems


def prices_to_dict(instance: Instance, ps: PriceSystem) -> dict:
    prices = {
        instance.issue_names[t]: {instance.label(t, d): money(p) for d, p in enumerate(row)}
        for t, row in enumerate(ps.prices)
    }
    payments = []
    for i, rows in enumerate(ps.payments):
        for t, row in enumerate(rows):
            for d, amount in enumerate(row):
                if amount:
                    payments.append([i + 1, instance.issue_names[t], instance.label(t, d), money(amount)])
    return {"format": PRICES_TAG, "prices": prices, "payments": payments}


def prices_from_dict(instance: Instance, doc: dict) -> PriceSystem:
    if doc.get("format") != PRICES_TAG:
        raise TraceError(f"not a price-system document (format {doc.get('format')!r})")
    try:
        prices = {}
        for name, row in doc["prices"].items():
            t = instance.issue_names.index(name)
            for label, p in row.items():
                prices[(t, instance.code(t, label))] = read_money(p)
        payments = {}
        for i, name, label, amount in doc.get("payments", []):
            t = instance.issue_names.index(name)
            payments[(i - 1, t, instance.code(t, label))] = read_money(amount)
    except (KeyError, TypeError, ValueError) as exc:
        raise TraceError(f"malformed price-system document: {exc}") from None
    return PriceSystem.build(instance, prices, payments)
