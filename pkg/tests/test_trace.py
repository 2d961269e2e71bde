import dataclasses
import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pubdec import TraceError, fixture, replay_trace, run_greedy_mecora, run_ls_pav, run_mecora, run_mes, verify_trace
from pubdec.generate import GenSpec, generate_instance
from pubdec.reports import trace_from_dict, trace_to_dict

from conftest import small_instance

RUNNERS = {
    "mes": lambda inst: run_mes(inst),
    "mecora": lambda inst: run_mecora(inst, Fraction(1, 2)),
    "greedy": lambda inst: run_greedy_mecora(inst, q=1),
    "lspav": lambda inst: run_ls_pav(inst),
}


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000), st.sampled_from(sorted(RUNNERS)))
def test_replay_reproduces_final_state(seed, rule):
    inst = small_instance(seed)
    w, trace = RUNNERS[rule](inst)
    state = replay_trace(inst, trace)
    assert state.outcome == w == trace.outcome
    assert state.budgets == trace.budgets
    if trace.prices is not None:
        assert state.prices == trace.prices


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000), st.sampled_from(sorted(RUNNERS)))
def test_json_round_trip(seed, rule):
    inst = small_instance(seed)
    _, trace = RUNNERS[rule](inst)
    doc = json.loads(json.dumps(trace_to_dict(inst, trace)))
    back = trace_from_dict(inst, doc)
    assert back == trace
    verify_trace(inst, back)


def test_fixed_pricing_round_trip():
    inst = fixture("exm-graph")
    _, trace = run_mes(inst, "fixed")
    assert trace_from_dict(inst, trace_to_dict(inst, trace)) == trace


def test_tampered_payment_detected():
    inst = fixture("sec6-price")
    _, trace = run_mecora(inst, 1, (1, 1, 1, 1))
    flip = trace.events[0]
    bad = dataclasses.replace(flip, payments=((1, 2, Fraction(2)), (1, 3, Fraction(0))))
    trace.events[0] = bad
    with pytest.raises(TraceError):
        replay_trace(inst, trace)


def test_tampered_outcome_detected():
    inst = fixture("sec5-agr")
    _, trace = run_ls_pav(inst, (1, 1, 1, 0))
    trace.outcome = (1, 1, 1, 0)
    with pytest.raises(TraceError):
        verify_trace(inst, trace)


def test_tampered_budget_detected():
    inst = fixture("prop3")
    _, trace = run_mes(inst)
    trace.budgets = tuple(b + 1 for b in trace.budgets)
    with pytest.raises(TraceError):
        verify_trace(inst, trace)


def test_trace_for_other_instance_rejected():
    _, trace = run_mes(fixture("prop3"))
    with pytest.raises(TraceError):
        replay_trace(fixture("example-1"), trace)


def test_bad_format_tag():
    inst = fixture("prop3")
    _, trace = run_mes(inst)
    doc = trace_to_dict(inst, trace)
    doc["format"] = "something-else"
    with pytest.raises(TraceError):
        trace_from_dict(inst, doc)


def test_mixed_domain_mecora_replay():
    inst = generate_instance(GenSpec(n=4, m=3, domain_sizes=(3, 2, 3), profile="random-c", size=6, seed=11))
    _, trace = run_mecora(inst, 1)
    verify_trace(inst, trace)
