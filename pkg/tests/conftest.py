import math
import random
import warnings

import pytest

from pubdec import fixture, validate_instance
from pubdec.constraints import RestrictivenessWarning
from pubdec.generate import GenSpec, generate_instance


def binary(ballots, constraint, implications=None, issues=None):
    m = len(constraint[0]) if constraint else len(ballots[0])
    raw = {"domains": [["0", "1"]] * m, "ballots": ballots, "constraint": constraint}
    if implications is not None:
        raw["implications"] = implications
    if issues is not None:
        raw["issues"] = issues
    return validate_instance(raw)


def small_instance(seed, max_n=5, max_m=4, max_c=6, ternary=True):
    """Random instance within the differential caps, binary or mixed domains."""
    r = random.Random(seed)
    n, m = r.randint(1, max_n), r.randint(1, max_m)
    choices = (2, 2, 3) if ternary else (2,)
    sizes = tuple(r.choice(choices) for _ in range(m))
    size = r.randint(1, min(max_c, math.prod(sizes)))
    return generate_instance(
        GenSpec(
            n=n,
            m=m,
            domain_sizes=sizes,
            profile="random-c",
            size=size,
            ballots_feasible=r.random() < 0.3,
            seed=seed,
        )
    )


@pytest.fixture
def fx():
    return fixture


@pytest.fixture(autouse=True)
def _quiet_restrictiveness():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RestrictivenessWarning)
        yield


ACCEPTANCE = {}


def record(criterion, ok, detail):
    """Store one acceptance line; printed in the terminal summary."""
    ACCEPTANCE[criterion] = (bool(ok), detail)
    print(f"{'PASS' if ok else 'FAIL'} {criterion}: {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[criterion]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} {criterion}: {detail}")
