"""Built-in instances, addressable by name from the library and the CLI."""

from __future__ import annotations

from itertools import product

from pubdec.errors import PubDecError
from pubdec.model import Instance, validate_instance


def _binary(m):
    return [["0", "1"]] * m


def _satisfying(m, rules):
    """Binary rows (as label lists) satisfying ``((x, dx), (y, dy))`` rules over 0-based issues."""
    return [
        [str(d) for d in v]
        for v in product((0, 1), repeat=m)
        if all(v[x] != dx or v[y] == dy for (x, dx), (y, dy) in rules)
    ]


def _example_1():
    return {
        "domains": _binary(2),
        "ballots": [[1, 0], [0, 1]],
        "constraint": [[1, 0], [0, 1]],
    }


def _prop3():
    return {
        "domains": _binary(2),
        "ballots": [[1, 1], [1, 0]],
        "constraint": [[0, 1], [0, 0]],
    }


def _prop6_m8():
    rows = [
        [0] * 8,
        [0, 0] + [1] * 6,
        [1] * 8,
        [1, 1] + [0] * 6,
    ]
    return {"domains": _binary(8), "ballots": rows, "constraint": rows}


def _sec5_agr():
    return {
        "domains": _binary(4),
        "ballots": [[1, 1, 1, 1], [0, 0, 0, 0]],
        "constraint": [[1, 1, 0, 0], [1, 1, 1, 0]],
    }


def _sec6_price():
    return {
        "domains": _binary(4),
        "ballots": [[1, 1, 1, 1], [0, 0, 0, 0]],
        "constraint": [[1, 1, 1, 1], [1, 1, 0, 0]],
    }


def _exm_implications():
    # a=1 -> b=1, c=1 -> e=0, d=1 -> e=0
    rules = [((0, 1), (1, 1)), ((2, 1), (4, 0)), ((3, 1), (4, 0))]
    return {
        "domains": _binary(5),
        "issues": ["a", "b", "c", "d", "e"],
        "ballots": [[1, 1, 1, 0, 0], [0, 0, 0, 1, 0], [0, 1, 0, 0, 1]],
        "constraint": _satisfying(5, rules),
        "implications": [((x, str(dx)), (y, str(dy))) for (x, dx), (y, dy) in rules],
    }


def _exm_graph():
    # a1=1 -> a2=1, a1=1 -> a3=1, a2=1 -> a4=1
    rules = [((0, 1), (1, 1)), ((0, 1), (2, 1)), ((1, 1), (3, 1))]
    return {
        "domains": _binary(4),
        "ballots": [[1, 1, 1, 1], [0, 0, 0, 0]],
        "constraint": _satisfying(4, rules),
        "implications": [((x, str(dx)), (y, str(dy))) for (x, dx), (y, dy) in rules],
    }


_BUILDERS = {
    "example-1": _example_1,
    "prop3": _prop3,
    "prop6-m8": _prop6_m8,
    "sec5-agr": _sec5_agr,
    "sec6-price": _sec6_price,
    "exm-implications": _exm_implications,
    "exm-graph": _exm_graph,
}

FIXTURE_NAMES = tuple(_BUILDERS)


def fixture(name: str) -> Instance:
    try:
        raw = _BUILDERS[name]()
    except KeyError:
        raise PubDecError(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}") from None
    raw["name"] = name
    return validate_instance(raw)


def all_fixtures() -> dict:
    return {name: fixture(name) for name in FIXTURE_NAMES}
