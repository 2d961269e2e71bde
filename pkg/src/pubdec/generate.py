"""Seeded random instances for the randomized suites and the ``gen`` command."""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, fields
from itertools import product
from typing import Optional

from pubdec.constraints import RestrictivenessWarning, has_nfd, restrictiveness
from pubdec.errors import ConstraintError, GenerationError
from pubdec.model import Instance, ImplicationRule, product_size, validate_instance

PROFILES = ("unconstrained", "random-c", "k-restrictive", "nfd")
MAX_PRODUCT = 4096
MAX_ATTEMPTS = 5000


@dataclass(frozen=True)
class GenSpec:
    n: int
    m: int
    profile: str = "unconstrained"
    domain_sizes: Optional[tuple] = None  # default: all binary
    size: Optional[int] = None  # |C| for random-c and nfd
    k: Optional[int] = None  # for k-restrictive
    max_rules: Optional[int] = None  # for k-restrictive; default m
    ballots_feasible: bool = False
    seed: int = 0

    @classmethod
    def parse(cls, text: str) -> "GenSpec":
        """Read ``key=value`` pairs separated by commas, e.g. ``n=3,m=4,profile=nfd,size=3``.

        ``domain_sizes`` takes ``/``-separated sizes such as ``2/3/2``.
        """
        known = {f.name for f in fields(cls)}
        kw = {}
        for part in filter(None, (p.strip() for p in text.split(","))):
            if "=" not in part:
                raise GenerationError(f"expected key=value, got {part!r}")
            key, value = (s.strip() for s in part.split("=", 1))
            key = key.replace("-", "_")
            if key not in known:
                raise GenerationError(f"unknown generator option {key!r}")
            if key == "profile":
                kw[key] = value
            elif key == "domain_sizes":
                kw[key] = tuple(int(x) for x in value.split("/"))
            elif key == "ballots_feasible":
                if value not in ("true", "false"):
                    raise GenerationError("ballots_feasible must be true or false")
                kw[key] = value == "true"
            else:
                try:
                    kw[key] = int(value)
                except ValueError:
                    raise GenerationError(f"{key} must be an integer, got {value!r}") from None
        for req in ("n", "m"):
            if req not in kw:
                raise GenerationError(f"generator spec needs {req}")
        return cls(**kw)


def generate_instance(spec: GenSpec) -> Instance:
    """Build the instance described by ``spec``; the same spec always yields the same instance."""
    if spec.n < 1 or spec.m < 1:
        raise GenerationError("need at least one voter and one issue")
    if spec.profile not in PROFILES:
        raise GenerationError(f"unknown profile {spec.profile!r}; expected one of {', '.join(PROFILES)}")
    sizes = tuple(spec.domain_sizes) if spec.domain_sizes else (2,) * spec.m
    if len(sizes) != spec.m or any(s < 2 for s in sizes):
        raise GenerationError("domain_sizes must give m sizes, each at least 2")
    total = product_size([range(s) for s in sizes])
    if total > MAX_PRODUCT:
        raise GenerationError(f"domain product {total} exceeds the generator cap {MAX_PRODUCT}")
    rng = random.Random(spec.seed)
    rules = None
    if spec.profile == "unconstrained":
        constraint = list(product(*(range(s) for s in sizes)))
    elif spec.profile == "random-c":
        constraint = _random_c(rng, sizes, total, spec.size)
    elif spec.profile == "nfd":
        constraint = _nfd(rng, sizes, total, spec.size)
    else:
        constraint, rules = _k_restrictive(rng, spec, sizes)
    if spec.ballots_feasible:
        ballots = [rng.choice(constraint) for _ in range(spec.n)]
    else:
        ballots = [tuple(rng.randrange(s) for s in sizes) for _ in range(spec.n)]
    raw = {
        "domains": [[str(d) for d in range(s)] for s in sizes],
        "ballots": ballots,
        "constraint": constraint,
        "name": f"gen-{spec.profile}-s{spec.seed}",
        "metadata": {"seed": str(spec.seed), "profile": spec.profile},
    }
    if rules is not None:
        raw["implications"] = [((r.antecedent[0], r.antecedent[1]), (r.consequent[0], r.consequent[1])) for r in rules]
    return validate_instance(raw)


def _decode(index, sizes):
    out = []
    for s in reversed(sizes):
        index, d = divmod(index, s)
        out.append(d)
    return tuple(reversed(out))


def _random_c(rng, sizes, total, size):
    if size is None or not 1 <= size <= total:
        raise GenerationError(f"random-c needs 1 <= size <= {total}")
    return sorted(_decode(i, sizes) for i in rng.sample(range(total), size))


def _nfd(rng, sizes, total, size):
    if size is None or size < 2:
        raise GenerationError("an NFD constraint needs at least 2 outcomes")
    if size > total:
        raise GenerationError(f"nfd size {size} exceeds the {total} possible outcomes")
    first = tuple(rng.randrange(s) for s in sizes)
    second = tuple(rng.choice([d for d in range(s) if d != f]) for s, f in zip(sizes, first))
    chosen = {first, second}
    rest = [i for i in range(total) if _decode(i, sizes) not in chosen]
    chosen.update(_decode(i, sizes) for i in rng.sample(rest, size - 2))
    out = sorted(chosen)
    assert has_nfd(out)
    return out


def _k_restrictive(rng, spec, sizes):
    if any(s != 2 for s in sizes):
        raise GenerationError("k-restrictive instances are generated for binary issues only")
    if spec.k is None or spec.k < 1:
        raise GenerationError("k-restrictive needs k >= 1")
    if spec.m < 2 and spec.k > 1:
        raise GenerationError("k > 1 needs at least two issues")
    if spec.k > spec.m:
        raise GenerationError(f"k = {spec.k} cannot exceed m = {spec.m}")
    max_rules = spec.max_rules if spec.max_rules is not None else spec.m
    for _ in range(MAX_ATTEMPTS):
        count = 0 if spec.k == 1 else rng.randint(1, max(1, max_rules))
        rules = set()
        for _ in range(count):
            x, y = rng.sample(range(spec.m), 2)
            rules.add(ImplicationRule((x, rng.randrange(2)), (y, rng.randrange(2))))
        rules = tuple(sorted(rules))
        constraint = [
            v for v in product((0, 1), repeat=spec.m) if all(r.holds(v) for r in rules)
        ]
        if not constraint:
            continue
        probe = Instance(
            domains=(("0", "1"),) * spec.m,
            profile=(constraint[0],),
            constraint=tuple(constraint),
            implications=rules,
        )
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", RestrictivenessWarning)
                k = restrictiveness(probe, check=False).k
        except ConstraintError:
            continue
        if k == spec.k:
            return constraint, rules
    raise GenerationError(f"no {spec.k}-restrictive implication set found in {MAX_ATTEMPTS} attempts")
