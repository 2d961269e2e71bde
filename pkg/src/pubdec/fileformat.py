"""Plain-text instance files.

A file is a sequence of ``[section]`` blocks; ``#`` starts a comment and
blank lines are ignored::

    [meta]
    format = pubdec-instance/1
    name = example-1
    ballots-feasible = true

    [issues]
    a1: 0 1
    a2: 0 1

    [ballots]
    1 0
    0 1

    [constraint]
    1 0
    0 1

    [implications]
    a1=1 -> a2=0

``[meta]`` is optional apart from the format tag, which must match when
present. ``ballots-feasible`` is checked against the data when given. Any
other ``key = value`` lines are kept as metadata. ``[implications]`` is
optional; an empty section means an empty implication set.

:func:`serialize_instance` writes the canonical form shown above (sections
in that order, one space between tokens, a blank line between sections) and
``parse_instance(serialize_instance(x))`` rebuilds ``x``.
"""

from __future__ import annotations

import re
from pathlib import Path

from pubdec.errors import InstanceError
from pubdec.model import Instance, validate_instance

FORMAT_TAG = "pubdec-instance/1"
SECTIONS = ("meta", "issues", "ballots", "constraint", "implications")

_SECTION = re.compile(r"^\[([a-z]+)\]$")
_RULE = re.compile(r"^(\S+?)\s*=\s*(\S+)\s*->\s*(\S+?)\s*=\s*(\S+)$")


def parse_instance(text: str) -> Instance:
    """Parse an instance document, reporting every problem with its line number."""
    errors = []
    blocks = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = _SECTION.match(line)
        if head:
            name = head.group(1)
            if name not in SECTIONS:
                errors.append(f"line {lineno}: unknown section [{name}]")
                current = None
            elif name in blocks:
                errors.append(f"line {lineno}: section [{name}] appears twice")
                current = None
            else:
                blocks[name] = []
                current = name
            continue
        if current is None:
            if not errors or not errors[-1].startswith(f"line {lineno}:"):
                errors.append(f"line {lineno}: content outside any known section")
            continue
        blocks[current].append((lineno, line))
    if not blocks and not errors:
        raise InstanceError(["empty document: no sections found"])
    for required in ("issues", "ballots", "constraint"):
        if required not in blocks:
            errors.append(f"missing section [{required}]")

    meta = {}
    for lineno, line in blocks.get("meta", []):
        if "=" not in line:
            errors.append(f"line {lineno}: expected 'key = value' in [meta]")
            continue
        key, value = (s.strip() for s in line.split("=", 1))
        if key in meta:
            errors.append(f"line {lineno}: duplicate meta key {key!r}")
        meta[key] = value
    if meta.get("format", FORMAT_TAG) != FORMAT_TAG:
        errors.append(f"unsupported format {meta['format']!r}, expected {FORMAT_TAG}")

    names, domains = [], []
    for lineno, line in blocks.get("issues", []):
        if ":" not in line:
            errors.append(f"line {lineno}: expected 'name: decision decision ...'")
            continue
        name, labels = line.split(":", 1)
        names.append(name.strip())
        domains.append(labels.split())
        if len(domains[-1]) < 2:
            errors.append(f"line {lineno}: issue {name.strip()!r} needs at least 2 decisions")
    m = len(domains)

    def rows(section):
        out = []
        for lineno, line in blocks.get(section, []):
            toks = line.split()
            if m and len(toks) != m:
                errors.append(f"line {lineno}: {len(toks)} decisions given, expected {m}")
                continue
            for t, tok in enumerate(toks):
                if m and tok not in domains[t]:
                    errors.append(f"line {lineno}: out-of-domain decision {tok!r} on issue {names[t]}")
            out.append(toks)
        return out

    ballots = rows("ballots")
    constraint = rows("constraint")
    implications = None
    if "implications" in blocks:
        implications = []
        for lineno, line in blocks["implications"]:
            hit = _RULE.match(line)
            if not hit:
                errors.append(f"line {lineno}: expected 'issue=decision -> issue=decision'")
                continue
            xa, xd, ya, yd = hit.groups()
            for a, d in ((xa, xd), (ya, yd)):
                if a not in names:
                    errors.append(f"line {lineno}: unknown issue {a!r}")
                elif d not in domains[names.index(a)]:
                    errors.append(f"line {lineno}: out-of-domain decision {d!r} on issue {a}")
            implications.append(((xa, xd), (ya, yd)))
    if errors:
        raise InstanceError(errors)

    declared = meta.pop("ballots-feasible", None)
    name = meta.pop("name", None)
    meta.pop("format", None)
    instance = validate_instance(
        {
            "domains": domains,
            "issues": names,
            "ballots": ballots,
            "constraint": constraint,
            "implications": implications,
            "name": name,
            "metadata": meta,
        }
    )
    if declared is not None:
        if declared not in ("true", "false"):
            raise InstanceError([f"ballots-feasible must be true or false, got {declared!r}"])
        if (declared == "true") != instance.ballots_feasible:
            raise InstanceError(
                [f"ballots-feasible = {declared} contradicts the ballots and constraint"]
            )
    return instance


def serialize_instance(instance: Instance) -> str:
    lines = ["[meta]", f"format = {FORMAT_TAG}"]
    if instance.name:
        lines.append(f"name = {instance.name}")
    lines.append(f"ballots-feasible = {'true' if instance.ballots_feasible else 'false'}")
    for key in sorted(instance.metadata):
        lines.append(f"{key} = {instance.metadata[key]}")
    lines += ["", "[issues]"]
    for nm, dom in zip(instance.issue_names, instance.domains):
        lines.append(f"{nm}: {' '.join(dom)}")
    lines += ["", "[ballots]"]
    lines += [_row(instance, b) for b in instance.profile]
    lines += ["", "[constraint]"]
    lines += [_row(instance, c) for c in instance.constraint]
    if instance.implications is not None:
        lines += ["", "[implications]"]
        for rule in instance.implications:
            (x, dx), (y, dy) = rule.antecedent, rule.consequent
            lines.append(
                f"{instance.issue_names[x]}={instance.label(x, dx)} -> "
                f"{instance.issue_names[y]}={instance.label(y, dy)}"
            )
    return "\n".join(lines) + "\n"


def _row(instance, v) -> str:
    return " ".join(instance.label(t, d) for t, d in enumerate(v))


def load_instance(path) -> Instance:
    return parse_instance(Path(path).read_text())


def save_instance(instance: Instance, path) -> None:
    Path(path).write_text(serialize_instance(instance))
