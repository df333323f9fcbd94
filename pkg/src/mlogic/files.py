"""Text file formats: matroids, set systems, interpretations, sentences.

All formats are line-oriented UTF-8 with ``#`` comments and blank lines
ignored.  Matroid files carry one of three bodies:

    matroid v1
    elements a b c d
    rank 2                       # optional
    bases                        # one basis per line
    a b
    ...

    ranktable                    # one "<hex mask>: <rank>" line per subset
    0: 0
    ...

    kinser 4 relax 1             # delegates to the Kinser constructor

Writing picks the most compact faithful body: the kinser tag when the
matroid carries a Kinser descriptor, else bases up to 16 elements, else a
rank table only on request.
"""

from __future__ import annotations

import itertools
from pathlib import Path

from .core import (
    GroundSet,
    MATERIALIZE_LIMIT,
    Matroid,
    matroid_from_bases,
    ExplicitMatroid,
    validate_rank_axioms,
)
from .errors import FormatError, ValidationError
from .kinser import kinser_ground, kinser_matroid
from .msol import Interpretation
from .transversal import SetSystem


def _logical_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


# ---------------------------------------------------------------------------
# matroid files


def loads_matroid(text: str, validate: str = "auto", seed: int = 1) -> Matroid:
    """Parse a matroid file.  ``validate`` is 'auto', 'strict', or 'none'.

    Explicit bodies (bases, ranktable) are checked against the rank axioms
    per the chosen policy; a kinser body is built by the constructor, whose
    own designated-pair checks stand in for table validation.
    """
    lines = _logical_lines(text)
    if not lines or lines[0] != "matroid v1":
        raise FormatError("matroid files start with 'matroid v1'")
    if len(lines) < 2 or not lines[1].startswith("elements"):
        raise FormatError("expected an 'elements' line")
    names = lines[1].split()[1:]
    if not names:
        raise FormatError("the elements line needs at least one name")
    ground = GroundSet(names)
    idx = 2
    declared_rank = None
    if idx < len(lines) and lines[idx].split()[0] == "rank":
        parts = lines[idx].split()
        if len(parts) != 2 or not parts[1].isdigit():
            raise FormatError(f"bad rank line: {lines[idx]!r}")
        declared_rank = int(parts[1])
        idx += 1
    if idx >= len(lines):
        raise FormatError("missing matroid body")
    body = lines[idx]
    rest = lines[idx + 1 :]

    if body == "bases":
        m = _load_bases(ground, rest, declared_rank, validate)
    elif body == "ranktable":
        m = _load_ranktable(ground, rest, declared_rank, validate, seed)
    elif body.startswith("kinser"):
        m = _load_kinser(ground, body, rest, declared_rank)
    else:
        raise FormatError(f"unknown matroid body {body.split()[0]!r}")
    return m


def _load_bases(ground, rest, declared_rank, validate):
    if not rest:
        raise FormatError("bases body has no bases")
    bases = [line.split() for line in rest]
    mode = {"auto": "auto", "strict": "exhaustive", "none": "none"}.get(validate)
    if mode is None:
        raise ValidationError(f"unknown validation policy {validate!r}")
    return matroid_from_bases(ground, bases, declared_rank=declared_rank, validate=mode)


def _load_ranktable(ground, rest, declared_rank, validate, seed):
    n = ground.size
    if n > MATERIALIZE_LIMIT:
        raise FormatError(f"rank tables are limited to {MATERIALIZE_LIMIT} elements")
    size = 1 << n
    table = [None] * size
    for line in rest:
        if ":" not in line:
            raise FormatError(f"bad ranktable line: {line!r}")
        mask_text, rank_text = (part.strip() for part in line.split(":", 1))
        try:
            mask = int(mask_text, 16)
            rank = int(rank_text)
        except ValueError:
            raise FormatError(f"bad ranktable line: {line!r}") from None
        if not 0 <= mask < size:
            raise FormatError(f"mask {mask_text} is outside the subset range")
        if table[mask] is not None:
            raise FormatError(f"duplicate ranktable entry for mask {mask_text}")
        if rank < 0:
            raise FormatError(f"negative rank in line {line!r}")
        table[mask] = rank
    missing = sum(1 for v in table if v is None)
    if missing:
        raise FormatError(f"ranktable is missing {missing} of {size} subsets")
    m = ExplicitMatroid(ground, table, declared_rank=declared_rank, validate=False)
    if validate == "auto":
        validate_rank_axioms(m, mode="auto", seed=seed)
    elif validate == "strict":
        validate_rank_axioms(m, mode="exhaustive")
    elif validate != "none":
        raise ValidationError(f"unknown validation policy {validate!r}")
    return m


def _load_kinser(ground, body, rest, declared_rank):
    if rest:
        raise FormatError("the kinser body is a single line")
    parts = body.split()
    relaxed: list[int] = []
    try:
        r = int(parts[1])
    except (IndexError, ValueError):
        raise FormatError(f"bad kinser line: {body!r}") from None
    if len(parts) > 2:
        if parts[2] != "relax" or len(parts) > 5:
            raise FormatError(f"bad kinser line: {body!r}")
        try:
            relaxed = [int(p) for p in parts[3:]]
        except ValueError:
            raise FormatError(f"bad kinser line: {body!r}") from None
        if not relaxed:
            raise FormatError("relax needs at least one index")
    canonical, _ = kinser_ground(r) if r >= 4 else (None, None)
    if canonical is None or ground.elements != canonical.elements:
        if r < 4:
            raise ValidationError(f"Kinser matroids need r >= 4, got {r}")
        raise FormatError("elements line does not match the canonical Kinser names")
    m = kinser_matroid(r, relaxed)
    if declared_rank is not None and declared_rank != r:
        raise ValidationError(f"declared rank {declared_rank} but kinser body has r = {r}")
    return m


def dumps_matroid(m: Matroid, force_ranktable: bool = False) -> str:
    lines = ["matroid v1", "elements " + " ".join(m.ground.elements)]
    full = m.full_rank()
    lines.append(f"rank {full}")
    if m.descriptor is not None:
        body = f"kinser {m.descriptor.r}"
        if m.descriptor.relaxed:
            body += " relax " + " ".join(str(s) for s in sorted(m.descriptor.relaxed))
        lines.append(body)
        return "\n".join(lines) + "\n"
    n = m.ground.size
    if force_ranktable:
        if n > MATERIALIZE_LIMIT:
            raise ValidationError(f"rank tables are limited to {MATERIALIZE_LIMIT} elements")
        lines.append("ranktable")
        lines.extend(f"{mask:x}: {m.rank(mask)}" for mask in range(1 << n))
        return "\n".join(lines) + "\n"
    if full == 0:
        # the only basis is the empty set, which a line-oriented bases body
        # cannot carry; the table is tiny anyway
        return dumps_matroid(m, force_ranktable=True)
    if n > 16:
        _too_big(n)
    lines.append("bases")
    wrote = False
    for combo in itertools.combinations(range(n), full):
        mask = 0
        for i in combo:
            mask |= 1 << i
        if m.rank(mask) == full:
            lines.append(" ".join(m.ground.names(mask)))
            wrote = True
    if not wrote:
        raise ValidationError("no basis found; the structure is not a matroid")
    return "\n".join(lines) + "\n"


def _too_big(n: int):
    raise ValidationError(
        f"{n} elements is too many for a bases body (limit 16); "
        "pass force_ranktable=True for an explicit table"
    )


def load_matroid(path, validate: str = "auto", seed: int = 1) -> Matroid:
    return loads_matroid(Path(path).read_text(), validate=validate, seed=seed)


def save_matroid(m: Matroid, path, force_ranktable: bool = False) -> None:
    Path(path).write_text(dumps_matroid(m, force_ranktable=force_ranktable))


# ---------------------------------------------------------------------------
# set systems


def loads_setsystem(text: str) -> SetSystem:
    lines = _logical_lines(text)
    if not lines or lines[0] != "setsystem v1":
        raise FormatError("set-system files start with 'setsystem v1'")
    if len(lines) < 2 or not lines[1].startswith("elements"):
        raise FormatError("expected an 'elements' line")
    ground = GroundSet(lines[1].split()[1:])
    families = []
    for line in lines[2:]:
        if not line.startswith("family "):
            raise FormatError(f"expected a 'family' line, found {line!r}")
        rest = line[len("family "):]
        if ":" not in rest:
            raise FormatError(f"family line needs a colon: {line!r}")
        name, members = rest.split(":", 1)
        families.append((name.strip(), members.split()))
    return SetSystem(ground, families)


def dumps_setsystem(system: SetSystem) -> str:
    lines = ["setsystem v1", "elements " + " ".join(system.ground.elements)]
    for name, fmask in system.families:
        lines.append(f"family {name}: " + " ".join(system.ground.names(fmask)))
    return "\n".join(lines) + "\n"


def load_setsystem(path) -> SetSystem:
    return loads_setsystem(Path(path).read_text())


def save_setsystem(system: SetSystem, path) -> None:
    Path(path).write_text(dumps_setsystem(system))


# ---------------------------------------------------------------------------
# interpretations


def loads_interpretation(text: str, ground: GroundSet) -> Interpretation:
    lines = _logical_lines(text)
    if not lines or lines[0] != "interp v1":
        raise FormatError("interpretation files start with 'interp v1'")
    sets: dict[str, list[str]] = {}
    elems: dict[str, str] = {}
    for line in lines[1:]:
        if "=" not in line:
            raise FormatError(f"expected '<var> = ...', found {line!r}")
        var, rest = (part.strip() for part in line.split("=", 1))
        if var in sets or var in elems:
            raise FormatError(f"duplicate assignment for {var}")
        members = rest.split()
        if var.startswith("X"):
            sets[var] = members
        elif var.startswith("x"):
            if len(members) != 1:
                raise FormatError(f"element variable {var} needs exactly one element")
            elems[var] = members[0]
        else:
            raise FormatError(f"unknown variable kind {var!r}")
    return Interpretation.from_names(ground, sets, elems)


def dumps_interpretation(interp: Interpretation, ground: GroundSet) -> str:
    lines = ["interp v1"]
    for var in sorted(interp.sets, key=lambda v: (int(v[1:]), v)):
        lines.append(f"{var} = " + " ".join(ground.names(interp.sets[var])))
    for var in sorted(interp.elems, key=lambda v: (int(v[1:]), v)):
        lines.append(f"{var} = {ground.elements[interp.elems[var]]}")
    return "\n".join(lines) + "\n"


def load_interpretation(path, ground: GroundSet) -> Interpretation:
    return loads_interpretation(Path(path).read_text(), ground)


# ---------------------------------------------------------------------------
# sentences


def load_sentence_text(path) -> str:
    return Path(path).read_text()
