"""Finite matroids as ground sets with rank oracles.

Subsets are bitmasks over the declaration order of the ground set: bit i
stands for the i-th declared element.  A ``Matroid`` is really a *structure*,
a finite set with an arbitrary function from subsets to non-negative
integers; whether the rank axioms hold is checked by
:func:`validate_rank_axioms`, never assumed.
"""

from __future__ import annotations

import itertools
import random
from math import comb
from typing import Callable, Iterable, Optional

from .errors import DomainError, ValidationError

MATERIALIZE_LIMIT = 24
EXHAUSTIVE_LIMIT = 12
STRICT_LIMIT = 14
CIRCUIT_ENUM_LIMIT = 2_000_000


def iter_bits(mask: int):
    """Yield the positions of the set bits of ``mask``, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class GroundSet:
    """Ordered collection of distinct, nonempty element names."""

    __slots__ = ("elements", "index", "size", "full_mask")

    def __init__(self, elements: Iterable[str]):
        elems = tuple(elements)
        index: dict[str, int] = {}
        for pos, name in enumerate(elems):
            if not name:
                raise ValidationError("element names must be nonempty")
            if name in index:
                raise ValidationError(f"duplicate element name: {name!r}")
            index[name] = pos
        self.elements = elems
        self.index = index
        self.size = len(elems)
        self.full_mask = (1 << len(elems)) - 1

    def as_mask(self, subset) -> int:
        """Normalize ``subset`` (bitmask or iterable of names) to a bitmask."""
        if isinstance(subset, int):
            if subset < 0 or subset & ~self.full_mask:
                raise DomainError(
                    f"bitmask {subset:#x} is not a subset of the {self.size}-element ground set"
                )
            return subset
        mask = 0
        for name in subset:
            pos = self.index.get(name)
            if pos is None:
                raise DomainError(f"unknown element: {name!r}")
            mask |= 1 << pos
        return mask

    def names(self, mask: int) -> tuple[str, ...]:
        return tuple(name for pos, name in enumerate(self.elements) if mask >> pos & 1)

    def format_set(self, mask: int) -> str:
        return "{" + ", ".join(self.names(mask)) + "}"

    def __len__(self) -> int:
        return self.size

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other) -> bool:
        return isinstance(other, GroundSet) and self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        return f"GroundSet({list(self.elements)!r})"


class Matroid:
    """A ground set together with a rank oracle over its subsets.

    Instances are immutable after construction and safe to share; the memo
    table only ever inserts values that the oracle itself would return, so
    concurrent readers always observe consistent ranks.
    """

    def __init__(
        self,
        ground: GroundSet,
        rank_fn: Callable[[int], int],
        declared_rank: int | None = None,
        descriptor=None,
    ):
        self.ground = ground
        self._rank_fn = rank_fn
        self.declared_rank = declared_rank
        self.descriptor = descriptor
        self._memo: dict[int, int] = {}

    # -- rank queries ---------------------------------------------------

    def rank(self, subset) -> int:
        mask = self.ground.as_mask(subset)
        memo = self._memo
        value = memo.get(mask)
        if value is None:
            value = self._rank_fn(mask)
            memo[mask] = value
        return value

    def full_rank(self) -> int:
        return self.rank(self.ground.full_mask)

    def is_independent(self, subset) -> bool:
        mask = self.ground.as_mask(subset)
        return self.rank(mask) == mask.bit_count()

    # -- structural operations -------------------------------------------

    def truncate(self) -> "Matroid":
        """Cap the rank function at ``r(E) - 1``."""
        full = self.full_rank()
        if full < 1:
            raise ValidationError("truncation is undefined for a rank-0 matroid")
        cap = full - 1
        inner = self
        return Matroid(self.ground, lambda mask: min(inner.rank(mask), cap), declared_rank=cap)

    def relax(self, circuit_hyperplane, force: bool = False) -> "Matroid":
        """Turn a circuit-hyperplane into a basis: +1 rank on that one subset."""
        mask = self.ground.as_mask(circuit_hyperplane)
        known = self.descriptor is not None and self.descriptor.is_designated_pair(mask)
        if not force and not known and not self.is_circuit_hyperplane(mask):
            raise ValidationError(
                f"{self.ground.format_set(mask)} is not a circuit-hyperplane; "
                "pass force=True to relax anyway"
            )
        inner = self
        new_descriptor = None
        if self.descriptor is not None:
            new_descriptor = self.descriptor.relaxed_variant(mask)

        def relaxed_rank(m: int) -> int:
            r = inner.rank(m)
            return r + 1 if m == mask else r

        return Matroid(
            self.ground,
            relaxed_rank,
            declared_rank=self.declared_rank,
            descriptor=new_descriptor,
        )

    def delete(self, subset) -> "Matroid":
        dmask = self.ground.as_mask(subset)
        keep = [n for pos, n in enumerate(self.ground.elements) if not dmask >> pos & 1]
        return self._restrict_to(keep)

    def contract(self, subset) -> "Matroid":
        cmask = self.ground.as_mask(subset)
        keep = [n for pos, n in enumerate(self.ground.elements) if not cmask >> pos & 1]
        sub = GroundSet(keep)
        parent_bit = [self.ground.index[n] for n in keep]
        base = self.rank(cmask)
        inner = self

        def contracted_rank(mask: int) -> int:
            return inner.rank(_translate(mask, parent_bit) | cmask) - base

        return Matroid(sub, contracted_rank)

    def _restrict_to(self, keep: list[str]) -> "Matroid":
        sub = GroundSet(keep)
        parent_bit = [self.ground.index[n] for n in keep]
        inner = self
        return Matroid(sub, lambda mask: inner.rank(_translate(mask, parent_bit)))

    # -- derived structure -------------------------------------------------

    def circuits(self, max_size: int | None = None) -> list[int]:
        """All minimal dependent subsets, as masks ordered by (size, value)."""
        n = self.ground.size
        cap = n if max_size is None else min(max_size, n)
        space = sum(comb(n, k) for k in range(1, cap + 1))
        if space > CIRCUIT_ENUM_LIMIT:
            raise ValidationError(
                f"enumerating {space} candidate subsets is too large; pass a smaller max_size"
            )
        found: list[int] = []
        for size in range(1, cap + 1):
            for combo in itertools.combinations(range(n), size):
                mask = 0
                for i in combo:
                    mask |= 1 << i
                if self.rank(mask) >= size:
                    continue
                if all(self.rank(mask ^ (1 << i)) == size - 1 for i in combo):
                    found.append(mask)
        return found

    def is_circuit_hyperplane(self, subset) -> bool:
        mask = self.ground.as_mask(subset)
        size = mask.bit_count()
        if size == 0:
            return False
        # circuit: rank |X|-1 with every one-element-deleted subset independent
        if self.rank(mask) != size - 1:
            return False
        if any(self.rank(mask ^ (1 << i)) != size - 1 for i in iter_bits(mask)):
            return False
        # hyperplane: a flat of rank r(E)-1
        full = self.full_rank()
        if size - 1 != full - 1:
            return False
        outside = self.ground.full_mask & ~mask
        return all(self.rank(mask | (1 << i)) != size - 1 for i in iter_bits(outside))

    def materialize(self, validate: bool = False) -> "ExplicitMatroid":
        n = self.ground.size
        if n > MATERIALIZE_LIMIT:
            raise ValidationError(
                f"refusing to materialize a rank table with 2^{n} entries "
                f"(limit is 2^{MATERIALIZE_LIMIT})"
            )
        table = [self.rank(mask) for mask in range(1 << n)]
        return ExplicitMatroid(
            self.ground,
            table,
            declared_rank=self.declared_rank,
            descriptor=self.descriptor,
            validate=validate,
        )

    def __repr__(self) -> str:
        return f"<Matroid on {self.ground.size} elements>"


class ExplicitMatroid(Matroid):
    """Matroid backed by a full rank table indexed by subset bitmask."""

    def __init__(
        self,
        ground: GroundSet,
        table: Iterable[int],
        declared_rank: int | None = None,
        descriptor=None,
        validate: bool = True,
    ):
        tab = list(table)
        if len(tab) != 1 << ground.size:
            raise ValidationError(
                f"rank table has {len(tab)} entries, expected 2^{ground.size}"
            )
        self.table = tab
        super().__init__(ground, tab.__getitem__, declared_rank=declared_rank, descriptor=descriptor)
        if validate:
            validate_rank_axioms(self)

    def rank(self, subset) -> int:
        return self.table[self.ground.as_mask(subset)]


def _translate(mask: int, parent_bit: list[int]) -> int:
    out = 0
    for i in iter_bits(mask):
        out |= 1 << parent_bit[i]
    return out


# -- rank-axiom validation --------------------------------------------------


def validate_rank_axioms(
    m: Matroid,
    mode: str = "auto",
    samples: int = 10_000,
    seed: int = 1,
) -> str:
    """Check R1 (r(X) <= |X|), R2 (monotone), R3 (submodular) and r(empty)=0.

    ``mode='auto'`` is exhaustive up to 12 elements and uses ``samples``
    random pairs above that; ``mode='exhaustive'`` forces the full check and
    errors past 14 elements; ``mode='sampled'`` always samples.  Returns the
    mode actually used; raises ValidationError with a witness on failure.
    """
    n = m.ground.size
    if mode == "auto":
        mode = "exhaustive" if n <= EXHAUSTIVE_LIMIT else "sampled"
    if mode == "exhaustive" and n > STRICT_LIMIT:
        raise ValidationError(
            f"exhaustive rank-axiom validation is infeasible for {n} elements "
            f"(limit {STRICT_LIMIT}); use sampled validation"
        )
    if m.rank(0) != 0:
        raise ValidationError(f"r(empty) = {m.rank(0)}, expected 0")
    if m.declared_rank is not None and m.full_rank() != m.declared_rank:
        raise ValidationError(
            f"declared rank {m.declared_rank} but r(E) = {m.full_rank()}"
        )
    if mode == "exhaustive":
        _validate_exhaustive(m)
    elif mode == "sampled":
        _validate_sampled(m, samples, seed)
    else:
        raise ValueError(f"unknown validation mode: {mode!r}")
    return mode


def _validate_exhaustive(m: Matroid) -> None:
    import numpy as np

    n = m.ground.size
    size = 1 << n
    table = np.fromiter((m.rank(x) for x in range(size)), dtype=np.int64, count=size)
    pops = np.fromiter((x.bit_count() for x in range(size)), dtype=np.int64, count=size)
    bad = np.nonzero(table > pops)[0]
    if bad.size:
        x = int(bad[0])
        raise ValidationError(
            f"R1 fails: r({m.ground.format_set(x)}) = {int(table[x])} > {x.bit_count()}"
        )
    ys = np.arange(size, dtype=np.int64)
    for x in range(size):
        union = np.bitwise_or(x, ys)
        tu = table[union]
        bad = np.nonzero(tu < table[x])[0]
        if bad.size:
            y = int(bad[0])
            raise ValidationError(
                f"R2 fails: r({m.ground.format_set(x)}) > r of its superset "
                f"{m.ground.format_set(x | y)}"
            )
        ti = table[np.bitwise_and(x, ys)]
        bad = np.nonzero(tu + ti > table[x] + table)[0]
        if bad.size:
            y = int(bad[0])
            raise ValidationError(
                f"R3 fails on X = {m.ground.format_set(x)}, Y = {m.ground.format_set(y)}: "
                f"{int(tu[y])} + {int(ti[y])} > {int(table[x])} + {int(table[y])}"
            )


def _validate_sampled(m: Matroid, samples: int, seed: int) -> None:
    rng = random.Random(seed)
    n = m.ground.size
    for _ in range(samples):
        x = rng.getrandbits(n)
        y = rng.getrandbits(n)
        rx, ry = m.rank(x), m.rank(y)
        if rx > x.bit_count():
            raise ValidationError(
                f"R1 fails: r({m.ground.format_set(x)}) = {rx} > {x.bit_count()}"
            )
        ru, ri = m.rank(x | y), m.rank(x & y)
        if ru < rx or ru < ry:
            raise ValidationError(
                f"R2 fails on X = {m.ground.format_set(x)}, Y = {m.ground.format_set(y)}"
            )
        if ru + ri > rx + ry:
            raise ValidationError(
                f"R3 fails on X = {m.ground.format_set(x)}, Y = {m.ground.format_set(y)}: "
                f"{ru} + {ri} > {rx} + {ry}"
            )


# -- common constructors -----------------------------------------------------


def uniform_matroid(rank: int, size: int, names: Iterable[str] | None = None) -> ExplicitMatroid:
    """U_{rank,size}: every subset of at most ``rank`` elements is independent."""
    if not 0 <= rank <= size:
        raise ValidationError(f"uniform matroid needs 0 <= rank <= size, got {rank}, {size}")
    ground = GroundSet(names if names is not None else (f"e{i}" for i in range(1, size + 1)))
    if ground.size != size:
        raise ValidationError("name count does not match size")
    table = [min(mask.bit_count(), rank) for mask in range(1 << size)]
    return ExplicitMatroid(ground, table, declared_rank=rank, validate=False)


def free_matroid(size: int, names: Iterable[str] | None = None) -> ExplicitMatroid:
    return uniform_matroid(size, size, names)


def matroid_from_bases(
    ground: GroundSet,
    bases: Iterable,
    declared_rank: int | None = None,
    validate: str = "auto",
) -> ExplicitMatroid:
    """Build the matroid whose bases are exactly the given equicardinal sets.

    Rank is the size of the largest intersection with a basis, computed by a
    downward-closure + rank DP over all subsets, so the ground set is capped
    at 20 elements.
    """
    n = ground.size
    if n > 20:
        raise ValidationError(f"bases representation is limited to 20 elements, got {n}")
    base_masks = [ground.as_mask(b) for b in bases]
    if not base_masks:
        raise ValidationError("at least one basis is required")
    sizes = {b.bit_count() for b in base_masks}
    if len(sizes) > 1:
        raise ValidationError(f"bases must all have the same size, got sizes {sorted(sizes)}")
    rank = sizes.pop()
    size = 1 << n
    indep = bytearray(size)
    for b in base_masks:
        indep[b] = 1
    for mask in range(size - 1, 0, -1):
        if indep[mask]:
            rest = mask
            while rest:
                low = rest & -rest
                indep[mask ^ low] = 1
                rest ^= low
    table = [0] * size
    for mask in range(1, size):
        if indep[mask]:
            table[mask] = mask.bit_count()
        else:
            best = 0
            rest = mask
            while rest:
                low = rest & -rest
                sub = table[mask ^ low]
                if sub > best:
                    best = sub
                rest ^= low
            table[mask] = best
    m = ExplicitMatroid(ground, table, declared_rank=declared_rank, validate=False)
    if validate != "none":
        validate_rank_axioms(m, mode=validate if validate != "auto" else "auto")
    if declared_rank is not None and rank != declared_rank:
        raise ValidationError(f"bases have size {rank} but declared rank is {declared_rank}")
    return m


def rank_table(m: Matroid) -> list[int]:
    """The full rank table of a small matroid (for comparisons in tests/tools)."""
    n = m.ground.size
    if n > MATERIALIZE_LIMIT:
        raise ValidationError(f"rank table with 2^{n} entries refused")
    return [m.rank(mask) for mask in range(1 << n)]
