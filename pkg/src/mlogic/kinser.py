"""The Kinser matroid family and the Kinser rank inequality.

Kin(r) is the rank-r truncation of a rank-(r+1) transversal matroid built on
disjoint blocks H_1, ..., H_{r-1} of size r-2 and a final two-element block
H_r = {e, f}.  Every block pair H_s u H_r is a circuit-hyperplane; relaxing
one of them produces a matroid that violates the Kinser inequality on an
explicit witness assignment, while relaxing two restores consistency.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import GroundSet, Matroid
from .errors import ValidationError
from .transversal import SetSystem, transversal_matroid


class KinserDescriptor:
    """Block structure and relaxation status of a Kinser-family matroid."""

    __slots__ = ("r", "ground", "block_masks", "relaxed")

    def __init__(self, r: int, ground: GroundSet, block_masks: Sequence[int], relaxed: Iterable[int]):
        if r < 4:
            raise ValidationError(f"Kinser matroids need r >= 4, got {r}")
        blocks = tuple(block_masks)
        if len(blocks) != r:
            raise ValidationError(f"expected {r} blocks, got {len(blocks)}")
        union = 0
        for i, b in enumerate(blocks):
            want = 2 if i == r - 1 else r - 2
            if b.bit_count() != want:
                raise ValidationError(f"block {i + 1} has {b.bit_count()} elements, expected {want}")
            if union & b:
                raise ValidationError("blocks must be pairwise disjoint")
            union |= b
        if union != ground.full_mask:
            raise ValidationError("blocks must cover the ground set")
        rel = frozenset(relaxed)
        for s in rel:
            if not 1 <= s <= r - 1:
                raise ValidationError(f"relaxation index {s} out of range 1..{r - 1}")
        self.r = r
        self.ground = ground
        self.block_masks = blocks
        self.relaxed = rel

    def block_mask(self, i: int) -> int:
        """Mask of block H_i, 1-based."""
        if not 1 <= i <= self.r:
            raise ValidationError(f"block index {i} out of range 1..{self.r}")
        return self.block_masks[i - 1]

    def block_pair_mask(self, s: int) -> int:
        """Mask of H_s u H_r for s in 1..r-1."""
        if not 1 <= s <= self.r - 1:
            raise ValidationError(f"pair index {s} out of range 1..{self.r - 1}")
        return self.block_masks[s - 1] | self.block_masks[self.r - 1]

    def designated(self) -> tuple[int, ...]:
        """Indices s whose pair H_s u H_r is still a circuit-hyperplane."""
        return tuple(s for s in range(1, self.r) if s not in self.relaxed)

    def pair_index(self, mask: int) -> int | None:
        for s in range(1, self.r):
            if mask == self.block_pair_mask(s):
                return s
        return None

    def is_designated_pair(self, mask: int) -> bool:
        s = self.pair_index(mask)
        return s is not None and s not in self.relaxed

    def relaxed_variant(self, mask: int) -> "KinserDescriptor | None":
        s = self.pair_index(mask)
        if s is None or s in self.relaxed:
            return None
        return KinserDescriptor(self.r, self.ground, self.block_masks, self.relaxed | {s})

    def __repr__(self) -> str:
        rel = sorted(self.relaxed)
        return f"<KinserDescriptor r={self.r} relaxed={rel}>"


@dataclass(frozen=True)
class KinserAssignment:
    """Subsets X_1, ..., X_n (as masks) plugged into the Kinser inequality."""

    sets: tuple[int, ...]

    def __post_init__(self):
        if len(self.sets) < 4:
            raise ValidationError(f"Kinser assignments need n >= 4 sets, got {len(self.sets)}")

    @property
    def n(self) -> int:
        return len(self.sets)


def kinser_ground(r: int) -> tuple[GroundSet, tuple[int, ...]]:
    """Canonical ground set and block masks: h<i>_<j> for H_i (i < r), then e, f."""
    names: list[str] = []
    blocks: list[int] = []
    for i in range(1, r):
        start = len(names)
        names.extend(f"h{i}_{j}" for j in range(1, r - 1))
        blocks.append(((1 << (r - 2)) - 1) << start)
    start = len(names)
    names.extend(["e", "f"])
    blocks.append(0b11 << start)
    return GroundSet(names), tuple(blocks)


def kinser_system(r: int) -> tuple[SetSystem, KinserDescriptor]:
    """The transversal system A_1, ..., A_{r-1}, A, A' describing the pre-truncation matroid."""
    if r < 4:
        raise ValidationError(f"Kinser matroids need r >= 4, got {r}")
    ground, blocks = kinser_ground(r)
    body = 0
    for b in blocks[:-1]:
        body |= b
    families: list[tuple[str, int]] = []
    for i in range(1, r):
        prev = blocks[(i - 2) % (r - 1)]  # H_{i-1} with subscripts modulo r-1
        families.append((f"A{i}", body & ~(prev | blocks[i - 1])))
    families.append(("A", ground.full_mask))
    families.append(("A'", blocks[-1]))
    descriptor = KinserDescriptor(r, ground, blocks, ())
    return SetSystem(ground, families), descriptor


def pretruncation_matroid(r: int) -> tuple[Matroid, KinserDescriptor]:
    """The rank-(r+1) transversal matroid the Kinser construction truncates."""
    system, descriptor = kinser_system(r)
    m = transversal_matroid(system)
    full = m.full_rank()
    if full != r + 1:
        raise ValidationError(f"pre-truncation matroid has rank {full}, expected {r + 1}")
    return m, descriptor


def kinser_matroid(r: int, relaxed: Iterable[int] = ()) -> Matroid:
    """Kin(r), optionally with block pairs H_s u H_r relaxed in ascending index order.

    Construction checks that every designated block pair of the result is a
    circuit-hyperplane; each relaxation step validates its own pair on the
    matroid it is applied to.
    """
    rel = list(relaxed)
    if len(set(rel)) != len(rel):
        raise ValidationError(f"duplicate relaxation indices in {rel}")
    base, descriptor = pretruncation_matroid(r)
    m = base.truncate()
    m.descriptor = descriptor
    for s in sorted(rel):
        pair = descriptor.block_pair_mask(s)  # index range checked here
        if not m.is_circuit_hyperplane(pair):
            raise ValidationError(
                f"block pair {s} is not a circuit-hyperplane; cannot relax"
            )
        m = m.relax(pair, force=True)
    assert m.descriptor is not None and m.descriptor.relaxed == frozenset(rel)
    for s in m.descriptor.designated():
        if not m.is_circuit_hyperplane(m.descriptor.block_pair_mask(s)):
            raise ValidationError(f"designated block pair {s} failed the circuit-hyperplane check")
    m.declared_rank = r
    return m


def kinser_lhs_rhs(m: Matroid, assignment: KinserAssignment) -> tuple[int, int]:
    """Evaluate both sides of the Kinser rank inequality for X_1..X_n.

    LHS > RHS certifies that the matroid is representable over no field;
    LHS <= RHS is inconclusive.
    """
    x = (None,) + tuple(m.ground.as_mask(s) for s in assignment.sets)  # 1-based
    n = assignment.n
    r = m.rank
    lhs = r(x[1] | x[2]) + r(x[1] | x[3] | x[n]) + r(x[3])
    rhs = r(x[1] | x[3]) + r(x[1] | x[n]) + r(x[2] | x[3])
    for i in range(4, n + 1):
        lhs += r(x[i]) + r(x[2] | x[i - 1] | x[i])
        rhs += r(x[2] | x[i]) + r(x[i - 1] | x[i])
    return lhs, rhs


def kinser_witness(descriptor: KinserDescriptor, s: int) -> KinserAssignment:
    """The block assignment (H_s, H_r, H_{s+1}, ..., H_{s-1}) with n = r sets.

    Block subscripts other than r cycle modulo r-1, so the assignment for a
    general s is the s=1 assignment relabeled by i -> i - s + 1.
    """
    r = descriptor.r
    if not 1 <= s <= r - 1:
        raise ValidationError(f"witness index {s} out of range 1..{r - 1}")

    def wrap(i: int) -> int:
        return (i - 1) % (r - 1) + 1

    sets = [descriptor.block_mask(s), descriptor.block_mask(r)]
    sets.extend(descriptor.block_mask(wrap(s + k)) for k in range(1, r - 1))
    return KinserAssignment(tuple(sets))


def ingleton_check(m: Matroid, sets) -> tuple[int, int]:
    """The four-set specialization of the Kinser inequality (Ingleton's inequality)."""
    quad = tuple(sets)
    if len(quad) != 4:
        raise ValidationError(f"Ingleton check needs exactly 4 sets, got {len(quad)}")
    return kinser_lhs_rhs(m, KinserAssignment(tuple(m.ground.as_mask(s) for s in quad)))
