"""Transversal matroids: rank of a subset is its maximum matching into a set system."""

from __future__ import annotations

from typing import Iterable, Sequence

from .core import GroundSet, Matroid, iter_bits
from .errors import ValidationError


class SetSystem:
    """An indexed family of named subsets of a ground set."""

    __slots__ = ("ground", "families")

    def __init__(self, ground: GroundSet, families: Sequence[tuple[str, object]]):
        seen: set[str] = set()
        fams: list[tuple[str, int]] = []
        for name, subset in families:
            if not name:
                raise ValidationError("family names must be nonempty")
            if name in seen:
                raise ValidationError(f"duplicate family name: {name!r}")
            seen.add(name)
            fams.append((name, ground.as_mask(subset)))
        self.ground = ground
        self.families = tuple(fams)

    def neighborhood(self, subset) -> tuple[str, ...]:
        """Names of the families that intersect the subset."""
        mask = self.ground.as_mask(subset)
        return tuple(name for name, fmask in self.families if fmask & mask)

    def __repr__(self) -> str:
        return f"<SetSystem with {len(self.families)} families on {self.ground.size} elements>"


class _MatchingOracle:
    """Bipartite maximum matching between elements and families.

    Each query starts from a precomputed global maximum matching restricted
    to the queried subset and augments from there; the matching *size* (the
    rank) does not depend on the augmentation order.
    """

    __slots__ = ("n_families", "adjacency", "global_match")

    def __init__(self, ground: GroundSet, family_masks: Sequence[int]):
        self.n_families = len(family_masks)
        adjacency = [0] * ground.size
        for f_idx, fmask in enumerate(family_masks):
            for el in iter_bits(fmask):
                adjacency[el] |= 1 << f_idx
        self.adjacency = adjacency
        self.global_match = self._max_matching(ground.full_mask, {})

    def _augment(self, el: int, fam_to_el: dict[int, int], visited: set[int]) -> bool:
        for f in iter_bits(self.adjacency[el]):
            if f in visited:
                continue
            visited.add(f)
            cur = fam_to_el.get(f)
            if cur is None or self._augment(cur, fam_to_el, visited):
                fam_to_el[f] = el
                return True
        return False

    def _max_matching(self, mask: int, start: dict[int, int]) -> dict[int, int]:
        fam_to_el = dict(start)
        matched = set(fam_to_el.values())
        for el in iter_bits(mask):
            if el in matched:
                continue
            if len(fam_to_el) == self.n_families:
                break
            if self._augment(el, fam_to_el, set()):
                matched.add(el)
        return fam_to_el

    def rank(self, mask: int) -> int:
        start = {f: el for f, el in self.global_match.items() if mask >> el & 1}
        return len(self._max_matching(mask, start))


def transversal_matroid(system: SetSystem) -> Matroid:
    """The matroid on the system's ground set whose rank is maximum matching size."""
    oracle = _MatchingOracle(system.ground, [fmask for _, fmask in system.families])
    return Matroid(system.ground, oracle.rank)
