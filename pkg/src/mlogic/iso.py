"""Matroid isomorphism and brute-force minor detection.

Both searches are exhaustive backtracking with invariant pruning; they are
meant for desk-scale matroids (the isomorphism check keeps the full lattice
of mapped subsets, so cost grows as 2^|E|).
"""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from typing import Optional

from .core import Matroid
from .errors import ValidationError

_MINOR_SIZE_LIMIT = 8


def _small_circuits(m: Matroid) -> list[int]:
    n = m.ground.size
    cap = n if n <= 12 else min(m.full_rank() + 1, 5)
    return m.circuits(cap)


def is_isomorphic(a: Matroid, b: Matroid) -> Optional[dict[str, str]]:
    """A rank-preserving bijection between the ground sets, or None.

    Elements are matched by circuit-membership signatures first and then by
    exhaustive rank comparison over every subset of the mapped prefix, so a
    returned bijection equalizes the full rank tables.  Candidates are tried
    in declaration order; the first bijection found is returned.
    """
    n = a.ground.size
    if n != b.ground.size or a.full_rank() != b.full_rank():
        return None
    ca, cb = _small_circuits(a), _small_circuits(b)
    if sorted(c.bit_count() for c in ca) != sorted(c.bit_count() for c in cb):
        return None

    def signatures(circs, size):
        sig = [tuple()] * size
        per = [[] for _ in range(size)]
        for c in circs:
            s = c.bit_count()
            for i in range(size):
                if c >> i & 1:
                    per[i].append(s)
        for i in range(size):
            sig[i] = tuple(sorted(per[i]))
        return sig

    sig_a = signatures(ca, n)
    sig_b = signatures(cb, n)
    if Counter(sig_a) != Counter(sig_b):
        return None
    candidates = defaultdict(list)
    for j in range(n):
        candidates[sig_b[j]].append(j)
    # rarest signature first; declaration order breaks ties
    order = sorted(range(n), key=lambda i: (len(candidates[sig_a[i]]), i))

    mapping = [-1] * n
    used = [False] * n
    # parallel subset masks of the mapped prefix: (mask in a, image in b)
    pairs: list[tuple[int, int]] = [(0, 0)]

    def extend(ai: int, bj: int) -> Optional[list[tuple[int, int]]]:
        added = []
        bit_a, bit_b = 1 << ai, 1 << bj
        for sa, sb in pairs:
            na, nb = sa | bit_a, sb | bit_b
            if a.rank(na) != b.rank(nb):
                return None
            added.append((na, nb))
        return added

    def search(depth: int) -> bool:
        if depth == n:
            return True
        ai = order[depth]
        for bj in candidates[sig_a[ai]]:
            if used[bj]:
                continue
            added = extend(ai, bj)
            if added is None:
                continue
            mapping[ai] = bj
            used[bj] = True
            pairs.extend(added)
            if search(depth + 1):
                return True
            del pairs[len(pairs) - len(added):]
            used[bj] = False
            mapping[ai] = -1
        return False

    if not search(0):
        return None
    return {a.ground.elements[i]: b.ground.elements[mapping[i]] for i in range(n)}


def has_minor(m: Matroid, n: Matroid) -> bool:
    """True iff some contraction of an independent set followed by a
    restriction is isomorphic to ``n``.

    Exhaustive over independent contraction sets C and |E(n)|-element
    restriction targets T, with a backtracking bijection search that checks
    rank equality on every subset of the mapped prefix.
    """
    size_m, size_n = m.ground.size, n.ground.size
    if size_n > size_m:
        return False
    if size_n > _MINOR_SIZE_LIMIT:
        raise ValidationError(
            f"minor detection is exhaustive; the candidate minor has {size_n} > "
            f"{_MINOR_SIZE_LIMIT} elements"
        )
    rank_n = n.full_rank()
    rank_m = m.full_rank()
    if rank_n > rank_m:
        return False
    n_table = [n.rank(x) for x in range(1 << size_n)]

    max_contract = rank_m - rank_n
    positions = range(size_m)
    for csize in range(max_contract + 1):
        for cpos in itertools.combinations(positions, csize):
            cmask = 0
            for i in cpos:
                cmask |= 1 << i
            if m.rank(cmask) != csize:
                continue
            rc = csize
            rest = [i for i in positions if not cmask >> i & 1]
            for tpos in itertools.combinations(rest, size_n):
                tmask = 0
                for i in tpos:
                    tmask |= 1 << i
                if m.rank(cmask | tmask) - rc != rank_n:
                    continue
                if _labeled_match(m, cmask, rc, tpos, n_table, size_n):
                    return True
    return False


def _labeled_match(m, cmask, rc, tpos, n_table, size_n) -> bool:
    """Is there a bijection position-of-n -> element-of-tpos matching all ranks?"""
    used = [False] * size_n
    chosen = [0] * size_n
    pairs: list[tuple[int, int]] = [(0, 0)]  # (mask over n positions, parent mask)

    def search(j: int) -> bool:
        if j == size_n:
            return True
        bit_n = 1 << j
        for k in range(size_n):
            if used[k]:
                continue
            bit_m = 1 << tpos[k]
            added = []
            ok = True
            for sn, sp in pairs:
                nn, np_ = sn | bit_n, sp | bit_m
                if n_table[nn] != m.rank(cmask | np_) - rc:
                    ok = False
                    break
                added.append((nn, np_))
            if not ok:
                continue
            used[k] = True
            chosen[j] = k
            pairs.extend(added)
            if search(j + 1):
                return True
            del pairs[len(pairs) - len(added):]
            used[k] = False
        return False

    return search(0)
