"""Isomorphism search and brute-force minor detection."""

import random

import pytest

from mlogic import (
    ExplicitMatroid,
    GroundSet,
    has_minor,
    is_isomorphic,
    kinser_matroid,
    rank_table,
    uniform_matroid,
)
from mlogic.errors import ValidationError

from conftest import add_coloop, add_loop, graphic_k4, small_matroid_corpus


def relabel(m, permutation, rng_names):
    """Explicit matroid with elements renamed and reordered by a permutation."""
    n = m.ground.size
    ground = GroundSet(rng_names)
    table = [0] * (1 << n)
    for mask in range(1 << n):
        image = 0
        for i in range(n):
            if mask >> i & 1:
                image |= 1 << permutation[i]
        table[image] = m.rank(mask)
    return ExplicitMatroid(ground, table, validate=False)


class TestIsomorphism:
    def test_identity(self, u24):
        assert is_isomorphic(u24, u24) == {f"e{i}": f"e{i}" for i in range(1, 5)}

    def test_vamos(self, kin4_minus, vamos):
        bij = is_isomorphic(kin4_minus, vamos)
        assert bij is not None
        inverse = is_isomorphic(vamos, kin4_minus)
        assert inverse is not None

    def test_kin4_vs_relaxation_differ(self, kin4, kin4_minus):
        # circuit counts 6 vs 5 force a refusal
        assert is_isomorphic(kin4, kin4_minus) is None

    def test_size_mismatch(self, u24):
        assert is_isomorphic(u24, uniform_matroid(2, 5)) is None

    def test_rank_mismatch(self, u24):
        assert is_isomorphic(u24, uniform_matroid(3, 4)) is None

    def test_loop_position_found(self):
        a = add_loop(uniform_matroid(1, 2))
        perm_names = ["p", "q", "r"]
        b = relabel(a, [2, 0, 1], perm_names)
        bij = is_isomorphic(a, b)
        assert bij is not None
        assert bij["loop"] == "q"  # permutation sends position 2 to position 1

    def test_random_relabelings_recovered(self):
        rng = random.Random(23)
        for m in [uniform_matroid(2, 5), graphic_k4(), kinser_matroid(4)]:
            n = m.ground.size
            perm = list(range(n))
            rng.shuffle(perm)
            other = relabel(m, perm, [f"n{i}" for i in range(n)])
            bij = is_isomorphic(m, other)
            assert bij is not None
            # any returned bijection must equalize the full rank tables
            for mask in range(1 << n):
                image = 0
                for i in range(n):
                    if mask >> i & 1:
                        image |= 1 << other.ground.index[bij[m.ground.elements[i]]]
                assert m.rank(mask) == other.rank(image)

    def test_nonisomorphic_same_profile(self):
        # same size and rank, different structure
        a = uniform_matroid(2, 4)
        b = add_coloop(uniform_matroid(1, 3), name="e4")
        assert is_isomorphic(a, b) is None


class TestHasMinor:
    def test_identity_minor(self, u24):
        assert has_minor(u24, u24)

    def test_impossible_by_size(self, u24):
        assert not has_minor(u24, uniform_matroid(3, 5))

    def test_kin4_has_u24(self, kin4):
        assert has_minor(kin4, uniform_matroid(2, 4))

    def test_single_nonloop(self):
        u11 = uniform_matroid(1, 1)
        assert has_minor(uniform_matroid(2, 3), u11)
        assert has_minor(add_loop(uniform_matroid(1, 1)), u11)
        assert not has_minor(uniform_matroid(0, 2), u11)

    def test_loop_minor(self):
        u01 = uniform_matroid(0, 1)
        assert has_minor(add_loop(uniform_matroid(2, 4)), u01)
        # contracting any element of U_{2,2} leaves a non-loop; deleting keeps rank
        assert not has_minor(uniform_matroid(2, 2), u01)
        # but a spanning circuit contracts down to loops
        assert has_minor(uniform_matroid(1, 2), u01)

    def test_graphic_contains_u23(self):
        assert has_minor(graphic_k4(), uniform_matroid(2, 3))

    def test_graphic_has_no_u24(self):
        # graphic matroids are binary, so U_{2,4} never appears
        assert not has_minor(graphic_k4(), uniform_matroid(2, 4))

    def test_minor_closed_under_relabel(self):
        rng = random.Random(9)
        m = graphic_k4()
        perm = list(range(6))
        rng.shuffle(perm)
        other = relabel(m, perm, [f"x{i}" for i in range(6)])
        for n in [uniform_matroid(1, 1), uniform_matroid(2, 3)]:
            assert has_minor(m, n) == has_minor(other, n)

    def test_size_guard(self):
        big = uniform_matroid(4, 9)
        with pytest.raises(ValidationError):
            has_minor(big, uniform_matroid(4, 9))

    def test_corpus_self_minors(self):
        for m in small_matroid_corpus():
            if m.ground.size <= 6:
                assert has_minor(m, m)
