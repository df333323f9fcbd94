"""The Kinser family: geometry, witnesses, and the rank inequality."""

import itertools
import random

import pytest

from mlogic import (
    KinserAssignment,
    ingleton_check,
    kinser_lhs_rhs,
    kinser_matroid,
    kinser_witness,
    transversal_matroid,
    uniform_matroid,
)
from mlogic.errors import ValidationError
from mlogic.kinser import pretruncation_matroid
from mlogic.transversal import SetSystem
from mlogic.core import GroundSet
from mlogic.iso import is_isomorphic

from conftest import vamos_matroid


class TestConstruction:
    @pytest.mark.parametrize("r", [4, 5, 6, 7])
    def test_element_count_and_rank(self, r):
        m = kinser_matroid(r)
        assert m.ground.size == r * r - 3 * r + 4
        assert m.full_rank() == r

    def test_r4_is_eight_elements(self):
        assert kinser_matroid(4).ground.size == 8

    def test_r6_is_twentytwo_elements(self):
        assert kinser_matroid(6).ground.size == 22

    def test_r_below_four_rejected(self):
        with pytest.raises(ValidationError):
            kinser_matroid(3)

    def test_bad_relaxation_indices(self):
        with pytest.raises(ValidationError):
            kinser_matroid(4, [4])
        with pytest.raises(ValidationError):
            kinser_matroid(4, [1, 1])

    def test_blocks_partition_ground(self):
        d = kinser_matroid(5).descriptor
        union = 0
        for i in range(1, 6):
            b = d.block_mask(i)
            assert union & b == 0
            union |= b
        assert union == d.ground.full_mask

    def test_relaxed_recorded(self):
        d = kinser_matroid(5, [3, 1]).descriptor
        assert d.relaxed == frozenset({1, 3})
        assert d.designated() == (2, 4)

    @pytest.mark.parametrize("r", [4, 5, 6, 7])
    def test_designated_pairs_are_circuit_hyperplanes(self, r):
        m = kinser_matroid(r)
        for s in range(1, r):
            assert m.is_circuit_hyperplane(m.descriptor.block_pair_mask(s))

    def test_vamos_identification(self, kin4_minus, vamos):
        assert is_isomorphic(kin4_minus, vamos) is not None

    @pytest.mark.parametrize("r", [4, 5])
    def test_series_pair(self, r):
        # every circuit of the pre-truncation matroid containing e contains f;
        # r+2 covers all circuit sizes (rank is r+1)
        m, d = pretruncation_matroid(r)
        e_bit = 1 << m.ground.index["e"]
        f_bit = 1 << m.ground.index["f"]
        circuits = m.circuits(r + 2)
        assert any(c & e_bit for c in circuits)
        for c in circuits:
            if c & e_bit:
                assert c & f_bit


class TestWitness:
    def test_r4_s1(self):
        d = kinser_matroid(4).descriptor
        w = kinser_witness(d, 1)
        assert w.sets == tuple(d.block_mask(i) for i in (1, 4, 2, 3))

    def test_r4_s2(self):
        d = kinser_matroid(4).descriptor
        w = kinser_witness(d, 2)
        assert w.sets == tuple(d.block_mask(i) for i in (2, 4, 3, 1))

    def test_r5_s1(self):
        d = kinser_matroid(5).descriptor
        w = kinser_witness(d, 1)
        assert w.sets == tuple(d.block_mask(i) for i in (1, 5, 2, 3, 4))

    def test_bad_index(self):
        d = kinser_matroid(4).descriptor
        with pytest.raises(ValidationError):
            kinser_witness(d, 4)


class TestInequality:
    def test_kin4_minus_fails(self, kin4_minus):
        w = kinser_witness(kin4_minus.descriptor, 1)
        assert kinser_lhs_rhs(kin4_minus, w) == (16, 15)

    def test_kin4_passes_same_witness(self, kin4, kin4_minus):
        w = kinser_witness(kin4_minus.descriptor, 1)
        assert kinser_lhs_rhs(kin4, w) == (15, 15)

    def test_all_empty_sets(self, kin4):
        assert kinser_lhs_rhs(kin4, KinserAssignment((0, 0, 0, 0))) == (0, 0)

    def test_n_below_four_rejected(self):
        with pytest.raises(ValidationError):
            KinserAssignment((0, 0, 0))

    @pytest.mark.parametrize("r", [4, 5, 6, 7])
    def test_exact_witness_values(self, r):
        for s in range(1, r):
            m = kinser_matroid(r, [s])
            lhs, rhs = kinser_lhs_rhs(m, kinser_witness(m.descriptor, s))
            assert (lhs, rhs) == (2 * r * r - 5 * r + 4, 2 * r * r - 5 * r + 3)

    @pytest.mark.parametrize("r", [4, 5])
    def test_double_relaxation_passes_witnesses(self, r):
        for s, t in itertools.combinations(range(1, r), 2):
            m = kinser_matroid(r, [s, t])
            for w_index in range(1, r):
                lhs, rhs = kinser_lhs_rhs(m, kinser_witness(m.descriptor, w_index))
                assert lhs <= rhs, (r, s, t, w_index)

    def test_double_relaxation_random_assignments(self):
        rng = random.Random(1)
        for (r, s, t) in [(4, 1, 2), (4, 2, 3), (5, 1, 4)]:
            m = kinser_matroid(r, [s, t])
            n_elems = m.ground.size
            for _ in range(300):
                n_sets = rng.randrange(4, 7)
                sets = tuple(rng.getrandbits(n_elems) for _ in range(n_sets))
                lhs, rhs = kinser_lhs_rhs(m, KinserAssignment(sets))
                assert lhs <= rhs


class TestIngleton:
    def test_vamos_fails_via_kinser_isomorphism(self, kin4_minus, vamos):
        bij = is_isomorphic(kin4_minus, vamos)
        d = kin4_minus.descriptor

        def image(mask):
            out = 0
            for i in range(8):
                if mask >> i & 1:
                    out |= 1 << vamos.ground.index[bij[kin4_minus.ground.elements[i]]]
            return out

        quad = [image(d.block_mask(i)) for i in (1, 4, 2, 3)]
        assert ingleton_check(vamos, quad) == (16, 15)

    def test_transversal_matroids_pass(self):
        # representable by construction, so the n=4 inequality always holds
        rng = random.Random(2)
        for _ in range(5):
            n = 7
            ground = GroundSet([f"e{i}" for i in range(n)])
            system = SetSystem(
                ground, [(f"F{j}", rng.getrandbits(n)) for j in range(rng.randrange(1, 5))]
            )
            m = transversal_matroid(system)
            for _ in range(200):
                quad = [rng.getrandbits(n) for _ in range(4)]
                lhs, rhs = ingleton_check(m, quad)
                assert lhs <= rhs

    def test_all_equal_sets_tie(self, u24):
        lhs, rhs = ingleton_check(u24, [0b0110] * 4)
        assert lhs == rhs

    def test_wrong_arity(self, u24):
        with pytest.raises(ValidationError):
            ingleton_check(u24, [0, 0, 0])
