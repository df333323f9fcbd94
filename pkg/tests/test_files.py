"""File formats: matroids, set systems, interpretations."""

import pytest

from mlogic import (
    dumps_matroid,
    dumps_setsystem,
    kinser_matroid,
    loads_interpretation,
    loads_matroid,
    loads_setsystem,
    rank_table,
    uniform_matroid,
)
from mlogic.errors import DomainError, FormatError, ValidationError
from mlogic.kinser import kinser_system

from conftest import graphic_k4


class TestMatroidRoundTrip:
    def test_bases_body(self):
        m = uniform_matroid(2, 4)
        text = dumps_matroid(m)
        assert "bases" in text
        again = loads_matroid(text)
        assert rank_table(again) == rank_table(m)

    def test_graphic_round_trip(self):
        m = graphic_k4()
        again = loads_matroid(dumps_matroid(m))
        assert rank_table(again) == rank_table(m)

    def test_ranktable_body(self):
        m = uniform_matroid(2, 4)
        text = dumps_matroid(m, force_ranktable=True)
        assert "ranktable" in text
        again = loads_matroid(text)
        assert rank_table(again) == rank_table(m)

    def test_rank_zero_uses_ranktable(self):
        m = uniform_matroid(0, 2)
        text = dumps_matroid(m)
        assert "ranktable" in text
        assert rank_table(loads_matroid(text)) == rank_table(m)

    def test_kinser_body(self):
        m = kinser_matroid(4, [1])
        text = dumps_matroid(m)
        assert "kinser 4 relax 1" in text
        again = loads_matroid(text)
        assert again.descriptor.relaxed == frozenset({1})
        assert rank_table(again) == rank_table(m)

    def test_kinser_double_relax(self):
        m = kinser_matroid(5, [2, 4])
        again = loads_matroid(dumps_matroid(m))
        assert again.descriptor.relaxed == frozenset({2, 4})

    def test_comments_and_blanks(self):
        text = "# a matroid\nmatroid v1\n\nelements a b  # two points\nbases\na\nb\n"
        m = loads_matroid(text)
        assert m.full_rank() == 1


class TestMatroidErrors:
    def test_bad_header(self):
        with pytest.raises(FormatError, match="matroid v1"):
            loads_matroid("elements a b\n")

    def test_missing_body(self):
        with pytest.raises(FormatError, match="body"):
            loads_matroid("matroid v1\nelements a b\n")

    def test_unequal_bases(self):
        with pytest.raises(ValidationError, match="same size"):
            loads_matroid("matroid v1\nelements a b\nbases\na\na b\n")

    def test_non_matroid_bases_rejected(self):
        # two disjoint pairs whose downward closure violates basis exchange
        text = "matroid v1\nelements a b c d\nbases\na b\nc d\n"
        with pytest.raises(ValidationError, match="R3"):
            loads_matroid(text)

    def test_non_matroid_bases_accepted_without_validation(self):
        text = "matroid v1\nelements a b c d\nbases\na b\nc d\n"
        m = loads_matroid(text, validate="none")
        assert m.rank(0b1111) == 2

    def test_ranktable_missing_entries(self):
        with pytest.raises(FormatError, match="missing"):
            loads_matroid("matroid v1\nelements a b\nranktable\n0: 0\n1: 1\n")

    def test_ranktable_duplicate(self):
        text = "matroid v1\nelements a\nranktable\n0: 0\n1: 1\n1: 1\n"
        with pytest.raises(FormatError, match="duplicate"):
            loads_matroid(text)

    def test_corrupted_ranktable_fails_validation(self):
        text = "matroid v1\nelements a b\nranktable\n0: 0\n1: 0\n2: 0\n3: 2\n"
        with pytest.raises(ValidationError, match="R3"):
            loads_matroid(text)
        m = loads_matroid(text, validate="none")
        assert m.rank(0b11) == 2

    def test_declared_rank_checked(self):
        text = "matroid v1\nelements a b\nrank 2\nbases\na\nb\n"
        with pytest.raises(ValidationError, match="declared"):
            loads_matroid(text)

    def test_kinser_elements_must_match(self):
        text = "matroid v1\nelements a b c d e f g h\nkinser 4\n"
        with pytest.raises(FormatError, match="canonical"):
            loads_matroid(text)

    def test_kinser_r3_rejected(self):
        names = " ".join(["a"] * 1)
        text = "matroid v1\nelements a\nkinser 3\n"
        with pytest.raises(ValidationError, match="r >= 4"):
            loads_matroid(text)

    def test_fourteen_elements_still_fit_bases(self):
        m = kinser_matroid(5)  # 14 elements, written without the kinser tag
        m.descriptor = None
        text = dumps_matroid(m)
        assert "bases" in text
        assert rank_table(loads_matroid(text, validate="none")) == rank_table(m)

    def test_too_big_for_bases(self):
        m = uniform_matroid(2, 17)
        with pytest.raises(ValidationError, match="force_ranktable"):
            dumps_matroid(m)
        text = dumps_matroid(m, force_ranktable=True)
        assert rank_table(loads_matroid(text, validate="none")) == rank_table(m)


class TestSetSystemFormat:
    def test_round_trip(self):
        system, _ = kinser_system(4)
        text = dumps_setsystem(system)
        again = loads_setsystem(text)
        assert again.ground.elements == system.ground.elements
        assert again.families == system.families

    def test_empty_family_allowed(self):
        s = loads_setsystem("setsystem v1\nelements a b\nfamily F:\n")
        assert s.families == (("F", 0),)

    def test_bad_header(self):
        with pytest.raises(FormatError):
            loads_setsystem("matroid v1\nelements a\n")


class TestInterpretationFormat:
    def test_parse_both_sorts(self, u24):
        interp = loads_interpretation(
            "interp v1\nX1 = e1 e3\nx2 = e4\n", u24.ground
        )
        assert interp.sets == {"X1": 0b0101}
        assert interp.elems == {"x2": 3}

    def test_empty_set_assignment(self, u24):
        interp = loads_interpretation("interp v1\nX1 =\n", u24.ground)
        assert interp.sets == {"X1": 0}

    def test_duplicate_variable(self, u24):
        with pytest.raises(FormatError, match="duplicate"):
            loads_interpretation("interp v1\nX1 = e1\nX1 = e2\n", u24.ground)

    def test_element_variable_arity(self, u24):
        with pytest.raises(FormatError, match="exactly one"):
            loads_interpretation("interp v1\nx1 = e1 e2\n", u24.ground)

    def test_unknown_element(self, u24):
        with pytest.raises(DomainError, match="zz"):
            loads_interpretation("interp v1\nX1 = zz\n", u24.ground)
