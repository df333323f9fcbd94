"""Concrete syntax: lexing, parsing, desugaring, printing, renaming."""

import pytest

from mlogic.errors import ParseError
from mlogic.msol import ast as A
from mlogic.msol import parse, rename_apart_text, to_text
from mlogic.axioms import LIBRARY_TEXT, sentence


class TestParsing:
    def test_rank_bound_axiom_shape(self):
        f = parse("forall X1 (r(X1) <= card(X1))")
        assert isinstance(f, A.Forall) and f.var == "X1"
        body = f.body
        assert isinstance(body, A.IntLe)
        assert body == A.IntLe(A.RankApp(A.SetVar("X1")), A.Card(A.SetVar("X1")))
        assert f.free == frozenset()

    def test_paving_sentence_shape(self):
        f = parse("forall X1 ((card(X1) < r(E)) -> (r(X1) = card(X1)))")
        assert isinstance(f, A.Forall)
        assert isinstance(f.body, A.Or)  # -> desugars to (not P) or Q
        antecedent = f.body.left
        assert isinstance(antecedent, A.Not)
        assert isinstance(antecedent.body, A.And)  # < desugars to <= and not =

    def test_set_operator_chains(self):
        f = parse("(X1 union X2 union X3) = E")
        assert isinstance(f.left, A.SetUnion)
        assert isinstance(f.left.left, A.SetUnion)

    def test_mixed_set_operators_rejected(self):
        with pytest.raises(ParseError, match="parenthes"):
            parse("(X1 union X2 inter X3) = E")

    def test_set_difference_desugars(self):
        f = parse("(X1 - X2) = empty")
        assert f.left == A.SetInter(A.SetVar("X1"), A.Complement(A.SetVar("X2")))

    def test_set_difference_does_not_chain(self):
        with pytest.raises(ParseError):
            parse("(X1 - X2 - X3) = empty")

    def test_notin_and_nsubseteq(self):
        f = parse("x1 notin X1")
        assert isinstance(f, A.Not) and isinstance(f.body, A.ElemIn)
        g = parse("X1 nsubseteq X2")
        assert isinstance(g, A.Not) and isinstance(g.body, A.SubsetEq)

    def test_element_atoms(self):
        f = parse("exists x1 (exists x2 (x1 = x2))")
        assert isinstance(f.body.body, A.ElemEq)

    def test_integer_sum_and_constant(self):
        f = parse("r(E) + 1 = 3 + card(E)")
        assert isinstance(f, A.IntEq)
        assert isinstance(f.left, A.IntSum)

    def test_sort_mismatch(self):
        with pytest.raises(ParseError, match="compare"):
            parse("X1 = x1")
        with pytest.raises(ParseError, match="integer"):
            parse("X1 <= X2")
        with pytest.raises(ParseError, match="element"):
            parse("X1 in X2")

    def test_position_in_error(self):
        with pytest.raises(ParseError, match=r"2:"):
            parse("forall X1\n(r(X1) <= @)")

    def test_unknown_word(self):
        with pytest.raises(ParseError, match="X1 or x1"):
            parse("foo = bar")

    def test_trailing_input(self):
        with pytest.raises(ParseError, match="trailing"):
            parse("(x1 in E) (x2 in E)")

    def test_comments_ignored(self):
        f = parse("# header\nforall X1 (  # inline\n  r(X1) <= card(X1))")
        assert f == sentence("R1")


class TestFormationRules:
    def test_rule5_violation_names_the_variable(self):
        with pytest.raises(ParseError, match="X1"):
            parse("(X1 = X2) and (exists X1 (card(X1) = 1))")

    def test_rule5_symmetric(self):
        with pytest.raises(ParseError, match="X1"):
            parse("(exists X1 (card(X1) = 1)) or (X1 = X2)")

    def test_shared_bound_variables_allowed(self):
        f = parse("(exists X1 (card(X1) = 1)) or (exists X1 (card(X1) = 2))")
        assert isinstance(f, A.Or)

    def test_quantifying_nonfree_variable(self):
        with pytest.raises(ParseError, match="not free"):
            parse("forall X1 (r(E) = 0)")

    def test_free_variable_bookkeeping(self):
        f = parse("exists X1 (X1 subseteq X2)")
        assert f.free == frozenset({"X2"})
        assert f.vars == frozenset({"X1", "X2"})


class TestRoundTrip:
    @pytest.mark.parametrize("name", sorted(LIBRARY_TEXT))
    def test_library_round_trips(self, name):
        f = sentence(name)
        assert parse(to_text(f)) == f

    def test_handwritten_round_trips(self):
        texts = [
            "forall X1 (exists x1 ((x1 in X1) or (card(X1) = 0)))",
            "(x1 in (X1 union sing(x2))) and (x1 notin X2)",
            "r((X1 - X2) union sing(x1)) + card(X2) <= r(E) + 1",
            "not (not (E = empty))",
            "comp(X1 inter X2) subseteq comp(X3)",
        ]
        for text in texts:
            f = parse(text)
            assert parse(to_text(f)) == f


class TestRename:
    def test_remark_example(self):
        out = rename_apart_text("(X1 = X2) and (exists X1 (card(X1) = 1))")
        assert out == "(X1 = X2) and (exists X3 (card(X3) = 1))"
        parse(out)  # now strictly legal

    def test_shadowed_binders_get_distinct_names(self):
        out = rename_apart_text(
            "(exists X1 (card(X1) = 1)) or (exists X1 (card(X1) = 2))"
        )
        f = parse(out)
        binders = [n.var for n in A.walk(f) if isinstance(n, (A.Exists, A.Forall))]
        assert len(binders) == len(set(binders))

    def test_free_variables_untouched(self):
        # fresh indices are allocated above every index in use, in either sort
        out = rename_apart_text("(X1 = X2) and (exists x1 (x1 in X1))")
        assert out == "(X1 = X2) and (exists x3 (x3 in X1))"
