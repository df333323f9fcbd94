"""Built-in sentence library and the minor-detection sentence compiler.

The library holds the rank, independent-set, basis, and spanning-set axiom
suites plus the paving sentence, with the shorthands

    I(X) := r(X) = card(X)
    B(X) := (r(X) = card(X)) and (r(X) = r(E))
    S(X) := r(X) = r(E)

expanded at build time.  ``minor_sentence`` compiles a concrete matroid N
into an existential sentence that holds exactly on the matroids with an
N-minor (among structures satisfying the rank axioms).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .core import EXHAUSTIVE_LIMIT, Matroid, validate_rank_axioms
from .errors import ValidationError
from .msol import Interpretation, ast, classify_mlogic, format_trace, parse, witness_trace
from .msol.ast import (
    Card,
    ElemVar,
    EMPTY_SET,
    Exists,
    IntConst,
    IntEq,
    IntSum,
    RankApp,
    SetEq,
    SetInter,
    SetUnion,
    SetVar,
    Singleton,
    conj_all,
)

MINOR_SENTENCE_LIMIT = 6

_SHORTHANDS = {
    "I": "(r({X}) = card({X}))",
    "B": "((r({X}) = card({X})) and (r({X}) = r(E)))",
    "S": "(r({X}) = r(E))",
}

_SHORTHAND_RE = re.compile(r"([IBS])\[([^\]]+)\]")


def _expand(template: str) -> str:
    return _SHORTHAND_RE.sub(
        lambda m: _SHORTHANDS[m.group(1)].format(X=f"({m.group(2)})"), template
    )


LIBRARY_TEXT: dict[str, str] = {
    # rank axioms
    "R1": "forall X1 (r(X1) <= card(X1))",
    "R2": "forall X1 (forall X2 ((X1 subseteq X2) -> (r(X1) <= r(X2))))",
    "R3": "forall X1 (forall X2 (r(X1 union X2) + r(X1 inter X2) <= r(X1) + r(X2)))",
    # independent sets: I(X) expanded
    "I1": "r(empty) = card(empty)",
    "I2": _expand("forall X1 (forall X2 ((I[X2] and (X1 subseteq X2)) -> I[X1]))"),
    "I3": _expand(
        "forall X1 (forall X2 (exists x1 ("
        "((I[X1] and I[X2]) and (card(X1) < card(X2)))"
        " -> (((x1 notin X1) and (x1 in X2)) and I[X1 union sing(x1)])"
        ")))"
    ),
    # bases: B(X) expanded; the single element swapped out is carried by the
    # one-element set variable X3
    "B1": _expand("exists X1 (B[X1])"),
    "B2": _expand(
        "forall X1 (forall X2 (forall X3 (exists x1 ("
        "((((B[X1] and B[X2]) and (card(X3) = 1)) and (X3 subseteq X1)) and (X3 nsubseteq X2))"
        " -> (((x1 notin X1) and (x1 in X2)) and"
        " ((r((X1 - X3) union sing(x1)) = card((X1 - X3) union sing(x1)))"
        " and (r((X1 - X3) union sing(x1)) = r(E))))"
        "))))"
    ),
    # spanning sets: S(X) expanded
    "S1": _expand("exists X1 (S[X1])"),
    "S2": _expand("forall X1 (forall X2 ((S[X1] and (X1 subseteq X2)) -> S[X2]))"),
    "S3": _expand(
        "forall X1 (forall X2 (exists x1 ("
        "((S[X1] and S[X2]) and (card(X1) < card(X2)))"
        " -> (((x1 notin X1) and (x1 in X2)) and (r(X2 - sing(x1)) = r(E)))"
        ")))"
    ),
    "PAVING": "forall X1 ((card(X1) < r(E)) -> (r(X1) = card(X1)))",
}

SUITES: dict[str, tuple[str, ...]] = {
    "rank": ("R1", "R2", "R3"),
    "indep": ("I1", "I2", "I3"),
    "basis": ("B1", "B2"),
    "spanning": ("S1", "S2", "S3"),
    "paving": ("PAVING",),
}


@lru_cache(maxsize=None)
def sentence(name: str):
    try:
        text = LIBRARY_TEXT[name]
    except KeyError:
        raise ValidationError(f"no library sentence named {name!r}") from None
    return parse(text)


def library() -> dict[str, ast.Formula]:
    return {name: sentence(name) for name in LIBRARY_TEXT}


# ---------------------------------------------------------------------------
# minor sentences


def minor_sentence(n: Matroid) -> ast.Formula:
    """An existential sentence true on a matroid M iff M has an N-minor.

    Shape: exists X1 exists x1 ... exists xm of a conjunction saying X1 is
    independent and disjoint from the m chosen distinct elements, and that
    for every S among the chosen elements r(X1 u S) - r(X1) matches N's rank
    of the corresponding subset (inlined as integer constants).
    """
    m = n.ground.size
    if m < 1:
        raise ValidationError("the candidate minor needs at least one element")
    if m > MINOR_SENTENCE_LIMIT:
        raise ValidationError(
            f"minor sentences inline 2^{m} rank constants; limit is "
            f"{MINOR_SENTENCE_LIMIT} elements"
        )
    validate_rank_axioms(n, mode="exhaustive" if m <= EXHAUSTIVE_LIMIT else "auto")

    x1 = SetVar("X1")
    singles = [Singleton(ElemVar(f"x{i}")) for i in range(1, m + 1)]

    def union_fold(terms):
        out = terms[0]
        for t in terms[1:]:
            out = SetUnion(out, t)
        return out

    all_singles = union_fold(singles)
    conjuncts = [
        IntEq(RankApp(x1), Card(x1)),
        SetEq(SetInter(x1, all_singles), EMPTY_SET),
        IntEq(Card(all_singles), IntConst(m)),
    ]
    for smask in range(1 << m):
        chosen = [singles[i] for i in range(m) if smask >> i & 1]
        lhs_set = union_fold([x1] + chosen) if chosen else SetUnion(x1, EMPTY_SET)
        conjuncts.append(
            IntEq(RankApp(lhs_set), IntSum(RankApp(x1), IntConst(n.rank(smask))))
        )
    body = conj_all(conjuncts)
    f = body
    for i in range(m, 0, -1):
        f = Exists(f"x{i}", f)
    return Exists("X1", f)


def excluded_minor_axioms(minors) -> list[ast.Formula]:
    """Negated minor sentences: all true iff none of the given minors occurs."""
    return [ast.neg(minor_sentence(n)) for n in minors]


# ---------------------------------------------------------------------------
# suite evaluation


@dataclass(frozen=True)
class SentenceVerdict:
    name: str
    holds: bool
    trace: tuple[str, ...]  # witness (true existential) or counterexample (false universal)


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    verdicts: tuple[SentenceVerdict, ...]

    @property
    def all_true(self) -> bool:
        return all(v.holds for v in self.verdicts)


def axiom_suite_check(m: Matroid, suite: str, budget=None) -> SuiteReport:
    """Evaluate every sentence of a named suite, with witness/counterexample lines."""
    from .msol.evaluate import DEFAULT_BUDGET

    if suite not in SUITES:
        raise ValidationError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    if budget is None:
        budget = DEFAULT_BUDGET
    verdicts = []
    for name in SUITES[suite]:
        holds, trace = witness_trace(m, sentence(name), budget=budget)
        verdicts.append(
            SentenceVerdict(name, holds, tuple(format_trace(m.ground, trace)))
        )
    return SuiteReport(suite, tuple(verdicts))


def classification_report() -> dict[str, bool]:
    """M-logic verdict for every library sentence (sanity: all should be True)."""
    return {name: classify_mlogic(sentence(name)).is_mlogic for name in LIBRARY_TEXT}
