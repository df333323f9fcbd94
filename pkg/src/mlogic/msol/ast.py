"""Abstract syntax for monadic second-order logic over matroid structures.

Three term sorts (elements, sets, non-negative integers) and formulas built
from six atomic relations, the boolean connectives, and quantifiers over
element and set variables.  Every formula node caches its variable set and
free-variable set; binary connectives obey the rule that no variable may be
free in one operand and bound in the other (use :func:`conj`/:func:`disj`,
which enforce it).

Set variables are named ``X<digits>``, element variables ``x<digits>``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

from ..errors import FormulaError

_SET_VAR_RE = re.compile(r"X[0-9]+\Z")
_ELEM_VAR_RE = re.compile(r"x[0-9]+\Z")


def is_set_var(name: str) -> bool:
    return bool(_SET_VAR_RE.match(name))


def is_elem_var(name: str) -> bool:
    return bool(_ELEM_VAR_RE.match(name))


def var_sort(name: str) -> str:
    if is_set_var(name):
        return "set"
    if is_elem_var(name):
        return "elem"
    raise FormulaError(f"not a variable name: {name!r}")


# ---------------------------------------------------------------------------
# terms


@dataclass(frozen=True)
class ElemVar:
    name: str


@dataclass(frozen=True)
class SetConst:
    full: bool  # True: the ground set E; False: the empty set


E_SET = SetConst(True)
EMPTY_SET = SetConst(False)


@dataclass(frozen=True)
class SetVar:
    name: str


@dataclass(frozen=True)
class Singleton:
    var: ElemVar


@dataclass(frozen=True)
class Complement:
    arg: "SetTerm"


@dataclass(frozen=True)
class SetUnion:
    left: "SetTerm"
    right: "SetTerm"


@dataclass(frozen=True)
class SetInter:
    left: "SetTerm"
    right: "SetTerm"


@dataclass(frozen=True)
class IntConst:
    value: int


@dataclass(frozen=True)
class Card:
    arg: "SetTerm"


@dataclass(frozen=True)
class RankApp:
    arg: "SetTerm"


@dataclass(frozen=True)
class IntSum:
    left: "IntTerm"
    right: "IntTerm"


SetTerm = Union[SetConst, SetVar, Singleton, Complement, SetUnion, SetInter]
IntTerm = Union[IntConst, Card, RankApp, IntSum]
Term = Union[ElemVar, SetTerm, IntTerm]


def term_vars(t: Term) -> frozenset[str]:
    if isinstance(t, ElemVar):
        return frozenset((t.name,))
    if isinstance(t, SetVar):
        return frozenset((t.name,))
    if isinstance(t, Singleton):
        return frozenset((t.var.name,))
    if isinstance(t, (SetConst, IntConst)):
        return frozenset()
    if isinstance(t, (Complement, Card, RankApp)):
        return term_vars(t.arg)
    if isinstance(t, (SetUnion, SetInter, IntSum)):
        return term_vars(t.left) | term_vars(t.right)
    raise FormulaError(f"not a term: {t!r}")


def set_diff(left: SetTerm, right: SetTerm) -> SetTerm:
    """X - Y as the core term X inter comp(Y)."""
    return SetInter(left, Complement(right))


# ---------------------------------------------------------------------------
# formulas


def _bookkeep(node, vars_: frozenset[str], free: frozenset[str]) -> None:
    object.__setattr__(node, "vars", vars_)
    object.__setattr__(node, "free", free)


@dataclass(frozen=True)
class ElemEq:
    left: ElemVar
    right: ElemVar
    vars: frozenset = field(init=False, repr=False, compare=False, default=None)
    free: frozenset = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        v = term_vars(self.left) | term_vars(self.right)
        _bookkeep(self, v, v)


@dataclass(frozen=True)
class SetEq:
    left: SetTerm
    right: SetTerm
    vars: frozenset = field(init=False, repr=False, compare=False, default=None)
    free: frozenset = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        v = term_vars(self.left) | term_vars(self.right)
        _bookkeep(self, v, v)


@dataclass(frozen=True)
class SubsetEq:
    left: SetTerm
    right: SetTerm
    vars: frozenset = field(init=False, repr=False, compare=False, default=None)
    free: frozenset = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        v = term_vars(self.left) | term_vars(self.right)
        _bookkeep(self, v, v)


@dataclass(frozen=True)
class IntEq:
    left: IntTerm
    right: IntTerm
    vars: frozenset = field(init=False, repr=False, compare=False, default=None)
    free: frozenset = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        v = term_vars(self.left) | term_vars(self.right)
        _bookkeep(self, v, v)


@dataclass(frozen=True)
class IntLe:
    left: IntTerm
    right: IntTerm
    vars: frozenset = field(init=False, repr=False, compare=False, default=None)
    free: frozenset = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        v = term_vars(self.left) | term_vars(self.right)
        _bookkeep(self, v, v)


@dataclass(frozen=True)
class ElemIn:
    elem: ElemVar
    set: SetTerm
    vars: frozenset = field(init=False, repr=False, compare=False, default=None)
    free: frozenset = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        v = term_vars(self.elem) | term_vars(self.set)
        _bookkeep(self, v, v)


@dataclass(frozen=True)
class Not:
    body: "Formula"
    vars: frozenset = field(init=False, repr=False, compare=False, default=None)
    free: frozenset = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        _bookkeep(self, self.body.vars, self.body.free)


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"
    vars: frozenset = field(init=False, repr=False, compare=False, default=None)
    free: frozenset = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        _bookkeep(self, self.left.vars | self.right.vars, self.left.free | self.right.free)


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"
    vars: frozenset = field(init=False, repr=False, compare=False, default=None)
    free: frozenset = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        _bookkeep(self, self.left.vars | self.right.vars, self.left.free | self.right.free)


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"
    vars: frozenset = field(init=False, repr=False, compare=False, default=None)
    free: frozenset = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        var_sort(self.var)
        if self.var not in self.body.free:
            raise FormulaError(f"cannot quantify {self.var}: not free in the body")
        _bookkeep(self, self.body.vars, self.body.free - {self.var})


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"
    vars: frozenset = field(init=False, repr=False, compare=False, default=None)
    free: frozenset = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        var_sort(self.var)
        if self.var not in self.body.free:
            raise FormulaError(f"cannot quantify {self.var}: not free in the body")
        _bookkeep(self, self.body.vars, self.body.free - {self.var})


Formula = Union[ElemEq, SetEq, SubsetEq, IntEq, IntLe, ElemIn, Not, And, Or, Exists, Forall]

ATOM_TYPES = (ElemEq, SetEq, SubsetEq, IntEq, IntLe, ElemIn)
QUANTIFIER_TYPES = (Exists, Forall)


def is_sentence(f: Formula) -> bool:
    return not f.free


# validated constructors ------------------------------------------------------


def _check_connective(left: Formula, right: Formula, opname: str) -> None:
    clash = (left.free & (right.vars - right.free)) | ((left.vars - left.free) & right.free)
    if clash:
        name = min(clash)
        raise FormulaError(
            f"variable {name} is free in one operand of '{opname}' and bound in the other; "
            "rename the bound occurrence"
        )


def conj(left: Formula, right: Formula) -> And:
    _check_connective(left, right, "and")
    return And(left, right)


def disj(left: Formula, right: Formula) -> Or:
    _check_connective(left, right, "or")
    return Or(left, right)


def neg(body: Formula) -> Not:
    return Not(body)


def implies(left: Formula, right: Formula) -> Or:
    """P -> Q as the core formula (not P) or Q."""
    return disj(Not(left), right)


def exists(var: str, body: Formula) -> Exists:
    return Exists(var, body)


def forall(var: str, body: Formula) -> Forall:
    return Forall(var, body)


def conj_all(parts) -> Formula:
    items = list(parts)
    if not items:
        raise FormulaError("empty conjunction")
    out = items[0]
    for p in items[1:]:
        out = conj(out, p)
    return out


def int_lt(left: IntTerm, right: IntTerm) -> Formula:
    """p < q as the core formula (p <= q) and not (p = q)."""
    return conj(IntLe(left, right), Not(IntEq(left, right)))


# traversal helpers -----------------------------------------------------------


def walk(f: Formula):
    """Yield every formula node, parents before children."""
    yield f
    if isinstance(f, Not):
        yield from walk(f.body)
    elif isinstance(f, (And, Or)):
        yield from walk(f.left)
        yield from walk(f.right)
    elif isinstance(f, QUANTIFIER_TYPES):
        yield from walk(f.body)


def is_quantifier_free(f: Formula) -> bool:
    return not any(isinstance(node, QUANTIFIER_TYPES) for node in walk(f))


def set_terms_in(f: Formula) -> list[SetTerm]:
    """Every set-sorted term occurring in the formula, deduplicated, outer first."""
    seen: list[SetTerm] = []

    def add_term(t):
        if isinstance(t, (SetConst, SetVar, Singleton, Complement, SetUnion, SetInter)):
            if t not in seen:
                seen.append(t)
        if isinstance(t, (Complement, Card, RankApp)):
            add_term(t.arg)
        elif isinstance(t, (SetUnion, SetInter, IntSum)):
            add_term(t.left)
            add_term(t.right)

    for node in walk(f):
        if isinstance(node, (SetEq, SubsetEq)):
            add_term(node.left)
            add_term(node.right)
        elif isinstance(node, (IntEq, IntLe)):
            add_term(node.left)
            add_term(node.right)
        elif isinstance(node, ElemIn):
            add_term(node.set)
    return seen


# printer ---------------------------------------------------------------------


def term_text(t: Term) -> str:
    if isinstance(t, ElemVar):
        return t.name
    if isinstance(t, SetConst):
        return "E" if t.full else "empty"
    if isinstance(t, SetVar):
        return t.name
    if isinstance(t, Singleton):
        return f"sing({t.var.name})"
    if isinstance(t, Complement):
        return f"comp({term_text(t.arg)})"
    if isinstance(t, SetUnion):
        return f"({term_text(t.left)} union {term_text(t.right)})"
    if isinstance(t, SetInter):
        return f"({term_text(t.left)} inter {term_text(t.right)})"
    if isinstance(t, IntConst):
        return str(t.value)
    if isinstance(t, Card):
        return f"card({term_text(t.arg)})"
    if isinstance(t, RankApp):
        return f"r({term_text(t.arg)})"
    if isinstance(t, IntSum):
        return f"({term_text(t.left)} + {term_text(t.right)})"
    raise FormulaError(f"not a term: {t!r}")


def to_text(f: Formula) -> str:
    """Canonical concrete syntax; parsing it back yields an identical tree."""
    if isinstance(f, ElemEq):
        return f"{term_text(f.left)} = {term_text(f.right)}"
    if isinstance(f, SetEq):
        return f"{term_text(f.left)} = {term_text(f.right)}"
    if isinstance(f, SubsetEq):
        return f"{term_text(f.left)} subseteq {term_text(f.right)}"
    if isinstance(f, IntEq):
        return f"{term_text(f.left)} = {term_text(f.right)}"
    if isinstance(f, IntLe):
        return f"{term_text(f.left)} <= {term_text(f.right)}"
    if isinstance(f, ElemIn):
        return f"{term_text(f.elem)} in {term_text(f.set)}"
    if isinstance(f, Not):
        return f"not ({to_text(f.body)})"
    if isinstance(f, And):
        return f"({to_text(f.left)}) and ({to_text(f.right)})"
    if isinstance(f, Or):
        return f"({to_text(f.left)}) or ({to_text(f.right)})"
    if isinstance(f, Exists):
        return f"exists {f.var} ({to_text(f.body)})"
    if isinstance(f, Forall):
        return f"forall {f.var} ({to_text(f.body)})"
    raise FormulaError(f"not a formula: {f!r}")
