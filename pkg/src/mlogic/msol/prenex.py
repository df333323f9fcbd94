"""Prenex normal form, element-to-set quantifier conversion, M-logic classification.

Prenex extraction uses the standard rewrites: negation flips a quantifier
block, and a quantifier pulls out of a binary connective once bound names
cannot collide (bound variables are renamed apart first).  The element-to-set
conversion turns each element quantifier into a set quantifier over a fresh
variable plus an innermost universal guard ``(X = {x}) -> ...``.

Note on the conversion: the universal variant preserves evaluation on every
structure, but the existential variant does not (any non-singleton witness
satisfies the guard vacuously).  It is the standard normal-form construction
and is used here only to analyze prefix shape.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import FormulaError
from . import ast
from .ast import (
    And,
    ElemVar,
    Exists,
    Forall,
    Formula,
    Not,
    Or,
    SetEq,
    SetVar,
    Singleton,
)

_FLIP = {"exists": "forall", "forall": "exists"}


@dataclass(frozen=True)
class PrenexForm:
    """A quantifier prefix (outermost first) over a quantifier-free matrix."""

    prefix: tuple[tuple[str, str], ...]  # (kind, variable), kind in {'exists', 'forall'}
    matrix: Formula

    def to_formula(self) -> Formula:
        f = self.matrix
        for kind, var in reversed(self.prefix):
            f = Exists(var, f) if kind == "exists" else Forall(var, f)
        return f

    def set_kinds(self) -> tuple[str, ...]:
        return tuple(k for k, v in self.prefix if ast.is_set_var(v))

    def elem_kinds(self) -> tuple[str, ...]:
        return tuple(k for k, v in self.prefix if ast.is_elem_var(v))


def _rename_apart(f: Formula) -> Formula:
    """Rename binders so no two binding sites share a variable name."""
    claimed = set(f.free)
    counter = [max((int(n[1:]) for n in f.vars), default=0)]

    def fresh(sort: str) -> str:
        counter[0] += 1
        return ("X" if sort == "set" else "x") + str(counter[0])

    def go(node, env):
        if isinstance(node, (Exists, Forall)):
            name = node.var
            if name in claimed:
                name = fresh(ast.var_sort(node.var))
            claimed.add(name)
            body = go(node.body, {**env, node.var: name} if name != node.var else env)
            return type(node)(name, body)
        if isinstance(node, Not):
            return Not(go(node.body, env))
        if isinstance(node, (And, Or)):
            return type(node)(go(node.left, env), go(node.right, env))
        if not env:
            return node
        return _substitute_atom(node, env)

    return go(f, {})


def _substitute_atom(node, env):
    def sub_term(t):
        if isinstance(t, ast.ElemVar):
            return ast.ElemVar(env.get(t.name, t.name))
        if isinstance(t, ast.SetVar):
            return ast.SetVar(env.get(t.name, t.name))
        if isinstance(t, ast.Singleton):
            return ast.Singleton(sub_term(t.var))
        if isinstance(t, ast.Complement):
            return ast.Complement(sub_term(t.arg))
        if isinstance(t, ast.SetUnion):
            return ast.SetUnion(sub_term(t.left), sub_term(t.right))
        if isinstance(t, ast.SetInter):
            return ast.SetInter(sub_term(t.left), sub_term(t.right))
        if isinstance(t, ast.Card):
            return ast.Card(sub_term(t.arg))
        if isinstance(t, ast.RankApp):
            return ast.RankApp(sub_term(t.arg))
        if isinstance(t, ast.IntSum):
            return ast.IntSum(sub_term(t.left), sub_term(t.right))
        return t

    if isinstance(node, ast.ElemIn):
        return ast.ElemIn(sub_term(node.elem), sub_term(node.set))
    if isinstance(node, ast.ATOM_TYPES):
        return type(node)(sub_term(node.left), sub_term(node.right))
    raise FormulaError(f"not an atom: {node!r}")


def prenex(f: Formula) -> PrenexForm:
    """Equivalent prefix + quantifier-free matrix.

    Element-quantifier extraction over 'or'/'and' assumes a nonempty ground
    set (a universal or existential over no elements collapses otherwise);
    set quantifiers are safe unconditionally.
    """
    g = _rename_apart(f)

    def pull(node):
        if isinstance(node, Exists):
            p, m = pull(node.body)
            return [("exists", node.var)] + p, m
        if isinstance(node, Forall):
            p, m = pull(node.body)
            return [("forall", node.var)] + p, m
        if isinstance(node, Not):
            p, m = pull(node.body)
            flipped = [(_FLIP[k], v) for k, v in p]
            if isinstance(m, Not):  # collapse double negation
                return flipped, m.body
            return flipped, Not(m)
        if isinstance(node, (And, Or)):
            pl, ml = pull(node.left)
            pr, mr = pull(node.right)
            return pl + pr, type(node)(ml, mr)
        return [], node

    p, m = pull(g)
    return PrenexForm(tuple(p), m)


def elementwise_to_set(p: PrenexForm) -> PrenexForm:
    """Replace each element quantifier by a same-kind set quantifier over a
    fresh variable, adding an innermost universal guard ``(X = {x}) -> ...``.

    Quantifiers already over sets are untouched; with no element quantifiers
    the form is returned unchanged.
    """
    if not any(ast.is_elem_var(v) for _, v in p.prefix):
        return p
    counter = max(
        (int(n[1:]) for n in p.matrix.vars | {v for _, v in p.prefix}), default=0
    )
    head: list[tuple[str, str]] = []
    guards: list[tuple[str, str]] = []
    matrix = p.matrix
    for kind, var in p.prefix:
        if ast.is_set_var(var):
            head.append((kind, var))
            continue
        counter += 1
        fresh = f"X{counter}"
        head.append((kind, fresh))
        guards.append(("forall", var))
        matrix = Or(Not(SetEq(SetVar(fresh), Singleton(ElemVar(var)))), matrix)
    return PrenexForm(tuple(head + guards), matrix)


@dataclass(frozen=True)
class MLogicClassification:
    """Outcome of the syntactic M-logic test.

    ``is_mlogic`` is a sufficient check only: it reports True when the prenex
    prefix (possibly after the element-to-set conversion) has one quantifier
    kind for all set variables and one for all element variables.  False
    means the syntactic normalization failed, not that no equivalent
    homogeneous form exists.
    """

    is_mlogic: bool
    prefix: tuple[tuple[str, str], ...]
    set_kind: str | None
    elem_kind: str | None
    used_conversion: bool

    @property
    def summary(self) -> str:
        if not self.prefix:
            return "quantifier-free"
        return " ".join(f"{k} {v}" for k, v in self.prefix)


def _blocks_ordered(prefix) -> bool:
    """True when no set quantifier appears after an element quantifier."""
    seen_elem = False
    for _, v in prefix:
        if ast.is_elem_var(v):
            seen_elem = True
        elif seen_elem:
            return False
    return True


def _classify_prefix(prefix, used_conversion) -> MLogicClassification:
    set_kinds = {k for k, v in prefix if ast.is_set_var(v)}
    elem_kinds = {k for k, v in prefix if ast.is_elem_var(v)}
    ok = len(set_kinds) <= 1 and len(elem_kinds) <= 1
    return MLogicClassification(
        is_mlogic=ok,
        prefix=tuple(prefix),
        set_kind=next(iter(set_kinds)) if len(set_kinds) == 1 else None,
        elem_kind=next(iter(elem_kinds)) if len(elem_kinds) == 1 else None,
        used_conversion=used_conversion,
    )


def classify_mlogic(f: Formula) -> MLogicClassification:
    """Syntactic M-logic test: prenex the formula and check the prefix.

    When the prefix already has all set quantifiers before all element
    quantifiers it is checked directly; otherwise the element-to-set
    conversion reorders it first.
    """
    p = prenex(f)
    if _blocks_ordered(p.prefix):
        return _classify_prefix(p.prefix, used_conversion=False)
    converted = elementwise_to_set(p)
    return _classify_prefix(converted.prefix, used_conversion=True)
