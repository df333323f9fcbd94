"""Satisfaction of MSOL formulas over matroid structures.

Set quantifiers range over all subsets of the ground set, element
quantifiers over its elements.  The evaluator compiles the formula tree into
nested closures once per call, short-circuits conjunction, disjunction and
quantifier loops, and routes every rank query through the structure's memo
table.  An a-priori budget check refuses formulas whose quantifier nesting
would generate too many matrix evaluations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from ..core import GroundSet, Matroid
from ..errors import BudgetError, DomainError, ValidationError
from . import ast
from .ast import (
    And,
    Card,
    Complement,
    ElemEq,
    ElemIn,
    ElemVar,
    Exists,
    Forall,
    Formula,
    IntConst,
    IntEq,
    IntLe,
    IntSum,
    Not,
    Or,
    RankApp,
    SetConst,
    SetEq,
    SetInter,
    SetUnion,
    SetVar,
    Singleton,
    SubsetEq,
)

DEFAULT_BUDGET = 2 ** 34


@dataclass(frozen=True)
class Interpretation:
    """Assignment of free set variables to subsets and element variables to elements.

    Sets are stored as bitmasks, elements as positions in the ground set.
    """

    sets: Mapping[str, int] = field(default_factory=dict)
    elems: Mapping[str, int] = field(default_factory=dict)

    @classmethod
    def from_names(
        cls,
        ground: GroundSet,
        sets: Mapping[str, Iterable[str]] | None = None,
        elems: Mapping[str, str] | None = None,
    ) -> "Interpretation":
        set_masks = {}
        for var, subset in (sets or {}).items():
            if not ast.is_set_var(var):
                raise ValidationError(f"{var!r} is not a set variable name")
            set_masks[var] = ground.as_mask(subset)
        elem_idx = {}
        for var, name in (elems or {}).items():
            if not ast.is_elem_var(var):
                raise ValidationError(f"{var!r} is not an element variable name")
            pos = ground.index.get(name)
            if pos is None:
                raise DomainError(f"unknown element: {name!r}")
            elem_idx[var] = pos
        return cls(set_masks, elem_idx)

    def domain(self) -> frozenset[str]:
        return frozenset(self.sets) | frozenset(self.elems)

    def as_env(self) -> dict[str, int]:
        return {**self.sets, **self.elems}


EMPTY_INTERPRETATION = Interpretation()


def check_budget(f: Formula, ground_size: int, budget: int) -> None:
    """Refuse up front when nested quantifier branches would exceed ``budget``
    matrix evaluations.  Names the outermost quantifier that overflows."""

    def cost(node) -> int:
        if isinstance(node, (Exists, Forall)):
            branch = (1 << ground_size) if ast.is_set_var(node.var) else max(ground_size, 1)
            inner = cost(node.body)
            total = branch * inner
            if total > budget:
                raise BudgetError(
                    f"quantifier over {node.var}: about {total:.3g} matrix evaluations "
                    f"exceed the budget of {budget} (override with force/--force)"
                )
            return total
        if isinstance(node, Not):
            return cost(node.body)
        if isinstance(node, (And, Or)):
            return cost(node.left) + cost(node.right)
        return 1

    cost(f)


def _compile(m: Matroid):
    """Closure compiler: one callable env -> value per AST node."""
    n = m.ground.size
    full = m.ground.full_mask
    rank = m.rank

    def cset(t):
        if isinstance(t, SetConst):
            value = full if t.full else 0
            return lambda env: value
        if isinstance(t, SetVar):
            name = t.name
            return lambda env: env[name]
        if isinstance(t, Singleton):
            name = t.var.name
            return lambda env: 1 << env[name]
        if isinstance(t, Complement):
            arg = cset(t.arg)
            return lambda env: full & ~arg(env)
        if isinstance(t, SetUnion):
            left, right = cset(t.left), cset(t.right)
            return lambda env: left(env) | right(env)
        if isinstance(t, SetInter):
            left, right = cset(t.left), cset(t.right)
            return lambda env: left(env) & right(env)
        raise ValidationError(f"not a set term: {t!r}")

    def cint(t):
        if isinstance(t, IntConst):
            value = t.value
            return lambda env: value
        if isinstance(t, Card):
            arg = cset(t.arg)
            return lambda env: arg(env).bit_count()
        if isinstance(t, RankApp):
            arg = cset(t.arg)
            return lambda env: rank(arg(env))
        if isinstance(t, IntSum):
            left, right = cint(t.left), cint(t.right)
            return lambda env: left(env) + right(env)
        raise ValidationError(f"not an integer term: {t!r}")

    def cform(f):
        if isinstance(f, ElemEq):
            a, b = f.left.name, f.right.name
            return lambda env: env[a] == env[b]
        if isinstance(f, SetEq):
            left, right = cset(f.left), cset(f.right)
            return lambda env: left(env) == right(env)
        if isinstance(f, SubsetEq):
            left, right = cset(f.left), cset(f.right)
            return lambda env: not (left(env) & ~right(env))
        if isinstance(f, IntEq):
            left, right = cint(f.left), cint(f.right)
            return lambda env: left(env) == right(env)
        if isinstance(f, IntLe):
            left, right = cint(f.left), cint(f.right)
            return lambda env: left(env) <= right(env)
        if isinstance(f, ElemIn):
            name = f.elem.name
            sset = cset(f.set)
            return lambda env: bool(sset(env) >> env[name] & 1)
        if isinstance(f, Not):
            body = cform(f.body)
            return lambda env: not body(env)
        if isinstance(f, And):
            left, right = cform(f.left), cform(f.right)
            return lambda env: left(env) and right(env)
        if isinstance(f, Or):
            left, right = cform(f.left), cform(f.right)
            return lambda env: left(env) or right(env)
        if isinstance(f, (Exists, Forall)):
            body = cform(f.body)
            var = f.var
            want = isinstance(f, Exists)
            domain = (1 << n) if ast.is_set_var(var) else n

            def run(env, _body=body, _var=var, _want=want, _domain=domain):
                saved = env.get(_var)
                try:
                    for value in range(_domain):
                        env[_var] = value
                        if _body(env) == _want:
                            return _want
                    return not _want
                finally:
                    if saved is None:
                        env.pop(_var, None)
                    else:
                        env[_var] = saved

            return run
        raise ValidationError(f"not a formula: {f!r}")

    return cform


def _check_domain(f: Formula, interp: Interpretation) -> None:
    dom = interp.domain()
    if dom != f.free:
        missing = sorted(f.free - dom)
        extra = sorted(dom - f.free)
        parts = []
        if missing:
            parts.append(f"unassigned free variables {missing}")
        if extra:
            parts.append(f"assignments for non-free variables {extra}")
        raise ValidationError("interpretation mismatch: " + "; ".join(parts))


def evaluate(
    m: Matroid,
    f: Formula,
    interp: Interpretation | None = None,
    budget: int | None = DEFAULT_BUDGET,
) -> bool:
    """Does the structure satisfy the formula under the interpretation?

    The interpretation's domain must equal the formula's free variables;
    sentences take the empty interpretation.  ``budget=None`` disables the
    a-priori cost check.
    """
    interp = interp or EMPTY_INTERPRETATION
    _check_domain(f, interp)
    if budget is not None:
        check_budget(f, m.ground.size, budget)
    return _compile(m)(f)(interp.as_env())


def witness_trace(
    m: Matroid,
    f: Formula,
    interp: Interpretation | None = None,
    budget: int | None = DEFAULT_BUDGET,
) -> tuple[bool, list[tuple[str, int]]]:
    """Evaluate and record deciding outer-quantifier assignments.

    Walking the leading quantifiers: a true existential records its first
    witness, a false universal its first counterexample, and the walk
    descends under that value; a false existential or true universal stops
    the walk.  Values are masks for set variables and element positions for
    element variables.
    """
    interp = interp or EMPTY_INTERPRETATION
    _check_domain(f, interp)
    if budget is not None:
        check_budget(f, m.ground.size, budget)
    compiler = _compile(m)
    env = interp.as_env()
    trace: list[tuple[str, int]] = []
    node = f
    while isinstance(node, (Exists, Forall)):
        want = isinstance(node, Exists)
        domain = (1 << m.ground.size) if ast.is_set_var(node.var) else m.ground.size
        body_fn = compiler(node.body)
        deciding = None
        for value in range(domain):
            env[node.var] = value
            if body_fn(env) == want:
                deciding = value
                break
        if deciding is None:
            env.pop(node.var, None)
            return (not want), trace
        trace.append((node.var, deciding))
        env[node.var] = deciding
        node = node.body
    return compiler(node)(env), trace


def format_trace(ground: GroundSet, trace: list[tuple[str, int]]) -> list[str]:
    """Render trace entries as ``X1 = {a, b}`` / ``x1 = a`` lines."""
    out = []
    for var, value in trace:
        if ast.is_set_var(var):
            out.append(f"{var} = {ground.format_set(value)}")
        else:
            out.append(f"{var} = {ground.elements[value]}")
    return out
