"""Concrete syntax for MSOL formulas.

Grammar (binary connectives require parenthesized operands; chains of one
set operator associate left, mixing operators needs parentheses, and set
difference does not chain):

    formula   := 'not' formula
               | ('forall' | 'exists') VAR formula
               | '(' formula ')' [ ('and' | 'or' | '->') '(' formula ')' ]
               | atom
    atom      := term REL term        with sort-consistent REL
    REL       := '=' | '<=' | '<' | 'subseteq' | 'nsubseteq' | 'in' | 'notin'
    set_term  := set_atom { ('union' | 'inter' | '-') set_atom }
    set_atom  := 'E' | 'empty' | SETVAR | 'sing' '(' ELEMVAR ')'
               | 'comp' '(' set_term ')' | '(' set_term ')'
    int_term  := int_atom { '+' int_atom }
    int_atom  := INT | 'card' '(' set_term ')' | 'r' '(' set_term ')'
               | '(' int_term ')'

``->``, ``<``, ``notin``, ``nsubseteq`` and set ``-`` are abbreviations and
desugar while parsing; the printer emits core syntax only.  ``#`` starts a
comment.  Set variables are ``X<digits>``, element variables ``x<digits>``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import FormulaError, ParseError
from . import ast
from .ast import (
    And,
    Card,
    Complement,
    ElemEq,
    ElemIn,
    ElemVar,
    EMPTY_SET,
    E_SET,
    Exists,
    Forall,
    IntConst,
    IntEq,
    IntLe,
    IntSum,
    Not,
    Or,
    RankApp,
    SetEq,
    SetInter,
    SetUnion,
    SetVar,
    Singleton,
    SubsetEq,
)

KEYWORDS = {
    "forall", "exists", "and", "or", "not", "in", "subseteq", "union", "inter",
    "comp", "card", "r", "E", "empty", "sing", "notin", "nsubseteq",
}

_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+)
      | (?P<comment>\#[^\n]*)
      | (?P<word>[A-Za-z][A-Za-z0-9_]*)
      | (?P<int>[0-9]+)
      | (?P<arrow>->)
      | (?P<le><=)
      | (?P<sym>[()=<+\-])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # 'kw', 'setvar', 'elemvar', 'int', 'sym', 'eof'
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        lexeme = m.group(0)
        kind = m.lastgroup
        if kind == "word":
            word = lexeme
            if word in KEYWORDS:
                tokens.append(Token("kw", word, line, col))
            elif ast.is_set_var(word):
                tokens.append(Token("setvar", word, line, col))
            elif ast.is_elem_var(word):
                tokens.append(Token("elemvar", word, line, col))
            else:
                raise ParseError(
                    f"unknown word {word!r} (variables look like X1 or x1)", line, col
                )
        elif kind == "int":
            tokens.append(Token("int", lexeme, line, col))
        elif kind in ("arrow", "le", "sym"):
            tokens.append(Token("sym", lexeme, line, col))
        # whitespace and comments are skipped
        newlines = lexeme.count("\n")
        if newlines:
            line += newlines
            col = len(lexeme) - lexeme.rfind("\n")
        else:
            col += len(lexeme)
        pos = m.end()
    tokens.append(Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token], strict_rule5: bool):
        self.tokens = tokens
        self.pos = 0
        self.strict_rule5 = strict_rule5

    # -- token plumbing

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def expect(self, text: str) -> Token:
        t = self.peek()
        if t.text != text or t.kind == "eof":
            raise ParseError(f"expected {text!r}, found {t.text or 'end of input'!r}", t.line, t.col)
        return self.next()

    def error(self, message: str) -> ParseError:
        t = self.peek()
        return ParseError(message, t.line, t.col)

    # -- formulas

    def parse_formula(self):
        t = self.peek()
        if t.text == "not":
            self.next()
            return Not(self.parse_formula())
        if t.text in ("forall", "exists"):
            self.next()
            var = self.peek()
            if var.kind not in ("setvar", "elemvar"):
                raise self.error(f"expected a variable after {t.text!r}")
            self.next()
            body = self.parse_formula()
            cls = Forall if t.text == "forall" else Exists
            try:
                return cls(var.text, body)
            except FormulaError as exc:
                raise ParseError(str(exc), var.line, var.col) from None
        if t.text == "(":
            save = self.pos
            try:
                self.next()
                inner = self.parse_formula()
                self.expect(")")
            except ParseError as as_formula_err:
                self.pos = save
                try:
                    return self.parse_atom()
                except ParseError as as_atom_err:
                    # report whichever reading got further
                    key = lambda e: (e.line or 0, e.col or 0)
                    raise max(as_formula_err, as_atom_err, key=key) from None
            nxt = self.peek()
            if nxt.text in ("and", "or", "->"):
                op = self.next()
                self.expect("(")
                right = self.parse_formula()
                self.expect(")")
                try:
                    if op.text == "and":
                        return self._connect(ast.conj, And, inner, right)
                    if op.text == "or":
                        return self._connect(ast.disj, Or, inner, right)
                    return self._connect(ast.implies, None, inner, right)
                except FormulaError as exc:
                    raise ParseError(str(exc), op.line, op.col) from None
            return inner
        return self.parse_atom()

    def _connect(self, strict_ctor, lax_cls, left, right):
        if self.strict_rule5:
            return strict_ctor(left, right)
        if lax_cls is None:  # lax implication
            return Or(Not(left), right)
        return lax_cls(left, right)

    # -- atoms

    def parse_atom(self):
        t = self.peek()
        sort_l, left = self.parse_term()
        rel = self.peek()
        if rel.kind == "eof":
            raise self.error("expected a relation")
        if rel.text == "=":
            self.next()
            sort_r, right = self.parse_term()
            if sort_l != sort_r:
                raise ParseError(f"cannot compare a {sort_l} term with a {sort_r} term", rel.line, rel.col)
            if sort_l == "elem":
                return ElemEq(left, right)
            if sort_l == "set":
                return SetEq(left, right)
            return IntEq(left, right)
        if rel.text in ("<=", "<"):
            self.next()
            sort_r, right = self.parse_term()
            if sort_l != "int" or sort_r != "int":
                raise ParseError(f"{rel.text!r} needs integer terms", rel.line, rel.col)
            if rel.text == "<=":
                return IntLe(left, right)
            # p < q desugars to (p <= q) and not (p = q)
            return And(IntLe(left, right), Not(IntEq(left, right)))
        if rel.text in ("subseteq", "nsubseteq"):
            self.next()
            sort_r, right = self.parse_term()
            if sort_l != "set" or sort_r != "set":
                raise ParseError(f"{rel.text!r} needs set terms", rel.line, rel.col)
            f = SubsetEq(left, right)
            return Not(f) if rel.text == "nsubseteq" else f
        if rel.text in ("in", "notin"):
            self.next()
            sort_r, right = self.parse_term()
            if sort_l != "elem" or sort_r != "set":
                raise ParseError(f"{rel.text!r} needs an element and a set", rel.line, rel.col)
            f = ElemIn(left, right)
            return Not(f) if rel.text == "notin" else f
        raise ParseError(f"expected a relation, found {rel.text!r}", rel.line, rel.col)

    # -- terms

    def parse_term(self):
        """Returns (sort, node) with sort in {'elem', 'set', 'int'}."""
        t = self.peek()
        if t.kind == "elemvar":
            self.next()
            return "elem", ElemVar(t.text)
        if t.kind == "int" or t.text in ("card", "r"):
            return "int", self.parse_int_term()
        if t.kind == "setvar" or t.text in ("E", "empty", "sing", "comp"):
            return "set", self.parse_set_term()
        if t.text == "(":
            save = self.pos
            try:
                return "set", self.parse_set_term()
            except ParseError:
                self.pos = save
            return "int", self.parse_int_term()
        raise self.error(f"expected a term, found {t.text or 'end of input'!r}")

    def parse_set_term(self):
        left = self.parse_set_atom()
        op = None
        while self.peek().text in ("union", "inter", "-"):
            t = self.next()
            if op is None:
                op = t.text
            elif t.text != op:
                raise ParseError(
                    f"mixing {op!r} and {t.text!r} needs parentheses", t.line, t.col
                )
            elif op == "-":
                raise ParseError("set difference does not chain; add parentheses", t.line, t.col)
            right = self.parse_set_atom()
            if t.text == "union":
                left = SetUnion(left, right)
            elif t.text == "inter":
                left = SetInter(left, right)
            else:  # X - Y desugars to X inter comp(Y)
                left = ast.set_diff(left, right)
        return left

    def parse_set_atom(self):
        t = self.peek()
        if t.text == "E":
            self.next()
            return E_SET
        if t.text == "empty":
            self.next()
            return EMPTY_SET
        if t.kind == "setvar":
            self.next()
            return SetVar(t.text)
        if t.text == "sing":
            self.next()
            self.expect("(")
            v = self.peek()
            if v.kind != "elemvar":
                raise self.error("sing(...) takes an element variable")
            self.next()
            self.expect(")")
            return Singleton(ElemVar(v.text))
        if t.text == "comp":
            self.next()
            self.expect("(")
            inner = self.parse_set_term()
            self.expect(")")
            return Complement(inner)
        if t.text == "(":
            self.next()
            inner = self.parse_set_term()
            self.expect(")")
            return inner
        raise self.error(f"expected a set term, found {t.text or 'end of input'!r}")

    def parse_int_term(self):
        left = self.parse_int_atom()
        while self.peek().text == "+":
            self.next()
            left = IntSum(left, self.parse_int_atom())
        return left

    def parse_int_atom(self):
        t = self.peek()
        if t.kind == "int":
            self.next()
            return IntConst(int(t.text))
        if t.text in ("card", "r"):
            self.next()
            self.expect("(")
            inner = self.parse_set_term()
            self.expect(")")
            return Card(inner) if t.text == "card" else RankApp(inner)
        if t.text == "(":
            self.next()
            inner = self.parse_int_term()
            self.expect(")")
            return inner
        raise self.error(f"expected an integer term, found {t.text or 'end of input'!r}")


def parse(text: str, strict_rule5: bool = True):
    """Parse one formula.  With ``strict_rule5=False`` the shared-variable
    restriction on binary connectives is not enforced (used by ``rename``)."""
    p = _Parser(tokenize(text), strict_rule5)
    f = p.parse_formula()
    t = p.peek()
    if t.kind != "eof":
        raise ParseError(f"unexpected trailing input {t.text!r}", t.line, t.col)
    return f


def rename_apart_text(text: str) -> str:
    """Alpha-rename every bound variable to a fresh one and print the result.

    Accepts input that violates the shared-variable restriction on binary
    connectives and returns text that parses strictly.
    """
    f = parse(text, strict_rule5=False)
    renamed = rename_bound(f)
    return ast.to_text(renamed)


def rename_bound(f):
    """Alpha-rename every bound variable to a fresh name unused anywhere."""
    used = _numeric_indices(f)
    counter = [max(used, default=0)]

    def fresh(sort: str) -> str:
        counter[0] += 1
        return ("X" if sort == "set" else "x") + str(counter[0])

    def sub_term(t, env):
        if isinstance(t, ElemVar):
            return ElemVar(env.get(t.name, t.name))
        if isinstance(t, SetVar):
            return SetVar(env.get(t.name, t.name))
        if isinstance(t, Singleton):
            return Singleton(sub_term(t.var, env))
        if isinstance(t, Complement):
            return Complement(sub_term(t.arg, env))
        if isinstance(t, SetUnion):
            return SetUnion(sub_term(t.left, env), sub_term(t.right, env))
        if isinstance(t, SetInter):
            return SetInter(sub_term(t.left, env), sub_term(t.right, env))
        if isinstance(t, Card):
            return Card(sub_term(t.arg, env))
        if isinstance(t, RankApp):
            return RankApp(sub_term(t.arg, env))
        if isinstance(t, IntSum):
            return IntSum(sub_term(t.left, env), sub_term(t.right, env))
        return t

    def go(node, env):
        if isinstance(node, (Exists, Forall)):
            new = fresh(ast.var_sort(node.var))
            body = go(node.body, {**env, node.var: new})
            return type(node)(new, body)
        if isinstance(node, Not):
            return Not(go(node.body, env))
        if isinstance(node, (And, Or)):
            return type(node)(go(node.left, env), go(node.right, env))
        if isinstance(node, (ElemEq, SetEq, SubsetEq, IntEq, IntLe)):
            return type(node)(sub_term(node.left, env), sub_term(node.right, env))
        if isinstance(node, ElemIn):
            return ElemIn(sub_term(node.elem, env), sub_term(node.set, env))
        raise FormulaError(f"not a formula: {node!r}")

    return go(f, {})


def _numeric_indices(f) -> set[int]:
    return {int(name[1:]) for name in f.vars}
