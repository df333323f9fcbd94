"""Shared fixtures and independent reference oracles.

The oracles here (brute-force matching, naive formula evaluation, graphic
rank via union-find) deliberately do not share code paths with the package
implementations they cross-check.
"""

import itertools

import pytest

from mlogic import ExplicitMatroid, GroundSet, kinser_matroid, uniform_matroid
from mlogic.msol import ast as A


# ---------------------------------------------------------------------------
# matroid constructions


def add_coloop(m, name="coloop"):
    """Direct sum with a single coloop appended after the existing elements."""
    n = m.ground.size
    ground = GroundSet(list(m.ground.elements) + [name])
    table = []
    for mask in range(1 << (n + 1)):
        inner = mask & ((1 << n) - 1)
        table.append(m.rank(inner) + (mask >> n & 1))
    return ExplicitMatroid(ground, table, validate=False)


def add_loop(m, name="loop"):
    """Direct sum with a single loop appended after the existing elements."""
    n = m.ground.size
    ground = GroundSet(list(m.ground.elements) + [name])
    table = [m.rank(mask & ((1 << n) - 1)) for mask in range(1 << (n + 1))]
    return ExplicitMatroid(ground, table, validate=False)


def graphic_k4():
    """Cycle matroid of the complete graph on 4 vertices: 6 edges, rank 3.

    Rank of an edge set is 4 minus the number of connected components,
    computed by union-find, an implementation independent of rank oracles.
    """
    edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    ground = GroundSet([f"g{u}{v}" for u, v in edges])

    def components(mask):
        parent = list(range(4))

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for i, (u, v) in enumerate(edges):
            if mask >> i & 1:
                parent[find(u)] = find(v)
        return len({find(v) for v in range(4)})

    table = [4 - components(mask) for mask in range(64)]
    return ExplicitMatroid(ground, table, validate=False)


def vamos_matroid():
    """The 8-element rank-4 matroid with exactly five 4-point planes."""
    ground = GroundSet(["a1", "a2", "b1", "b2", "c1", "c2", "d1", "d2"])
    pair = {"a": 0b00000011, "b": 0b00001100, "c": 0b00110000, "d": 0b11000000}
    planes = {
        pair["a"] | pair["b"],
        pair["a"] | pair["c"],
        pair["a"] | pair["d"],
        pair["b"] | pair["c"],
        pair["b"] | pair["d"],
    }
    table = [3 if mask in planes else min(mask.bit_count(), 4) for mask in range(256)]
    return ExplicitMatroid(ground, table, declared_rank=4, validate=False)


def small_matroid_corpus():
    """Twelve matroids with at most six elements: uniform, graphic, loops, coloops."""
    return [
        uniform_matroid(1, 1),
        uniform_matroid(0, 1),  # a single loop
        uniform_matroid(1, 2),
        uniform_matroid(1, 3),
        uniform_matroid(2, 3),
        uniform_matroid(2, 4),
        uniform_matroid(3, 4),
        uniform_matroid(2, 5),
        uniform_matroid(3, 5),
        uniform_matroid(3, 6),
        graphic_k4(),
        add_loop(add_coloop(uniform_matroid(2, 4))),
    ]


@pytest.fixture(scope="session")
def u24():
    return uniform_matroid(2, 4)


@pytest.fixture(scope="session")
def kin4():
    return kinser_matroid(4)


@pytest.fixture(scope="session")
def kin4_minus():
    return kinser_matroid(4, [1])


@pytest.fixture(scope="session")
def vamos():
    return vamos_matroid()


@pytest.fixture(scope="session")
def kin19():
    return kinser_matroid(19)


@pytest.fixture(scope="session")
def corpus12():
    return small_matroid_corpus()


def corrupted_structure():
    """Two elements with r({a,b}) = 2 but r({a}) = r({b}) = 0: violates R3."""
    return ExplicitMatroid(GroundSet(["a", "b"]), [0, 0, 0, 2], validate=False)


# ---------------------------------------------------------------------------
# independent oracles


def brute_force_matching(element_families):
    """Maximum matching size by trying every injection element -> family.

    ``element_families`` lists, per element, the collection of family
    indices it may use.  Exponential; callers keep inputs tiny.
    """

    def best(i, used):
        if i == len(element_families):
            return 0
        score = best(i + 1, used)  # leave element i unmatched
        for f in element_families[i]:
            if f not in used:
                score = max(score, 1 + best(i + 1, used | {f}))
        return score

    return best(0, frozenset())


def naive_evaluate(m, f, env):
    """Reference satisfaction: full tree walk, no short-circuiting, no memo."""
    full = m.ground.full_mask
    n = m.ground.size

    def eset(t, env):
        if isinstance(t, A.SetConst):
            return full if t.full else 0
        if isinstance(t, A.SetVar):
            return env[t.name]
        if isinstance(t, A.Singleton):
            return 1 << env[t.var.name]
        if isinstance(t, A.Complement):
            return full & ~eset(t.arg, env)
        if isinstance(t, A.SetUnion):
            return eset(t.left, env) | eset(t.right, env)
        if isinstance(t, A.SetInter):
            return eset(t.left, env) & eset(t.right, env)
        raise TypeError(t)

    def eint(t, env):
        if isinstance(t, A.IntConst):
            return t.value
        if isinstance(t, A.Card):
            return bin(eset(t.arg, env)).count("1")
        if isinstance(t, A.RankApp):
            return m.rank(eset(t.arg, env))
        if isinstance(t, A.IntSum):
            return eint(t.left, env) + eint(t.right, env)
        raise TypeError(t)

    def go(f, env):
        if isinstance(f, A.ElemEq):
            return env[f.left.name] == env[f.right.name]
        if isinstance(f, A.SetEq):
            return eset(f.left, env) == eset(f.right, env)
        if isinstance(f, A.SubsetEq):
            left, right = eset(f.left, env), eset(f.right, env)
            return (left | right) == right
        if isinstance(f, A.IntEq):
            return eint(f.left, env) == eint(f.right, env)
        if isinstance(f, A.IntLe):
            return eint(f.left, env) <= eint(f.right, env)
        if isinstance(f, A.ElemIn):
            return bool(eset(f.set, env) >> env[f.elem.name] & 1)
        if isinstance(f, A.Not):
            return not go(f.body, env)
        if isinstance(f, A.And):
            results = [go(f.left, env), go(f.right, env)]
            return all(results)
        if isinstance(f, A.Or):
            results = [go(f.left, env), go(f.right, env)]
            return any(results)
        if isinstance(f, (A.Exists, A.Forall)):
            domain = range(1 << n) if A.is_set_var(f.var) else range(n)
            results = [go(f.body, {**env, f.var: value}) for value in domain]
            return any(results) if isinstance(f, A.Exists) else all(results)
        raise TypeError(f)

    return go(f, dict(env))


def all_interpretations(ground, set_vars, elem_vars):
    """Every assignment of the given variables over the ground set."""
    n = ground.size
    set_choices = [range(1 << n)] * len(set_vars)
    elem_choices = [range(n)] * len(elem_vars)
    for masks in itertools.product(*set_choices):
        for idxs in itertools.product(*elem_choices):
            yield dict(zip(set_vars, masks)) | dict(zip(elem_vars, idxs))
