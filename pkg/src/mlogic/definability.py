"""Definable subsets relative to an interpretation, and the witness machinery
that locates a circuit-hyperplane no bounded-variable sentence can see.

Relative to an assignment of variables to subsets (element variables count
as singletons), a *minterm* is a nonempty intersection that picks, for each
variable, either its assigned set or the complement; the *definable* sets
are the unions of minterms.  With m assigned variables there are at most
2^m minterms and 2^(2^m) definable sets, closed under complement, union,
and intersection.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .core import GroundSet, Matroid
from .errors import BudgetError, ValidationError
from .kinser import KinserDescriptor, kinser_matroid
from .msol import Interpretation, ast
from .msol.evaluate import _compile

VARIABLE_LIMIT = 5


def _ordered_variables(interp: Interpretation) -> list[tuple[str, bool]]:
    """Set variables then element variables, each sorted by numeric index."""
    key = lambda name: (int(name[1:]), name)
    out = [(v, True) for v in sorted(interp.sets, key=key)]
    out += [(v, False) for v in sorted(interp.elems, key=key)]
    return out


@dataclass(frozen=True)
class MintermBasis:
    """The nonempty minterms of an interpretation, in sign-pattern order."""

    ground: GroundSet
    variables: tuple[str, ...]
    assigned: tuple[int, ...]  # per-variable mask; singletons for element variables
    minterms: tuple[int, ...]

    @cached_property
    def elem_image(self) -> int:
        """Union of the element-variable singletons (the set T)."""
        mask = 0
        for var, assigned in zip(self.variables, self.assigned):
            if ast.is_elem_var(var):
                mask |= assigned
        return mask

    def set_only(self) -> "MintermBasis":
        keep = [(v, a) for v, a in zip(self.variables, self.assigned) if ast.is_set_var(v)]
        return minterm_basis_from_masks(self.ground, tuple(v for v, _ in keep), tuple(a for _, a in keep))


def minterm_basis_from_masks(
    ground: GroundSet, variables: tuple[str, ...], assigned: tuple[int, ...]
) -> MintermBasis:
    k = len(variables)
    full = ground.full_mask
    minterms = []
    for pattern in range(1 << k):
        inter = full
        for j in range(k):
            inter &= assigned[j] if pattern >> j & 1 else full & ~assigned[j]
            if not inter:
                break
        if inter:
            minterms.append(inter)
    return MintermBasis(ground, variables, assigned, tuple(minterms))


def minterm_basis(interp: Interpretation, ground: GroundSet) -> MintermBasis:
    ordered = _ordered_variables(interp)
    assigned = tuple(
        interp.sets[v] if is_set else 1 << interp.elems[v] for v, is_set in ordered
    )
    return minterm_basis_from_masks(ground, tuple(v for v, _ in ordered), assigned)


@dataclass(frozen=True)
class DefinableFamily:
    """All unions of the minterms, as a deduplicated set of masks."""

    basis: MintermBasis
    sets: frozenset[int]

    @cached_property
    def sorted_sets(self) -> tuple[int, ...]:
        return tuple(sorted(self.sets))

    @cached_property
    def set_variable_family(self) -> "DefinableFamily":
        """The family definable from the set variables alone."""
        return _family_from_basis(self.basis.set_only())

    def __contains__(self, mask: int) -> bool:
        return mask in self.sets

    def __len__(self) -> int:
        return len(self.sets)


def _family_from_basis(basis: MintermBasis) -> DefinableFamily:
    unions = {0}
    for mt in basis.minterms:
        unions |= {u | mt for u in unions}
    return DefinableFamily(basis, frozenset(unions))


def definable_family(
    interp: Interpretation, ground: GroundSet, max_vars: int = VARIABLE_LIMIT
) -> DefinableFamily:
    """The exact family of definable sets relative to the interpretation.

    The variable budget caps the doubly exponential blowup: m+n variables
    allow up to 2^(2^(m+n)) definable sets.
    """
    n_vars = len(interp.sets) + len(interp.elems)
    if n_vars > max_vars:
        raise BudgetError(
            f"definable families are capped at {max_vars} variables, got {n_vars}"
        )
    return _family_from_basis(minterm_basis(interp, ground))


def decompose_definable(mask: int, family: DefinableFamily) -> tuple[int, int] | None:
    """Split a definable set as (A - T) u B with A definable from the set
    variables alone and B a subset of T, the image of the element variables.

    Returns None when the set is not definable at all.  The reconstruction
    is verified before returning.
    """
    if mask not in family.sets:
        return None
    full = family.basis.ground.full_mask
    t_mask = family.basis.elem_image
    b = mask & t_mask
    target = mask & ~t_mask & full
    for a in family.set_variable_family.sorted_sets:
        if a & ~t_mask & full == target:
            assert ((a & ~t_mask) | b) == mask
            return a, b
    return None


# ---------------------------------------------------------------------------
# block-pair perturbation families and the non-definable witness


@dataclass(frozen=True)
class DisjointnessReport:
    """Outcome of the cardinality argument that keeps the perturbation
    families {(H_k u H_r) symdiff Z : |Z| <= 2n} pairwise disjoint."""

    r: int
    n_budget: int
    pair_symdiff: int  # |(H_k1 u H_r) symdiff (H_k2 u H_r)| = 2r - 4, verified
    bound: int  # 4 * n_budget
    disjoint: bool
    margin: int

    @property
    def verdict(self) -> str:
        return "disjoint" if self.disjoint else "inconclusive"


def symdiff_family_disjointness(
    descriptor: KinserDescriptor, n_budget: int
) -> DisjointnessReport:
    """Check 2r - 4 > 4n directly on the block masks.

    If a subset were in two distinct families, the two perturbations would
    differ by a symmetric difference of two blocks (size 2r - 4) yet also by
    at most 4n elements; a positive margin rules that out.
    """
    if n_budget < 0:
        raise ValidationError("the element-variable budget cannot be negative")
    r = descriptor.r
    sizes = set()
    for k1 in range(1, r):
        for k2 in range(k1 + 1, r):
            sizes.add(
                (descriptor.block_pair_mask(k1) ^ descriptor.block_pair_mask(k2)).bit_count()
            )
    if sizes != {2 * r - 4}:
        raise ValidationError(f"unexpected pairwise symmetric differences: {sorted(sizes)}")
    pair_symdiff = 2 * r - 4
    bound = 4 * n_budget
    return DisjointnessReport(
        r=r,
        n_budget=n_budget,
        pair_symdiff=pair_symdiff,
        bound=bound,
        disjoint=pair_symdiff > bound,
        margin=pair_symdiff - bound,
    )


def find_nondefinable_circuit_hyperplane(
    descriptor: KinserDescriptor,
    interp: Interpretation,
    exclude: frozenset[int] | set[int] = frozenset(),
) -> int:
    """Smallest index s whose block pair H_s u H_r equals no definable set.

    The pigeonhole count (more candidate indices than definable sets)
    guarantees existence; the search itself is opportunistic, so it also
    succeeds whenever the particular interpretation happens to miss every
    block pair.  Failure raises with both counts.
    """
    family = definable_family(interp, descriptor.ground)
    candidates = [s for s in range(1, descriptor.r) if s not in exclude]
    if not candidates:
        raise ValidationError("no candidate indices remain after exclusions")
    for s in candidates:
        if descriptor.block_pair_mask(s) not in family.sets:
            return s
    raise ValidationError(
        f"every candidate block pair is definable: {len(candidates)} candidates vs "
        f"{len(family.sets)} definable sets (the pigeonhole guarantee needs more "
        "candidates than definable sets)"
    )


@dataclass(frozen=True)
class InvisibilityReport:
    """Whether a quantifier-free matrix can tell a relaxation apart."""

    s: int
    n_set_terms: int
    all_terms_definable: bool
    pair_among_denotations: bool
    value_base: bool
    value_relaxed: bool

    @property
    def identical(self) -> bool:
        return self.value_base == self.value_relaxed


def relaxation_invisibility_check(
    descriptor: KinserDescriptor,
    interp: Interpretation,
    matrix: ast.Formula,
    s: int | None = None,
    base: Matroid | None = None,
    relaxed: Matroid | None = None,
) -> InvisibilityReport:
    """Confirm that a quantifier-free matrix evaluates identically on the
    matroid and on its relaxation at a non-definable block pair.

    Every set term of the matrix denotes a definable set; when the relaxed
    pair is not among those denotations (which the non-definable choice of s
    guarantees), no rank or cardinality subterm can change, so the matrix
    value matches.  Both evaluations are carried out to confirm.  Pass an
    explicit ``s`` to probe a deliberately visible relaxation.
    """
    if not ast.is_quantifier_free(matrix):
        raise ValidationError("the matrix must be quantifier-free")
    if not matrix.free <= interp.domain():
        missing = sorted(matrix.free - interp.domain())
        raise ValidationError(f"interpretation does not cover free variables {missing}")
    if s is None:
        s = find_nondefinable_circuit_hyperplane(descriptor, interp)
    pair = descriptor.block_pair_mask(s)
    if base is None:
        base = kinser_matroid(descriptor.r, sorted(descriptor.relaxed))
    if relaxed is None:
        relaxed = base.relax(pair)

    family = definable_family(interp, descriptor.ground)
    env = interp.as_env()
    full = descriptor.ground.full_mask
    denotations = [_eval_set_term(t, env, full) for t in ast.set_terms_in(matrix)]
    all_definable = all(d in family.sets for d in denotations)
    pair_among = pair in denotations

    restricted = Interpretation(
        {v: interp.sets[v] for v in interp.sets if v in matrix.free},
        {v: interp.elems[v] for v in interp.elems if v in matrix.free},
    )
    env_r = restricted.as_env()
    value_base = _compile(base)(matrix)(dict(env_r))
    value_relaxed = _compile(relaxed)(matrix)(dict(env_r))
    return InvisibilityReport(
        s=s,
        n_set_terms=len(denotations),
        all_terms_definable=all_definable,
        pair_among_denotations=pair_among,
        value_base=value_base,
        value_relaxed=value_relaxed,
    )


def _eval_set_term(t, env, full):
    if isinstance(t, ast.SetConst):
        return full if t.full else 0
    if isinstance(t, ast.SetVar):
        return env[t.name]
    if isinstance(t, ast.Singleton):
        return 1 << env[t.var.name]
    if isinstance(t, ast.Complement):
        return full & ~_eval_set_term(t.arg, env, full)
    if isinstance(t, ast.SetUnion):
        return _eval_set_term(t.left, env, full) | _eval_set_term(t.right, env, full)
    if isinstance(t, ast.SetInter):
        return _eval_set_term(t.left, env, full) & _eval_set_term(t.right, env, full)
    raise ValidationError(f"not a set term: {t!r}")
