"""Monadic second-order logic over finite matroids.

A library and CLI for finite matroids given by rank oracles (transversal
constructions, truncation, circuit-hyperplane relaxation, minors,
isomorphism), the MSOL language over such structures (parser, satisfaction,
prenex normal form, M-logic classification), matroid axiom suites and
minor-detection sentences, and the definable-set counting tools used to
separate relaxations from bounded-variable sentences.
"""

from .core import (
    ExplicitMatroid,
    GroundSet,
    Matroid,
    free_matroid,
    iter_bits,
    matroid_from_bases,
    rank_table,
    uniform_matroid,
    validate_rank_axioms,
)
from .definability import (
    DefinableFamily,
    DisjointnessReport,
    InvisibilityReport,
    MintermBasis,
    decompose_definable,
    definable_family,
    find_nondefinable_circuit_hyperplane,
    minterm_basis,
    relaxation_invisibility_check,
    symdiff_family_disjointness,
)
from .errors import (
    BudgetError,
    DomainError,
    FormatError,
    FormulaError,
    MlogicError,
    ParseError,
    ValidationError,
)
from .files import (
    dumps_interpretation,
    dumps_matroid,
    dumps_setsystem,
    load_interpretation,
    load_matroid,
    load_setsystem,
    loads_interpretation,
    loads_matroid,
    loads_setsystem,
    save_matroid,
    save_setsystem,
)
from .iso import has_minor, is_isomorphic
from .kinser import (
    KinserAssignment,
    KinserDescriptor,
    ingleton_check,
    kinser_lhs_rhs,
    kinser_matroid,
    kinser_system,
    kinser_witness,
    pretruncation_matroid,
)
from .msol import (
    Interpretation,
    MLogicClassification,
    PrenexForm,
    classify_mlogic,
    elementwise_to_set,
    evaluate,
    format_trace,
    is_sentence,
    parse,
    prenex,
    rename_apart_text,
    to_text,
    witness_trace,
)
from .axioms import (
    SUITES,
    axiom_suite_check,
    excluded_minor_axioms,
    library,
    minor_sentence,
    sentence,
)
from .transversal import SetSystem, transversal_matroid

__version__ = "0.1.0"
