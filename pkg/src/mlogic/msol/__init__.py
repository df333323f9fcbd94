"""Monadic second-order logic for matroid structures."""

from . import ast
from .ast import Formula, is_sentence, to_text
from .evaluate import (
    DEFAULT_BUDGET,
    EMPTY_INTERPRETATION,
    Interpretation,
    check_budget,
    evaluate,
    format_trace,
    witness_trace,
)
from .parser import parse, rename_apart_text, rename_bound
from .prenex import (
    MLogicClassification,
    PrenexForm,
    classify_mlogic,
    elementwise_to_set,
    prenex,
)

__all__ = [
    "ast",
    "Formula",
    "is_sentence",
    "to_text",
    "parse",
    "rename_apart_text",
    "rename_bound",
    "Interpretation",
    "EMPTY_INTERPRETATION",
    "DEFAULT_BUDGET",
    "check_budget",
    "evaluate",
    "witness_trace",
    "format_trace",
    "PrenexForm",
    "prenex",
    "elementwise_to_set",
    "MLogicClassification",
    "classify_mlogic",
]
