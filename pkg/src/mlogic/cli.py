"""Command-line interface.

Every subcommand prints a report with stable field ordering (``--format
tsv`` for machine consumption); reruns on identical inputs are byte
identical except for the ``time_ms`` field.  Exit codes: 0 all requested
checks pass, 1 a check failed, 2 usage or format error, 3 resource budget
exceeded.  ``MLOGIC_BUDGET`` overrides the default evaluation budget.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from . import axioms as axioms_mod
from . import definability as defin_mod
from .core import Matroid, rank_table
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
    load_interpretation,
    load_matroid,
    load_sentence_text,
    save_matroid,
)
from .iso import has_minor, is_isomorphic
from .kinser import kinser_lhs_rhs, kinser_matroid, kinser_witness
from .msol import (
    DEFAULT_BUDGET,
    classify_mlogic,
    evaluate,
    format_trace,
    is_sentence,
    parse,
    rename_apart_text,
    to_text,
    witness_trace,
)

USAGE_ERROR = 2
CHECK_FAILED = 1
BUDGET_EXCEEDED = 3


class Report:
    """Ordered key/value lines plus a timing field appended at the end."""

    def __init__(self, command: str):
        self.fields: list[tuple[str, str]] = [("command", command)]
        self.started = time.perf_counter()

    def add(self, key: str, value) -> None:
        self.fields.append((key, str(value)))

    def emit(self, fmt: str) -> None:
        elapsed = int((time.perf_counter() - self.started) * 1000)
        rows = self.fields + [("time_ms", str(elapsed))]
        if fmt == "tsv":
            for key, value in rows:
                print(f"{key}\t{value}")
        else:
            for key, value in rows:
                print(f"{key}: {value}")


def _budget(args) -> int | None:
    if getattr(args, "force", False):
        return None
    if getattr(args, "budget", None) is not None:
        return args.budget
    env = os.environ.get("MLOGIC_BUDGET")
    if env:
        return int(env)
    return DEFAULT_BUDGET


def _load_matroid(args, attr="matroid") -> Matroid:
    policy = "none" if getattr(args, "no_validate", False) else "auto"
    return load_matroid(getattr(args, attr), validate=policy, seed=args.seed)


def _load_sentence(path):
    f = parse(load_sentence_text(path))
    return f


# -- subcommands --------------------------------------------------------------


def cmd_gen_kinser(args) -> int:
    report = Report("gen-kinser")
    relaxed = args.relax or []
    if len(relaxed) > 2:
        raise ValidationError("the matroid file format carries at most two relaxations")
    m = kinser_matroid(args.r, relaxed)
    d = m.descriptor
    report.add("r", args.r)
    report.add("elements", m.ground.size)
    report.add("rank", m.full_rank())
    report.add("relaxed", " ".join(str(s) for s in sorted(d.relaxed)) or "-")
    for s in d.designated():
        report.add(f"circuit_hyperplane_{s}", m.ground.format_set(d.block_pair_mask(s)))
    if args.out:
        save_matroid(m, args.out)
        report.add("written", args.out)
    report.emit(args.format)
    return 0


def cmd_eval(args) -> int:
    report = Report("eval")
    m = _load_matroid(args)
    f = _load_sentence(args.sentence)
    if not is_sentence(f):
        raise ValidationError(
            f"the input formula has free variables {sorted(f.free)}; eval takes sentences"
        )
    budget = _budget(args)
    if args.witness:
        value, trace = witness_trace(m, f, budget=budget)
        report.add("verdict", "true" if value else "false")
        for line in format_trace(m.ground, trace):
            report.add("assignment", line)
    else:
        value = evaluate(m, f, budget=budget)
        report.add("verdict", "true" if value else "false")
    report.emit(args.format)
    if args.expect is not None:
        return 0 if (args.expect == "true") == value else CHECK_FAILED
    return 0 if value else CHECK_FAILED


def cmd_check_kinser(args) -> int:
    report = Report("check-kinser")
    m = _load_matroid(args)
    if m.descriptor is None:
        raise ValidationError("check-kinser needs a matroid with a kinser body")
    assignment = kinser_witness(m.descriptor, args.witness_index)
    lhs, rhs = kinser_lhs_rhs(m, assignment)
    verdict = "fails-kinser" if lhs > rhs else "ok"
    print(f"{lhs} {rhs} {verdict}")
    report.add("lhs", lhs)
    report.add("rhs", rhs)
    report.add("verdict", verdict)
    report.emit(args.format)
    return 0


def cmd_axioms(args) -> int:
    report = Report("axioms")
    if args.dump:
        os.makedirs(args.dump, exist_ok=True)
        for name in axioms_mod.SUITES[args.suite]:
            path = os.path.join(args.dump, f"{name}.msol")
            with open(path, "w") as fh:
                fh.write(to_text(axioms_mod.sentence(name)) + "\n")
            report.add("dumped", path)
    m = _load_matroid(args)
    suite = axioms_mod.axiom_suite_check(m, args.suite, budget=_budget(args))
    for v in suite.verdicts:
        report.add(v.name, "true" if v.holds else "false")
        for line in v.trace:
            report.add(f"{v.name}_assignment", line)
    report.add("all", "true" if suite.all_true else "false")
    report.emit(args.format)
    return 0 if suite.all_true else CHECK_FAILED


def cmd_minor(args) -> int:
    report = Report("minor")
    m = _load_matroid(args)
    n = _load_matroid(args, attr="minor")
    via = args.via
    values = {}
    if via in ("oracle", "both"):
        values["oracle"] = has_minor(m, n)
        report.add("oracle", "true" if values["oracle"] else "false")
    if via in ("msol", "both"):
        sentence = axioms_mod.minor_sentence(n)
        values["msol"] = evaluate(m, sentence, budget=_budget(args))
        report.add("msol", "true" if values["msol"] else "false")
    verdicts = set(values.values())
    agreed = len(verdicts) == 1
    value = verdicts.pop() if agreed else None
    if via == "both":
        report.add("agreement", "true" if agreed else "false")
    report.add("verdict", "true" if value else ("false" if value is not None else "disagree"))
    report.emit(args.format)
    if not agreed:
        return CHECK_FAILED
    if args.expect is not None:
        return 0 if (args.expect == "true") == value else CHECK_FAILED
    return 0


def cmd_iso(args) -> int:
    report = Report("iso")
    a = _load_matroid(args, attr="first")
    b = _load_matroid(args, attr="second")
    bijection = is_isomorphic(a, b)
    if bijection is None:
        report.add("isomorphic", "false")
    else:
        report.add("isomorphic", "true")
        for name in a.ground.elements:
            report.add("map", f"{name} -> {bijection[name]}")
    report.emit(args.format)
    if args.expect is not None:
        return 0 if (args.expect == "true") == (bijection is not None) else CHECK_FAILED
    return 0


def cmd_classify(args) -> int:
    report = Report("classify")
    f = _load_sentence(args.sentence)
    c = classify_mlogic(f)
    report.add("mlogic", "true" if c.is_mlogic else "false")
    report.add("prefix", c.summary)
    if c.is_mlogic:
        report.add("set_kind", c.set_kind or "-")
        report.add("elem_kind", c.elem_kind or "-")
    report.emit(args.format)
    return 0


def cmd_rename(args) -> int:
    text = rename_apart_text(load_sentence_text(args.sentence))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def cmd_definability(args) -> int:
    report = Report("definability")
    m = _load_matroid(args)
    if m.descriptor is None:
        raise ValidationError("definability needs a matroid with a kinser body")
    interp = load_interpretation(args.interp, m.ground)
    family = defin_mod.definable_family(interp, m.ground)
    report.add("variables", len(interp.sets) + len(interp.elems))
    report.add("family_size", len(family))
    if args.decompose is not None:
        mask = int(args.decompose, 16)
        split = defin_mod.decompose_definable(mask, family)
        if split is None:
            report.add("decompose", "not-definable")
        else:
            a, b = split
            report.add("A", m.ground.format_set(a))
            report.add("B", m.ground.format_set(b))
    if args.find_witness:
        exclude = frozenset(args.exclude_index or [])
        s = defin_mod.find_nondefinable_circuit_hyperplane(m.descriptor, interp, exclude=exclude)
        report.add("witness_index", s)
        report.add("witness_pair", m.ground.format_set(m.descriptor.block_pair_mask(s)))
    report.emit(args.format)
    return 0


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="mlogic",
        description="Monadic second-order logic over finite matroids",
    )
    sub = top.add_subparsers(dest="subcommand", required=True)

    def common(p, budgeted=True):
        p.add_argument("--format", choices=("text", "tsv"), default="text")
        p.add_argument("--seed", type=int, default=1, help="seed for randomized checks")
        p.add_argument("--jobs", type=int, default=1,
                       help="worker-thread cap (current implementation is sequential)")
        p.add_argument("--no-validate", action="store_true",
                       help="skip rank-axiom validation when loading matroid files")
        if budgeted:
            p.add_argument("--budget", type=int, default=None,
                           help="max estimated matrix evaluations (default 2^34)")
            p.add_argument("--force", action="store_true", help="disable the budget check")

    p = sub.add_parser("gen-kinser", help="construct Kin(r) and write a matroid file")
    p.add_argument("r", type=int)
    p.add_argument("--relax", type=int, nargs="+", default=None, metavar="S")
    p.add_argument("-o", "--out", default=None)
    common(p, budgeted=False)
    p.set_defaults(func=cmd_gen_kinser)

    p = sub.add_parser("eval", help="evaluate a sentence on a matroid")
    p.add_argument("-m", "--matroid", required=True)
    p.add_argument("-s", "--sentence", required=True)
    p.add_argument("--witness", action="store_true", help="print deciding assignments")
    p.add_argument("--expect", choices=("true", "false"), default=None)
    common(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("check-kinser", help="evaluate the Kinser witness inequality")
    p.add_argument("-m", "--matroid", required=True)
    p.add_argument("-s", "--witness-index", type=int, required=True)
    common(p, budgeted=False)
    p.set_defaults(func=cmd_check_kinser)

    p = sub.add_parser("axioms", help="run an axiom suite against a structure")
    p.add_argument("-m", "--matroid", required=True)
    p.add_argument("--suite", choices=sorted(axioms_mod.SUITES), required=True)
    p.add_argument("--dump", default=None, help="directory for sentence text files")
    common(p)
    p.set_defaults(func=cmd_axioms, no_validate=True)

    p = sub.add_parser("minor", help="minor detection via sentence, oracle, or both")
    p.add_argument("-m", "--matroid", required=True)
    p.add_argument("-n", "--minor", required=True)
    p.add_argument("--via", choices=("msol", "oracle", "both"), default="both")
    p.add_argument("--expect", choices=("true", "false"), default=None)
    common(p)
    p.set_defaults(func=cmd_minor)

    p = sub.add_parser("iso", help="rank-preserving bijection between two matroids")
    p.add_argument("-a", "--first", required=True)
    p.add_argument("-b", "--second", required=True)
    p.add_argument("--expect", choices=("true", "false"), default=None)
    common(p, budgeted=False)
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("classify", help="M-logic classification of a sentence file")
    p.add_argument("-s", "--sentence", required=True)
    common(p, budgeted=False)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("rename", help="alpha-rename bound variables to fresh names")
    p.add_argument("-s", "--sentence", required=True)
    p.add_argument("-o", "--out", default=None)
    common(p, budgeted=False)
    p.set_defaults(func=cmd_rename)

    p = sub.add_parser("definability", help="definable-set tools on a Kinser matroid")
    p.add_argument("-m", "--matroid", required=True)
    p.add_argument("-i", "--interp", required=True)
    p.add_argument("--find-witness", action="store_true")
    p.add_argument("--decompose", default=None, metavar="HEXMASK")
    p.add_argument("--exclude-index", type=int, action="append", default=None)
    common(p, budgeted=False)
    p.set_defaults(func=cmd_definability)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_ERROR
    try:
        return args.func(args)
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BUDGET_EXCEEDED
    except (ParseError, FormatError, DomainError, ValidationError, FormulaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except MlogicError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


def console_main() -> None:
    raise SystemExit(main())
