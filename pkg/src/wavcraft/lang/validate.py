"""Semantic validation: name resolution, signature and type checking, and
the OUTPUT_WAV contract (assigned exactly once, by the final statement,
never read)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import ValidationError
from .ast import (
    AUDIO,
    NUM,
    TEXT,
    UNKNOWN,
    BinOp,
    Call,
    Diagnostic,
    Expr,
    ListLit,
    NumLit,
    Program,
    SemType,
    StrLit,
    TupleLit,
    Var,
    WILDCARD,
    list_of,
    tuple_of,
    types_compatible,
)
from .signatures import MIX_ENTRY, SignatureTable, bind_call_args

OUTPUT_NAME = "OUTPUT_WAV"


@dataclass(frozen=True)
class ValidatedProgram:
    program: Program
    allowed_inputs: frozenset[str]
    warnings: tuple[Diagnostic, ...] = ()


class _Checker:
    def __init__(self, table: SignatureTable, allowed_inputs: frozenset[str]):
        self.table = table
        self.allowed_inputs = allowed_inputs
        self.env: dict[str, SemType] = {name: AUDIO for name in allowed_inputs}
        self.errors: list[Diagnostic] = []
        self.warnings: list[Diagnostic] = []

    def error(self, code: str, message: str, line: int) -> None:
        self.errors.append(Diagnostic("error", code, message, line))

    def warn(self, code: str, message: str, line: int) -> None:
        self.warnings.append(Diagnostic("warning", code, message, line))

    # -- expression typing ----------------------------------------------

    def infer(self, expr: Expr, line: int) -> SemType:
        if isinstance(expr, NumLit):
            return NUM
        if isinstance(expr, StrLit):
            return TEXT
        if isinstance(expr, Var):
            if expr.name == OUTPUT_NAME:
                self.error(
                    "output-as-input",
                    f"{OUTPUT_NAME} cannot be used as an input",
                    line,
                )
                return AUDIO
            if expr.name not in self.env:
                self.error("undefined-variable", f"undefined variable {expr.name!r}", line)
                return UNKNOWN
            return self.env[expr.name]
        if isinstance(expr, ListLit):
            item_types = [self.infer(item, line) for item in expr.items]
            return list_of(self._unify(item_types, line))
        if isinstance(expr, TupleLit):
            return tuple_of(*(self.infer(item, line) for item in expr.items))
        if isinstance(expr, BinOp):
            return self._infer_binop(expr, line)
        if isinstance(expr, Call):
            results = self.infer_call(expr, line, nested=True)
            return results[0] if results else UNKNOWN
        raise AssertionError(f"unhandled expression {expr!r}")

    def _unify(self, types: list[SemType], line: int) -> SemType:
        concrete = [t for t in types if t.kind != "unknown"]
        if not concrete:
            return UNKNOWN
        head = concrete[0]
        for other in concrete[1:]:
            if not types_compatible(head, other):
                self.error(
                    "type-mismatch",
                    f"list items must share a type, got {head} and {other}",
                    line,
                )
                return UNKNOWN
        return head

    def _infer_binop(self, expr: BinOp, line: int) -> SemType:
        lhs = self.infer(expr.lhs, line)
        rhs = self.infer(expr.rhs, line)
        if expr.op == "*" and lhs.kind == "list":
            if not types_compatible(NUM, rhs):
                self.error("type-mismatch", f"list repetition count must be a number, got {rhs}", line)
            elif isinstance(expr.rhs, NumLit) and (
                expr.rhs.value.denominator != 1 or expr.rhs.value < 0
            ):
                self.error(
                    "type-mismatch",
                    f"list repetition count must be a non-negative integer, got {expr.rhs.value}",
                    line,
                )
            return lhs
        for side, t in (("left", lhs), ("right", rhs)):
            if not types_compatible(NUM, t):
                self.error(
                    "type-mismatch",
                    f"{side} operand of {expr.op!r} must be a number, got {t}",
                    line,
                )
        return NUM

    # -- calls ------------------------------------------------------------

    def infer_call(self, call: Call, line: int, nested: bool) -> tuple[SemType, ...]:
        sig = self.table.get(call.op)
        if sig is None:
            self.error("unknown-operation", f"unknown operation {call.op!r}", line)
            for arg in call.args:
                self.infer(arg, line)
            for _, value in call.kwargs:
                self.infer(value, line)
            return (UNKNOWN,)

        if sig.op == "MIX":
            normalized = self._normalize_mix(call, line)
            if normalized is None:
                return sig.results
            call = normalized

        bound = bind_call_args(sig, call.args, call.kwargs)
        for message in bound.errors:
            self.error("arity-mismatch", message, line)
        for param in sig.params:
            expr = bound.by_name.get(param.name)
            if expr is None:
                continue
            actual = self.infer(expr, line)
            if not types_compatible(param.type, actual):
                self.error(
                    "type-mismatch",
                    f"{sig.op} parameter {param.name!r} expects {param.type}, got {actual}",
                    line,
                )
        self._check_numeric_constraints(sig.op, bound.by_name, line)

        results = sig.results
        if sig.dynamic_arity_from:
            bp = bound.by_name.get(sig.dynamic_arity_from)
            if isinstance(bp, ListLit):
                results = tuple([AUDIO] * (len(bp.items) + 1))
            else:
                results = ()  # arity unknown until runtime
        if nested and (sig.dynamic_arity_from or len(sig.results) > 1):
            self.error(
                "arity-mismatch",
                f"{sig.op} returns multiple values and must be assigned directly",
                line,
            )
            return (UNKNOWN,)
        return results

    def _normalize_mix(self, call: Call, line: int) -> Call | None:
        """MIX accepts either a list of (wav, onset) tuples or the tuples
        spread as positional arguments."""
        if len(call.args) > 1 and not call.kwargs:
            if all(isinstance(a, TupleLit) for a in call.args):
                return Call("MIX", (ListLit(tuple(call.args), line=call.line),), (), line=call.line)
            self.error(
                "type-mismatch",
                "MIX takes a list of (wav, onset) tuples",
                line,
            )
            return None
        return call

    def _check_numeric_constraints(self, op: str, by_name: dict, line: int) -> None:
        if op in ("SPLIT",):
            bp = by_name.get("break_points")
            if isinstance(bp, ListLit) and all(isinstance(i, NumLit) for i in bp.items):
                values = [i.value for i in bp.items]
                if any(b <= a for a, b in zip(values, values[1:])) or any(
                    v <= 0 for v in values
                ):
                    self.warn(
                        "numeric-constraint",
                        f"SPLIT break points should be strictly increasing and positive, got {[str(v) for v in values]}",
                        line,
                    )
        if op in ("CLIP", "INPAINT"):
            onset = by_name.get("onset")
            offset = by_name.get("offset")
            if isinstance(onset, NumLit) and isinstance(offset, NumLit):
                if onset.value >= offset.value:
                    self.warn(
                        "numeric-constraint",
                        f"{op} onset {onset.value} should be before offset {offset.value}",
                        line,
                    )
        for lo_name, hi_name in _MIN_MAX_PAIRS.get(op, ()):
            lo, hi = by_name.get(lo_name), by_name.get(hi_name)
            if isinstance(lo, NumLit) and isinstance(hi, NumLit) and lo.value > hi.value:
                self.warn(
                    "numeric-constraint",
                    f"{op}: {lo_name} {lo.value} exceeds {hi_name} {hi.value}",
                    line,
                )


_MIN_MAX_PAIRS = {
    "LOW_PASS": [("min_cutoff_freq", "max_cutoff_freq"), ("min_rolloff", "max_rolloff")],
    "HIGH_PASS": [("min_cutoff_freq", "max_cutoff_freq"), ("min_rolloff", "max_rolloff")],
    "ADD_NOISE": [("min_snr_db", "max_snr_db")],
}


def validate(
    program: Program,
    table: SignatureTable,
    allowed_inputs: frozenset[str] | set[str],
) -> ValidatedProgram:
    """Check the program against the signature table; raises ValidationError
    with all diagnostics on failure, returns warnings otherwise."""
    checker = _Checker(table, frozenset(allowed_inputs))
    output_lines: list[int] = []

    for stmt in program.statements:
        value = stmt.value
        if isinstance(value, Call):
            results = checker.infer_call(value, stmt.line, nested=False)
            sig = table.get(value.op)
            dynamic = sig is not None and sig.dynamic_arity_from is not None and not results
            if dynamic:
                checker.warn(
                    "arity-unchecked",
                    f"{value.op} arity depends on a runtime value; target count checked at execution",
                    stmt.line,
                )
                results = tuple([AUDIO] * len(stmt.targets))
        else:
            results = (checker.infer(value, stmt.line),)

        if results and len(stmt.targets) != len(results):
            checker.error(
                "arity-mismatch",
                f"statement binds {len(stmt.targets)} names but the expression produces {len(results)} values",
                stmt.line,
            )
        for i, name in enumerate(stmt.targets):
            if name == WILDCARD:
                continue
            bound_type = results[i] if i < len(results) else UNKNOWN
            if name == OUTPUT_NAME:
                output_lines.append(stmt.line)
                if not types_compatible(AUDIO, bound_type):
                    checker.error(
                        "type-mismatch",
                        f"{OUTPUT_NAME} must be audio, got {bound_type}",
                        stmt.line,
                    )
            else:
                checker.env[name] = bound_type

    final_line = program.statements[-1].line if program.statements else 0
    if not output_lines:
        checker.error("output-missing", f"{OUTPUT_NAME} is never assigned", final_line)
    else:
        if len(output_lines) > 1:
            checker.error(
                "output-misplaced",
                f"{OUTPUT_NAME} assigned {len(output_lines)} times; it must be assigned exactly once",
                output_lines[-1],
            )
        if output_lines[-1] != final_line:
            checker.error(
                "output-misplaced",
                f"{OUTPUT_NAME} must be produced by the final statement",
                output_lines[-1],
            )

    if checker.errors:
        raise ValidationError(checker.errors)
    return ValidatedProgram(
        program=program,
        allowed_inputs=frozenset(allowed_inputs),
        warnings=tuple(checker.warnings),
    )


def free_input_names(program: Program) -> set[str]:
    """Names read before being bound (the inputs the program expects)."""
    bound: set[str] = set()
    free: set[str] = set()

    def visit(expr: Expr) -> None:
        if isinstance(expr, Var):
            if expr.name not in bound:
                free.add(expr.name)
        elif isinstance(expr, (ListLit, TupleLit)):
            for item in expr.items:
                visit(item)
        elif isinstance(expr, BinOp):
            visit(expr.lhs)
            visit(expr.rhs)
        elif isinstance(expr, Call):
            for arg in expr.args:
                visit(arg)
            for _, value in expr.kwargs:
                visit(value)

    for stmt in program.statements:
        visit(stmt.value)
        for name in stmt.targets:
            if name != WILDCARD:
                bound.add(name)
    return free
