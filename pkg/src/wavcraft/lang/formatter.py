"""Canonical text form of a program: stable output for storage and display,
structurally round-trippable through the parser."""

from __future__ import annotations

from fractions import Fraction

from .ast import BinOp, Call, Expr, ListLit, NumLit, Program, Stmt, StrLit, TupleLit, Var

_PREC_ADD = 1
_PREC_MUL = 2
_PREC_ATOM = 3


def format_number(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    den = value.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:  # not a terminating decimal; only reachable via hand-built ASTs
        return repr(float(value))
    digits = max(twos, fives)
    scaled = abs(value.numerator) * 10 ** digits // value.denominator
    text = str(scaled).rjust(digits + 1, "0")
    sign = "-" if value < 0 else ""
    return f"{sign}{text[:-digits]}.{text[-digits:]}"


def format_string(value: str) -> str:
    escaped = value.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
    return f'"{escaped}"'


def _format_expr(expr: Expr, parent_prec: int = 0) -> str:
    if isinstance(expr, Var):
        return expr.name
    if isinstance(expr, NumLit):
        return format_number(expr.value)
    if isinstance(expr, StrLit):
        return format_string(expr.value)
    if isinstance(expr, ListLit):
        return "[" + ", ".join(_format_expr(i) for i in expr.items) + "]"
    if isinstance(expr, TupleLit):
        inner = ", ".join(_format_expr(i) for i in expr.items)
        if len(expr.items) == 1:
            inner += ","
        return f"({inner})"
    if isinstance(expr, Call):
        parts = [_format_expr(a) for a in expr.args]
        parts += [f"{name}={_format_expr(value)}" for name, value in expr.kwargs]
        return f"{expr.op}(" + ", ".join(parts) + ")"
    if isinstance(expr, BinOp):
        prec = _PREC_MUL if expr.op in ("*", "/") else _PREC_ADD
        lhs = _format_expr(expr.lhs, prec)
        # - and / do not associate on the right
        rhs = _format_expr(expr.rhs, prec + (1 if expr.op in ("-", "/") else 0))
        text = f"{lhs} {expr.op} {rhs}"
        return f"({text})" if prec < parent_prec else text
    raise AssertionError(f"unhandled expression {expr!r}")


def format_statement(stmt: Stmt) -> str:
    lines = []
    if stmt.comment:
        lines.extend(f"# {line}" if line else "#" for line in stmt.comment.split("\n"))
    lines.append(", ".join(stmt.targets) + " = " + _format_expr(stmt.value))
    return "\n".join(lines)


def format_program(program: Program) -> str:
    return "\n".join(format_statement(s) for s in program.statements) + "\n"
