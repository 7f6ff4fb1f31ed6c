"""Typed AST for the audio-editing language.

Positions (line/col) are carried for diagnostics but excluded from equality,
so structural comparison survives reformatting. Numbers are exact rationals;
conversion to samples happens in the executor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

WILDCARD = "_"


@dataclass(frozen=True)
class Token:
    kind: str  # identifier | number | string | punct | comment | newline
    text: str
    line: int  # 1-based
    col: int   # 1-based


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # error | warning
    code: str
    message: str
    line: int

    def __str__(self) -> str:
        return f"{self.severity} [{self.code}] line {self.line}: {self.message}"


@dataclass(frozen=True)
class Var:
    name: str
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class NumLit:
    value: Fraction
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class StrLit:
    value: str
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ListLit:
    items: tuple["Expr", ...]
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class TupleLit:
    items: tuple["Expr", ...]
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Call:
    op: str
    args: tuple["Expr", ...]
    kwargs: tuple[tuple[str, "Expr"], ...]
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class BinOp:
    op: str  # + - * /
    lhs: "Expr"
    rhs: "Expr"
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


Expr = Union[Var, NumLit, StrLit, ListLit, TupleLit, Call, BinOp]


@dataclass(frozen=True)
class Stmt:
    targets: tuple[str, ...]  # "_" discards that result position
    value: Expr
    comment: str | None = None
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Program:
    statements: tuple[Stmt, ...]
    source: str = field(default="", compare=False)


# ---------------------------------------------------------------------------
# semantic types

@dataclass(frozen=True)
class SemType:
    kind: str  # audio | text | num | list | tuple | void | unknown
    item: "SemType | None" = None
    items: tuple["SemType", ...] | None = None

    def __str__(self) -> str:
        if self.kind == "list":
            return f"list[{self.item}]"
        if self.kind == "tuple":
            return "(" + ", ".join(str(t) for t in self.items or ()) + ")"
        return self.kind


AUDIO = SemType("audio")
TEXT = SemType("text")
NUM = SemType("num")
VOID = SemType("void")
UNKNOWN = SemType("unknown")


def list_of(item: SemType) -> SemType:
    return SemType("list", item=item)


def tuple_of(*items: SemType) -> SemType:
    return SemType("tuple", items=tuple(items))


def types_compatible(expected: SemType, actual: SemType) -> bool:
    """Structural compatibility; `unknown` (empty literals) matches anything."""
    if expected.kind == "unknown" or actual.kind == "unknown":
        return True
    if expected.kind != actual.kind:
        return False
    if expected.kind == "list":
        return types_compatible(expected.item, actual.item)
    if expected.kind == "tuple":
        if len(expected.items or ()) != len(actual.items or ()):
            return False
        return all(types_compatible(e, a) for e, a in zip(expected.items, actual.items))
    return True
