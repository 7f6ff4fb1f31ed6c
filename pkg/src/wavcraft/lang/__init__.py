"""The audio-editing language: AST, parser, validator, canonical formatter."""

from .ast import (
    AUDIO,
    NUM,
    TEXT,
    UNKNOWN,
    VOID,
    WILDCARD,
    BinOp,
    Call,
    Diagnostic,
    Expr,
    ListLit,
    NumLit,
    Program,
    SemType,
    Stmt,
    StrLit,
    Token,
    TupleLit,
    Var,
    list_of,
    tuple_of,
    types_compatible,
)
from .formatter import format_program, format_statement
from .lexer import tokenize
from .parser import extract_code, parse
from .signatures import (
    REQUIRED,
    SPEAKERS,
    Param,
    Signature,
    SignatureTable,
    bind_call_args,
    default_signature_table,
)
from .validate import OUTPUT_NAME, ValidatedProgram, free_input_names, validate

__all__ = [
    "AUDIO",
    "NUM",
    "OUTPUT_NAME",
    "REQUIRED",
    "SPEAKERS",
    "TEXT",
    "UNKNOWN",
    "VOID",
    "WILDCARD",
    "BinOp",
    "Call",
    "Diagnostic",
    "Expr",
    "ListLit",
    "NumLit",
    "Param",
    "Program",
    "SemType",
    "Signature",
    "SignatureTable",
    "Stmt",
    "StrLit",
    "Token",
    "TupleLit",
    "ValidatedProgram",
    "Var",
    "bind_call_args",
    "default_signature_table",
    "extract_code",
    "format_program",
    "format_statement",
    "free_input_names",
    "list_of",
    "parse",
    "tokenize",
    "tuple_of",
    "types_compatible",
    "validate",
]
