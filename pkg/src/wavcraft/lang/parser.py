"""Recursive-descent parser: assignment statements over a small expression
grammar (literals, lists, tuples, calls with keyword args, numeric + - * /).

Newlines inside unclosed brackets are treated as whitespace, so calls may
wrap across lines. Comment lines immediately above a statement attach to it.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import CodeExtractionError, ParseError
from .ast import (
    BinOp,
    Call,
    Diagnostic,
    Expr,
    ListLit,
    NumLit,
    Program,
    Stmt,
    StrLit,
    Token,
    TupleLit,
    Var,
)
from .lexer import LexerError, string_value, tokenize

_OPEN = {"(": ")", "[": "]"}
_CLOSE = {")", "]"}


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        self.depth = 0
        self.diagnostics: list[Diagnostic] = []

    # -- token access --------------------------------------------------

    def _peek(self) -> Token | None:
        while self.pos < len(self.tokens):
            tok = self.tokens[self.pos]
            if self.depth > 0 and tok.kind in ("newline", "comment"):
                self.pos += 1
                continue
            return tok
        return None

    def _next(self) -> Token | None:
        tok = self._peek()
        if tok is not None:
            self.pos += 1
            if tok.kind == "punct" and tok.text in _OPEN:
                self.depth += 1
            elif tok.kind == "punct" and tok.text in _CLOSE:
                self.depth = max(0, self.depth - 1)
        return tok

    def _error(self, message: str, line: int) -> None:
        self.diagnostics.append(Diagnostic("error", "syntax", message, line))
        raise _Bail()

    def _expect_punct(self, text: str) -> Token:
        tok = self._peek()
        if tok is None or tok.kind != "punct" or tok.text != text:
            got = tok.text if tok else "end of input"
            line = tok.line if tok else (self.tokens[-1].line if self.tokens else 1)
            self._error(f"expected {text!r}, got {got!r}", line)
        return self._next()

    def _at_punct(self, text: str) -> bool:
        tok = self._peek()
        return tok is not None and tok.kind == "punct" and tok.text == text

    # -- statements ----------------------------------------------------

    def parse_program(self, source: str) -> Program:
        statements: list[Stmt] = []
        pending_comments: list[str] = []
        while True:
            tok = self._peek()
            if tok is None:
                break
            if tok.kind == "newline":
                self._next()
                # a blank line breaks the comment block above a statement
                if pending_comments and self._last_was_blank():
                    pending_comments = []
                continue
            if tok.kind == "comment":
                self._next()
                pending_comments.append(tok.text.lstrip("#").strip())
                nxt = self._peek()
                if nxt is not None and nxt.kind == "newline":
                    self._next()
                continue
            try:
                stmt = self._statement(comment="\n".join(pending_comments) or None)
                statements.append(stmt)
            except _Bail:
                self._sync_to_newline()
            pending_comments = []
        if self.diagnostics:
            raise ParseError(self.diagnostics)
        if not statements:
            raise ParseError(
                [Diagnostic("error", "syntax", "empty program", 1)]
            )
        return Program(tuple(statements), source=source)

    def _last_was_blank(self) -> bool:
        # two consecutive newlines => the previous line had no content
        idx = self.pos - 2
        return idx >= 0 and self.tokens[idx].kind == "newline"

    def _sync_to_newline(self) -> None:
        self.depth = 0
        while self.pos < len(self.tokens):
            tok = self.tokens[self.pos]
            self.pos += 1
            if tok.kind == "newline":
                return

    def _statement(self, comment: str | None) -> Stmt:
        first = self._peek()
        targets = [self._target_name()]
        while self._at_punct(","):
            self._next()
            targets.append(self._target_name())
        self._expect_punct("=")
        value = self._expression()
        self._end_of_statement()
        return Stmt(tuple(targets), value, comment=comment, line=first.line)

    def _target_name(self) -> str:
        tok = self._peek()
        if tok is None or tok.kind != "identifier":
            got = tok.text if tok else "end of input"
            line = tok.line if tok else 1
            self._error(f"expected assignment target, got {got!r}", line)
        self._next()
        return tok.text

    def _end_of_statement(self) -> None:
        tok = self._peek()
        if tok is None:
            return
        if tok.kind == "comment":  # trailing comment: allowed, dropped
            self._next()
            tok = self._peek()
            if tok is None:
                return
        if tok.kind != "newline":
            self._error(f"unexpected {tok.text!r} after expression", tok.line)
        self._next()

    # -- expressions ---------------------------------------------------

    def _expression(self) -> Expr:
        left = self._term()
        while True:
            tok = self._peek()
            if tok is not None and tok.kind == "punct" and tok.text in ("+", "-"):
                self._next()
                right = self._term()
                left = BinOp(tok.text, left, right, line=tok.line, col=tok.col)
            else:
                return left

    def _term(self) -> Expr:
        left = self._primary()
        while True:
            tok = self._peek()
            if tok is not None and tok.kind == "punct" and tok.text in ("*", "/"):
                self._next()
                right = self._primary()
                left = BinOp(tok.text, left, right, line=tok.line, col=tok.col)
            else:
                return left

    def _primary(self) -> Expr:
        tok = self._peek()
        if tok is None:
            self._error("unexpected end of input", self.tokens[-1].line if self.tokens else 1)
        if tok.kind == "number":
            self._next()
            return NumLit(Fraction(tok.text), line=tok.line, col=tok.col)
        if tok.kind == "punct" and tok.text == "-":
            self._next()
            num = self._peek()
            if num is None or num.kind != "number":
                self._error("'-' must be followed by a number", tok.line)
            self._next()
            return NumLit(-Fraction(num.text), line=tok.line, col=tok.col)
        if tok.kind == "string":
            self._next()
            return StrLit(string_value(tok), line=tok.line, col=tok.col)
        if tok.kind == "identifier":
            self._next()
            if self._at_punct("("):
                return self._call(tok)
            return Var(tok.text, line=tok.line, col=tok.col)
        if tok.kind == "punct" and tok.text == "[":
            return self._list_literal(tok)
        if tok.kind == "punct" and tok.text == "(":
            return self._paren_or_tuple(tok)
        self._error(f"unexpected token {tok.text!r}", tok.line)

    def _call(self, name: Token) -> Call:
        self._expect_punct("(")
        args: list[Expr] = []
        kwargs: list[tuple[str, Expr]] = []
        if not self._at_punct(")"):
            while True:
                tok = self._peek()
                if (
                    tok is not None
                    and tok.kind == "identifier"
                    and self._lookahead_is_kwarg()
                ):
                    self._next()
                    self._expect_punct("=")
                    kwargs.append((tok.text, self._expression()))
                else:
                    if kwargs:
                        line = tok.line if tok else name.line
                        self._error("positional argument after keyword argument", line)
                    args.append(self._expression())
                if self._at_punct(","):
                    self._next()
                    if self._at_punct(")"):
                        break
                else:
                    break
        self._expect_punct(")")
        return Call(name.text, tuple(args), tuple(kwargs), line=name.line, col=name.col)

    def _lookahead_is_kwarg(self) -> bool:
        # identifier '=' not followed by '=' (we have no '==' operator, so a
        # single '=' after an identifier can only start a keyword argument)
        saved_pos, saved_depth = self.pos, self.depth
        self._next()
        tok = self._peek()
        is_kwarg = tok is not None and tok.kind == "punct" and tok.text == "="
        self.pos, self.depth = saved_pos, saved_depth
        return is_kwarg

    def _list_literal(self, opener: Token) -> ListLit:
        self._expect_punct("[")
        items: list[Expr] = []
        if not self._at_punct("]"):
            while True:
                items.append(self._expression())
                if self._at_punct(","):
                    self._next()
                    if self._at_punct("]"):
                        break
                else:
                    break
        self._expect_punct("]")
        return ListLit(tuple(items), line=opener.line, col=opener.col)

    def _paren_or_tuple(self, opener: Token) -> Expr:
        self._expect_punct("(")
        if self._at_punct(")"):
            self._error("empty parentheses", opener.line)
        first = self._expression()
        if self._at_punct(")"):
            self._next()
            return first  # grouping
        items = [first]
        while self._at_punct(","):
            self._next()
            if self._at_punct(")"):
                break
            items.append(self._expression())
        self._expect_punct(")")
        return TupleLit(tuple(items), line=opener.line, col=opener.col)


class _Bail(Exception):
    pass


def parse(source: str) -> Program:
    """Parse source text; raises ParseError with diagnostics on any failure."""
    try:
        tokens = tokenize(source)
    except LexerError as exc:
        raise ParseError([exc.diagnostic]) from None
    return _Parser(tokens).parse_program(source)


_FENCE_RE = re.compile(r"```[A-Za-z0-9_+-]*[ \t]*\n(.*?)```", re.DOTALL)


def extract_code(llm_response: str) -> str:
    """Pull program text out of an LLM response.

    Preference order: first fenced code block, then everything after the
    first line equal to `Code:`, then the whole response.
    """
    match = _FENCE_RE.search(llm_response)
    if match:
        code = match.group(1)
    else:
        lines = llm_response.splitlines()
        code = None
        for i, line in enumerate(lines):
            if line.strip() == "Code:":
                code = "\n".join(lines[i + 1:])
                break
        if code is None:
            code = llm_response
    code = code.strip()
    if not code:
        raise CodeExtractionError("no code found in response")
    return code
