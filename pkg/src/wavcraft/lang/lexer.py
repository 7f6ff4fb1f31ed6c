"""Tokenizer for the audio-editing language."""

from __future__ import annotations

from .ast import Diagnostic, Token

PUNCT = set("()[],=+-*/")
_ESCAPES = {"n": "\n", "t": "\t", "r": "\r", '"': '"', "'": "'", "\\": "\\"}


class LexerError(Exception):
    def __init__(self, diagnostic: Diagnostic):
        self.diagnostic = diagnostic
        super().__init__(diagnostic.message)


def tokenize(source: str) -> list[Token]:
    """Token stream covering the whole source; token texts are exact slices."""
    tokens: list[Token] = []
    line, col = 1, 1
    i, n = 0, len(source)
    while i < n:
        ch = source[i]
        if ch == "\n":
            tokens.append(Token("newline", "\n", line, col))
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        start_i, start_col = i, col
        if ch == "#":
            while i < n and source[i] != "\n":
                i += 1
            text = source[start_i:i]
            tokens.append(Token("comment", text, line, start_col))
            col += len(text)
            continue
        if ch in PUNCT:
            tokens.append(Token("punct", ch, line, col))
            i += 1
            col += 1
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and source[i + 1].isdigit()):
            seen_dot = False
            while i < n and (source[i].isdigit() or (source[i] == "." and not seen_dot)):
                if source[i] == ".":
                    seen_dot = True
                i += 1
            text = source[start_i:i]
            tokens.append(Token("number", text, line, start_col))
            col += len(text)
            continue
        if ch.isalpha() or ch == "_":
            while i < n and (source[i].isalnum() or source[i] == "_"):
                i += 1
            text = source[start_i:i]
            tokens.append(Token("identifier", text, line, start_col))
            col += len(text)
            continue
        if ch in ("'", '"'):
            quote = ch
            i += 1
            while i < n and source[i] != quote:
                if source[i] == "\n":
                    raise LexerError(
                        Diagnostic("error", "syntax", "unterminated string literal", line)
                    )
                if source[i] == "\\":
                    i += 1
                i += 1
            if i >= n:
                raise LexerError(
                    Diagnostic("error", "syntax", "unterminated string literal", line)
                )
            i += 1  # closing quote
            text = source[start_i:i]
            tokens.append(Token("string", text, line, start_col))
            col += len(text)
            continue
        raise LexerError(
            Diagnostic("error", "syntax", f"unknown token {ch!r}", line)
        )
    return tokens


def string_value(token: Token) -> str:
    """Decode a string token's text into its value."""
    body = token.text[1:-1]
    out = []
    i = 0
    while i < len(body):
        ch = body[i]
        if ch == "\\" and i + 1 < len(body):
            out.append(_ESCAPES.get(body[i + 1], body[i + 1]))
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)
