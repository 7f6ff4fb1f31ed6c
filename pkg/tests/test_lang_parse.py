"""Parser, tokenizer, formatter, and code extraction."""

from __future__ import annotations

from fractions import Fraction

import pytest

from wavcraft.agent.fewshot import FEW_SHOT_EXAMPLES
from wavcraft.errors import CodeExtractionError, ParseError
from wavcraft.lang import (
    BinOp,
    Call,
    ListLit,
    NumLit,
    StrLit,
    TupleLit,
    Var,
    extract_code,
    format_program,
    parse,
    tokenize,
)


def test_child_speech_fixture_statements_and_comments():
    program = parse(FEW_SHOT_EXAMPLES[0].code)
    assert len(program.statements) == 6
    assert all(stmt.comment for stmt in program.statements)
    first = program.statements[0]
    assert first.targets == ("WAV0", "WAV1")
    assert isinstance(first.value, Call) and first.value.op == "TSS"
    assert first.comment.startswith("Separate the sound of 'child speech'")


def test_minimal_mix_program():
    program = parse("OUTPUT_WAV = MIX([(WAV0, 0)])")
    assert len(program.statements) == 1
    call = program.statements[0].value
    assert isinstance(call, Call) and call.op == "MIX"
    (arg,) = call.args
    assert isinstance(arg, ListLit)
    (entry,) = arg.items
    assert isinstance(entry, TupleLit) and len(entry.items) == 2


def test_syntax_error_reports_line():
    with pytest.raises(ParseError) as exc_info:
        parse('WAV0 = TTA(text="dog", length=')
    diagnostics = exc_info.value.diagnostics
    assert diagnostics and diagnostics[0].severity == "error"
    assert diagnostics[0].line == 1


@pytest.mark.parametrize("source", [
    "WAV0 = MIX([(A, 0)]",       # unbalanced bracket
    "WAV0 TTA()",                 # missing '='
    "WAV0 = 3 $ 4",              # unknown token
    "= TTA()",                    # missing target
    "",                           # empty program
])
def test_unparseable_inputs_yield_diagnostics(source):
    with pytest.raises(ParseError):
        parse(source)


def test_multiple_errors_collected():
    with pytest.raises(ParseError) as exc_info:
        parse("A = \nB = *\nOUTPUT_WAV = 1 +\n")
    assert len(exc_info.value.diagnostics) >= 2


def test_numbers_are_exact_rationals():
    program = parse("X = F(0.1, 300.0, -3, 2.5)")
    call = program.statements[0].value
    values = [a.value for a in call.args]
    assert values == [Fraction(1, 10), Fraction(300), Fraction(-3), Fraction(5, 2)]


def test_list_repetition_and_arithmetic():
    program = parse("X = CAT([W] * 5)\nOUTPUT_WAV = F(1 + 2 * 3, (4 - 1) / 2)")
    repetition = program.statements[0].value.args[0]
    assert isinstance(repetition, BinOp) and repetition.op == "*"
    assert isinstance(repetition.lhs, ListLit) and isinstance(repetition.rhs, NumLit)
    arith = program.statements[1].value.args[0]
    # precedence: 1 + (2 * 3)
    assert isinstance(arith, BinOp) and arith.op == "+"
    assert isinstance(arith.rhs, BinOp) and arith.rhs.op == "*"


def test_multiline_call_inside_brackets():
    program = parse("OUTPUT_WAV = MIX([\n  (WAV0, 0),\n  (WAV1, 3),\n])")
    call = program.statements[0].value
    assert len(call.args[0].items) == 2


def test_wildcard_and_multi_targets():
    program = parse("_, WAV1 = TSS(INPUT_WAV0, text='x')\nOUTPUT_WAV = WAV1")
    assert program.statements[0].targets == ("_", "WAV1")


def test_string_quoting_variants():
    program = parse("X = F('single', \"double\", \"esc\\\"aped\")")
    values = [a.value for a in program.statements[0].value.args]
    assert values == ["single", "double", 'esc"aped']


def test_comment_block_separated_by_blank_line_not_attached():
    program = parse("# orphan\n\nOUTPUT_WAV = F()")
    assert program.statements[0].comment is None


def test_trailing_comment_is_dropped():
    program = parse("OUTPUT_WAV = F()  # trailing")
    assert program.statements[0].comment is None


def test_tokens_are_exact_source_slices():
    source = 'WAV0, _ = TSS(INPUT_WAV0, text="a b")  # note\n'
    lines = source.splitlines(keepends=True)
    for token in tokenize(source):
        if token.kind == "newline":
            continue
        line = lines[token.line - 1]
        assert line[token.col - 1:token.col - 1 + len(token.text)] == token.text


# -- formatter ---------------------------------------------------------------


@pytest.mark.parametrize("example", FEW_SHOT_EXAMPLES, ids=lambda e: e.instruction[:24])
def test_format_parse_fixpoint_on_fixtures(example):
    program = parse(example.code)
    once = parse(format_program(program))
    assert once == program
    assert parse(format_program(once)) == once


def test_format_single_statement_has_trailing_newline():
    text = format_program(parse("OUTPUT_WAV = LEN(W)"))
    assert text == "OUTPUT_WAV = LEN(W)\n"


def test_format_keyword_args_in_source_order():
    source = "OUTPUT_WAV = TTA(text=\"dog\", volume=4, length=2.5)"
    expected = 'OUTPUT_WAV = TTA(text="dog", volume=4, length=2.5)\n'
    assert format_program(parse(source)) == expected


def test_format_canonical_fixture():
    source = "# hello\nX, _ = TSS(A, text='t')\nOUTPUT_WAV = MIX([(X, 0), (X, 1.50)])"
    expected = (
        "# hello\n"
        'X, _ = TSS(A, text="t")\n'
        "OUTPUT_WAV = MIX([(X, 0), (X, 1.5)])\n"
    )
    assert format_program(parse(source)) == expected


# -- extract_code -------------------------------------------------------------


def test_extract_fenced_block():
    response = "Sure!\n```python\nOUTPUT_WAV = LEN(W)\n```\nDone."
    assert extract_code(response) == "OUTPUT_WAV = LEN(W)"


def test_extract_after_code_line():
    response = "Here you go.\nCode:\nWAV0 = TTA(text=\"dog\")\nOUTPUT_WAV = WAV0"
    assert extract_code(response) == 'WAV0 = TTA(text="dog")\nOUTPUT_WAV = WAV0'


def test_extract_whole_response_fallback():
    assert extract_code("OUTPUT_WAV = LEN(W)\n") == "OUTPUT_WAV = LEN(W)"


def test_extract_empty_raises():
    with pytest.raises(CodeExtractionError):
        extract_code("   \n\n  ")
