"""Command-line behavior and exit codes."""

from __future__ import annotations

import json
from pathlib import Path

from helpers import rich_clip
from wavcraft.audio import read_wav, write_wav
from wavcraft.cli import main

OK_SCRIPT = 'Code:\n# drop the hum\n_, OUTPUT_WAV = TSS(INPUT_WAV0, text="hum")'


def _fixture_files(tmp_path) -> tuple[Path, Path]:
    wav_path = tmp_path / "input.wav"
    wav_path.write_bytes(write_wav(rich_clip(4.0, seed=90)))
    transcript = tmp_path / "responses.json"
    transcript.write_text(json.dumps([OK_SCRIPT]))
    return wav_path, transcript


def test_edit_writes_output_and_echoes_code(tmp_path, capsys):
    wav_path, transcript = _fixture_files(tmp_path)
    out_path = tmp_path / "out.wav"
    code = main([
        "edit", "--input", str(wav_path), "--instruction", "Remove the hum",
        "--out", str(out_path), "--seed", "5", "--llm", f"scripted:{transcript}",
        "--workspace", str(tmp_path / "ws"),
    ])
    captured = capsys.readouterr().out
    assert code == 0
    assert out_path.exists()
    assert read_wav(out_path.read_bytes()).duration_seconds > 0
    # code and its comments go to stdout
    assert "# drop the hum" in captured
    assert "TSS(INPUT_WAV0" in captured


def test_edit_deterministic_given_seed(tmp_path):
    wav_path, transcript = _fixture_files(tmp_path)
    outputs = []
    for name in ("a.wav", "b.wav"):
        transcript.write_text(json.dumps([OK_SCRIPT]))
        out_path = tmp_path / name
        assert main([
            "edit", "--input", str(wav_path), "--instruction", "x",
            "--out", str(out_path), "--seed", "5", "--llm", f"scripted:{transcript}",
            "--workspace", str(tmp_path / f"ws-{name}"),
        ]) == 0
        outputs.append(out_path.read_bytes())
    assert outputs[0] == outputs[1]


def test_edit_missing_instruction_exits_1(tmp_path, capsys):
    assert main(["edit", "--out", "x.wav"]) == 1
    assert "instruction" in capsys.readouterr().err


def test_unknown_flag_exits_1(capsys):
    assert main(["edit", "--instruction", "x", "--out", "y", "--frobnicate"]) == 1
    err = capsys.readouterr().err
    assert "usage" in err.lower()


def test_unknown_subcommand_exits_1():
    assert main(["transmogrify"]) == 1


def test_edit_without_llm_config_exits_1(tmp_path, monkeypatch, capsys):
    monkeypatch.delenv("WAVCRAFT_LLM_BASE_URL", raising=False)
    wav_path, _ = _fixture_files(tmp_path)
    code = main([
        "edit", "--input", str(wav_path), "--instruction", "x",
        "--out", str(tmp_path / "o.wav"), "--workspace", str(tmp_path / "ws"),
    ])
    assert code == 1
    assert "LLM" in capsys.readouterr().err


def test_eval_reports_are_byte_identical_for_same_seed(tmp_path):
    paths = []
    for name in ("r1.json", "r2.json"):
        report_path = tmp_path / name
        assert main([
            "eval", "--tasks", "2", "--kind", "all", "--seed", "7",
            "--report", str(report_path),
        ]) == 0
        paths.append(report_path)
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert paths[0].with_suffix(".csv").read_bytes() == paths[1].with_suffix(".csv").read_bytes()


def test_eval_single_kind(tmp_path):
    report_path = tmp_path / "add.json"
    assert main(["eval", "--tasks", "3", "--kind", "add", "--seed", "1",
                 "--report", str(report_path)]) == 0
    report = json.loads(report_path.read_text())
    assert {row["kind"] for row in report["results"]} == {"add"}
    assert len(report["results"]) == 3


def test_eval_rejects_bad_task_count(tmp_path, capsys):
    assert main(["eval", "--tasks", "0", "--report", str(tmp_path / "r.json")]) == 1


def test_fsck_clean_and_broken(tmp_path, capsys):
    wav_path, transcript = _fixture_files(tmp_path)
    workspace = tmp_path / "ws"
    assert main([
        "edit", "--input", str(wav_path), "--instruction", "x",
        "--out", str(tmp_path / "o.wav"), "--llm", f"scripted:{transcript}",
        "--workspace", str(workspace), "--seed", "3",
    ]) == 0
    assert main(["fsck", "--workspace", str(workspace)]) == 0
    # break it: remove one artifact file
    artifacts = list(workspace.glob("*/artifacts/*.wav"))
    artifacts[0].unlink()
    assert main(["fsck", "--workspace", str(workspace)]) == 1


def test_repl_scripted_session(tmp_path, monkeypatch, capsys):
    wav_path, transcript = _fixture_files(tmp_path)
    responses = iter(["Remove the hum", "quit"])
    monkeypatch.setattr("builtins.input", lambda prompt="": next(responses))
    code = main([
        "repl", "--input", str(wav_path), "--seed", "4",
        "--llm", f"scripted:{transcript}", "--workspace", str(tmp_path / "ws"),
    ])
    out = capsys.readouterr().out
    assert code == 0
    assert "# drop the hum" in out
    assert "output:" in out
