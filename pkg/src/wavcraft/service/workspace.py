"""File-backed session workspace.

Layout per session under the workspace root:

    {session_id}/session.json     metadata + input registry (atomic writes)
    {session_id}/rounds/{k}.json  one RoundRecord per completed round
    {session_id}/artifacts/*.wav  immutable audio, keyed by artifact id

Artifact ids are "{session_id}:{local_id}", so they resolve without an
index. session.json is replaced via temp-file + rename; a crash mid-write
leaves the previous state intact.
"""

from __future__ import annotations

import json
import os
import re
import uuid
from pathlib import Path

from ..audio import WORKING_RATE, Waveform, peak_limit, read_wav, write_wav
from ..agent.session import RoundRecord, SessionState
from ..errors import WorkspaceError

_SESSION_FILE = "session.json"
_ID_RE = re.compile(r"^[A-Za-z0-9_.-]+$")


def atomic_write_json(path: Path, obj) -> None:
    tmp = path.with_name(path.name + f".tmp-{uuid.uuid4().hex[:8]}")
    tmp.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    os.replace(tmp, path)


class Workspace:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    # -- paths -----------------------------------------------------------

    def _session_dir(self, session_id: str) -> Path:
        if not _ID_RE.match(session_id):
            raise WorkspaceError(f"invalid session id {session_id!r}")
        return self.root / session_id

    def artifact_path(self, artifact_id: str) -> Path:
        session_id, _, local_id = artifact_id.partition(":")
        if not local_id or not _ID_RE.match(session_id) or not _ID_RE.match(local_id):
            raise WorkspaceError(f"invalid artifact id {artifact_id!r}")
        return self._session_dir(session_id) / "artifacts" / f"{local_id}.wav"

    # -- sessions ----------------------------------------------------------

    def create_session(self, session_seed: int) -> SessionState:
        session_id = uuid.uuid4().hex[:12]
        state = SessionState(session_id=session_id, session_seed=session_seed)
        directory = self._session_dir(session_id)
        (directory / "artifacts").mkdir(parents=True, exist_ok=True)
        (directory / "rounds").mkdir(parents=True, exist_ok=True)
        self.save_session(state)
        return state

    def save_session(self, state: SessionState) -> None:
        directory = self._session_dir(state.session_id)
        if not directory.exists():
            raise WorkspaceError(f"session {state.session_id} does not exist")
        atomic_write_json(directory / _SESSION_FILE, state.to_dict(include_rounds=False))

    def save_round(self, state: SessionState, record: RoundRecord) -> None:
        directory = self._session_dir(state.session_id)
        atomic_write_json(directory / "rounds" / f"{record.index}.json", record.to_dict())
        self.save_session(state)

    def load_session(self, session_id: str) -> SessionState:
        directory = self._session_dir(session_id)
        path = directory / _SESSION_FILE
        if not path.exists():
            raise WorkspaceError(f"session {session_id} not found")
        try:
            obj = json.loads(path.read_text(encoding="utf-8"))
        except ValueError as exc:
            raise WorkspaceError(f"corrupt session file {path}: {exc}") from None
        rounds = []
        rounds_dir = directory / "rounds"
        if rounds_dir.exists():
            for round_path in sorted(rounds_dir.glob("*.json"), key=lambda p: int(p.stem)):
                try:
                    rounds.append(RoundRecord.from_dict(json.loads(round_path.read_text())))
                except ValueError as exc:
                    raise WorkspaceError(f"corrupt round file {round_path}: {exc}") from None
        return SessionState.from_dict(obj, rounds=rounds)

    def session_exists(self, session_id: str) -> bool:
        try:
            return (self._session_dir(session_id) / _SESSION_FILE).exists()
        except WorkspaceError:
            return False

    def list_sessions(self) -> list[str]:
        if not self.root.exists():
            return []
        return sorted(
            p.name for p in self.root.iterdir() if (p / _SESSION_FILE).exists()
        )

    def delete_session(self, session_id: str) -> None:
        import shutil

        directory = self._session_dir(session_id)
        if not directory.exists():
            raise WorkspaceError(f"session {session_id} not found")
        shutil.rmtree(directory)

    # -- artifacts ---------------------------------------------------------

    def save_artifact(
        self, session_id: str, local_id: str, wav: Waveform, limit: bool = False
    ) -> str:
        artifact_id = f"{session_id}:{local_id}"
        path = self.artifact_path(artifact_id)
        path.parent.mkdir(parents=True, exist_ok=True)
        if path.exists():
            raise WorkspaceError(f"artifact {artifact_id} already exists (immutable)")
        data = write_wav(peak_limit(wav) if limit else wav)
        tmp = path.with_name(path.name + ".tmp")
        tmp.write_bytes(data)
        os.replace(tmp, path)
        return artifact_id

    def read_artifact_bytes(self, artifact_id: str) -> bytes:
        path = self.artifact_path(artifact_id)
        if not path.exists():
            raise WorkspaceError(f"artifact {artifact_id} not found")
        return path.read_bytes()

    def read_artifact(self, artifact_id: str) -> Waveform:
        return read_wav(self.read_artifact_bytes(artifact_id))

    def add_input(self, state: SessionState, wav_bytes: bytes, caption: str) -> tuple[str, str]:
        """Register uploaded audio (resampled to the working rate) and persist."""
        wav = read_wav(wav_bytes, target_rate=WORKING_RATE)
        name = state.next_input_name()
        artifact_id = self.save_artifact(state.session_id, f"input-{name}", wav)
        from ..agent.session import InputRecord

        state.inputs.append(InputRecord(name=name, artifact_id=artifact_id, caption=caption))
        self.save_session(state)
        return name, artifact_id

    def load_input_waveforms(self, state: SessionState) -> dict[str, Waveform]:
        return {record.name: self.read_artifact(record.artifact_id) for record in state.inputs}

    # -- integrity ---------------------------------------------------------

    def fsck(self) -> list[str]:
        """Every artifact id referenced by any record must resolve to a file."""
        problems = []
        for session_id in self.list_sessions():
            try:
                state = self.load_session(session_id)
            except WorkspaceError as exc:
                problems.append(str(exc))
                continue
            referenced = [record.artifact_id for record in state.inputs]
            for round_record in state.rounds:
                referenced.extend(round_record.output_artifact_ids)
                for step in round_record.trace:
                    referenced.extend(step.get("output_artifact_ids", []))
            for artifact_id in referenced:
                try:
                    if not self.artifact_path(artifact_id).exists():
                        problems.append(f"{session_id}: missing artifact {artifact_id}")
                except WorkspaceError as exc:
                    problems.append(f"{session_id}: {exc}")
        return problems
