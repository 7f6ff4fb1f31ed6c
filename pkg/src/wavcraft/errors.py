"""Exception hierarchy shared across the engine."""

from __future__ import annotations


class WavCraftError(Exception):
    """Base class for all errors raised by this package."""


class AudioError(WavCraftError):
    """Invalid audio input or a violated DSP precondition."""


class WavFormatError(AudioError):
    """Malformed or unsupported RIFF/WAVE payload."""


class ParseError(WavCraftError):
    """Source text could not be parsed into a program."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(d.message for d in self.diagnostics) or "parse error")


class ValidationError(WavCraftError):
    """A parsed program failed semantic validation."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(d.message for d in self.diagnostics) or "validation error")


class CodeExtractionError(WavCraftError):
    """No code could be extracted from an LLM response."""


class BackendError(WavCraftError):
    """A generative backend failed or returned an invalid result."""

    def __init__(self, message: str, code: str = "backend_error"):
        self.code = code
        super().__init__(message)


class ProtocolError(BackendError):
    """The remote endpoint violated the wire protocol."""

    def __init__(self, message: str):
        super().__init__(message, code="protocol_error")


class ExecutionError(WavCraftError):
    """A statement failed at execution time."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


class LimitExceeded(ExecutionError):
    """A resource limit was hit during execution."""


class ConfigError(WavCraftError):
    """Invalid or incomplete runtime configuration."""


class WorkspaceError(WavCraftError):
    """Workspace persistence failed or found corrupt state."""
