"""Backend registry: one active descriptor per operation, stub by default,
remote when WAVCRAFT_BACKEND_{OP}_URL is set."""

from __future__ import annotations

import os
from dataclasses import dataclass

from ..errors import BackendError, ConfigError

GATEWAY_OPS = ("TTA", "TTS", "TTM", "TSS", "EXTRACT", "DROP", "SR", "INPAINT", "CAPTION")

# ops answered by projecting another op's response
DERIVED_OPS = {"EXTRACT": ("TSS", 0), "DROP": ("TSS", 1)}

RESULT_ARITY = {
    "TTA": 1,
    "TTS": 1,
    "TTM": 1,
    "TSS": 2,
    "EXTRACT": 1,
    "DROP": 1,
    "SR": 1,
    "INPAINT": 1,
    "CAPTION": 0,
}

ENV_PREFIX = "WAVCRAFT_BACKEND_"


@dataclass(frozen=True)
class BackendDescriptor:
    op: str
    kind: str  # "stub" | "remote"
    endpoint: str | None = None
    timeout_s: float = 30.0
    retries: int = 2

    def __post_init__(self):
        if self.kind not in ("stub", "remote"):
            raise ConfigError(f"backend kind must be stub or remote, got {self.kind!r}")
        if self.kind == "remote" and not self.endpoint:
            raise ConfigError(f"remote backend for {self.op} needs an endpoint")


class BackendRegistry:
    """Immutable after construction; safe to share across threads."""

    def __init__(self, descriptors: dict[str, BackendDescriptor]):
        self._descriptors = dict(descriptors)

    def descriptor(self, op: str) -> BackendDescriptor:
        try:
            return self._descriptors[op]
        except KeyError:
            raise BackendError(f"operation {op!r} is not registered", code="unknown_op") from None

    def __contains__(self, op: str) -> bool:
        return op in self._descriptors

    def ops(self) -> list[str]:
        return sorted(self._descriptors)

    def with_descriptor(self, descriptor: BackendDescriptor) -> "BackendRegistry":
        merged = dict(self._descriptors)
        merged[descriptor.op] = descriptor
        return BackendRegistry(merged)


def stub_registry() -> BackendRegistry:
    return BackendRegistry({op: BackendDescriptor(op, "stub") for op in GATEWAY_OPS})


def registry_from_env(environ=None) -> BackendRegistry:
    env = os.environ if environ is None else environ
    descriptors = {}
    for op in GATEWAY_OPS:
        url = env.get(f"{ENV_PREFIX}{op}_URL")
        if url:
            descriptors[op] = BackendDescriptor(op, "remote", endpoint=url)
        else:
            descriptors[op] = BackendDescriptor(op, "stub")
    return BackendRegistry(descriptors)
