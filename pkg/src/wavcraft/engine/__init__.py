"""Program execution: environment, trace, limits, seed derivation."""

from .executor import (
    ArtifactStore,
    ExecutionResult,
    ExecutionTrace,
    ResourceLimits,
    SeedPolicy,
    TraceStep,
    eval_value,
    execute,
)

__all__ = [
    "ArtifactStore",
    "ExecutionResult",
    "ExecutionTrace",
    "ResourceLimits",
    "SeedPolicy",
    "TraceStep",
    "eval_value",
    "execute",
]
