"""Editing-task evaluation: task synthesis, golden programs, LSD scoring."""

from .pool import SourceClip, synthetic_pool
from .runner import (
    EvalReport,
    TaskResult,
    report_to_csv,
    report_to_dict,
    report_to_json,
    run_suite,
    score_task,
)
from .tasks import (
    LOW_RES_RATE,
    TASK_KINDS,
    EditingTask,
    golden_script,
    synthesize_task,
    unmasked_region_bounds,
)

__all__ = [
    "EditingTask",
    "EvalReport",
    "LOW_RES_RATE",
    "SourceClip",
    "TASK_KINDS",
    "TaskResult",
    "golden_script",
    "report_to_csv",
    "report_to_dict",
    "report_to_json",
    "run_suite",
    "score_task",
    "synthesize_task",
    "synthetic_pool",
    "unmasked_region_bounds",
]
