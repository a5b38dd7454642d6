"""Python bindings for the plcp partial-label toolkit."""

from ._plcp import (
    InvariantViolation,
    PlcpError,
    accuracy,
    blur_labeling,
    blur_noncandidate,
    correction_metrics,
    generate_synthetic,
    kernel_ridge,
    run_base_alone,
    run_plcp,
    solve_row,
)

__all__ = [
    "InvariantViolation",
    "PlcpError",
    "accuracy",
    "blur_labeling",
    "blur_noncandidate",
    "correction_metrics",
    "generate_synthetic",
    "kernel_ridge",
    "run_base_alone",
    "run_plcp",
    "solve_row",
]
