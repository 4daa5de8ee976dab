"""Interpreter for a small imperative language with anonymous variables."""

from ._core import (
    BudgetExceededError,
    EvalError,
    ParseError,
    render_source,
    run_file,
    run_source,
)

__all__ = [
    "BudgetExceededError",
    "EvalError",
    "ParseError",
    "render_source",
    "run_file",
    "run_source",
]
