"""S-curve superposition models of B-H curves."""

from ._scurve import (
    Component,
    CurveProfile,
    Error,
    FitResult,
    Inflection,
    LoopAnalysis,
    Superposition,
    analyze_loop,
    d1,
    d2,
    d3,
    decompose_subprocesses,
    eval_forward,
    eval_inverse,
    fit,
    inflection,
    make_loop,
    profile,
    read_csv,
    representative_loop,
    solve_cubic,
)

__all__ = [
    "Component",
    "CurveProfile",
    "Error",
    "FitResult",
    "Inflection",
    "LoopAnalysis",
    "Superposition",
    "analyze_loop",
    "d1",
    "d2",
    "d3",
    "decompose_subprocesses",
    "eval_forward",
    "eval_inverse",
    "fit",
    "inflection",
    "make_loop",
    "profile",
    "read_csv",
    "representative_loop",
    "solve_cubic",
]
