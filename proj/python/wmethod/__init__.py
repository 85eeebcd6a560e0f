"""W-method test suites for DFAs, Moore/Mealy machines, weighted and register automata."""

from ._core import (
    Error,
    ExperimentReport,
    Fsm,
    MismatchError,
    ParseError,
    PreconditionError,
    Rna,
    Wa,
    char_set,
    equiv,
    faultsim,
    is_char_set,
    is_minimal,
    load,
    minimize,
    parse,
    run,
    state_cover,
    w_suite,
)

__all__ = [
    "Error",
    "ExperimentReport",
    "Fsm",
    "MismatchError",
    "ParseError",
    "PreconditionError",
    "Rna",
    "Wa",
    "char_set",
    "equiv",
    "faultsim",
    "is_char_set",
    "is_minimal",
    "load",
    "minimize",
    "parse",
    "run",
    "state_cover",
    "w_suite",
]
