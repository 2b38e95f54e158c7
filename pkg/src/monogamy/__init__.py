"""Entanglement measures and tightened monogamy bounds for multiqubit states."""

from ._kernels import NUMBA_ENABLED
from .bounds import (
    BoundReport,
    PreconditionVerdict,
    Verdict,
    WeightLadder,
    alpha_grid,
    alpha_sweep,
    monogamy_report,
    power_split_margin,
    precondition_check,
    prior_factor,
    step_factor,
)
from .measures import (
    CONCURRENCE,
    CREN,
    EOF,
    MeasureKind,
    binary_entropy,
    concurrence_pure,
    concurrence_two_qubit,
    cren_two_qubit,
    eof,
    eof_f,
    negativity,
    pair_value,
    pure_cut_value,
    tsallis,
    tsallis_g,
    tsallis_kind,
)
from .qstate import (
    DensityMatrix,
    Ket,
    PartitionSpec,
    StateFileError,
    hermitian_eigensystem,
    hermitian_eigenvalues,
    load_state,
    partial_trace,
    partial_transpose,
    purity,
    save_state,
    tensor,
    trace_norm,
)
from .states import SchmidtParams, ghz_state, gsd3, haar_random, w_state

__version__ = "0.1.0"

__all__ = [
    "NUMBA_ENABLED",
    "BoundReport",
    "PreconditionVerdict",
    "Verdict",
    "WeightLadder",
    "alpha_grid",
    "alpha_sweep",
    "monogamy_report",
    "power_split_margin",
    "precondition_check",
    "prior_factor",
    "step_factor",
    "CONCURRENCE",
    "CREN",
    "EOF",
    "MeasureKind",
    "binary_entropy",
    "concurrence_pure",
    "concurrence_two_qubit",
    "cren_two_qubit",
    "eof",
    "eof_f",
    "negativity",
    "pair_value",
    "pure_cut_value",
    "tsallis",
    "tsallis_g",
    "tsallis_kind",
    "DensityMatrix",
    "Ket",
    "PartitionSpec",
    "StateFileError",
    "hermitian_eigensystem",
    "hermitian_eigenvalues",
    "load_state",
    "partial_trace",
    "partial_transpose",
    "purity",
    "save_state",
    "tensor",
    "trace_norm",
    "SchmidtParams",
    "ghz_state",
    "gsd3",
    "haar_random",
    "w_state",
]
