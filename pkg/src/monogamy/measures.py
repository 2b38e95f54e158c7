"""Entanglement measures for pure multiqubit cuts and two-qubit mixed states.

Four measures share a common shape: an exact value on pure-state
bipartitions, and a closed form on arbitrary two-qubit mixed states
driven by the spin-flip concurrence.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._kernels import spin_flip_mus
from .qstate import (
    DensityMatrix,
    Ket,
    PartitionSpec,
    hermitian_eigenvalues,
    partial_trace,
    partial_transpose,
    purity,
    trace_norm,
)

DOMAIN_ATOL = 1e-12
EIG_CLIP_ATOL = 1e-10

_MEASURE_NAMES = ("concurrence", "eof", "cren", "tsallis")

# exponent floors: smallest power for which the weighted bounds apply
_ALPHA_FLOORS = {
    "concurrence": 2.0,
    "eof": math.sqrt(2.0),
    "cren": 2.0,
    "tsallis": 1.0,
}


@dataclass(frozen=True)
class MeasureKind:
    """Tag selecting one of the supported measures.

    ``q`` is the entropic order and is meaningful (and required) only for
    the tsallis measure, where the two-qubit closed form is valid for
    q in [2, 3].
    """

    name: str
    q: float | None = None

    def __post_init__(self):
        if self.name not in _MEASURE_NAMES:
            raise ValueError(f"unknown measure {self.name!r}, expected one of {_MEASURE_NAMES}")
        if self.name == "tsallis":
            if self.q is None:
                raise ValueError("tsallis measure requires q")
            if not (2.0 - DOMAIN_ATOL <= self.q <= 3.0 + DOMAIN_ATOL):
                raise ValueError(f"q={self.q!r} outside the supported range [2, 3]")
        elif self.q is not None:
            raise ValueError(f"q is only meaningful for tsallis, not {self.name}")

    @property
    def alpha_floor(self) -> float:
        return _ALPHA_FLOORS[self.name]

    @property
    def label(self) -> str:
        return self.name


CONCURRENCE = MeasureKind("concurrence")
EOF = MeasureKind("eof")
CREN = MeasureKind("cren")


def tsallis_kind(q: float) -> MeasureKind:
    return MeasureKind("tsallis", float(q))


def _unit_interval(x: float, what: str) -> float:
    if not (-DOMAIN_ATOL <= x <= 1.0 + DOMAIN_ATOL):
        raise ValueError(f"{what}={x!r} outside [0, 1]")
    return min(max(x, 0.0), 1.0)


def binary_entropy(x: float) -> float:
    """H(x) = -x log2 x - (1 - x) log2 (1 - x), with 0 log 0 = 0."""
    x = _unit_interval(float(x), "x")
    h = 0.0
    if x > 0.0:
        h -= x * math.log2(x)
    if x < 1.0:
        h -= (1.0 - x) * math.log2(1.0 - x)
    return h


def eof_f(x: float) -> float:
    """f(x) = H((1 + sqrt(1 - x)) / 2) on [0, 1].

    Feeding x = C^2 turns a two-qubit concurrence into the matching
    entanglement of formation.
    """
    x = _unit_interval(float(x), "x")
    return binary_entropy((1.0 + math.sqrt(1.0 - x)) / 2.0)


def tsallis_g(q: float, x: float) -> float:
    """g_q(x) = [1 - ((1+s)/2)^q - ((1-s)/2)^q] / (q - 1) with s = sqrt(1 - x).

    Valid for q in [2, 3]; feeding x = C^2 turns a two-qubit concurrence
    into the matching tsallis-q entanglement.
    """
    q = float(q)
    if not (2.0 - DOMAIN_ATOL <= q <= 3.0 + DOMAIN_ATOL):
        raise ValueError(f"q={q!r} outside the supported range [2, 3]")
    x = _unit_interval(float(x), "x")
    s = math.sqrt(1.0 - x)
    hi = (1.0 + s) / 2.0
    lo = (1.0 - s) / 2.0
    return (1.0 - hi**q - lo**q) / (q - 1.0)


def _reduced_eigenvalues(psi: Ket, cut: PartitionSpec) -> np.ndarray:
    cut.validate_for(psi.n_qubits)
    rho_a = partial_trace(psi.to_density_matrix(), cut.side_a)
    vals = hermitian_eigenvalues(rho_a.entries)
    # eigenvalues within rounding of zero enter entropies and roots as 0
    return np.where(vals < 0.0, 0.0, vals)


def concurrence_pure(psi: Ket, cut: PartitionSpec) -> float:
    """sqrt(2 (1 - Tr rho_A^2)) across the cut of a pure state."""
    cut.validate_for(psi.n_qubits)
    rho_a = partial_trace(psi.to_density_matrix(), cut.side_a)
    return math.sqrt(max(2.0 * (1.0 - purity(rho_a)), 0.0))


def concurrence_two_qubit(rho: DensityMatrix) -> float:
    """Spin-flip concurrence max(0, mu1 - mu2 - mu3 - mu4).

    The mu_i are the descending square roots of the eigenvalues of
    rho (sigma_y x sigma_y) rho* (sigma_y x sigma_y).
    """
    if rho.dims != (2, 2):
        raise ValueError(f"two-qubit closed form needs dims (2, 2), got {rho.dims}")
    mus = spin_flip_mus(rho.entries)
    return max(0.0, float(mus[0] - mus[1] - mus[2] - mus[3]))


def cren_two_qubit(rho: DensityMatrix) -> float:
    """Convex-roof extended negativity of a two-qubit state.

    On two qubits this coincides with the concurrence, so the same
    closed form is used verbatim.
    """
    return concurrence_two_qubit(rho)


def eof(state, cut: PartitionSpec | None = None) -> float:
    """Entanglement of formation.

    Pure kets take the von Neumann entropy (base 2) of the reduced state
    across ``cut``; two-qubit density matrices take the closed form
    eof_f(C^2).  Mixed states on anything but (2, 2) are not supported.
    """
    if isinstance(state, Ket):
        if cut is None:
            raise ValueError("pure-state entanglement of formation needs a cut")
        lam = _reduced_eigenvalues(state, cut)
        nz = lam[lam > 0.0]
        return float(-(nz * np.log2(nz)).sum())
    if isinstance(state, DensityMatrix):
        if cut is not None:
            raise ValueError("cut is only meaningful for pure input")
        if state.dims != (2, 2):
            raise ValueError(f"mixed-state closed form needs dims (2, 2), got {state.dims}")
        c = concurrence_two_qubit(state)
        return eof_f(c * c)
    raise TypeError(f"expected Ket or DensityMatrix, got {type(state).__name__}")


def tsallis(state, q: float, cut: PartitionSpec | None = None) -> float:
    """Tsallis-q entanglement, q in [2, 3].

    Pure kets take (1 - Tr rho_A^q) / (q - 1) across ``cut``; two-qubit
    density matrices take the closed form g_q(C^2).
    """
    q = float(q)
    if not (2.0 - DOMAIN_ATOL <= q <= 3.0 + DOMAIN_ATOL):
        raise ValueError(f"q={q!r} outside the supported range [2, 3]")
    if isinstance(state, Ket):
        if cut is None:
            raise ValueError("pure-state tsallis entanglement needs a cut")
        lam = _reduced_eigenvalues(state, cut)
        return float((1.0 - (lam**q).sum()) / (q - 1.0))
    if isinstance(state, DensityMatrix):
        if cut is not None:
            raise ValueError("cut is only meaningful for pure input")
        if state.dims != (2, 2):
            raise ValueError(f"mixed-state closed form needs dims (2, 2), got {state.dims}")
        c = concurrence_two_qubit(state)
        return tsallis_g(q, c * c)
    raise TypeError(f"expected Ket or DensityMatrix, got {type(state).__name__}")


def negativity(rho: DensityMatrix, subsystem: int) -> float:
    """||rho^(T_subsystem)||_1 - 1 across subsystem vs the rest.

    Normalized so a maximally entangled two-qubit pair gives 1.
    """
    val = trace_norm(partial_transpose(rho, subsystem)) - 1.0
    if val < -EIG_CLIP_ATOL:
        raise ValueError(f"trace norm below 1 ({1.0 + val!r}); input is not a state")
    return max(val, 0.0)


def pure_cut_value(kind: MeasureKind, psi: Ket, cut: PartitionSpec) -> float:
    """Value of ``kind`` on a pure state across ``cut``.

    The convex-roof extended negativity of a pure state reduces to
    (Tr sqrt(rho_A))^2 - 1 over the reduced spectrum.
    """
    if kind.name == "concurrence":
        return concurrence_pure(psi, cut)
    if kind.name == "eof":
        return eof(psi, cut)
    if kind.name == "tsallis":
        return tsallis(psi, kind.q, cut)
    lam = _reduced_eigenvalues(psi, cut)
    return max(float(np.sqrt(lam).sum() ** 2 - 1.0), 0.0)


def pair_value(kind: MeasureKind, rho: DensityMatrix) -> float:
    """Value of ``kind`` on a two-qubit mixed state via its closed form."""
    if kind.name == "concurrence":
        return concurrence_two_qubit(rho)
    if kind.name == "eof":
        return eof(rho)
    if kind.name == "tsallis":
        return tsallis(rho, kind.q)
    return cren_two_qubit(rho)
