"""Multiqubit kets, density operators and register plumbing.

Conventions
-----------
Qubits are indexed big-endian: qubit 0 is the most significant bit of the
computational basis index, so for three qubits the basis state |100> sits
at index 4.  Register factors keep their original order through partial
operations; tracing qubit 1 out of (0, 1, 2) leaves the register (0, 2).

All operators are dense complex128 numpy arrays.  Partial traces are
computed by direct index-arithmetic summation over the traced factors
rather than by reshuffling the matrix.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._kernels import ptrace_sum

NORM_ATOL = 1e-12
HERMITICITY_ATOL = 1e-12
TRACE_ATOL = 1e-12
PSD_ATOL = 1e-10
STATE_FILE_NORM_ATOL = 1e-6


class StateFileError(ValueError):
    """Raised when a state file cannot be parsed into a valid ket."""


@dataclass(frozen=True)
class Ket:
    """Pure state of an ``n_qubits`` register with unit-norm amplitudes."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError(f"need at least one qubit, got {self.n_qubits}")
        amp = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amp.size != 2**self.n_qubits:
            raise ValueError(
                f"amplitude vector has length {amp.size}, expected {2**self.n_qubits}"
            )
        norm = float(np.linalg.norm(amp))
        if abs(norm - 1.0) > NORM_ATOL:
            raise ValueError(f"amplitudes must have unit norm, got {norm!r}")
        amp = amp.copy()
        amp.flags.writeable = False
        object.__setattr__(self, "amplitudes", amp)

    @property
    def dim(self) -> int:
        return 2**self.n_qubits

    def to_density_matrix(self) -> "DensityMatrix":
        """Rank-one projector onto this ket, one factor per qubit."""
        entries = np.outer(self.amplitudes, self.amplitudes.conj())
        return DensityMatrix((2,) * self.n_qubits, entries)


@dataclass(frozen=True)
class DensityMatrix:
    """Density operator on a register with factor dimensions ``dims``.

    Construction validates hermiticity (entrywise, 1e-12), unit trace
    (1e-12) and positivity (smallest eigenvalue >= -1e-10).
    """

    dims: tuple[int, ...]
    entries: np.ndarray

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 1 for d in dims):
            raise ValueError(f"invalid factor dimensions {dims}")
        entries = np.asarray(self.entries, dtype=np.complex128)
        order = int(np.prod(dims))
        if entries.shape != (order, order):
            raise ValueError(
                f"entries have shape {entries.shape}, expected {(order, order)}"
            )
        if np.abs(entries - entries.conj().T).max() > HERMITICITY_ATOL:
            raise ValueError("density matrix must be hermitian")
        tr = entries.trace()
        if abs(tr - 1.0) > TRACE_ATOL:
            raise ValueError(f"density matrix must have unit trace, got {tr!r}")
        smallest = float(np.linalg.eigvalsh(entries)[0])
        if smallest < -PSD_ATOL:
            raise ValueError(f"density matrix has negative eigenvalue {smallest!r}")
        entries = np.ascontiguousarray(entries)
        entries.flags.writeable = False
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "entries", entries)

    @property
    def n_factors(self) -> int:
        return len(self.dims)

    @property
    def order(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class PartitionSpec:
    """Bipartition of a register into two disjoint index groups."""

    side_a: tuple[int, ...]
    side_b: tuple[int, ...]

    def __post_init__(self):
        a = tuple(int(i) for i in self.side_a)
        b = tuple(int(i) for i in self.side_b)
        if not a or not b:
            raise ValueError("both sides of a partition must be non-empty")
        if len(set(a)) != len(a) or len(set(b)) != len(b):
            raise ValueError("partition sides must not repeat indices")
        if set(a) & set(b):
            raise ValueError(f"partition sides overlap: {sorted(set(a) & set(b))}")
        object.__setattr__(self, "side_a", a)
        object.__setattr__(self, "side_b", b)

    @classmethod
    def focus_vs_rest(cls, focus: int, n_qubits: int) -> "PartitionSpec":
        rest = tuple(i for i in range(n_qubits) if i != focus)
        return cls((focus,), rest)

    def validate_for(self, n_factors: int) -> None:
        indices = set(self.side_a) | set(self.side_b)
        if indices != set(range(n_factors)):
            raise ValueError(
                f"partition {self.side_a}|{self.side_b} does not cover a "
                f"{n_factors}-factor register"
            )


def _strides(dims: Sequence[int]) -> np.ndarray:
    strides = np.ones(len(dims), dtype=np.int64)
    for i in range(len(dims) - 2, -1, -1):
        strides[i] = strides[i + 1] * dims[i + 1]
    return strides


def _subset_offsets(dims: Sequence[int], subset: Sequence[int], strides: np.ndarray) -> np.ndarray:
    # row-major enumeration of the subset's multi-indices as linear offsets
    off = np.zeros(1, dtype=np.int64)
    for i in subset:
        off = (off[:, None] + strides[i] * np.arange(dims[i], dtype=np.int64)[None, :]).ravel()
    return off


def tensor(a, b):
    """Kronecker product of two kets or two density matrices."""
    if isinstance(a, Ket) and isinstance(b, Ket):
        return Ket(a.n_qubits + b.n_qubits, np.kron(a.amplitudes, b.amplitudes))
    if isinstance(a, DensityMatrix) and isinstance(b, DensityMatrix):
        return DensityMatrix(a.dims + b.dims, np.kron(a.entries, b.entries))
    raise TypeError(f"cannot tensor {type(a).__name__} with {type(b).__name__}")


def partial_trace(rho: DensityMatrix, keep: Sequence[int]) -> DensityMatrix:
    """Trace out every factor not listed in ``keep``.

    Kept factors stay in their original register order regardless of the
    order they are listed in.  The reduction sums entries whose kept
    row/column indices match, entry by entry.
    """
    keep_sorted = sorted(int(i) for i in keep)
    if not keep_sorted:
        raise ValueError("must keep at least one factor")
    if len(set(keep_sorted)) != len(keep_sorted):
        raise ValueError(f"duplicate indices in keep={tuple(keep)}")
    if keep_sorted[0] < 0 or keep_sorted[-1] >= rho.n_factors:
        raise ValueError(
            f"keep={tuple(keep)} out of range for {rho.n_factors} factors"
        )
    traced = [i for i in range(rho.n_factors) if i not in keep_sorted]
    strides = _strides(rho.dims)
    keep_off = _subset_offsets(rho.dims, keep_sorted, strides)
    trace_off = _subset_offsets(rho.dims, traced, strides)
    reduced = ptrace_sum(rho.entries, keep_off, trace_off)
    return DensityMatrix(tuple(rho.dims[i] for i in keep_sorted), reduced)


def partial_transpose(rho: DensityMatrix, subsystem: int) -> np.ndarray:
    """Transpose one factor in place; returns a raw matrix.

    The result is generally not positive semidefinite, so no
    DensityMatrix is constructed.
    """
    if subsystem < 0 or subsystem >= rho.n_factors:
        raise ValueError(f"subsystem {subsystem} out of range for dims {rho.dims}")
    k = rho.n_factors
    t = rho.entries.reshape(rho.dims + rho.dims)
    t = t.swapaxes(subsystem, k + subsystem)
    return np.ascontiguousarray(t.reshape(rho.order, rho.order))


def hermitian_eigenvalues(m: np.ndarray, atol: float = 1e-10) -> np.ndarray:
    """Real eigenvalues of a hermitian matrix, descending."""
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if np.abs(m - m.conj().T).max() > atol:
        raise ValueError("matrix is not hermitian within tolerance")
    return np.linalg.eigvalsh(m)[::-1]


def hermitian_eigensystem(m: np.ndarray, atol: float = 1e-10) -> tuple[np.ndarray, np.ndarray]:
    """Descending eigenvalues and matching eigenvector columns."""
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if np.abs(m - m.conj().T).max() > atol:
        raise ValueError("matrix is not hermitian within tolerance")
    vals, vecs = np.linalg.eigh(m)
    return vals[::-1], vecs[:, ::-1]


def trace_norm(m: np.ndarray) -> float:
    """Sum of singular values."""
    return float(np.linalg.svd(np.asarray(m), compute_uv=False).sum())


def purity(rho: DensityMatrix) -> float:
    """Tr(rho^2), clamped to [0, 1]."""
    p = float(np.vdot(rho.entries, rho.entries).real)
    return min(max(p, 0.0), 1.0)


def load_state(path) -> Ket:
    """Read a ket from a JSON state file.

    Expected schema: ``{"n_qubits": n, "amplitudes": [[re, im], ...]}``
    with 2**n amplitude pairs.  A norm deviating from 1 by at most 1e-6
    is renormalized; larger deviations are rejected.
    """
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFileError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(data, dict):
        raise StateFileError(f"{path}: top level must be an object")
    try:
        n = int(data["n_qubits"])
        raw = data["amplitudes"]
    except KeyError as exc:
        raise StateFileError(f"{path}: missing key {exc.args[0]!r}") from exc
    if n < 1:
        raise StateFileError(f"{path}: n_qubits must be positive, got {n}")
    if not isinstance(raw, list) or len(raw) != 2**n:
        raise StateFileError(
            f"{path}: expected {2**n} amplitude pairs, got "
            f"{len(raw) if isinstance(raw, list) else type(raw).__name__}"
        )
    amp = np.empty(2**n, dtype=np.complex128)
    for i, pair in enumerate(raw):
        if (
            not isinstance(pair, (list, tuple))
            or len(pair) != 2
            or not all(isinstance(v, (int, float)) for v in pair)
        ):
            raise StateFileError(
                f"{path}: amplitude {i} must be a [re, im] pair, got {pair!r}"
            )
        amp[i] = complex(pair[0], pair[1])
    norm = float(np.linalg.norm(amp))
    if abs(norm - 1.0) > STATE_FILE_NORM_ATOL:
        raise StateFileError(
            f"{path}: amplitude norm {norm!r} deviates from 1 by more than "
            f"{STATE_FILE_NORM_ATOL}"
        )
    if norm == 0.0 or not math.isfinite(norm):
        raise StateFileError(f"{path}: amplitude norm {norm!r} is not usable")
    return Ket(n, amp / norm)


def save_state(ket: Ket, path) -> None:
    """Write a ket to the JSON state file format accepted by load_state."""
    data = {
        "n_qubits": ket.n_qubits,
        "amplitudes": [[float(a.real), float(a.imag)] for a in ket.amplitudes],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh)
        fh.write("\n")
