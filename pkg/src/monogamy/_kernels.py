"""Numeric kernels with a compiled fast path and a pure-numpy fallback.

The compiled path uses numba when it is importable and the environment
variable ``MONOGAMY_PURE_NUMPY`` is not set to ``1``/``true``/``yes``.
Both paths implement identical arithmetic; ``NUMBA_ENABLED`` reports
which one is active.
"""
from __future__ import annotations

import os

import numpy as np


def _pure_numpy_requested() -> bool:
    return os.environ.get("MONOGAMY_PURE_NUMPY", "").strip().lower() in ("1", "true", "yes")


NUMBA_ENABLED = False
if not _pure_numpy_requested():
    try:
        from numba import njit

        NUMBA_ENABLED = True
    except ImportError:
        pass

# sign pattern of the two-qubit spin flip: antidiag(-1, 1, 1, -1)
_FLIP_SIGNS = np.array([-1.0, 1.0, 1.0, -1.0])


def ptrace_sum_numpy(entries: np.ndarray, keep_off: np.ndarray, trace_off: np.ndarray) -> np.ndarray:
    """Sum entries[k_i + t, k_j + t] over traced offsets t.

    ``keep_off`` enumerates the linear offsets of the kept multi-indices,
    ``trace_off`` those of the traced ones; offsets are additive because
    the register uses row-major strides.
    """
    rows = keep_off[:, None, None] + trace_off[None, None, :]
    cols = keep_off[None, :, None] + trace_off[None, None, :]
    return entries[rows, cols].sum(axis=2)


def spin_flip_mus_numpy(rho: np.ndarray) -> np.ndarray:
    """Descending square roots of the spin-flip product spectrum.

    The flipped matrix is S rho* S with S = sigma_y (x) sigma_y, written
    entrywise as s_i s_j conj(rho)[3-i, 3-j].  Eigenvalues of rho @ flipped
    are real and nonnegative up to rounding; tiny negative parts (within
    1e-10 of zero for valid density input) are clipped before the root.
    """
    flipped = (_FLIP_SIGNS[:, None] * _FLIP_SIGNS[None, :]) * rho.conj()[::-1, ::-1]
    ev = np.linalg.eigvals(rho @ flipped)
    mus = np.sqrt(np.maximum(ev.real, 0.0))
    mus.sort()
    return mus[::-1]


if NUMBA_ENABLED:

    @njit(cache=True)
    def _ptrace_sum_jit(entries, keep_off, trace_off):  # pragma: no cover - numba
        dk = keep_off.shape[0]
        dt = trace_off.shape[0]
        out = np.zeros((dk, dk), dtype=np.complex128)
        for i in range(dk):
            for j in range(dk):
                acc = 0.0 + 0.0j
                for t in range(dt):
                    acc += entries[keep_off[i] + trace_off[t], keep_off[j] + trace_off[t]]
                out[i, j] = acc
        return out

    @njit(cache=True)
    def _spin_flip_mus_jit(rho):  # pragma: no cover - numba
        signs = (-1.0, 1.0, 1.0, -1.0)
        flipped = np.empty((4, 4), dtype=np.complex128)
        for i in range(4):
            for j in range(4):
                flipped[i, j] = signs[i] * signs[j] * np.conj(rho[3 - i, 3 - j])
        ev = np.linalg.eigvals(np.ascontiguousarray(rho) @ flipped)
        mus = np.sqrt(np.maximum(ev.real, 0.0))
        mus.sort()
        return mus[::-1].copy()

    ptrace_sum = _ptrace_sum_jit
    spin_flip_mus = _spin_flip_mus_jit
else:
    ptrace_sum = ptrace_sum_numpy
    spin_flip_mus = spin_flip_mus_numpy


def warm_up() -> None:
    """Trigger one-time JIT compilation so later calls run at full speed."""
    eye = np.eye(4, dtype=np.complex128) / 4.0
    offs = np.array([0, 2], dtype=np.int64)
    ptrace_sum(eye, offs, np.array([0, 1], dtype=np.int64))
    spin_flip_mus(eye)
