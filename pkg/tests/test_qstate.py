import json
import math

import numpy as np
import pytest

from monogamy import (
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
    w_state,
)
from oracles import ptrace_loops, random_ket, random_mixed

np_rng = np.random.default_rng(20240817)


def random_dm(rng, dims, rank=None):
    dim = int(np.prod(dims))
    rank = rank or dim
    return DensityMatrix(dims, random_mixed(rng, dim, rank))


def test_ket_validation():
    Ket(1, np.array([1.0, 0.0]))
    with pytest.raises(ValueError):
        Ket(1, np.array([1.0, 1.0]))  # not normalized
    with pytest.raises(ValueError):
        Ket(2, np.array([1.0, 0.0]))  # wrong length
    with pytest.raises(ValueError):
        Ket(0, np.array([1.0]))


def test_ket_amplitudes_read_only():
    psi = Ket(1, np.array([1.0, 0.0]))
    with pytest.raises(ValueError):
        psi.amplitudes[0] = 0.5


def test_density_matrix_validation():
    with pytest.raises(ValueError):
        DensityMatrix((2,), np.array([[0.5, 0.5j], [0.5j, 0.5]]))  # not hermitian
    with pytest.raises(ValueError):
        DensityMatrix((2,), np.eye(2))  # trace 2
    with pytest.raises(ValueError):
        DensityMatrix((2,), np.diag([1.5, -0.5]))  # negative eigenvalue
    with pytest.raises(ValueError):
        DensityMatrix((2, 2), np.eye(2) / 2)  # dims do not match shape


def test_partition_spec_validation():
    with pytest.raises(ValueError):
        PartitionSpec((0,), (0, 1))
    with pytest.raises(ValueError):
        PartitionSpec((), (0,))
    with pytest.raises(ValueError):
        PartitionSpec((0, 0), (1,))
    cut = PartitionSpec.focus_vs_rest(1, 3)
    assert cut.side_a == (1,) and cut.side_b == (0, 2)
    cut.validate_for(3)
    with pytest.raises(ValueError):
        cut.validate_for(4)


def test_big_endian_convention():
    # |100> on three qubits sits at index 4 and puts qubit 0 in |1>
    amp = np.zeros(8)
    amp[4] = 1.0
    rho0 = partial_trace(Ket(3, amp).to_density_matrix(), (0,))
    assert np.allclose(rho0.entries, np.diag([0.0, 1.0]), atol=1e-14)
    rho12 = partial_trace(Ket(3, amp).to_density_matrix(), (1, 2))
    assert np.allclose(rho12.entries, np.diag([1.0, 0.0, 0.0, 0.0]), atol=1e-14)


def test_partial_trace_w_state_marginal():
    # frozen: tracing all but the focus qubit of W3 leaves diag(2/3, 1/3)
    rho = partial_trace(w_state(3).to_density_matrix(), (0,))
    assert np.allclose(rho.entries, np.diag([2.0 / 3.0, 1.0 / 3.0]), atol=1e-14)


@pytest.mark.parametrize("keep", [(0,), (1,), (3,), (0, 2), (1, 3), (0, 1, 2), (2, 0)])
def test_partial_trace_matches_loop_oracle(keep):
    rho = random_dm(np_rng, (2, 2, 2, 2))
    expected = ptrace_loops(rho.entries, rho.dims, keep)
    got = partial_trace(rho, keep)
    assert got.dims == tuple(2 for _ in set(keep))
    assert np.abs(got.entries - expected).max() < 1e-13


def test_partial_trace_keeps_register_order():
    # keep order must not matter: factors stay in original order
    rho = random_dm(np_rng, (2, 2, 2))
    a = partial_trace(rho, (0, 2))
    b = partial_trace(rho, (2, 0))
    assert np.array_equal(a.entries, b.entries)


def test_partial_trace_is_trace_preserving_and_positive():
    for _ in range(20):
        rho = random_dm(np_rng, (2, 2, 2), rank=int(np_rng.integers(1, 9)))
        red = partial_trace(rho, (0, 2))
        # DensityMatrix construction already enforces hermiticity/trace/psd;
        # check the numbers are comfortably inside tolerance, not at its edge
        assert abs(red.entries.trace() - 1.0) < 1e-14
        assert np.linalg.eigvalsh(red.entries)[0] > -1e-13


def test_partial_trace_errors():
    rho = random_dm(np_rng, (2, 2))
    with pytest.raises(ValueError):
        partial_trace(rho, ())
    with pytest.raises(ValueError):
        partial_trace(rho, (0, 0))
    with pytest.raises(ValueError):
        partial_trace(rho, (2,))


def test_tensor_trace_multiplicative():
    a = random_dm(np_rng, (2,))
    b = random_dm(np_rng, (2, 2))
    t = tensor(a, b)
    assert t.dims == (2, 2, 2)
    assert abs(t.entries.trace() - a.entries.trace() * b.entries.trace()) < 1e-14
    # purity is multiplicative on product states
    assert abs(purity(t) - purity(a) * purity(b)) < 1e-13


def test_tensor_kets():
    zero = Ket(1, np.array([1.0, 0.0]))
    one = Ket(1, np.array([0.0, 1.0]))
    both = tensor(zero, one)
    assert both.n_qubits == 2
    assert np.allclose(both.amplitudes, [0, 1, 0, 0])
    with pytest.raises(TypeError):
        tensor(zero, zero.to_density_matrix())


def test_partial_transpose_bell_spectrum():
    bell = Ket(2, np.array([1.0, 0.0, 0.0, 1.0]) / math.sqrt(2))
    pt = partial_transpose(bell.to_density_matrix(), 0)
    # frozen: the transposed Bell projector has spectrum {-1/2, 1/2, 1/2, 1/2}
    assert np.allclose(np.linalg.eigvalsh(pt), [-0.5, 0.5, 0.5, 0.5], atol=1e-14)


def test_partial_transpose_involution_and_trace():
    rho = random_dm(np_rng, (2, 2, 2))
    for sub in range(3):
        pt = partial_transpose(rho, sub)
        assert abs(np.trace(pt) - 1.0) < 1e-14
        assert np.abs(pt - pt.conj().T).max() < 1e-14
        # applying the same transpose twice restores the original entries
        again = pt.reshape(rho.dims + rho.dims).swapaxes(sub, 3 + sub).reshape(8, 8)
        assert np.array_equal(again, rho.entries)
    with pytest.raises(ValueError):
        partial_transpose(rho, 3)


def test_hermitian_eigenvalues_descending_and_trace():
    g = np_rng.standard_normal((8, 8)) + 1j * np_rng.standard_normal((8, 8))
    h = g + g.conj().T
    vals = hermitian_eigenvalues(h)
    assert np.all(np.diff(vals) <= 0)
    assert abs(vals.sum() - np.trace(h).real) < 1e-10
    with pytest.raises(ValueError):
        hermitian_eigenvalues(g)


def test_hermitian_eigensystem_reconstructs():
    g = np_rng.standard_normal((6, 6)) + 1j * np_rng.standard_normal((6, 6))
    h = g + g.conj().T
    vals, vecs = hermitian_eigensystem(h)
    residual = np.abs(vecs @ np.diag(vals) @ vecs.conj().T - h).max()
    assert residual < 1e-10


def test_trace_norm_hermitian_equals_abs_eigenvalue_sum():
    g = np_rng.standard_normal((5, 5)) + 1j * np_rng.standard_normal((5, 5))
    h = g + g.conj().T
    assert abs(trace_norm(h) - np.abs(np.linalg.eigvalsh(h)).sum()) < 1e-10


def test_purity_range():
    psi = Ket(2, random_ket(np_rng, 4))
    assert abs(purity(psi.to_density_matrix()) - 1.0) < 1e-12
    mixed = DensityMatrix((2, 2), np.eye(4) / 4)
    assert abs(purity(mixed) - 0.25) < 1e-15


def test_state_file_round_trip(tmp_path):
    path = tmp_path / "state.json"
    psi = Ket(2, random_ket(np_rng, 4))
    save_state(psi, path)
    back = load_state(path)
    assert back.n_qubits == 2
    assert np.abs(back.amplitudes - psi.amplitudes).max() < 1e-15


def test_state_file_normalizes_small_deviation(tmp_path):
    path = tmp_path / "state.json"
    amp = [[1.0 + 5e-7, 0.0], [0.0, 0.0]]
    path.write_text(json.dumps({"n_qubits": 1, "amplitudes": amp}))
    psi = load_state(path)
    assert abs(np.linalg.norm(psi.amplitudes) - 1.0) < 1e-15


def test_state_file_rejects_large_deviation(tmp_path):
    path = tmp_path / "state.json"
    amp = [[1.001, 0.0], [0.0, 0.0]]
    path.write_text(json.dumps({"n_qubits": 1, "amplitudes": amp}))
    with pytest.raises(StateFileError):
        load_state(path)


def test_state_file_diagnostics(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"n_qubits": 1,\n  "amplitudes": [[1.0, 0.0],\n')
    with pytest.raises(StateFileError, match=r"line \d+"):
        load_state(path)
    path.write_text(json.dumps({"amplitudes": [[1.0, 0.0], [0.0, 0.0]]}))
    with pytest.raises(StateFileError, match="n_qubits"):
        load_state(path)
    path.write_text(json.dumps({"n_qubits": 2, "amplitudes": [[1.0, 0.0], [0.0, 0.0]]}))
    with pytest.raises(StateFileError, match="expected 4"):
        load_state(path)
    path.write_text(json.dumps({"n_qubits": 1, "amplitudes": [[1.0, 0.0], "x"]}))
    with pytest.raises(StateFileError, match="amplitude 1"):
        load_state(path)
