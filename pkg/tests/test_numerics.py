"""Tests for the dense linear algebra kernels."""

import numpy as np
import pytest

from dilatia.errors import ConvergenceError, DimensionError, DomainError, MatrixParseError, SymmetryError
from dilatia.numerics import (
    StateVector,
    SvdFactors,
    as_vector,
    complete_unitary,
    format_matrix,
    frobenius_norm,
    hermitian_eig,
    hermitian_sqrt,
    is_unitary,
    next_power_of_two,
    parse_matrix,
    svd,
)

from .conftest import random_matrix


def _unitarity(m):
    return np.linalg.norm(m.conj().T @ m - np.eye(m.shape[0]))


def _check_svd_round_trip(rng, count) -> None:
    for _ in range(count):
        r = int(rng.integers(2, 17))
        m = random_matrix(rng, r)
        factors = svd(m)
        assert np.linalg.norm(factors.reconstruct() - m) <= 1e-10
        assert _unitarity(factors.u) <= 1e-12
        assert _unitarity(factors.v_dagger.conj().T) <= 1e-12
        assert np.all(np.diff(factors.singular_values) <= 0)
        assert np.all(factors.singular_values >= 0)
        np.testing.assert_allclose(factors.singular_values, np.linalg.svd(m, compute_uv=False), atol=1e-10)


def test_svd_random_round_trip(rng) -> None:
    _check_svd_round_trip(rng, 100)


@pytest.mark.slow
def test_svd_random_round_trip_full(rng) -> None:
    _check_svd_round_trip(rng, 1000)


@pytest.mark.parametrize("scale", [1e-100, 1e-155, 1e-300, 1e150])
def test_svd_extreme_scales(scale) -> None:
    base = random_matrix(np.random.default_rng(7), 4)
    m = scale * base
    factors = svd(m)
    assert _unitarity(factors.u) <= 1e-12
    assert _unitarity(factors.v_dagger) <= 1e-12
    np.testing.assert_allclose(factors.singular_values / scale, np.linalg.svd(base, compute_uv=False), rtol=1e-10)
    assert np.linalg.norm(factors.reconstruct() / scale - base) <= 1e-10


def test_svd_tiny_symmetric_matrix() -> None:
    m = np.array([[3e-155, 1e-155], [1e-155, 2e-155]])
    factors = svd(m)
    assert _unitarity(factors.u) <= 1e-12
    np.testing.assert_allclose(factors.reconstruct(), m, rtol=0, atol=1e-165)


def test_svd_identity() -> None:
    factors = svd(np.eye(2))
    np.testing.assert_allclose(factors.singular_values, [1, 1])
    np.testing.assert_allclose(factors.reconstruct(), np.eye(2), atol=1e-14)


def test_svd_diagonal_with_negative_entry() -> None:
    factors = svd(np.diag([0.6, -0.8]))
    np.testing.assert_allclose(factors.singular_values, [0.8, 0.6], atol=1e-14)
    np.testing.assert_allclose(factors.reconstruct(), np.diag([0.6, -0.8]), atol=1e-12)


def test_svd_rank_deficient_has_unitary_factors() -> None:
    factors = svd(np.array([[0, 0.5], [0, 0]]))
    np.testing.assert_allclose(factors.singular_values, [0.5, 0.0])
    np.testing.assert_allclose(factors.u, np.eye(2), atol=1e-14)
    np.testing.assert_allclose(factors.v_dagger, [[0, 1], [1, 0]], atol=1e-14)


def test_svd_zero_matrix() -> None:
    factors = svd(np.zeros((3, 3)))
    np.testing.assert_allclose(factors.singular_values, 0.0)
    assert _unitarity(factors.u) <= 1e-12
    assert _unitarity(factors.v_dagger) <= 1e-12


def test_svd_left_vectors_are_canonical(rng) -> None:
    factors = svd(random_matrix(rng, 5))
    for j in range(5):
        col = factors.u[:, j]
        peak = int(np.argmax(np.abs(col)))
        assert abs(col[peak].imag) <= 1e-12
        assert col[peak].real > 0


def test_svd_rejects_non_square() -> None:
    with pytest.raises(DimensionError, match="square"):
        svd(np.ones((2, 3)))


def test_svd_rejects_oversized() -> None:
    with pytest.raises(DimensionError, match="at most 64x64"):
        svd(np.eye(65))


def test_svd_reports_non_convergence(monkeypatch, rng) -> None:
    monkeypatch.setattr("dilatia.numerics.SVD_MAX_SWEEPS", 1)
    with pytest.raises(ConvergenceError) as excinfo:
        svd(random_matrix(rng, 8))
    assert excinfo.value.residual > 0


def test_svd_factors_validate_shapes() -> None:
    with pytest.raises(DimensionError):
        SvdFactors(np.eye(2), [1.0], np.eye(2))
    with pytest.raises(DomainError):
        SvdFactors(np.eye(2), [1.0, -1.0], np.eye(2))


def test_svd_factors_are_read_only() -> None:
    factors = svd(np.eye(2))
    with pytest.raises(ValueError):
        factors.u[0, 0] = 2


def test_hermitian_eig_descending() -> None:
    values, vectors = hermitian_eig(np.array([[2, 1j], [-1j, 2]]))
    np.testing.assert_allclose(values, [3, 1], atol=1e-12)
    assert _unitarity(vectors) <= 1e-12


def test_hermitian_eig_rejects_non_hermitian() -> None:
    with pytest.raises(SymmetryError, match="not Hermitian"):
        hermitian_eig(np.array([[1, 1], [0, 1]]))


def test_hermitian_sqrt() -> None:
    np.testing.assert_allclose(hermitian_sqrt(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]), atol=1e-12)
    np.testing.assert_allclose(hermitian_sqrt(np.zeros((2, 2))), np.zeros((2, 2)))
    p = np.array([[2, 1], [1, 2]], dtype=complex)
    root = hermitian_sqrt(p)
    np.testing.assert_allclose(root @ root, p, atol=1e-12)


def test_hermitian_eig_reconstructs_random(rng) -> None:
    for _ in range(50):
        a = random_matrix(rng, int(rng.integers(2, 9)))
        h = a + a.conj().T
        values, vectors = hermitian_eig(h)
        assert np.linalg.norm((vectors * values) @ vectors.conj().T - h) <= 1e-10
        assert np.all(np.diff(values) <= 0)


def test_hermitian_sqrt_of_random_gram_matrices(rng) -> None:
    for _ in range(50):
        a = random_matrix(rng, int(rng.integers(2, 9)))
        p = a.conj().T @ a
        root = hermitian_sqrt(p)
        assert np.linalg.norm(root @ root - p) <= 1e-10
        assert np.linalg.norm(root - root.conj().T) <= 1e-12


def test_hermitian_sqrt_clamps_tiny_negative() -> None:
    root = hermitian_sqrt(np.diag([1.0, -1e-13]))
    np.testing.assert_allclose(root, np.diag([1.0, 0.0]), atol=1e-12)


def test_hermitian_sqrt_rejects_indefinite() -> None:
    with pytest.raises(DomainError, match="positive semidefinite"):
        hermitian_sqrt(np.diag([1.0, -1.0]))


def test_complete_unitary_from_single_column() -> None:
    psi = np.array([0.6, 0.8j])
    u = complete_unitary(psi)
    np.testing.assert_allclose(u[:, 0], psi)
    assert is_unitary(u)


def test_state_vector() -> None:
    state = StateVector([1, 0, 0, 0])
    assert state.qubit_count == 2
    assert len(state) == 4
    np.testing.assert_allclose(StateVector.basis(2, 3).amplitudes, [0, 0, 0, 1])
    assert StateVector([3, 4]).normalized().norm == pytest.approx(1.0)


def test_state_vector_rejects_odd_length() -> None:
    with pytest.raises(DimensionError, match="power of two"):
        StateVector([1, 0, 0])


def test_as_vector_flattens_row() -> None:
    assert as_vector([[1, 2, 3]]).shape == (3,)


def test_next_power_of_two() -> None:
    assert [next_power_of_two(n) for n in (1, 2, 3, 5, 8)] == [1, 2, 4, 8, 8]


def test_parse_matrix() -> None:
    text = "# K1\n0 0.5\n0 0  # second row\n\n"
    np.testing.assert_allclose(parse_matrix(text), [[0, 0.5], [0, 0]])
    np.testing.assert_allclose(parse_matrix("0.6+0.8j -1j"), [[0.6 + 0.8j, -1j]])


def test_parse_matrix_reports_position() -> None:
    with pytest.raises(MatrixParseError) as excinfo:
        parse_matrix("1 0\n0 abc")
    assert (excinfo.value.line, excinfo.value.column) == (2, 3)


def test_parse_matrix_rejects_ragged_rows() -> None:
    with pytest.raises(MatrixParseError, match="expected 2 entries"):
        parse_matrix("1 0\n0 1 2")


def test_parse_matrix_rejects_empty_and_nan() -> None:
    with pytest.raises(MatrixParseError, match="no matrix rows"):
        parse_matrix("# nothing\n")
    with pytest.raises(MatrixParseError, match="non-finite"):
        parse_matrix("nan 1")


def test_format_matrix_is_parseable(rng) -> None:
    m = random_matrix(rng, 3)
    np.testing.assert_array_equal(parse_matrix(format_matrix(m)), m)


def test_frobenius_norm() -> None:
    assert frobenius_norm(np.array([[3.0, 0.0], [0.0, 4j]])) == pytest.approx(5.0)
    assert frobenius_norm(np.zeros((2, 2))) == 0.0
