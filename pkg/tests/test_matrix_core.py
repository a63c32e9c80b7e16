import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from algebra.errors import DimensionMismatchError, NotCommutingError, NotHermitianError, PreconditionError
from algebra.matrix_core import (
    Bracket,
    Subspace,
    adjoint,
    anticommutator,
    bracket,
    commutator,
    hermitian_eigen,
    identity,
    joint_eigendecomposition,
    kernel_basis,
    norm,
    numerical_rank,
    projector_distance,
    reconstruct,
    span,
    subspace_equal,
)

ENTRIES = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False)


def random_hermitian(rng: np.random.Generator, dim: int = 4) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return 0.5 * (a + a.conj().T)


def test_norm_is_spectral():
    assert norm(np.diag([3.0, -5.0, 1.0])) == pytest.approx(5.0)
    assert norm(np.zeros((0, 0))) == 0.0


def test_bracket_rejects_mismatched_shapes():
    with pytest.raises(DimensionMismatchError):
        bracket(np.eye(2), np.eye(3))


def test_pauli_brackets():
    s1 = np.array([[0, 1], [1, 0]])
    s2 = np.array([[0, -1j], [1j, 0]])
    s3 = np.diag([1, -1])
    np.testing.assert_allclose(commutator(s1, s2), 2j * s3)
    np.testing.assert_allclose(anticommutator(s1, s2), np.zeros((2, 2)))
    np.testing.assert_allclose(bracket(s1, s1, Bracket.ANTICOMMUTATOR), 2 * np.eye(2))


@settings(deadline=None, max_examples=50)
@given(arrays(np.float64, (4, 4), elements=ENTRIES), arrays(np.float64, (4, 4), elements=ENTRIES))
def test_commutator_is_antisymmetric(a, b):
    np.testing.assert_allclose(commutator(a, b), -commutator(b, a), atol=1e-9)


def test_subspace_rejects_non_orthonormal_basis():
    with pytest.raises(PreconditionError):
        Subspace(2, np.array([[1.0, 1.0], [0.0, 1.0]]))
    with pytest.raises(DimensionMismatchError):
        Subspace(3, np.eye(2))


def test_span_drops_dependent_columns():
    vectors = np.array([[1.0, 2.0, 0.0], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]])
    space = span(vectors)
    assert space.dim == 2
    np.testing.assert_allclose(space.projector, np.diag([1.0, 1.0, 0.0]), atol=1e-12)


def test_kernel_of_zero_matrix_is_everything():
    assert kernel_basis(np.zeros((3, 3))).dim == 3


def test_kernel_basis_rejects_nonpositive_tolerance():
    with pytest.raises(PreconditionError):
        kernel_basis(np.eye(2), tol=0.0)


def test_kernel_and_rank_add_up(rng):
    a = rng.normal(size=(4, 2)) @ rng.normal(size=(2, 4))
    kernel = kernel_basis(a)
    assert numerical_rank(a) == 2
    assert kernel.dim == 2
    assert norm(a @ kernel.basis) < 1e-10


def test_subspace_equal_ignores_basis_choice():
    u = span(np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]]))
    v = span(np.array([[1.0, 1.0], [1.0, -1.0], [0.0, 0.0]]))
    w = span(np.array([[1.0], [0.0], [0.0]]))
    assert subspace_equal(u, v)
    assert not subspace_equal(u, w)
    with pytest.raises(DimensionMismatchError):
        projector_distance(u, span(np.eye(2)))


def test_hermitian_eigen_reconstructs(rng):
    a = random_hermitian(rng)
    pairs = hermitian_eigen(a)
    assert [v for v, _ in pairs] == sorted(v for v, _ in pairs)
    np.testing.assert_allclose(reconstruct(pairs), a, atol=1e-10)


def test_hermitian_eigen_rejects_non_hermitian():
    with pytest.raises(NotHermitianError) as excinfo:
        hermitian_eigen(np.array([[0.0, 1.0], [0.0, 0.0]]))
    assert excinfo.value.residual == pytest.approx(1.0)


def test_joint_eigendecomposition_labels_common_eigenspaces(rng):
    q, _ = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
    a = q @ np.diag([1.0, 1.0, -1.0, -1.0]) @ adjoint(q)
    b = q @ np.diag([1.0, -1.0, 1.0, -1.0]) @ adjoint(q)
    spaces = joint_eigendecomposition([a, b])
    labels = sorted(labels for labels, _ in spaces)
    assert labels == [(-1.0, -1.0), (-1.0, 1.0), (1.0, -1.0), (1.0, 1.0)]
    total = sum(space.projector for _, space in spaces)
    np.testing.assert_allclose(total, identity(4), atol=1e-10)


def test_joint_eigendecomposition_keeps_degenerate_blocks():
    spaces = joint_eigendecomposition([np.diag([1.0, 1.0, 2.0])])
    assert sorted(space.dim for _, space in spaces) == [1, 2]


def test_joint_eigendecomposition_rejects_non_commuting():
    s1 = np.array([[0, 1], [1, 0]])
    s3 = np.diag([1, -1])
    with pytest.raises(NotCommutingError):
        joint_eigendecomposition([s1, s3])


def test_kernel_basis_scale_overrides_own_singular_values():
    column = np.array([[1e-16], [0.0], [0.0], [0.0]])
    assert kernel_basis(column).dim == 0
    assert kernel_basis(column, scale=1.0).dim == 1


def test_hermitian_eigen_tolerance_is_relative_to_small_norms():
    with pytest.raises(NotHermitianError):
        hermitian_eigen(1e-12 * np.array([[1.0, 1.0], [0.0, 1.0]]))
    assert [v for v, _ in hermitian_eigen(np.zeros((2, 2)))] == [0.0, 0.0]
