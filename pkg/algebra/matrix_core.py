"""Dense small complex linear algebra shared by every operator module.

All matrices are ``complex128`` numpy arrays. Functions never mutate their
inputs; subspaces are immutable.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum
from math import sqrt

import numpy as np
import numpy.typing as npt

from algebra.errors import DimensionMismatchError, NotCommutingError, NotHermitianError, PreconditionError

logger = logging.getLogger(__name__)

ComplexMatrix = npt.NDArray[np.complex128]

DEFAULT_TOL = 1e-10
# Rank and kernel decisions. Independent of the identity tolerance so that a
# tighter identity tolerance never changes which subspaces are compared.
RANK_TOL = 1e-9
ORTHONORMAL_TOL = 1e-12

_JOINT_WEIGHTS = tuple(sqrt(n) for n in (1, 2, 3, 5, 7, 11, 13))


class Bracket(str, Enum):
    COMMUTATOR = "commutator"
    ANTICOMMUTATOR = "anticommutator"


def as_matrix(a: npt.ArrayLike) -> ComplexMatrix:
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise DimensionMismatchError(f"Expected a 2-d matrix, got an array of shape {m.shape}")
    return m


def frozen(a: npt.ArrayLike) -> ComplexMatrix:
    """Return a read-only complex copy of ``a``."""
    m = np.array(a, dtype=np.complex128)
    m.setflags(write=False)
    return m


def identity(dim: int) -> ComplexMatrix:
    return np.eye(dim, dtype=np.complex128)


def adjoint(a: npt.ArrayLike) -> ComplexMatrix:
    return as_matrix(a).conj().T


def norm(a: npt.ArrayLike) -> float:
    """Spectral (operator 2-) norm."""
    m = as_matrix(a)
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, 2))


def hermiticity_residual(a: npt.ArrayLike) -> float:
    m = as_matrix(a)
    return norm(m - m.conj().T)


def unitarity_residual(a: npt.ArrayLike) -> float:
    m = as_matrix(a)
    return norm(m @ m.conj().T - identity(m.shape[0]))


def bracket(a: npt.ArrayLike, b: npt.ArrayLike, sign: Bracket = Bracket.COMMUTATOR) -> ComplexMatrix:
    """Return ``AB - BA`` or ``AB + BA``."""
    ma, mb = as_matrix(a), as_matrix(b)
    if ma.shape != mb.shape or ma.shape[0] != ma.shape[1]:
        raise DimensionMismatchError(f"Cannot bracket matrices of shapes {ma.shape} and {mb.shape}")
    if sign is Bracket.COMMUTATOR:
        return ma @ mb - mb @ ma
    return ma @ mb + mb @ ma


def commutator(a: npt.ArrayLike, b: npt.ArrayLike) -> ComplexMatrix:
    return bracket(a, b, Bracket.COMMUTATOR)


def anticommutator(a: npt.ArrayLike, b: npt.ArrayLike) -> ComplexMatrix:
    return bracket(a, b, Bracket.ANTICOMMUTATOR)


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of C^n given by orthonormal basis columns."""

    ambient_dim: int
    basis: ComplexMatrix

    def __post_init__(self) -> None:
        basis = np.array(self.basis, dtype=np.complex128)
        if basis.ndim == 1:
            basis = basis.reshape(-1, 1)
        if basis.shape[0] != self.ambient_dim:
            raise DimensionMismatchError(
                f"Basis vectors of length {basis.shape[0]} do not live in C^{self.ambient_dim}"
            )
        if basis.shape[1] > self.ambient_dim:
            raise DimensionMismatchError(
                f"A subspace of C^{self.ambient_dim} cannot have {basis.shape[1]} basis vectors"
            )
        gram_error = norm(basis.conj().T @ basis - identity(basis.shape[1])) if basis.shape[1] else 0.0
        if gram_error > ORTHONORMAL_TOL:
            raise PreconditionError(f"Subspace basis is not orthonormal (residual {gram_error:.3e})")
        basis.setflags(write=False)
        object.__setattr__(self, "basis", basis)

    @property
    def dim(self) -> int:
        return int(self.basis.shape[1])

    @property
    def projector(self) -> ComplexMatrix:
        return self.basis @ self.basis.conj().T

    def vectors(self) -> list[ComplexMatrix]:
        return [self.basis[:, k] for k in range(self.dim)]


def span(vectors: npt.ArrayLike, tol: float = RANK_TOL) -> Subspace:
    """Orthonormalize the columns of ``vectors``; directions below ``tol`` (relative) are dropped."""
    m = as_matrix(vectors)
    n = m.shape[0]
    if m.shape[1] == 0 or not np.any(m):
        return Subspace(n, np.zeros((n, 0)))
    u, s, _ = np.linalg.svd(m, full_matrices=False)
    rank = int(np.sum(s > tol * s[0]))
    return Subspace(n, u[:, :rank])


def numerical_rank(a: npt.ArrayLike, tol: float = RANK_TOL) -> int:
    m = as_matrix(a)
    if m.size == 0 or not np.any(m):
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    return int(np.sum(s > tol * s[0]))


def kernel_basis(a: npt.ArrayLike, tol: float = RANK_TOL, scale: float | None = None) -> Subspace:
    """Orthonormal basis of the null space of ``a``.

    Singular values below ``tol`` times ``scale`` count as zero. ``scale``
    defaults to the largest singular value of ``a``; pass the norm of the
    parent operator when ``a`` is a restriction of it. The zero matrix has the
    full space as its kernel.
    """
    if tol <= 0:
        raise PreconditionError(f"Kernel tolerance must be positive, got {tol}")
    m = as_matrix(a)
    n = m.shape[1]
    if m.size == 0 or not np.any(m):
        return Subspace(n, identity(n))
    _, s, vh = np.linalg.svd(m, full_matrices=True)
    rank = int(np.sum(s > tol * (s[0] if scale is None else scale)))
    return Subspace(n, vh[rank:].conj().T)


def projector_distance(u: Subspace, v: Subspace) -> float:
    if u.ambient_dim != v.ambient_dim:
        raise DimensionMismatchError(
            f"Subspaces live in different spaces: C^{u.ambient_dim} and C^{v.ambient_dim}"
        )
    return float(np.linalg.norm(u.projector - v.projector, "fro"))


def subspace_equal(u: Subspace, v: Subspace, tol: float = 1e-8) -> bool:
    """True iff the subspaces have equal dimension and Frobenius projector distance within ``tol``."""
    distance = projector_distance(u, v)
    return u.dim == v.dim and distance <= tol


def hermitian_eigen(a: npt.ArrayLike, tol: float = DEFAULT_TOL) -> list[tuple[float, ComplexMatrix]]:
    """Full orthonormal eigendecomposition of a Hermitian matrix, eigenvalues ascending."""
    m = as_matrix(a)
    residual = hermiticity_residual(m)
    if residual > tol * norm(m):
        raise NotHermitianError(residual, tol)
    values, vectors = np.linalg.eigh(0.5 * (m + m.conj().T))
    return [(float(values[k]), vectors[:, k]) for k in range(len(values))]


def reconstruct(eigenpairs: Sequence[tuple[float, ComplexMatrix]]) -> ComplexMatrix:
    dim = len(eigenpairs[0][1])
    out = np.zeros((dim, dim), dtype=np.complex128)
    for value, vector in eigenpairs:
        out += value * np.outer(vector, vector.conj())
    return out


def _label(value: complex) -> float:
    # +0.0 folds -0.0 so labels print and hash identically
    return round(float(np.real(value)), 6) + 0.0


def joint_eigendecomposition(
    operators: Sequence[npt.ArrayLike], tol: float = DEFAULT_TOL, cluster_tol: float = 1e-6
) -> list[tuple[tuple[float, ...], Subspace]]:
    """Joint eigenspaces of pairwise commuting Hermitian matrices.

    Returns ``(labels, subspace)`` pairs where ``labels[k]`` is the eigenvalue of
    ``operators[k]`` on that subspace, ordered by a fixed generic combination.
    """
    mats = [as_matrix(op) for op in operators]
    if not mats or len(mats) > len(_JOINT_WEIGHTS):
        raise PreconditionError(f"Expected between 1 and {len(_JOINT_WEIGHTS)} operators, got {len(mats)}")
    dim = mats[0].shape[0]
    for i, a in enumerate(mats):
        for b in mats[i + 1 :]:
            residual = norm(commutator(a, b))
            if residual > tol * max(1.0, norm(a) * norm(b)):
                raise NotCommutingError(f"Operators do not commute (commutator norm {residual:.3e})")

    combination = sum(w * a for w, a in zip(_JOINT_WEIGHTS, mats))
    pairs = hermitian_eigen(combination, tol)
    scale = max(1.0, max(abs(v) for v, _ in pairs))

    clusters: list[list[ComplexMatrix]] = []
    last_value: float | None = None
    for value, vector in pairs:
        if last_value is None or value - last_value > cluster_tol * scale:
            clusters.append([])
        clusters[-1].append(vector)
        last_value = value

    result = []
    for vectors in clusters:
        basis = np.column_stack(vectors)
        k = basis.shape[1]
        labels = tuple(_label(np.trace(basis.conj().T @ a @ basis) / k) for a in mats)
        result.append((labels, Subspace(dim, basis)))
    logger.debug("Joint decomposition into %d eigenspaces", len(result))
    return result
