"""Decomposition of C^4 into the four (energy sign, helicity) rays and constraint content."""

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np
import numpy.typing as npt

from algebra.errors import PreconditionError
from algebra.matrix_core import (
    DEFAULT_TOL,
    ComplexMatrix,
    Subspace,
    commutator,
    hermiticity_residual,
    identity,
    joint_eigendecomposition,
    norm,
)
from algebra.momentum_ops import OperatorField, as_momentum, energy_sign, helicity_matrix, sign_label

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class IrrepLabel:
    """One-dimensional massless representation D^eps(lambda)."""

    energy_sign: int
    helicity: int

    def __str__(self) -> str:
        return f"D{sign_label(self.energy_sign)}(lambda={self.helicity:+d})"


ALL_LABELS = (IrrepLabel(1, 1), IrrepLabel(1, -1), IrrepLabel(-1, 1), IrrepLabel(-1, -1))


class SelectionPattern(str, Enum):
    MIXED = "mixed"  # lambda * eps constant
    FIXED_HELICITY = "fixed_helicity"
    FIXED_ENERGY_SIGN = "fixed_energy_sign"
    OTHER = "other"


def canonical_phase(vector: npt.ArrayLike) -> ComplexMatrix:
    """Rotate a vector's phase so its first largest-magnitude entry is real positive."""
    v = np.asarray(vector, dtype=np.complex128)
    magnitudes = np.abs(v)
    pivot = int(np.argmax(magnitudes >= magnitudes.max() - 1e-9))
    return v * (abs(v[pivot]) / v[pivot])


@dataclass(frozen=True, eq=False)
class LabeledDecomposition:
    momentum: npt.NDArray[np.float64]
    spaces: dict[IrrepLabel, Subspace]

    def ray(self, label: IrrepLabel) -> ComplexMatrix:
        return self.spaces[label].basis[:, 0]

    def completeness_residual(self) -> float:
        total = sum((s.projector for s in self.spaces.values()), np.zeros((4, 4), dtype=np.complex128))
        return norm(total - identity(4))

    def orthogonality_residual(self) -> float:
        basis = np.column_stack([self.ray(label) for label in ALL_LABELS])
        return norm(basis.conj().T @ basis - identity(4))


def decompose(p: npt.ArrayLike, tol: float = DEFAULT_TOL) -> LabeledDecomposition:
    """Joint eigenrays of the commuting pair (eps, Lambda), one per label."""
    m = as_momentum(p)
    eigenspaces = joint_eigendecomposition([energy_sign(m), helicity_matrix(m)], tol)
    spaces: dict[IrrepLabel, Subspace] = {}
    for (eps, lam), space in eigenspaces:
        label = IrrepLabel(int(round(eps)), int(round(lam)))
        if space.dim != 1 or abs(eps - label.energy_sign) > 1e-6 or abs(lam - label.helicity) > 1e-6:
            raise PreconditionError(f"Unexpected joint eigenspace ({eps}, {lam}) of dimension {space.dim}")
        spaces[label] = Subspace(4, canonical_phase(space.basis[:, 0]))
    if set(spaces) != set(ALL_LABELS):
        raise PreconditionError(f"Decomposition produced labels {sorted(spaces)}")
    return LabeledDecomposition(momentum=m, spaces={label: spaces[label] for label in ALL_LABELS})


def _check_constraint(q: ComplexMatrix, m: npt.NDArray[np.float64], tol: float) -> None:
    if norm(q @ q - q) > tol:
        raise PreconditionError(f"Constraint is not idempotent (residual {norm(q @ q - q):.3e})")
    if hermiticity_residual(q) > tol:
        raise PreconditionError(f"Constraint is not Hermitian (residual {hermiticity_residual(q):.3e})")
    for name, op in (("energy sign", energy_sign(m)), ("helicity", helicity_matrix(m))):
        residual = norm(commutator(q, op))
        if residual > tol:
            raise PreconditionError(f"Constraint does not commute with the {name} operator (residual {residual:.3e})")


def classify_constraint(
    q: OperatorField, p: npt.ArrayLike, tol: float = DEFAULT_TOL, fixed_point: bool = False
) -> frozenset[IrrepLabel]:
    """Labels whose ray solves Q psi = 0 (or Q psi = psi with ``fixed_point``)."""
    m = as_momentum(p)
    qm = q(m)
    _check_constraint(qm, m, tol)
    decomposition = decompose(m, tol)
    selected = set()
    for label in ALL_LABELS:
        # Q commutes with both labels, so Q v is either 0 or v
        annihilated = norm(qm @ decomposition.spaces[label].basis) < 0.5
        if annihilated != fixed_point:
            selected.add(label)
    return frozenset(selected)


def selection_pattern(labels: frozenset[IrrepLabel]) -> SelectionPattern:
    if len(labels) != 2:
        return SelectionPattern.OTHER
    first, second = sorted(labels)
    if first.helicity == second.helicity:
        return SelectionPattern.FIXED_HELICITY
    if first.energy_sign == second.energy_sign:
        return SelectionPattern.FIXED_ENERGY_SIGN
    if first.helicity * first.energy_sign == second.helicity * second.energy_sign:
        return SelectionPattern.MIXED
    return SelectionPattern.OTHER


def describe(labels: frozenset[IrrepLabel]) -> str:
    return " + ".join(str(label) for label in sorted(labels, reverse=True)) or "0"
