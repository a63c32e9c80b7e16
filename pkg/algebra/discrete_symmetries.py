"""Parity, time reversal and charge conjugation on plane-wave data.

A symmetry acts on a plane-wave datum (p, omega, v) as
(s_p p, s_omega omega, M v) or, for antiunitary operators, (s_p p, s_omega omega, M conj(v)).
Antiunitarity is a flag, never a matrix.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Protocol

import numpy as np
import numpy.typing as npt

from algebra.errors import PreconditionError
from algebra.gamma_algebra import build_gamma_set
from algebra.matrix_core import (
    RANK_TOL,
    Bracket,
    ComplexMatrix,
    Subspace,
    adjoint,
    frozen,
    identity,
    kernel_basis,
    norm,
    projector_distance,
    span,
    unitarity_residual,
)
from algebra.momentum_ops import (
    FAMILIES,
    SIGNS,
    OperatorField,
    as_momentum,
    hamiltonian_field,
    projector_field,
)
from algebra.sampling import UNIT_SCALE, sample_momenta
from reporting.models import ReportBuilder, VerificationReport

logger = logging.getLogger(__name__)

UNITARY_TOL = 1e-12


class PlaneWaveAction(Protocol):
    """Anything that maps solution data at (s_p p, s_omega omega) to (p, omega)."""

    name: str
    conjugates: bool
    momentum_sign: int
    frequency_sign: int

    def matrix_at(self, p: npt.NDArray[np.float64]) -> ComplexMatrix: ...


def maybe_conjugate(a: ComplexMatrix, conjugates: bool) -> ComplexMatrix:
    return a.conj() if conjugates else a


@dataclass(frozen=True, eq=False)
class SymmetryOp:
    name: str
    matrix: ComplexMatrix
    conjugates: bool
    momentum_sign: int
    frequency_sign: int

    def __post_init__(self) -> None:
        matrix = frozen(self.matrix)
        residual = unitarity_residual(matrix)
        if residual > UNITARY_TOL:
            raise PreconditionError(f"Symmetry {self.name!r} has a non-unitary matrix (residual {residual:.3e})")
        if self.momentum_sign not in SIGNS or self.frequency_sign not in SIGNS:
            raise PreconditionError(f"Symmetry {self.name!r} needs momentum and frequency signs of +/-1")
        object.__setattr__(self, "matrix", matrix)

    def matrix_at(self, p: npt.NDArray[np.float64]) -> ComplexMatrix:
        return self.matrix

    def act(self, p: npt.ArrayLike, omega: float, v: npt.ArrayLike) -> tuple[np.ndarray, float, ComplexMatrix]:
        m = as_momentum(p)
        vector = maybe_conjugate(np.asarray(v, dtype=np.complex128), self.conjugates)
        return self.momentum_sign * m, self.frequency_sign * omega, self.matrix @ vector

    def __repr__(self) -> str:
        return (
            f"SymmetryOp({self.name!r}, conjugates={self.conjugates}, "
            f"s_p={self.momentum_sign:+d}, s_omega={self.frequency_sign:+d})"
        )


def identity_op() -> SymmetryOp:
    return SymmetryOp("1", identity(4), conjugates=False, momentum_sign=1, frequency_sign=1)


def standard_ops() -> list[SymmetryOp]:
    """P(1), T(2), T(1) and C in the Dirac representation."""
    g = build_gamma_set()
    return [
        SymmetryOp("P(1)", g.gamma0, conjugates=False, momentum_sign=-1, frequency_sign=1),
        SymmetryOp("T(2)", g.gammas[1] @ g.gammas[3], conjugates=True, momentum_sign=-1, frequency_sign=1),
        SymmetryOp("T(1)", g.gamma0 @ g.gamma4, conjugates=False, momentum_sign=1, frequency_sign=-1),
        SymmetryOp("C", 1j * g.gammas[2], conjugates=True, momentum_sign=-1, frequency_sign=-1),
    ]


def standard_op(name: str) -> SymmetryOp:
    for op in standard_ops():
        if op.name == name:
            return op
    raise KeyError(f"Unknown symmetry {name!r}")


def compose(o1: SymmetryOp, o2: SymmetryOp, name: str | None = None) -> SymmetryOp:
    """The symmetry ``o1 o2``: apply ``o2`` first."""
    return SymmetryOp(
        name if name is not None else f"{o1.name}{o2.name}",
        o1.matrix @ maybe_conjugate(o2.matrix, o1.conjugates),
        conjugates=o1.conjugates != o2.conjugates,
        momentum_sign=o1.momentum_sign * o2.momentum_sign,
        frequency_sign=o1.frequency_sign * o2.frequency_sign,
    )


def square_phase(op: SymmetryOp, tol: float = 1e-12) -> complex:
    """Phase c with ``op op = c * 1``."""
    square = compose(op, op)
    phase = complex(square.matrix[0, 0])
    if norm(square.matrix - phase * identity(4)) > tol:
        raise PreconditionError(f"{op.name} squared is not a multiple of the identity")
    return phase


def classification_ops() -> list[SymmetryOp]:
    """Columns of the classification table: P(1), T(2), T(1), C, CP(1), CP(1)T(2), CP(1)T(1)."""
    parity, t2, t1, c = standard_ops()
    cp = compose(c, parity, "CP(1)")
    return [parity, t2, t1, c, cp, compose(cp, t2, "CP(1)T(2)"), compose(cp, t1, "CP(1)T(1)")]


def transform_field(op: SymmetryOp, a: OperatorField) -> OperatorField:
    """p -> M conj?(A(s_p p)) M^-1."""
    inverse = adjoint(op.matrix)

    def evaluate(p: np.ndarray) -> ComplexMatrix:
        return op.matrix @ maybe_conjugate(a(op.momentum_sign * p), op.conjugates) @ inverse

    derivative = None
    if a.has_derivative:

        def derivative(p: np.ndarray, axis: int) -> ComplexMatrix:
            inner = op.momentum_sign * a.derivative(op.momentum_sign * p, axis)
            return op.matrix @ maybe_conjugate(inner, op.conjugates) @ inverse

    return OperatorField(f"{op.name}[{a.name}]", evaluate, derivative, dim=a.dim)


def _momenta(samples: int, rng: np.random.Generator | None, scale_range: tuple[float, float]) -> np.ndarray:
    if samples < 1:
        raise PreconditionError(f"samples must be >= 1, got {samples}")
    return sample_momenta(rng if rng is not None else np.random.default_rng(0), samples, scale_range)


def intertwine_check(
    op: SymmetryOp,
    a: OperatorField,
    b: OperatorField,
    samples: int,
    tol: float,
    rng: np.random.Generator | None = None,
    scale_range: tuple[float, float] = UNIT_SCALE,
    *,
    name: str | None = None,
    anchor: str = "Eq. (13)",
    expect_pass: bool = True,
    note: str | None = None,
) -> VerificationReport:
    """Worst ``||O A O^-1 - B||`` over sampled momenta, i.e. the relation ``O A = B O``."""
    transformed = transform_field(op, a)
    residuals = [norm(transformed(p) - b(p)) for p in _momenta(samples, rng, scale_range)]
    builder = ReportBuilder("relations")
    builder.add_max(
        name or f"{op.name}.{a.name}={b.name}.{op.name}",
        residuals,
        tol,
        anchor=anchor,
        expect_pass=expect_pass,
        note=note,
    )
    return builder.build()


def relation_check(
    op: SymmetryOp,
    a: OperatorField,
    kind: Bracket,
    samples: int,
    tol: float,
    rng: np.random.Generator | None = None,
    scale_range: tuple[float, float] = UNIT_SCALE,
) -> VerificationReport:
    """[O, A] = 0 (commutator) or [O, A]_+ = 0 (anticommutator) on sampled momenta."""
    sign = -1.0 if kind is Bracket.COMMUTATOR else 1.0
    target = OperatorField(f"{'-' if sign > 0 else ''}{a.name}", lambda p: -sign * a(p))
    bracket_name = "commutes" if kind is Bracket.COMMUTATOR else "anticommutes"
    return intertwine_check(op, a, target, samples, tol, rng, scale_range, name=f"{op.name}.{bracket_name}.{a.name}")


@dataclass(frozen=True, eq=False)
class EquationSystem:
    """i d/dt psi = H psi, optionally with the subsidiary condition Q psi = 0."""

    name: str
    hamiltonian: OperatorField
    constraint: OperatorField | None = None


def standard_systems(sign: int = 1) -> list[EquationSystem]:
    """The unconstrained equation and the three constrained systems, with constraint sign ``sign``."""
    h = hamiltonian_field()
    return [
        EquationSystem("(1)", h),
        EquationSystem("(1)+(2)", h, projector_field(1, sign)),
        EquationSystem("(1)+(3)", h, projector_field(2, sign)),
        EquationSystem("(1)+(4)", h, projector_field(3, sign)),
    ]


def solution_space(system: EquationSystem, p: npt.ArrayLike, omega: float) -> Subspace:
    """{v : H(p) v = omega v, Q(p) v = 0}."""
    m = as_momentum(p)
    h = system.hamiltonian(m)
    rows = [(h - omega * identity(h.shape[0])) / abs(omega)]
    if system.constraint is not None:
        rows.append(system.constraint(m))
    return kernel_basis(np.vstack(rows), RANK_TOL)


def image_space(
    op: PlaneWaveAction,
    system: EquationSystem,
    p: npt.ArrayLike,
    omega: float,
    source: Subspace | None = None,
) -> Subspace:
    """Image of S(s_p p, s_omega omega) under the plane-wave action, as a subspace at (p, omega).

    ``source`` is that solution space when the caller already has it.
    """
    m = as_momentum(p)
    if source is None:
        source = solution_space(system, op.momentum_sign * m, op.frequency_sign * omega)
    if source.dim == 0:
        return source
    return span(op.matrix_at(m) @ maybe_conjugate(source.basis, op.conjugates))


@dataclass(frozen=True)
class SystemClassification:
    system: str
    verdicts: dict[str, bool]
    stable: dict[str, bool]
    worst_distance: dict[str, float] = field(default_factory=dict)

    def row(self) -> dict[str, str]:
        return {"system": self.system, **{name: ("yes" if ok else "no") for name, ok in self.verdicts.items()}}


def classify_system(
    system: EquationSystem,
    ops: Sequence[PlaneWaveAction],
    samples: int,
    tol: float,
    rng: np.random.Generator | None = None,
    scale_range: tuple[float, float] = UNIT_SCALE,
) -> SystemClassification:
    """Invariance of the solution bundle under each op, at every sampled p and omega = +/-E.

    An op is invariant iff it maps S(s_p p, s_omega omega) onto S(p, omega) at every sample;
    ``stable`` is False when samples disagree.
    """
    momenta = _momenta(samples, rng, scale_range)
    outcomes: dict[str, list[bool]] = {op.name: [] for op in ops}
    distances: dict[str, float] = {op.name: 0.0 for op in ops}
    for p in momenta:
        e = float(np.linalg.norm(p))
        # S(s_p p, s_omega omega) for every sign pair, shared by all ops at this p
        spaces = {
            (sp, omega): solution_space(system, sp * p, omega) for sp in SIGNS for omega in (e, -e)
        }
        for op in ops:
            for omega in (e, -e):
                source = spaces[(op.momentum_sign, op.frequency_sign * omega)]
                target = spaces[(1, omega)]
                image = image_space(op, system, p, omega, source)
                distance = projector_distance(image, target) if image.dim == target.dim else float("inf")
                outcomes[op.name].append(distance <= tol)
                distances[op.name] = max(distances[op.name], distance)
    verdicts = {name: all(results) for name, results in outcomes.items()}
    stable = {name: all(results) or not any(results) for name, results in outcomes.items()}
    logger.debug("Classified %s: %s", system.name, verdicts)
    return SystemClassification(system=system.name, verdicts=verdicts, stable=stable, worst_distance=distances)


def projector_relations() -> list[tuple[SymmetryOp, OperatorField, OperatorField, str, bool, str | None]]:
    """Intertwining relations O P = P' O for parity and charge conjugation.

    Rows are (op, P, P', anchor, expect_pass, note). Charge conjugation flips the energy
    sign, so it exchanges P3+ and P3-; the printed P3+/- -> P3+/- form is kept as an
    expected failure.
    """
    parity, _, _, c = standard_ops()
    rows = []
    for family in (1, 2):
        for sign in SIGNS:
            rows.append((parity, projector_field(family, sign), projector_field(family, -sign), "Eq. (14)", True, None))
    for family in FAMILIES:
        for sign in SIGNS:
            image = -sign if family in (1, 3) else sign
            rows.append((c, projector_field(family, sign), projector_field(family, image), "Eq. (15)", True, None))
    printed = "printed form CP3+/- = P3+/-C contradicts [C, eps]_+ = 0"
    for sign in SIGNS:
        rows.append((c, projector_field(3, sign), projector_field(3, sign), "Eq. (15)", False, printed))
    return rows


def relation_name(op: SymmetryOp, a: OperatorField, b: OperatorField) -> str:
    return f"{op.name}{a.name}={b.name}{op.name}"
