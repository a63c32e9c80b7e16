"""Momentum-dependent operators of the massless Dirac problem.

Everything here is a multiplication operator in momentum space: a 4x4 matrix
valued function of a nonzero 3-momentum. Zero momentum is rejected, never
regularized. Axes are numbered 1..3.
"""

import math
from collections.abc import Callable, Sequence
from functools import cache
from typing import Literal

import numpy as np
import numpy.typing as npt

from algebra.errors import NullMomentumError, PreconditionError
from algebra.gamma_algebra import PAULI, build_gamma_set, standard_spin_generators
from algebra.matrix_core import ComplexMatrix, frozen, identity, norm, unitarity_residual

Momentum3 = npt.NDArray[np.float64]
Evaluator = Callable[[Momentum3], ComplexMatrix]
Derivative = Callable[[Momentum3, int], ComplexMatrix]

Sign = Literal[1, -1]
FAMILIES = (1, 2, 3)
SIGNS: tuple[Sign, Sign] = (1, -1)
AXES = (1, 2, 3)

_EYE = frozen(identity(4))


def as_momentum(p: npt.ArrayLike) -> Momentum3:
    m = np.asarray(p, dtype=np.float64).reshape(-1)
    if m.shape != (3,) or not np.all(np.isfinite(m)):
        raise PreconditionError(f"A momentum needs three finite components, got {p!r}")
    if not np.any(m):
        raise NullMomentumError()
    return m


def energy(p: npt.ArrayLike) -> float:
    """E = sqrt(p1^2 + p2^2 + p3^2)."""
    return float(np.linalg.norm(as_momentum(p)))


def sign_label(sign: int) -> str:
    return "+" if sign > 0 else "-"


class OperatorField:
    """A 4x4 matrix valued function of momentum, optionally with an analytic derivative."""

    def __init__(self, name: str, evaluate: Evaluator, derivative: Derivative | None = None, dim: int = 4) -> None:
        self.name = name
        self.dim = dim
        self._evaluate = evaluate
        self._derivative = derivative

    def __call__(self, p: npt.ArrayLike) -> ComplexMatrix:
        return self._evaluate(as_momentum(p))

    def __repr__(self) -> str:
        return f"OperatorField({self.name!r})"

    @property
    def has_derivative(self) -> bool:
        return self._derivative is not None

    def derivative(self, p: npt.ArrayLike, axis: int) -> ComplexMatrix:
        if self._derivative is None:
            raise PreconditionError(f"Field {self.name!r} has no analytic derivative")
        return self._derivative(as_momentum(p), axis)

    @classmethod
    def constant(cls, name: str, matrix: npt.ArrayLike) -> "OperatorField":
        value = frozen(matrix)
        zero = frozen(np.zeros_like(value))
        return cls(name, lambda p: value, lambda p, axis: zero, dim=value.shape[0])

    @classmethod
    def linear_combination(
        cls, name: str, terms: Sequence[tuple[complex, "OperatorField"]], offset: npt.ArrayLike | None = None
    ) -> "OperatorField":
        """``offset + sum(c * field)``; analytic derivative when every term has one."""
        dim = terms[0][1].dim if terms else np.asarray(offset).shape[0]
        base = frozen(offset) if offset is not None else frozen(np.zeros((dim, dim)))

        def evaluate(p: Momentum3) -> ComplexMatrix:
            return base + sum((c * f(p) for c, f in terms), np.zeros((dim, dim), dtype=np.complex128))

        derivative = None
        if all(f.has_derivative for _, f in terms):

            def derivative(p: Momentum3, axis: int) -> ComplexMatrix:
                return sum((c * f.derivative(p, axis) for c, f in terms), np.zeros((dim, dim), dtype=np.complex128))

        return cls(name, evaluate, derivative, dim=dim)

    @classmethod
    def product(cls, name: str, left: "OperatorField", right: "OperatorField") -> "OperatorField":
        def evaluate(p: Momentum3) -> ComplexMatrix:
            return left(p) @ right(p)

        derivative = None
        if left.has_derivative and right.has_derivative:

            def derivative(p: Momentum3, axis: int) -> ComplexMatrix:
                return left.derivative(p, axis) @ right(p) + left(p) @ right.derivative(p, axis)

        return cls(name, evaluate, derivative, dim=left.dim)


def hamiltonian(p: npt.ArrayLike) -> ComplexMatrix:
    """H(p) = gamma0 gamma_a p_a."""
    m = as_momentum(p)
    alphas = build_gamma_set().alphas
    return m[0] * alphas[0] + m[1] * alphas[1] + m[2] * alphas[2]


def sigma_dot(p: npt.ArrayLike) -> ComplexMatrix:
    """sigma.p on C^2."""
    m = as_momentum(p)
    return m[0] * PAULI[0] + m[1] * PAULI[1] + m[2] * PAULI[2]


def _energy_sign(m: Momentum3) -> ComplexMatrix:
    return hamiltonian(m) / float(np.linalg.norm(m))


def _energy_sign_derivative(m: Momentum3, axis: int) -> ComplexMatrix:
    e = float(np.linalg.norm(m))
    return build_gamma_set().alphas[axis - 1] / e - hamiltonian(m) * (m[axis - 1] / e**3)


def energy_sign(p: npt.ArrayLike) -> ComplexMatrix:
    """The sign-of-energy operator H/E."""
    return _energy_sign(as_momentum(p))


def helicity_matrix(p: npt.ArrayLike) -> ComplexMatrix:
    """i gamma4 times the energy sign."""
    return build_gamma_set().chirality @ energy_sign(p)


def helicity_spin_form(p: npt.ArrayLike, slot: Literal["31", "01"] = "31") -> ComplexMatrix:
    """2 (S12 p3 + S23 p1 + X p2) / E with X = S31, or the boost-type S01 for the printed slot."""
    m = as_momentum(p)
    spin = standard_spin_generators()
    if slot == "31":
        third = spin.s_ab(3, 1)
    else:
        g = build_gamma_set()
        third = 0.25j * (g.gamma0 @ g.gammas[1] - g.gammas[1] @ g.gamma0)
    return 2.0 * (spin.s_ab(1, 2) * m[2] + spin.s_ab(2, 3) * m[0] + third * m[1]) / energy(m)


@cache
def helicity_orientation() -> int:
    """Sign s with i gamma4 eps = s * helicity_spin_form, read off at p = (0, 0, 1)."""
    p = np.array([0.0, 0.0, 1.0])
    overlap = np.real(np.trace(helicity_matrix(p) @ helicity_spin_form(p))) / 4.0
    return 1 if overlap > 0 else -1


def projector(family: int, sign: int, p: npt.ArrayLike) -> ComplexMatrix:
    """P_a^{+/-}: (1 +/- i gamma4)/2, (1 +/- i gamma4 eps)/2, (1 +/- eps)/2 for a = 1, 2, 3."""
    m = as_momentum(p)
    if family == 1:
        generator = build_gamma_set().chirality
    elif family == 2:
        generator = build_gamma_set().chirality @ _energy_sign(m)
    elif family == 3:
        generator = _energy_sign(m)
    else:
        raise PreconditionError(f"Projector family must be 1, 2 or 3, got {family}")
    return 0.5 * (_EYE + sign * generator)


def projector_derivative(family: int, sign: int, p: npt.ArrayLike, axis: int) -> ComplexMatrix:
    m = as_momentum(p)
    if family == 1:
        return np.zeros((4, 4), dtype=np.complex128)
    d_eps = _energy_sign_derivative(m, axis)
    if family == 2:
        return 0.5 * sign * (build_gamma_set().chirality @ d_eps)
    return 0.5 * sign * d_eps


def minimal_projector(eps: int, lam: int, p: npt.ArrayLike) -> ComplexMatrix:
    """Rank-1 projector onto energy sign ``eps`` and helicity ``lam``: P2^{lam} P3^{eps}."""
    return projector(2, lam, p) @ projector(3, eps, p)


def fw_rotation(p: npt.ArrayLike) -> ComplexMatrix:
    """Unitary W(p) = (E + gamma.p) / (sqrt(2) E) with W H W^dagger = gamma0 E."""
    m = as_momentum(p)
    gammas = build_gamma_set().gammas
    e = energy(m)
    gamma_p = m[0] * gammas[1] + m[1] * gammas[2] + m[2] * gammas[3]
    return (e * _EYE + gamma_p) / (math.sqrt(2.0) * e)


def fw_rotation_residuals(p: npt.ArrayLike) -> tuple[float, float]:
    """(unitarity, diagonalization) residuals of the closed-form rotation."""
    w = fw_rotation(p)
    diagonal = build_gamma_set().gamma0 * energy(p)
    return unitarity_residual(w), norm(w @ hamiltonian(p) @ w.conj().T - diagonal)


def hamiltonian_field() -> OperatorField:
    alphas = build_gamma_set().alphas
    return OperatorField("H", hamiltonian, lambda p, axis: alphas[axis - 1])


def energy_sign_field() -> OperatorField:
    return OperatorField("eps", _energy_sign, _energy_sign_derivative)


def helicity_field() -> OperatorField:
    chirality = build_gamma_set().chirality
    return OperatorField(
        "Lambda",
        lambda p: chirality @ _energy_sign(p),
        lambda p, axis: chirality @ _energy_sign_derivative(p, axis),
    )


def projector_field(family: int, sign: int) -> OperatorField:
    if family not in FAMILIES:
        raise PreconditionError(f"Projector family must be 1, 2 or 3, got {family}")
    return OperatorField(
        f"P{family}{sign_label(sign)}",
        lambda p: projector(family, sign, p),
        lambda p, axis: projector_derivative(family, sign, p, axis),
    )


def minimal_projector_field(eps: int, lam: int) -> OperatorField:
    return OperatorField.product(
        f"Q(eps={eps:+d},lam={lam:+d})", projector_field(2, lam), projector_field(3, eps)
    )
