"""Nilpotent perturbations K + G of the kinetic operator K and the similarity V mapping them back.

K is H(p) = alpha.p on C^4 or sigma.p on C^2. For G with G^2 = 0 and {K, G} = 0,
V = 1 - K G / (2 E^2) has inverse 1 + K G / (2 E^2) and V K V^-1 = K + G.
The perturbed operator is Hermitian in the product weighted by M = (V^-1)^dagger V^-1.
"""

import logging
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from algebra.discrete_symmetries import EquationSystem, SymmetryOp, maybe_conjugate
from algebra.errors import DimensionMismatchError, PreconditionError
from algebra.gamma_algebra import build_gamma_set
from algebra.matrix_core import ComplexMatrix, adjoint, anticommutator, hermiticity_residual, identity, norm
from algebra.momentum_ops import OperatorField, as_momentum, hamiltonian, projector, sigma_dot, sign_label
from algebra.sampling import UNIT_SCALE, sample_momenta
from reporting.models import ReportBuilder, VerificationReport

logger = logging.getLogger(__name__)

GENERATOR_TOL = 1e-10


def kinetic(dim: int, p: npt.ArrayLike) -> ComplexMatrix:
    if dim == 4:
        return hamiltonian(p)
    if dim == 2:
        return sigma_dot(p)
    raise DimensionMismatchError(f"Nilpotent generators live in dimension 2 or 4, got {dim}")


@dataclass(frozen=True, eq=False)
class NilpotentGenerator:
    name: str
    dim: int
    field: OperatorField
    kappa: float

    def invariant_residuals(self, p: npt.ArrayLike) -> tuple[float, float]:
        """(||G^2||, ||{K, G}||) at p, relative to |kappa| and E."""
        m = as_momentum(p)
        g = self.field(m)
        if g.shape != (self.dim, self.dim):
            raise DimensionMismatchError(f"Generator {self.name!r} has shape {g.shape}, expected dim {self.dim}")
        scale = max(abs(self.kappa), 1.0)
        e = float(np.linalg.norm(m))
        return norm(g @ g) / scale**2, norm(anticommutator(kinetic(self.dim, m), g)) / (scale * e)

    def validate(self, p: npt.ArrayLike, tol: float = GENERATOR_TOL) -> None:
        square, anti = self.invariant_residuals(p)
        if square > tol:
            raise PreconditionError(f"Generator {self.name!r} is not nilpotent at p (||G^2|| = {square:.3e})")
        if anti > tol:
            raise PreconditionError(
                f"Generator {self.name!r} does not anticommute with the kinetic term (residual {anti:.3e})"
            )


def transverse_unit(p: npt.ArrayLike) -> np.ndarray:
    """Unit vector p x e_k / |p x e_k| for the axis e_k least aligned with p."""
    m = as_momentum(p)
    axis = np.zeros(3)
    axis[int(np.argmin(np.abs(m)))] = 1.0
    u = np.cross(m, axis)
    return u / np.linalg.norm(u)


def canonical_nilpotents(dim: int, kappa: float) -> list[NilpotentGenerator]:
    """kappa gamma0 P3^{+/-} on C^4, or kappa (sigma.u) q^{+/-} with q = (1 +/- sigma.p/E)/2 on C^2."""
    generators = []
    for sign in (1, -1):
        if dim == 4:
            gamma0 = build_gamma_set().gamma0

            def evaluate(p: np.ndarray, sign: int = sign) -> ComplexMatrix:
                return kappa * gamma0 @ projector(3, sign, p)

            name = f"kappa gamma0 P3{sign_label(sign)}"
        elif dim == 2:

            def evaluate(p: np.ndarray, sign: int = sign) -> ComplexMatrix:
                e = float(np.linalg.norm(p))
                q = 0.5 * (identity(2) + sign * sigma_dot(p) / e)
                return kappa * sigma_dot(transverse_unit(p)) @ q

            name = f"kappa sigma.u q{sign_label(sign)}"
        else:
            raise DimensionMismatchError(f"Nilpotent generators live in dimension 2 or 4, got {dim}")
        generator = NilpotentGenerator(
            name=f"{name}[kappa={kappa:g}]", dim=dim, field=OperatorField(name, evaluate, dim=dim), kappa=kappa
        )
        generator.validate(np.array([0.3, -0.4, 1.2]))
        generators.append(generator)
    return generators


def v_transform(gen: NilpotentGenerator, p: npt.ArrayLike) -> tuple[ComplexMatrix, ComplexMatrix]:
    """(V, V^-1) at p."""
    m = as_momentum(p)
    gen.validate(m)
    e_sq = float(m @ m)
    step = kinetic(gen.dim, m) @ gen.field(m) / (2.0 * e_sq)
    eye = identity(gen.dim)
    return eye - step, eye + step


def transformed_hamiltonian(gen: NilpotentGenerator, p: npt.ArrayLike) -> ComplexMatrix:
    """H_Phi = V K V^-1."""
    v, v_inv = v_transform(gen, p)
    return v @ kinetic(gen.dim, p) @ v_inv


def metric_weight(gen: NilpotentGenerator) -> OperatorField:
    """M(p) = (V^-1)^dagger V^-1."""

    def evaluate(p: np.ndarray) -> ComplexMatrix:
        _, v_inv = v_transform(gen, p)
        return adjoint(v_inv) @ v_inv

    return OperatorField(f"M[{gen.name}]", evaluate, dim=gen.dim)


def _sample(samples: int, rng: np.random.Generator | None) -> np.ndarray:
    if samples < 1:
        raise PreconditionError(f"samples must be >= 1, got {samples}")
    return sample_momenta(rng if rng is not None else np.random.default_rng(0), samples, UNIT_SCALE)


def similarity_check(
    gen: NilpotentGenerator, samples: int, tol: float, rng: np.random.Generator | None = None
) -> VerificationReport:
    """V V^-1 = 1, V K V^-1 = K + G, and H_Phi^2 = E^2 with zero trace (spectrum +/-E, twice each)."""
    builder = ReportBuilder(f"similarity[{gen.name}]")
    inverse, similarity, square, trace, unitarity = [], [], [], [], []
    for p in _sample(samples, rng):
        e = float(np.linalg.norm(p))
        v, v_inv = v_transform(gen, p)
        k = kinetic(gen.dim, p)
        h_phi = v @ k @ v_inv
        inverse.append(norm(v @ v_inv - identity(gen.dim)))
        similarity.append(norm(h_phi - (k + gen.field(p))) / e)
        square.append(norm(h_phi @ h_phi - e * e * identity(gen.dim)) / (e * e))
        trace.append(abs(np.trace(h_phi)) / e)
        unitarity.append(norm(adjoint(v) @ v - identity(gen.dim)))
    anchor = "Eq. (25)" if gen.dim == 4 else "Eq. (29)"
    builder.add_max("inverse", inverse, tol, anchor=anchor)
    builder.add_max("similarity", similarity, tol, anchor="Eq. (24)" if gen.dim == 4 else "Eq. (28)")
    builder.add_max("spectrum.square", square, tol, anchor="Eq. (24)")
    builder.add_max("spectrum.trace", trace, tol, anchor="Eq. (24)")
    if gen.kappa != 0:
        builder.add_flag(
            "non_unitary",
            min(unitarity) > 1e-6,
            anchor="Eq. (26)",
            note=f"min ||V^dagger V - 1|| = {min(unitarity):.3e}",
        )
    return builder.build({"samples": samples, "kappa": gen.kappa})


def pseudo_hermiticity_check(
    gen: NilpotentGenerator, samples: int, tol: float, rng: np.random.Generator | None = None
) -> VerificationReport:
    """M H_Phi = H_Phi^dagger M with M = (V^-1)^dagger V^-1 positive definite."""
    builder = ReportBuilder(f"pseudo_hermiticity[{gen.name}]")
    weight = metric_weight(gen)
    residuals, min_eigen, plain = [], [], []
    for p in _sample(samples, rng):
        e = float(np.linalg.norm(p))
        h_phi = transformed_hamiltonian(gen, p)
        m = weight(p)
        residuals.append(norm(m @ h_phi - adjoint(h_phi) @ m) / e)
        min_eigen.append(float(np.min(np.linalg.eigvalsh(0.5 * (m + adjoint(m))))))
        plain.append(hermiticity_residual(h_phi) / e)
    builder.add_max("weighted_hermiticity", residuals, tol, anchor="Eq. (26)")
    builder.add_flag(
        "metric.positive_definite", min(min_eigen) > 0, anchor="Eq. (26)", note=f"min eigenvalue {min(min_eigen):.3e}"
    )
    if gen.kappa != 0:
        builder.add_flag(
            "plain_hermiticity_broken",
            min(plain) > 1e-6,
            anchor="Eq. (26)",
            note=f"min ||H_Phi - H_Phi^dagger|| / E = {min(plain):.3e}",
        )
    return builder.build({"samples": samples, "kappa": gen.kappa})


@dataclass(frozen=True, eq=False)
class TransformedSymmetryOp:
    """V O V^-1 for a plane-wave symmetry O; the matrix depends on p."""

    generator: NilpotentGenerator
    op: SymmetryOp

    def __post_init__(self) -> None:
        if self.generator.dim != 4:
            raise DimensionMismatchError("Discrete symmetries act on four-component data only")

    @property
    def name(self) -> str:
        return self.op.name

    @property
    def conjugates(self) -> bool:
        return self.op.conjugates

    @property
    def momentum_sign(self) -> int:
        return self.op.momentum_sign

    @property
    def frequency_sign(self) -> int:
        return self.op.frequency_sign

    def matrix_at(self, p: npt.NDArray[np.float64]) -> ComplexMatrix:
        """V(p) M conj?(V^-1(s_p p))."""
        v, _ = v_transform(self.generator, p)
        _, v_inv_flipped = v_transform(self.generator, self.op.momentum_sign * np.asarray(p))
        return v @ self.op.matrix @ maybe_conjugate(v_inv_flipped, self.op.conjugates)


def transform_symmetry_op(gen: NilpotentGenerator, op: SymmetryOp) -> TransformedSymmetryOp:
    return TransformedSymmetryOp(generator=gen, op=op)


def transformed_discrete_ops(gen: NilpotentGenerator, op: SymmetryOp, p: npt.ArrayLike) -> ComplexMatrix:
    """Matrix of the transformed symmetry at p."""
    return transform_symmetry_op(gen, op).matrix_at(as_momentum(p))


def phi_system(gen: NilpotentGenerator, system: EquationSystem) -> EquationSystem:
    """The same equation system in the Phi = V psi picture: H_Phi = V H V^-1, Q_Phi = V Q V^-1."""
    if gen.dim != 4:
        raise DimensionMismatchError("Equation systems are four-component")

    def conjugate(field: OperatorField) -> OperatorField:
        def evaluate(p: np.ndarray) -> ComplexMatrix:
            v, v_inv = v_transform(gen, p)
            return v @ field(p) @ v_inv

        return OperatorField(f"{field.name}_Phi", evaluate)

    constraint = conjugate(system.constraint) if system.constraint is not None else None
    return EquationSystem(f"{system.name}_Phi", conjugate(system.hamiltonian), constraint)
