"""SO(4) = SU(2) x SU(2) generators built from S_bc and S_4a, and the two helicity-type operators.

Local variant: S_a = (Sigma_a/2 + S_4a)/2, tau_a = (Sigma_a/2 - S_4a)/2 with the bare S_4a.
Rotated variant: the complete local generators conjugated by the Foldy-Wouthuysen rotation,
S_a(p) = W(p)^dagger S_a W(p); these commute with H(p) because W diagonalizes H to gamma0 E.
The S4A_ONLY variant conjugates only S_4a and does not close; it is kept as a diagnostic.
"""

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np
import numpy.typing as npt

from algebra.errors import PreconditionError
from algebra.gamma_algebra import LEVI_CIVITA, standard_spin_generators
from algebra.matrix_core import ComplexMatrix, commutator, joint_eigendecomposition, norm
from algebra.momentum_ops import (
    AXES,
    OperatorField,
    as_momentum,
    energy_sign,
    fw_rotation,
    fw_rotation_residuals,
    hamiltonian,
)
from algebra.sampling import sample_momenta
from reporting.models import ReportBuilder, VerificationReport

logger = logging.getLogger(__name__)

FW_GATE_TOL = 1e-12


class So4Variant(str, Enum):
    LOCAL = "local"
    ROTATED = "rotated"
    S4A_ONLY = "rotated_s4a_only"


@dataclass(frozen=True, eq=False)
class So4Generators:
    variant: So4Variant
    s: tuple[OperatorField, OperatorField, OperatorField]
    tau: tuple[OperatorField, OperatorField, OperatorField]
    lambda1: OperatorField
    lambda2: OperatorField


def _local_parts(a: int) -> tuple[ComplexMatrix, ComplexMatrix]:
    spin = standard_spin_generators()
    return 0.5 * spin.sigma[a - 1], spin.s_4a(a)


def _generator(variant: So4Variant, a: int, sign: int) -> OperatorField:
    rotation_part, boost_part = _local_parts(a)
    local = 0.5 * (rotation_part + sign * boost_part)
    name = f"{'S' if sign > 0 else 'tau'}{a}[{variant.value}]"
    if variant is So4Variant.LOCAL:
        return OperatorField.constant(name, local)
    if variant is So4Variant.ROTATED:

        def evaluate(p: np.ndarray) -> ComplexMatrix:
            w = fw_rotation(p)
            return w.conj().T @ local @ w

    else:

        def evaluate(p: np.ndarray) -> ComplexMatrix:
            w = fw_rotation(p)
            return 0.5 * (rotation_part + sign * (w.conj().T @ boost_part @ w))

    return OperatorField(name, evaluate)


def _helicity_type(name: str, components: tuple[OperatorField, ...]) -> OperatorField:
    def evaluate(p: np.ndarray) -> ComplexMatrix:
        unit = p / np.linalg.norm(p)
        return sum(unit[a - 1] * components[a - 1](p) for a in AXES)

    return OperatorField(name, evaluate)


def so4_generators(variant: So4Variant) -> So4Generators:
    s = tuple(_generator(variant, a, 1) for a in AXES)
    tau = tuple(_generator(variant, a, -1) for a in AXES)
    return So4Generators(
        variant=variant,
        s=s,
        tau=tau,
        lambda1=_helicity_type(f"Lambda1[{variant.value}]", s),
        lambda2=_helicity_type(f"Lambda2[{variant.value}]", tau),
    )


def casimirs(variant: So4Variant, p: npt.ArrayLike) -> tuple[ComplexMatrix, ComplexMatrix]:
    """(S.S, tau.tau) at momentum p."""
    m = as_momentum(p)
    gens = so4_generators(variant)
    s_sq = sum(g(m) @ g(m) for g in gens.s)
    tau_sq = sum(g(m) @ g(m) for g in gens.tau)
    return s_sq, tau_sq


def closure_residuals(gens: So4Generators, p: npt.ArrayLike) -> dict[str, float]:
    """su(2) + su(2) structure constants at one momentum."""
    m = as_momentum(p)
    s = [g(m) for g in gens.s]
    tau = [g(m) for g in gens.tau]
    worst = {"S": 0.0, "tau": 0.0, "mixed": 0.0}
    for (a, b, c), sign in LEVI_CIVITA.items():
        worst["S"] = max(worst["S"], norm(commutator(s[a - 1], s[b - 1]) - 1j * sign * s[c - 1]))
        worst["tau"] = max(worst["tau"], norm(commutator(tau[a - 1], tau[b - 1]) - 1j * sign * tau[c - 1]))
    for a in AXES:
        for b in AXES:
            worst["mixed"] = max(worst["mixed"], norm(commutator(s[a - 1], tau[b - 1])))
    return worst


def _fw_gate(momenta: np.ndarray) -> float:
    return max(max(fw_rotation_residuals(p)) for p in momenta)


def closure_check(
    variant: So4Variant, samples: int, tol: float, rng: np.random.Generator | None = None, expect_pass: bool = True
) -> VerificationReport:
    momenta = _sample(samples, rng)
    gens = so4_generators(variant)
    builder = ReportBuilder(f"so4.{variant.value}")
    rows = [closure_residuals(gens, p) for p in momenta]
    for key in ("S", "tau", "mixed"):
        builder.add_max(f"closure.{key}", [r[key] for r in rows], tol, anchor="Eq. (20)", expect_pass=expect_pass)
    return builder.build()


def conservation_check(
    variant: So4Variant, samples: int, tol: float, rng: np.random.Generator | None = None
) -> VerificationReport:
    """||[H, Lambda1]||, ||[H, Lambda2]|| and ||[H, Lambda1 + Lambda2]|| over sampled momenta.

    Only the rotated variant conserves Lambda1 and Lambda2; for the local variant
    ||[H, Lambda1]|| = |p|/2, which is locked as a regression.
    """
    momenta = _sample(samples, rng)
    builder = ReportBuilder(f"so4.{variant.value}")
    if variant is not So4Variant.LOCAL:
        gate = _fw_gate(momenta)
        builder.add("fw_rotation.gate", gate, FW_GATE_TOL)
        if gate > FW_GATE_TOL:
            raise PreconditionError(f"Foldy-Wouthuysen rotation fails its gate (residual {gate:.3e})")
    gens = so4_generators(variant)
    conserved = variant is So4Variant.ROTATED
    first, second, total, local_formula = [], [], [], []
    for p in momenta:
        h = hamiltonian(p)
        l1, l2 = gens.lambda1(p), gens.lambda2(p)
        first.append(norm(commutator(h, l1)))
        second.append(norm(commutator(h, l2)))
        total.append(norm(commutator(h, l1 + l2)))
        local_formula.append(abs(first[-1] - 0.5 * float(np.linalg.norm(p))))
    builder.add_max("conservation.Lambda1", first, tol, anchor="Note 2", expect_pass=conserved)
    builder.add_max("conservation.Lambda2", second, tol, anchor="Note 2", expect_pass=conserved)
    builder.add_max("conservation.Lambda1+Lambda2", total, tol, anchor="Note 2")
    if variant is So4Variant.LOCAL:
        builder.add_max("conservation.Lambda1.local_formula", local_formula, tol, note="||[H, Lambda1]|| = |p|/2")
    return builder.build({"samples": samples})


def helicity_sum_residual(variant: So4Variant, p: npt.ArrayLike) -> float:
    """||Lambda1 + Lambda2 - Sigma.p/(2|p|)||."""
    m = as_momentum(p)
    gens = so4_generators(variant)
    unit = m / np.linalg.norm(m)
    spin = standard_spin_generators()
    ordinary = 0.5 * sum(unit[a - 1] * spin.sigma[a - 1] for a in AXES)
    return norm(gens.lambda1(m) + gens.lambda2(m) - ordinary)


def branching_labels(p: npt.ArrayLike, tol: float = 1e-10) -> list[dict[str, float | int]]:
    """Joint eigenspaces of (eps, Lambda1, Lambda2) for the rotated variant."""
    m = as_momentum(p)
    gens = so4_generators(So4Variant.ROTATED)
    eigenspaces = joint_eigendecomposition([energy_sign(m), gens.lambda1(m), gens.lambda2(m)], tol)
    rows = [
        {"energy_sign": int(round(eps)), "lambda1": l1, "lambda2": l2, "dim": space.dim}
        for (eps, l1, l2), space in eigenspaces
    ]
    if sum(row["dim"] for row in rows) != 4:
        raise PreconditionError("Branching table does not cover C^4")
    return sorted(rows, key=lambda row: (-row["energy_sign"], -row["lambda1"], -row["lambda2"]))


def lambda_square_spectrum(p: npt.ArrayLike) -> list[float]:
    """Eigenvalues of Lambda1^2 and Lambda2^2 (rotated variant), rounded."""
    m = as_momentum(p)
    gens = so4_generators(So4Variant.ROTATED)
    values = []
    for op in (gens.lambda1(m), gens.lambda2(m)):
        square = op @ op
        values.extend(np.round(np.linalg.eigvalsh(0.5 * (square + square.conj().T)), 9) + 0.0)
    return sorted(set(float(v) for v in values))


def _sample(samples: int, rng: np.random.Generator | None) -> np.ndarray:
    if samples < 1:
        raise PreconditionError(f"samples must be >= 1, got {samples}")
    return sample_momenta(rng if rng is not None else np.random.default_rng(0), samples)


def casimir_value(variant: So4Variant, p: npt.ArrayLike) -> tuple[float, float]:
    """Largest eigenvalues of S.S and tau.tau (3/4 on their spin-1/2 blocks)."""
    s_sq, tau_sq = casimirs(variant, p)
    return tuple(float(np.max(np.linalg.eigvalsh(0.5 * (c + c.conj().T)))) for c in (s_sq, tau_sq))
