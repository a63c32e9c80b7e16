"""Dirac-representation gamma matrices, spin generators and the Clifford checks."""

from dataclasses import dataclass
from functools import cache
from itertools import combinations_with_replacement

import numpy as np

from algebra.matrix_core import ComplexMatrix, adjoint, anticommutator, commutator, frozen, identity, norm
from reporting.models import ReportBuilder, VerificationReport

METRIC = (1.0, -1.0, -1.0, -1.0)

PAULI = (
    frozen([[0, 1], [1, 0]]),
    frozen([[0, -1j], [1j, 0]]),
    frozen([[1, 0], [0, -1]]),
)

# Levi-Civita symbol on spatial indices 1..3
LEVI_CIVITA = {(1, 2, 3): 1, (2, 3, 1): 1, (3, 1, 2): 1, (1, 3, 2): -1, (3, 2, 1): -1, (2, 1, 3): -1}


@dataclass(frozen=True, eq=False)
class GammaSet:
    """gamma0..gamma3, gamma4 = -gamma0 gamma1 gamma2 gamma3 and alpha_a = gamma0 gamma_a."""

    gammas: tuple[ComplexMatrix, ComplexMatrix, ComplexMatrix, ComplexMatrix]
    gamma4: ComplexMatrix
    alphas: tuple[ComplexMatrix, ComplexMatrix, ComplexMatrix]
    metric_signature: tuple[float, float, float, float] = METRIC

    @classmethod
    def from_gammas(cls, g0, g1, g2, g3) -> "GammaSet":
        gammas = tuple(frozen(g) for g in (g0, g1, g2, g3))
        gamma4 = frozen(-gammas[0] @ gammas[1] @ gammas[2] @ gammas[3])
        alphas = tuple(frozen(gammas[0] @ g) for g in gammas[1:])
        return cls(gammas=gammas, gamma4=gamma4, alphas=alphas)

    @property
    def gamma0(self) -> ComplexMatrix:
        return self.gammas[0]

    @property
    def chirality(self) -> ComplexMatrix:
        """i gamma4, the Hermitian involution behind the local projector family."""
        return 1j * self.gamma4

    def scaled(self, factor: complex) -> "GammaSet":
        return GammaSet.from_gammas(*(factor * g for g in self.gammas))


@dataclass(frozen=True, eq=False)
class SpinGenerators:
    """S_ab (a, b = 1..3), S_4a and the spin vector Sigma_a = eps_abc S_bc."""

    s: dict[tuple[int, int], ComplexMatrix]
    s4: tuple[ComplexMatrix, ComplexMatrix, ComplexMatrix]
    sigma: tuple[ComplexMatrix, ComplexMatrix, ComplexMatrix]

    def s_ab(self, a: int, b: int) -> ComplexMatrix:
        return self.s[(a, b)]

    def s_4a(self, a: int) -> ComplexMatrix:
        return self.s4[a - 1]


@cache
def build_gamma_set() -> GammaSet:
    """Standard Dirac representation: gamma0 = diag(1, 1, -1, -1), gamma_a = [[0, sigma_a], [-sigma_a, 0]]."""
    zero = np.zeros((2, 2))
    g0 = np.block([[np.eye(2), zero], [zero, -np.eye(2)]])
    spatial = [np.block([[zero, s], [-s, zero]]) for s in PAULI]
    return GammaSet.from_gammas(g0, *spatial)


def check_clifford(g: GammaSet, tol: float) -> VerificationReport:
    """One residual per (mu, nu) anticommutator plus the gamma4 and Hermiticity relations."""
    builder = ReportBuilder("clifford")
    eye = identity(4)
    for mu, nu in combinations_with_replacement(range(4), 2):
        target = 2.0 * g.metric_signature[mu] * eye if mu == nu else 0.0 * eye
        builder.add(
            f"anticommutator[{mu},{nu}]",
            norm(anticommutator(g.gammas[mu], g.gammas[nu]) - target),
            tol,
            anchor="Eq. (1)",
        )

    product = g.gammas[0] @ g.gammas[1] @ g.gammas[2] @ g.gammas[3]
    builder.add("gamma4.definition", norm(g.gamma4 + product), tol, anchor="Eq. (2)")
    for mu in range(4):
        builder.add(f"gamma4.anticommutes[{mu}]", norm(anticommutator(g.gamma4, g.gammas[mu])), tol, anchor="Eq. (2)")
    for a, alpha in enumerate(g.alphas, start=1):
        builder.add(f"gamma4.commutes_alpha[{a}]", norm(commutator(g.gamma4, alpha)), tol, anchor="Eq. (2)")
    builder.add("chirality.square", norm(g.chirality @ g.chirality - eye), tol, anchor="Eq. (2)")

    builder.add("hermitian.gamma0", norm(g.gamma0 - adjoint(g.gamma0)), tol)
    for a in range(1, 4):
        builder.add(f"antihermitian.gamma[{a}]", norm(g.gammas[a] + adjoint(g.gammas[a])), tol)
    builder.add("antihermitian.gamma4", norm(g.gamma4 + adjoint(g.gamma4)), tol)
    for a, alpha in enumerate(g.alphas, start=1):
        builder.add(f"hermitian.alpha[{a}]", norm(alpha - adjoint(alpha)), tol, anchor="Eq. (22)")
    return builder.build()


def spin_generators(g: GammaSet) -> SpinGenerators:
    s: dict[tuple[int, int], ComplexMatrix] = {}
    for a in range(1, 4):
        for b in range(1, 4):
            ga, gb = g.gammas[a], g.gammas[b]
            s[(a, b)] = frozen(0.25j * (ga @ gb - gb @ ga))
    s4 = tuple(frozen(0.25j * (g.gamma4 @ g.gammas[a] - g.gammas[a] @ g.gamma4)) for a in range(1, 4))
    sigma = tuple(
        frozen(sum(sign * s[(b, c)] for (a2, b, c), sign in LEVI_CIVITA.items() if a2 == a)) for a in range(1, 4)
    )
    return SpinGenerators(s=s, s4=s4, sigma=sigma)


@cache
def standard_spin_generators() -> SpinGenerators:
    return spin_generators(build_gamma_set())
