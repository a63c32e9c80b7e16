"""Mode Hamiltonians, the two-component Weyl reduction, reduced equations and the constraint lattice."""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import cache
from itertools import combinations

import numpy as np
import numpy.typing as npt

from algebra.errors import PreconditionError
from algebra.gamma_algebra import PAULI, build_gamma_set
from algebra.irrep_decomposition import ALL_LABELS, IrrepLabel
from algebra.matrix_core import (
    ComplexMatrix,
    Subspace,
    frozen,
    hermitian_eigen,
    identity,
    kernel_basis,
    norm,
    projector_distance,
    span,
)
from algebra.momentum_ops import (
    FAMILIES,
    OperatorField,
    as_momentum,
    energy,
    hamiltonian,
    hamiltonian_field,
    minimal_projector,
    minimal_projector_field,
    projector,
    projector_field,
    sigma_dot,
    sign_label,
)
from algebra.sampling import UNIT_SCALE, sample_momenta
from reporting.models import ReportBuilder, VerificationReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ModeHamiltonian:
    """gamma0 gamma.p + sign * kappa * gamma0 P_a^{-sign} acting on chi_a^{sign}."""

    family: int
    sign: int
    kappa: float
    field: OperatorField

    def preservation_residual(self, p: npt.ArrayLike) -> float:
        """||P_a^{-sign} field P_a^{sign}||: the flow never leaves range(P_a^{sign})."""
        return norm(projector(self.family, -self.sign, p) @ self.field(p) @ projector(self.family, self.sign, p))

    def restriction_residual(self, p: npt.ArrayLike) -> float:
        """||(field - H) P_a^{sign}||: on its own subspace the mode Hamiltonian is H."""
        return norm((self.field(p) - hamiltonian(p)) @ projector(self.family, self.sign, p))

    def restricted_hermiticity(self, p: npt.ArrayLike) -> float:
        own = projector(self.family, self.sign, p)
        value = self.field(p)
        return norm(own @ (value - value.conj().T) @ own)


def mode_hamiltonian(family: int, sign: int, kappa: float) -> ModeHamiltonian:
    if family not in FAMILIES:
        raise PreconditionError(f"Projector family must be 1, 2 or 3, got {family}")
    gamma0 = OperatorField.constant("gamma0", build_gamma_set().gamma0)
    perturbation = OperatorField.product(f"gamma0 P{family}{sign_label(-sign)}", gamma0, projector_field(family, -sign))
    field = OperatorField.linear_combination(
        f"H_mode[{family}{sign_label(sign)},kappa={kappa:g}]",
        [(1.0, hamiltonian_field()), (sign * kappa, perturbation)],
    )
    return ModeHamiltonian(family=family, sign=sign, kappa=kappa, field=field)


@dataclass(frozen=True, eq=False)
class WeylBasis:
    """Fixed orthonormal basis of a chirality eigenspace plus the p-independent Pauli intertwiner.

    ``intertwiner^dagger basis^dagger H(p) basis intertwiner = orientation * sigma.p``.
    """

    sign: int
    basis: ComplexMatrix
    intertwiner: ComplexMatrix
    orientation: int


def _restricted_alphas(basis: ComplexMatrix) -> list[ComplexMatrix]:
    return [basis.conj().T @ alpha @ basis for alpha in build_gamma_set().alphas]


def _pauli_intertwiner(reps: list[ComplexMatrix]) -> ComplexMatrix:
    """Unitary U with reps[a] U = U sigma_a, by averaging over the Pauli group."""
    for seed in (identity(2), *PAULI):
        u = seed + sum(r @ seed @ s for r, s in zip(reps, PAULI))
        if norm(u) > 0.5:
            scale = np.sqrt(np.real((u.conj().T @ u)[0, 0]))
            u = u / scale
            pivot = int(np.argmax(np.abs(u[:, 0]) > 1e-9))
            return u * (abs(u[pivot, 0]) / u[pivot, 0])
    raise PreconditionError("Restricted alpha matrices do not form a Pauli representation")


@cache
def weyl_basis(sign: int) -> WeylBasis:
    chirality = build_gamma_set().chirality
    vectors = [v for value, v in hermitian_eigen(chirality) if abs(value - sign) < 1e-9]
    if len(vectors) != 2:
        raise PreconditionError(f"Chirality eigenspace {sign:+d} has dimension {len(vectors)}")
    basis = np.column_stack(vectors)
    reps = _restricted_alphas(basis)
    orientation = 1 if np.imag(np.trace(reps[0] @ reps[1] @ reps[2])) > 0 else -1
    intertwiner = _pauli_intertwiner([orientation * r for r in reps])
    return WeylBasis(sign=sign, basis=frozen(basis), intertwiner=frozen(intertwiner), orientation=orientation)


def weyl_reduce(sign: int, p: npt.ArrayLike) -> ComplexMatrix:
    """H(p) restricted to range(P1^{sign}) in the fixed Weyl basis: orientation * sigma.p."""
    wb = weyl_basis(sign)
    frame = wb.basis @ wb.intertwiner
    return frame.conj().T @ hamiltonian(p) @ frame


def weyl_residual(sign: int, p: npt.ArrayLike) -> float:
    """Distance of the reduction from orientation * sigma.p; small for every p iff the basis change is p-independent."""
    return norm(weyl_reduce(sign, p) - weyl_basis(sign).orientation * sigma_dot(p))


class EquationKind(str, Enum):
    THREE_COMPONENT = "three_component"
    ONE_COMPONENT = "one_component"


def covariant_symbol(p0: float, p: npt.ArrayLike) -> ComplexMatrix:
    """gamma^mu p_mu = gamma0 p0 - gamma.p; its kernel at p0 is {v : H(p) v = p0 v}."""
    m = as_momentum(p)
    g = build_gamma_set()
    return g.gamma0 * p0 - (m[0] * g.gammas[1] + m[1] * g.gammas[2] + m[2] * g.gammas[3])


def helicity_energy_projector(eps: int, eps_prime: int, p: npt.ArrayLike) -> ComplexMatrix:
    """P2^{eps} P3^{eps'}: helicity eps, energy sign eps'."""
    return minimal_projector(eps_prime, eps, p)


def reduced_equation_symbol(
    eps: int, eps_prime: int, kind: EquationKind, kappas: list[float], p0: float, p: npt.ArrayLike
) -> ComplexMatrix:
    """Covariant symbol plus the projector terms of the three- or one-component equation."""
    symbol = covariant_symbol(p0, p)
    if kind is EquationKind.THREE_COMPONENT:
        (k0,) = kappas[:1] or [0.0]
        return symbol + k0 * helicity_energy_projector(eps, eps_prime, p)
    k1, k2, k3 = (list(kappas) + [0.0, 0.0, 0.0])[:3]
    return (
        symbol
        + k1 * helicity_energy_projector(eps, -eps_prime, p)
        + k2 * helicity_energy_projector(-eps, eps_prime, p)
        + k3 * helicity_energy_projector(-eps, -eps_prime, p)
    )


def field_space(
    eps: int, eps_prime: int, kind: EquationKind, p: npt.ArrayLike, constraint: ComplexMatrix | None = None
) -> Subspace:
    """range(1 - Q) for the three-component equation, range(Q) for the one-component one."""
    q = helicity_energy_projector(eps, eps_prime, p) if constraint is None else constraint
    return span(identity(4) - q if kind is EquationKind.THREE_COMPONENT else q)


def restricted_kernel(symbol: ComplexMatrix, space: Subspace) -> Subspace:
    """Kernel of ``symbol`` restricted to ``space``, embedded back into C^4."""
    if space.dim == 0:
        return space
    inner = kernel_basis(symbol @ space.basis, scale=norm(symbol))
    return Subspace(4, space.basis @ inner.basis) if inner.dim else Subspace(4, np.zeros((4, 0)))


def constrained_solutions(p0: float, p: npt.ArrayLike, annihilator: ComplexMatrix) -> Subspace:
    """{v : gamma^mu p_mu v = 0, A v = 0}."""
    return kernel_basis(np.vstack([covariant_symbol(p0, p) / energy(p), annihilator]))


@dataclass(frozen=True)
class ReducedCounts:
    raw: int
    restricted: int


def reduced_counts(
    eps: int,
    eps_prime: int,
    kind: EquationKind,
    kappas: list[float],
    p: npt.ArrayLike,
    constraint: ComplexMatrix | None = None,
) -> ReducedCounts:
    """Kernel dimensions summed over p0 = +/-E: raw 4x4 symbol and symbol on its field space."""
    e = energy(p)
    space = field_space(eps, eps_prime, kind, p, constraint)
    raw = restricted = 0
    for p0 in (e, -e):
        symbol = reduced_equation_symbol(eps, eps_prime, kind, kappas, p0, p)
        raw += kernel_basis(symbol / e).dim
        restricted += restricted_kernel(symbol / e, space).dim
    return ReducedCounts(raw=raw, restricted=restricted)


EXPECTED_RESTRICTED = {EquationKind.THREE_COMPONENT: 3, EquationKind.ONE_COMPONENT: 1}


def _distance(u: Subspace, v: Subspace) -> float:
    return projector_distance(u, v) if u.dim == v.dim else np.inf


def reduced_equivalence_check(
    eps: int,
    eps_prime: int,
    samples: int,
    tol: float,
    rng: np.random.Generator | None = None,
    kappa_values: tuple[float, ...] = (0.0, 1.0, 10.0),
    constraint: OperatorField | None = None,
    expect_pass: bool = True,
) -> VerificationReport:
    """Constrained Dirac solutions against the reduced equations' kernels on their field spaces.

    Three-component: {D v = 0, Q v = 0} versus ker(D + k Q) on range(1 - Q).
    One-component: {D v = 0, (1 - Q) v = 0} versus ker(D + sum k_i Q_i) on range(Q).
    ``constraint`` replaces Q (negative controls).
    """
    if samples < 1:
        raise PreconditionError(f"samples must be >= 1, got {samples}")
    momenta = sample_momenta(rng if rng is not None else np.random.default_rng(0), samples, UNIT_SCALE)
    tag = f"reduced[{sign_label(eps)}{sign_label(eps_prime)}]"
    builder = ReportBuilder(tag)
    for kind, anchor in ((EquationKind.THREE_COMPONENT, "Eq. (18)"), (EquationKind.ONE_COMPONENT, "Eq. (19)")):
        distances, kappa_spread, count_errors, raw_counts = [], [], [], set()
        for p in momenta:
            e = float(np.linalg.norm(p))
            q = helicity_energy_projector(eps, eps_prime, p) if constraint is None else constraint(p)
            annihilator = q if kind is EquationKind.THREE_COMPONENT else identity(4) - q
            space = field_space(eps, eps_prime, kind, p, q)
            energies = (e, -e)
            baselines = [
                restricted_kernel(reduced_equation_symbol(eps, eps_prime, kind, [0.0], p0, p) / e, space)
                for p0 in energies
            ]
            solutions = [constrained_solutions(p0, p, annihilator) for p0 in energies]
            for kappa in kappa_values:
                kappas = [kappa] if kind is EquationKind.THREE_COMPONENT else [kappa, -0.5 * kappa, 2.0 * kappa]
                total = raw = 0
                for p0, baseline, solved in zip(energies, baselines, solutions):
                    symbol = reduced_equation_symbol(eps, eps_prime, kind, kappas, p0, p) / e
                    reduced = restricted_kernel(symbol, space)
                    total += reduced.dim
                    raw += kernel_basis(symbol).dim
                    distances.append(_distance(reduced, solved))
                    kappa_spread.append(_distance(reduced, baseline))
                count_errors.append(abs(total - EXPECTED_RESTRICTED[kind]))
                if kappa:
                    raw_counts.add(raw)
        builder.add_max(f"{kind.value}.equivalence", distances, tol, anchor=anchor, expect_pass=True)
        builder.add_max(f"{kind.value}.kappa_independence", kappa_spread, tol, anchor=anchor, expect_pass=True)
        builder.add_max(
            f"{kind.value}.kernel_count",
            count_errors,
            0.0,
            anchor=anchor,
            expect_pass=expect_pass,
            note=f"expected {EXPECTED_RESTRICTED[kind]} on the field space; raw 4x4 symbol kernel {sorted(raw_counts)}",
        )
    return builder.build({"samples": samples, "kappas": list(kappa_values)})


class ConditionKind(str, Enum):
    ANNIHILATION = "Q psi = 0"
    FIXED_POINT = "Q psi = psi"
    NONE = "none"


@dataclass(frozen=True, eq=False)
class SubsidiaryCondition:
    """A lattice element ``members`` imposed as ``kind``; ``annihilated`` are the labels it removes."""

    name: str
    members: frozenset[IrrepLabel]
    kind: ConditionKind
    source: str

    @property
    def annihilated(self) -> frozenset[IrrepLabel]:
        if self.kind is ConditionKind.FIXED_POINT:
            return frozenset(ALL_LABELS) - self.members
        if self.kind is ConditionKind.NONE:
            return frozenset()
        return self.members

    @property
    def rank(self) -> int:
        """Rank of the canonical annihilator."""
        return len(self.annihilated)

    @property
    def selected(self) -> frozenset[IrrepLabel]:
        return frozenset(ALL_LABELS) - self.annihilated

    def projector(self) -> OperatorField:
        """Lattice element Q of the condition as written."""
        return lattice_element(self.members)

    def annihilator(self) -> OperatorField:
        """Canonical form A psi = 0 with A = Q, or A = 1 - Q for a fixed-point condition."""
        return lattice_element(self.annihilated)


def lattice_element(labels: frozenset[IrrepLabel]) -> OperatorField:
    """Sum of the minimal projectors of ``labels``."""
    ordered = [label for label in ALL_LABELS if label in labels]
    name = "Q{" + ",".join(f"{sign_label(l.energy_sign)}{sign_label(l.helicity)}" for l in ordered) + "}"
    if not ordered:
        return OperatorField.constant(name, np.zeros((4, 4)))
    terms = [(1.0, minimal_projector_field(l.energy_sign, l.helicity)) for l in ordered]
    return OperatorField.linear_combination(name, terms)


def family_members(family: int, sign: int) -> frozenset[IrrepLabel]:
    """Labels on which P_a^{sign} = 1."""
    if family == 1:
        return frozenset(l for l in ALL_LABELS if l.helicity * l.energy_sign == sign)
    if family == 2:
        return frozenset(l for l in ALL_LABELS if l.helicity == sign)
    return frozenset(l for l in ALL_LABELS if l.energy_sign == sign)


def _written_name(label: IrrepLabel) -> str:
    return f"P2{sign_label(label.helicity)}P3{sign_label(label.energy_sign)}"


@dataclass(frozen=True)
class SubsidiaryCensus:
    conditions: list[SubsidiaryCondition]
    by_rank: dict[int, int]
    total: int
    total_with_unconstrained: int

    def rows(self) -> list[dict[str, object]]:
        return [
            {"rank": rank, "count": count} for rank, count in sorted(self.by_rank.items())
        ] + [
            {"rank": "total", "count": self.total},
            {"rank": "total incl. unconstrained", "count": self.total_with_unconstrained},
        ]


def enumerate_subsidiary_conditions() -> SubsidiaryCensus:
    """All nonequivalent annihilation conditions from the 16-element projector lattice.

    Rank 1 is the P2 P3 psi = 0 family, rank 3 the canonicalized P2 P3 psi = psi
    family, rank 2 the six P_a^{+/-} psi = 0 conditions.
    """
    family_names = {family_members(a, s): f"P{a}{sign_label(s)}" for a in FAMILIES for s in (1, -1)}
    conditions: list[SubsidiaryCondition] = []
    for size in (1, 2, 3):
        for subset in combinations(ALL_LABELS, size):
            members = frozenset(subset)
            if size == 1:
                (label,) = subset
                name, source = f"{_written_name(label)} psi = 0", "Eq. (16)"
                kind = ConditionKind.ANNIHILATION
            elif size == 2:
                name, source = f"{family_names[members]} psi = 0", "Eqs. (2)-(4)"
                kind = ConditionKind.ANNIHILATION
            else:
                (label,) = frozenset(ALL_LABELS) - members
                name, source = f"{_written_name(label)} psi = psi", "Eq. (17)"
                kind = ConditionKind.FIXED_POINT
                members = frozenset({label})
            conditions.append(SubsidiaryCondition(name=name, members=members, kind=kind, source=source))
    by_rank: dict[int, int] = {}
    for condition in conditions:
        by_rank[condition.rank] = by_rank.get(condition.rank, 0) + 1
    logger.debug("Subsidiary census: %s", by_rank)
    return SubsidiaryCensus(
        conditions=conditions, by_rank=by_rank, total=len(conditions), total_with_unconstrained=len(conditions) + 1
    )


def rank_two_family(condition: SubsidiaryCondition) -> tuple[int, int] | None:
    """(family, sign) of the P_a^{+/-} condition with the same annihilated labels."""
    for family in FAMILIES:
        for sign in (1, -1):
            if family_members(family, sign) == condition.annihilated:
                return family, sign
    return None


def condition_solutions(condition: SubsidiaryCondition, p: npt.ArrayLike) -> Subspace:
    """Solutions of the condition as written: ker Q, range Q for a fixed point, or everything."""
    q = condition.projector()(p)
    if condition.kind is ConditionKind.FIXED_POINT:
        return kernel_basis(q - identity(4))
    if condition.kind is ConditionKind.NONE:
        return Subspace(4, identity(4))
    return kernel_basis(q)


def canonicalization_residual(condition: SubsidiaryCondition, p: npt.ArrayLike) -> float:
    """Distance between the solutions as written and those of the canonical annihilator."""
    return projector_distance(condition_solutions(condition, p), kernel_basis(condition.annihilator()(p)))
