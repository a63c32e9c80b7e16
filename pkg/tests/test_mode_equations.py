import numpy as np
import pytest

from algebra.errors import PreconditionError
from algebra.irrep_decomposition import ALL_LABELS
from algebra.matrix_core import kernel_basis, norm
from algebra.momentum_ops import OperatorField, hamiltonian, sigma_dot
from algebra.mode_equations import (
    ConditionKind,
    EquationKind,
    canonicalization_residual,
    condition_solutions,
    enumerate_subsidiary_conditions,
    family_members,
    field_space,
    mode_hamiltonian,
    rank_two_family,
    reduced_counts,
    reduced_equation_symbol,
    reduced_equivalence_check,
    restricted_kernel,
    weyl_basis,
    weyl_reduce,
    weyl_residual,
)

Q_BAD = OperatorField.constant("e1 e1^dagger", np.diag([1.0, 0.0, 0.0, 0.0]))


@pytest.mark.parametrize("family", [1, 2, 3])
@pytest.mark.parametrize("sign", [1, -1])
@pytest.mark.parametrize("kappa", [0.0, 1.0, -2.5])
def test_mode_hamiltonian_preserves_its_subspace(family, sign, kappa, momenta):
    mode = mode_hamiltonian(family, sign, kappa)
    for p in momenta[:4]:
        assert mode.preservation_residual(p) < 1e-12
        assert mode.restriction_residual(p) < 1e-12
        assert mode.restricted_hermiticity(p) < 1e-12


def test_mode_hamiltonian_at_zero_kappa_is_h(momenta):
    mode = mode_hamiltonian(2, 1, 0.0)
    np.testing.assert_allclose(mode.field(momenta[0]), hamiltonian(momenta[0]), atol=1e-14)


def test_mode_hamiltonian_rejects_unknown_family():
    with pytest.raises(PreconditionError):
        mode_hamiltonian(5, 1, 1.0)


@pytest.mark.parametrize("sign", [1, -1])
def test_weyl_reduction_is_sigma_dot_p(sign, wide_momenta):
    wb = weyl_basis(sign)
    for p in wide_momenta:
        assert weyl_residual(sign, p) < 1e-12 * max(1.0, np.linalg.norm(p))
        np.testing.assert_allclose(
            weyl_reduce(sign, p), wb.orientation * sigma_dot(p), atol=1e-12 * max(1.0, np.linalg.norm(p))
        )


def test_weyl_orientations_are_opposite():
    assert weyl_basis(1).orientation == -weyl_basis(-1).orientation
    assert abs(np.linalg.det(weyl_basis(1).intertwiner)) == pytest.approx(1.0)


@pytest.mark.parametrize("eps", [1, -1])
@pytest.mark.parametrize("eps_prime", [1, -1])
def test_reduced_kernel_counts(eps, eps_prime, momenta):
    for p in momenta[:3]:
        three = reduced_counts(eps, eps_prime, EquationKind.THREE_COMPONENT, [1.0], p)
        one = reduced_counts(eps, eps_prime, EquationKind.ONE_COMPONENT, [1.0, 2.0, -1.0], p)
        assert three.restricted == 3
        assert one.restricted == 1


def test_label_blind_constraint_changes_counts(momenta):
    for p in momenta[:3]:
        q = Q_BAD(p)
        assert reduced_counts(1, 1, EquationKind.THREE_COMPONENT, [1.0], p, q).restricted == 2
        assert reduced_counts(1, 1, EquationKind.ONE_COMPONENT, [1.0, 1.0, 1.0], p, q).restricted == 0


@pytest.mark.parametrize("eps,eps_prime", [(1, 1), (-1, 1), (1, -1), (-1, -1)])
def test_reduced_equations_match_constrained_dirac(eps, eps_prime, rng):
    report = reduced_equivalence_check(eps, eps_prime, samples=3, tol=1e-6, rng=rng)
    assert report.ok, [c.name for c in report.failing()]


def test_label_blind_constraint_fails_kernel_count(rng):
    report = reduced_equivalence_check(1, 1, samples=3, tol=1e-6, rng=rng, constraint=Q_BAD, expect_pass=False)
    assert report.check("three_component.kernel_count").ok
    assert report.check("one_component.kernel_count").ok


def test_census():
    census = enumerate_subsidiary_conditions()
    assert census.by_rank == {1: 4, 2: 6, 3: 4}
    assert census.total == 14
    assert census.total_with_unconstrained == 15
    assert census.rows()[-1] == {"rank": "total incl. unconstrained", "count": 15}


def test_rank_two_conditions_are_the_projector_families():
    census = enumerate_subsidiary_conditions()
    families = {rank_two_family(c) for c in census.conditions if c.rank == 2}
    assert families == {(a, s) for a in (1, 2, 3) for s in (1, -1)}
    assert all(rank_two_family(c) is None for c in census.conditions if c.rank != 2)


def test_fixed_point_conditions_canonicalize(momenta):
    census = enumerate_subsidiary_conditions()
    fixed = [c for c in census.conditions if c.kind is ConditionKind.FIXED_POINT]
    assert len(fixed) == 4
    for condition in census.conditions:
        assert canonicalization_residual(condition, momenta[0]) < 1e-9
    for condition in fixed:
        assert condition.rank == 3
        assert condition_solutions(condition, momenta[0]).dim == 1


def test_family_members_follow_sign_products():
    assert family_members(1, 1) == frozenset(l for l in ALL_LABELS if l.energy_sign == l.helicity)
    assert len(family_members(2, -1)) == 2
    q = family_members(3, 1)
    assert all(label.energy_sign == 1 for label in q)


def test_minimal_condition_solutions_are_three_dimensional(momenta):
    census = enumerate_subsidiary_conditions()
    for condition in (c for c in census.conditions if c.rank == 1):
        solutions = condition_solutions(condition, momenta[1])
        assert solutions.dim == 3
        assert norm(condition.projector()(momenta[1]) @ solutions.basis) < 1e-10
        assert kernel_basis(condition.annihilator()(momenta[1])).dim == 3


@pytest.mark.parametrize("eps, eps_prime", [(1, 1), (1, -1), (-1, 1), (-1, -1)])
def test_one_component_kernel_on_single_column_field_space(eps, eps_prime):
    p = np.array([0.3, -0.4, 1.2])
    e = np.linalg.norm(p)
    space = field_space(eps, eps_prime, EquationKind.ONE_COMPONENT, p)
    assert space.dim == 1
    symbols = [
        reduced_equation_symbol(eps, eps_prime, EquationKind.ONE_COMPONENT, [1.0, -0.5, 2.0], p0, p) / e
        for p0 in (e, -e)
    ]
    kernels = [restricted_kernel(symbol, space) for symbol in symbols]
    assert sorted(k.dim for k in kernels) == [0, 1]
