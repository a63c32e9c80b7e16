import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from algebra.errors import NullMomentumError, PreconditionError
from algebra.gamma_algebra import standard_spin_generators
from algebra.matrix_core import commutator, identity, norm, numerical_rank
from algebra.momentum_ops import (
    FAMILIES,
    SIGNS,
    OperatorField,
    as_momentum,
    energy,
    energy_sign,
    fw_rotation,
    fw_rotation_residuals,
    hamiltonian,
    helicity_matrix,
    helicity_orientation,
    helicity_spin_form,
    minimal_projector,
    minimal_projector_field,
    projector,
    projector_derivative,
    projector_field,
    sigma_dot,
)

COMPONENTS = st.floats(min_value=-50.0, max_value=50.0, allow_nan=False, allow_infinity=False)
MOMENTA = arrays(np.float64, (3,), elements=COMPONENTS)


def test_zero_momentum_is_rejected():
    with pytest.raises(NullMomentumError, match="null momentum"):
        as_momentum([0.0, 0.0, 0.0])
    with pytest.raises(NullMomentumError):
        projector(3, 1, np.zeros(3))


def test_malformed_momentum_is_rejected():
    with pytest.raises(PreconditionError):
        as_momentum([1.0, 2.0])
    with pytest.raises(PreconditionError):
        as_momentum([1.0, np.nan, 0.0])


def test_energy_uses_all_three_components():
    assert energy([1.0, 2.0, 2.0]) == pytest.approx(3.0)


@settings(deadline=None, max_examples=60)
@given(MOMENTA)
def test_hamiltonian_squares_to_energy(p):
    assume(np.linalg.norm(p) > 1e-3)
    h = hamiltonian(p)
    e_sq = float(p @ p)
    assert norm(h @ h - e_sq * identity(4)) <= 1e-10 * e_sq


@settings(deadline=None, max_examples=60)
@given(MOMENTA)
def test_projectors_are_commuting_hermitian_idempotents(p):
    assume(np.linalg.norm(p) > 1e-3)
    h = hamiltonian(p)
    for family in FAMILIES:
        for sign in SIGNS:
            q = projector(family, sign, p)
            assert norm(q @ q - q) < 1e-10
            assert norm(q - q.conj().T) < 1e-10
            assert norm(commutator(q, h)) < 1e-10 * np.linalg.norm(p)
            assert numerical_rank(q) == 2
        np.testing.assert_allclose(projector(family, 1, p) + projector(family, -1, p), identity(4), atol=1e-12)


def test_projector_rejects_unknown_family():
    with pytest.raises(PreconditionError):
        projector(4, 1, [0.0, 0.0, 1.0])
    with pytest.raises(PreconditionError):
        projector_field(0, 1)


def test_minimal_projectors_are_rank_one_and_complete(momenta):
    for p in momenta:
        total = np.zeros((4, 4), dtype=complex)
        for eps in SIGNS:
            for lam in SIGNS:
                q = minimal_projector(eps, lam, p)
                assert numerical_rank(q) == 1
                np.testing.assert_allclose(energy_sign(p) @ q, eps * q, atol=1e-12)
                np.testing.assert_allclose(helicity_matrix(p) @ q, lam * q, atol=1e-12)
                total += q
        np.testing.assert_allclose(total, identity(4), atol=1e-12)


def test_helicity_is_minus_spin_along_momentum(momenta):
    sigma = standard_spin_generators().sigma
    for p in momenta:
        unit = p / np.linalg.norm(p)
        spin_along = sum(unit[a] * sigma[a] for a in range(3))
        np.testing.assert_allclose(helicity_matrix(p), -spin_along, atol=1e-12)


def test_helicity_spin_form_orientation(momenta):
    orientation = helicity_orientation()
    assert orientation == -1
    for p in momenta:
        lam = helicity_matrix(p)
        assert norm(lam - orientation * helicity_spin_form(p, "31")) < 1e-12
    along_two = np.array([0.0, 1.0, 0.0])
    assert norm(helicity_matrix(along_two) - orientation * helicity_spin_form(along_two, "01")) > 0.5


def test_projectors_are_scale_invariant(momenta):
    for p in momenta:
        for family in FAMILIES:
            np.testing.assert_allclose(projector(family, 1, 1e-3 * p), projector(family, 1, p), atol=1e-12)


def test_projector_derivative_matches_central_difference(momenta):
    step = 1e-6
    for p in momenta[:4]:
        for family in (2, 3):
            for axis in (1, 2, 3):
                offset = np.zeros(3)
                offset[axis - 1] = step
                numeric = (projector(family, 1, p + offset) - projector(family, 1, p - offset)) / (2 * step)
                np.testing.assert_allclose(projector_derivative(family, 1, p, axis), numeric, atol=1e-7)
        np.testing.assert_allclose(projector_derivative(1, 1, p, 1), np.zeros((4, 4)))


def test_minimal_projector_field_product_rule(momenta):
    field = minimal_projector_field(1, -1)
    assert field.has_derivative
    p = momenta[0]
    step = 1e-6
    offset = np.array([0.0, step, 0.0])
    numeric = (field(p + offset) - field(p - offset)) / (2 * step)
    np.testing.assert_allclose(field.derivative(p, 2), numeric, atol=1e-7)


def test_operator_field_combinators():
    eye = OperatorField.constant("1", identity(4))
    combo = OperatorField.linear_combination("2 + P3+", [(1.0, projector_field(3, 1))], offset=2 * identity(4))
    p = np.array([0.0, 0.0, 2.0])
    np.testing.assert_allclose(combo(p), 2 * identity(4) + projector(3, 1, p))
    np.testing.assert_allclose(OperatorField.product("P3+", eye, projector_field(3, 1))(p), projector(3, 1, p))
    np.testing.assert_allclose(eye.derivative(p, 1), np.zeros((4, 4)))
    bare = OperatorField("no derivative", lambda q: identity(4))
    with pytest.raises(PreconditionError):
        bare.derivative(p, 1)


def test_fw_rotation_diagonalizes(wide_momenta):
    for p in wide_momenta:
        unitary, diagonal = fw_rotation_residuals(p)
        assert unitary < 1e-12
        assert diagonal < 1e-12 * np.linalg.norm(p)
        w = fw_rotation(p)
        assert abs(abs(np.linalg.det(w)) - 1.0) < 1e-12


def test_sigma_dot_squares_to_energy():
    p = np.array([0.3, -0.4, 1.2])
    np.testing.assert_allclose(sigma_dot(p) @ sigma_dot(p), (p @ p) * np.eye(2), atol=1e-14)
