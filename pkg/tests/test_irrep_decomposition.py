import numpy as np
import pytest

from algebra.errors import PreconditionError
from algebra.gamma_algebra import build_gamma_set
from algebra.irrep_decomposition import (
    ALL_LABELS,
    IrrepLabel,
    SelectionPattern,
    canonical_phase,
    classify_constraint,
    decompose,
    describe,
    selection_pattern,
)
from algebra.matrix_core import identity
from algebra.momentum_ops import OperatorField, projector_field

ROOT2 = np.sqrt(2.0)
RAYS_ALONG_Z = {
    IrrepLabel(1, 1): np.array([0, 1, 0, -1]) / ROOT2,
    IrrepLabel(1, -1): np.array([1, 0, 1, 0]) / ROOT2,
    IrrepLabel(-1, 1): np.array([0, 1, 0, 1]) / ROOT2,
    IrrepLabel(-1, -1): np.array([1, 0, -1, 0]) / ROOT2,
}


def test_reference_rays_along_z():
    decomposition = decompose([0.0, 0.0, 1.0])
    for label, expected in RAYS_ALONG_Z.items():
        np.testing.assert_allclose(decomposition.ray(label), expected, atol=1e-12)


def test_decomposition_is_complete_and_orthonormal(wide_momenta):
    for p in wide_momenta:
        decomposition = decompose(p)
        assert list(decomposition.spaces) == list(ALL_LABELS)
        assert decomposition.completeness_residual() < 1e-10
        assert decomposition.orthogonality_residual() < 1e-10


def test_canonical_phase_makes_pivot_real_positive():
    v = canonical_phase(np.exp(0.7j) * np.array([0.0, 0.6, -0.8j, 0.0]))
    assert v[2].imag == pytest.approx(0.0, abs=1e-15)
    assert v[2].real > 0


@pytest.mark.parametrize(
    "family,labels,pattern",
    [
        (1, {IrrepLabel(1, 1), IrrepLabel(-1, -1)}, SelectionPattern.MIXED),
        (2, {IrrepLabel(1, 1), IrrepLabel(-1, 1)}, SelectionPattern.FIXED_HELICITY),
        (3, {IrrepLabel(1, 1), IrrepLabel(1, -1)}, SelectionPattern.FIXED_ENERGY_SIGN),
    ],
)
def test_minus_projectors_select_two_rays(family, labels, pattern, momenta):
    for p in momenta[:5]:
        selected = classify_constraint(projector_field(family, -1), p)
        assert selected == labels
        assert selection_pattern(selected) is pattern


def test_plus_projectors_select_the_complement(momenta):
    for family in (1, 2, 3):
        plus = classify_constraint(projector_field(family, 1), momenta[0])
        minus = classify_constraint(projector_field(family, -1), momenta[0])
        assert plus | minus == frozenset(ALL_LABELS)
        assert not plus & minus


def test_fixed_point_reading_inverts_selection(momenta):
    p = momenta[2]
    q = projector_field(3, -1)
    assert classify_constraint(q, p, fixed_point=True) == frozenset(ALL_LABELS) - classify_constraint(q, p)


def test_non_projector_constraints_are_rejected():
    p = [0.3, 0.2, 1.0]
    with pytest.raises(PreconditionError, match="idempotent"):
        classify_constraint(OperatorField.constant("2", 2 * identity(4)), p)
    gamma0_projector = 0.5 * (identity(4) + build_gamma_set().gamma0)
    with pytest.raises(PreconditionError, match="commute"):
        classify_constraint(OperatorField.constant("(1 + gamma0)/2", gamma0_projector), p)


def test_selection_pattern_other_and_describe():
    assert selection_pattern(frozenset({IrrepLabel(1, 1)})) is SelectionPattern.OTHER
    assert selection_pattern(frozenset({IrrepLabel(1, 1), IrrepLabel(-1, 1), IrrepLabel(1, -1)})) is (
        SelectionPattern.OTHER
    )
    assert describe(frozenset()) == "0"
    assert describe(frozenset({IrrepLabel(1, -1)})) == "D+(lambda=-1)"
