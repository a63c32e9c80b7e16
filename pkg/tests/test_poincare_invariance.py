import numpy as np
import pytest

from algebra.errors import PreconditionError
from algebra.gamma_algebra import build_gamma_set
from algebra.momentum_ops import (
    OperatorField,
    energy_sign_field,
    helicity_field,
    minimal_projector_field,
    projector_field,
)
from algebra.poincare_invariance import (
    boost_check,
    field_derivative,
    full_invariance_sweep,
    invariance_residuals,
    rotation_check,
    translation_check,
    worst_finite_difference_residual,
)


@pytest.mark.parametrize("family,sign", [(1, 1), (1, -1), (2, 1), (2, -1), (3, 1), (3, -1)])
def test_projectors_are_poincare_invariant(family, sign, rng):
    report = full_invariance_sweep(projector_field(family, sign), samples=4, h=1e-4, tol=1e-6, rng=rng)
    assert report.ok, [c.name for c in report.failing()]


def test_minimal_projector_passes_with_analytic_derivative(momenta):
    q = minimal_projector_field(-1, 1)
    for p in momenta[:4]:
        assert invariance_residuals(q, p, analytic=True).worst() < 1e-10


@pytest.mark.parametrize("field", [energy_sign_field(), helicity_field()], ids=["eps", "Lambda"])
def test_sign_operators_are_invariant(field, rng):
    assert full_invariance_sweep(field, samples=3, h=1e-4, tol=1e-6, rng=rng).ok


def test_gamma0_fails_translation(momenta):
    gamma0 = OperatorField.constant("gamma0", build_gamma_set().gamma0)
    for p in momenta[:4]:
        assert translation_check(gamma0, p) == pytest.approx(2 * np.linalg.norm(p), rel=1e-12)
    report = full_invariance_sweep(gamma0, samples=3, h=1e-4, tol=1e-6, rng=np.random.default_rng(1))
    assert not report.check("gamma0.translation").passed
    assert worst_finite_difference_residual(report) > 0.5


def test_component_function_fails_rotation(momenta):
    gamma1_p1 = OperatorField(
        "gamma1 p1",
        lambda p: build_gamma_set().gammas[1] * p[0],
        lambda p, axis: build_gamma_set().gammas[1] * (1.0 if axis == 1 else 0.0),
    )
    p = momenta[0]
    assert rotation_check(gamma1_p1, p, 1, 2, analytic=True) > 1e-3
    assert boost_check(gamma1_p1, p, 1, analytic=True) > 1e-3


def test_central_difference_matches_analytic(momenta):
    field = projector_field(2, -1)
    p = momenta[1]
    for axis in (1, 2, 3):
        np.testing.assert_allclose(
            field_derivative(field, p, axis, 1e-4), field_derivative(field, p, axis, 1e-4, analytic=True), atol=1e-7
        )


@pytest.mark.parametrize("h", [0.0, -1e-4, float("nan"), 1e-20])
def test_degenerate_step_is_rejected(h):
    with pytest.raises(PreconditionError, match="degenerate finite-difference step"):
        field_derivative(projector_field(3, 1), [0.0, 0.0, 1.0], 1, h)


def test_rotation_plane_must_be_two_axes():
    with pytest.raises(PreconditionError):
        rotation_check(projector_field(3, 1), [0.0, 0.0, 1.0], 2, 2)
    with pytest.raises(PreconditionError):
        boost_check(projector_field(3, 1), [0.0, 0.0, 1.0], 4)


def test_sweep_requires_samples():
    with pytest.raises(PreconditionError):
        full_invariance_sweep(projector_field(3, 1), samples=0, h=1e-4, tol=1e-6)
