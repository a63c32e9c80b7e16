import numpy as np
import pytest

from algebra.discrete_symmetries import classification_ops, classify_system, standard_op, standard_systems
from algebra.equivalence_transforms import (
    NilpotentGenerator,
    TransformedSymmetryOp,
    canonical_nilpotents,
    kinetic,
    metric_weight,
    phi_system,
    pseudo_hermiticity_check,
    similarity_check,
    transform_symmetry_op,
    transformed_discrete_ops,
    transformed_hamiltonian,
    transverse_unit,
    v_transform,
)
from algebra.errors import DimensionMismatchError, PreconditionError
from algebra.gamma_algebra import build_gamma_set
from algebra.matrix_core import identity, norm
from algebra.momentum_ops import OperatorField, hamiltonian


@pytest.mark.parametrize("dim", [4, 2])
@pytest.mark.parametrize("kappa", [1.0, -3.0])
def test_similarity_and_pseudo_hermiticity(dim, kappa, rng):
    for gen in canonical_nilpotents(dim, kappa):
        similarity = similarity_check(gen, samples=5, tol=1e-9, rng=rng)
        weighted = pseudo_hermiticity_check(gen, samples=5, tol=1e-9, rng=rng)
        assert similarity.ok, [c.name for c in similarity.failing()]
        assert weighted.ok, [c.name for c in weighted.failing()]
        assert similarity.check("non_unitary").passed
        assert weighted.check("plain_hermiticity_broken").passed


def test_zero_kappa_is_the_identity_transform(momenta):
    for gen in canonical_nilpotents(4, 0.0):
        for p in momenta[:3]:
            v, v_inv = v_transform(gen, p)
            np.testing.assert_allclose(v, identity(4), atol=1e-15)
            np.testing.assert_allclose(transformed_hamiltonian(gen, p), hamiltonian(p), atol=1e-14)
        report = similarity_check(gen, samples=2, tol=1e-12)
        assert report.ok
        assert all(c.name != "non_unitary" for c in report.checks)


def test_metric_weight_is_positive_definite(momenta):
    gen = canonical_nilpotents(4, 5.0)[0]
    weight = metric_weight(gen)
    for p in momenta[:3]:
        assert np.linalg.eigvalsh(weight(p)).min() > 0


def test_transverse_unit_is_orthogonal(wide_momenta):
    for p in wide_momenta:
        u = transverse_unit(p)
        assert abs(u @ p) < 1e-12 * np.linalg.norm(p)
        assert np.linalg.norm(u) == pytest.approx(1.0)


def test_non_nilpotent_generator_is_rejected():
    gamma0 = OperatorField.constant("gamma0", build_gamma_set().gamma0)
    generator = NilpotentGenerator(name="gamma0", dim=4, field=gamma0, kappa=1.0)
    with pytest.raises(PreconditionError, match="not nilpotent"):
        generator.validate([0.0, 0.0, 1.0])


def test_nilpotent_inside_one_energy_sign_is_rejected():
    # both rays have energy sign +1 at p = (0, 0, 1), so {H, G} = 2G
    up = np.array([0, 1, 0, -1]) / np.sqrt(2.0)
    down = np.array([1, 0, 1, 0]) / np.sqrt(2.0)
    field = OperatorField.constant("|++><+-|", np.outer(up, down))
    generator = NilpotentGenerator(name="|++><+-|", dim=4, field=field, kappa=1.0)
    assert generator.invariant_residuals([0.0, 0.0, 1.0])[0] < 1e-15
    with pytest.raises(PreconditionError, match="anticommute"):
        generator.validate([0.0, 0.0, 1.0])


def test_dimension_errors():
    with pytest.raises(DimensionMismatchError):
        kinetic(3, [0.0, 0.0, 1.0])
    with pytest.raises(DimensionMismatchError):
        canonical_nilpotents(3, 1.0)
    gen2 = canonical_nilpotents(2, 1.0)[0]
    with pytest.raises(DimensionMismatchError):
        TransformedSymmetryOp(generator=gen2, op=standard_op("C"))
    with pytest.raises(DimensionMismatchError):
        phi_system(gen2, standard_systems()[0])


def test_transformed_ops_reduce_to_plain_ops_at_zero_kappa(momenta):
    gen = canonical_nilpotents(4, 0.0)[1]
    for op in classification_ops():
        np.testing.assert_allclose(transformed_discrete_ops(gen, op, momenta[0]), op.matrix, atol=1e-14)


def test_phi_picture_classification_matches_psi(rng):
    gen = canonical_nilpotents(4, 1.0)[0]
    ops = classification_ops()
    transformed = [transform_symmetry_op(gen, op) for op in ops]
    for system in standard_systems(1):
        seed = int(rng.integers(1 << 30))
        psi = classify_system(system, ops, samples=3, tol=1e-6, rng=np.random.default_rng(seed))
        phi = classify_system(
            phi_system(gen, system), transformed, samples=3, tol=1e-6, rng=np.random.default_rng(seed)
        )
        assert phi.verdicts == psi.verdicts, system.name


def test_transformed_hamiltonian_is_not_hermitian(momenta):
    gen = canonical_nilpotents(4, 2.0)[0]
    h_phi = transformed_hamiltonian(gen, momenta[0])
    assert norm(h_phi - h_phi.conj().T) > 1e-3
