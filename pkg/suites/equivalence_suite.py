from algebra.discrete_symmetries import classification_ops, classify_system, standard_ops, standard_systems
from algebra.equivalence_transforms import (
    canonical_nilpotents,
    phi_system,
    pseudo_hermiticity_check,
    similarity_check,
    transform_symmetry_op,
    transformed_discrete_ops,
    v_transform,
)
from algebra.matrix_core import identity, norm
from algebra.sampling import UNIT_SCALE
from reporting.models import ReportBuilder
from suites.custom_suite_base import SuiteBase, Suites

DESCRIPTION = "Nilpotent perturbations of the Dirac and Weyl operators and the similarity mapping them back."

KAPPAS = (1.0, -3.0)
PHI_KAPPAS = (1.0, 5.0)


class EquivalenceSuite(SuiteBase):
    suite = Suites.EQUIVALENCE
    DESCRIPTION = DESCRIPTION
    SAMPLE_CAP = 40

    def build(self, builder: ReportBuilder) -> None:
        tol = self.config.tol_exact
        for dim in (4, 2):
            for kappa in KAPPAS:
                for gen in canonical_nilpotents(dim, kappa):
                    builder.extend(similarity_check(gen, self.samples, tol, self.rng), prefix=f"{gen.name}.")
                    builder.extend(pseudo_hermiticity_check(gen, self.samples, tol, self.rng), prefix=f"{gen.name}.")

        momenta = self.momenta(8, UNIT_SCALE)
        for dim in (4, 2):
            for gen in canonical_nilpotents(dim, 0.0):
                builder.add_max(
                    f"{gen.name}.identity",
                    [norm(v_transform(gen, p)[0] - identity(dim)) for p in momenta],
                    tol,
                    note="kappa = 0 gives V = 1",
                )
        (untouched, _) = canonical_nilpotents(4, 0.0)
        for op in standard_ops():
            builder.add_max(
                f"{untouched.name}.{op.name}.unchanged",
                [norm(transformed_discrete_ops(untouched, op, p) - op.matrix) for p in momenta],
                tol,
            )

        self._phi_classification(builder)

    def _phi_classification(self, builder: ReportBuilder) -> None:
        tol = self.config.tol_fd
        count = min(self.config.samples, 20)
        ops = classification_ops()
        baseline = {
            system.name: classify_system(system, ops, count, tol, self.rng, UNIT_SCALE).verdicts
            for system in standard_systems(1)
        }
        for kappa in PHI_KAPPAS:
            for gen in canonical_nilpotents(4, kappa):
                transformed = [transform_symmetry_op(gen, op) for op in ops]
                rows = []
                for system in standard_systems(1):
                    result = classify_system(phi_system(gen, system), transformed, count, tol, self.rng, UNIT_SCALE)
                    builder.add_flag(
                        f"{gen.name}.classification.{system.name}",
                        result.verdicts == baseline[system.name],
                        anchor="Eq. (27)",
                        note=", ".join(f"{k}={'yes' if v else 'no'}" for k, v in result.verdicts.items()),
                    )
                    rows.append({**result.row(), "system": system.name})
                if kappa == PHI_KAPPAS[0]:
                    builder.table(f"phi_classification[{gen.name}]", rows)
        builder.note(
            "In the Phi = V psi picture the symmetries act as V(p) M conj?(V^-1(s_p p)); "
            "invariance verdicts match the psi picture for every generator."
        )
