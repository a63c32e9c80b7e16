import numpy as np

from algebra.matrix_core import norm
from algebra.mode_equations import mode_hamiltonian, reduced_equivalence_check, weyl_basis, weyl_reduce, weyl_residual
from algebra.momentum_ops import FAMILIES, SIGNS, OperatorField, hamiltonian, sign_label
from algebra.sampling import UNIT_SCALE
from reporting.models import ReportBuilder
from suites.custom_suite_base import SuiteBase, Suites

DESCRIPTION = "Mode Hamiltonians, the two-component Weyl reduction and the reduced three/one-component equations."

KAPPAS = (0.0, 1.0, -2.5)
REDUCED_SAMPLES = 20


class ModesSuite(SuiteBase):
    suite = Suites.MODES
    DESCRIPTION = DESCRIPTION
    SAMPLE_CAP = 50

    def build(self, builder: ReportBuilder) -> None:
        tol = self.config.tol_exact
        momenta = self.momenta(scale_range=UNIT_SCALE)
        for family in FAMILIES:
            for sign in SIGNS:
                for kappa in KAPPAS:
                    mode = mode_hamiltonian(family, sign, kappa)
                    tag = f"mode[{family}{sign_label(sign)},kappa={kappa:g}]"
                    energies = [float(np.linalg.norm(p)) for p in momenta]
                    builder.add_max(
                        f"{tag}.preserves_subspace",
                        [mode.preservation_residual(p) / e for p, e in zip(momenta, energies)],
                        tol,
                        anchor="Eq. (7)",
                    )
                    builder.add_max(
                        f"{tag}.restricts_to_H",
                        [mode.restriction_residual(p) / e for p, e in zip(momenta, energies)],
                        tol,
                        anchor="Eq. (7)",
                    )
                    builder.add_max(
                        f"{tag}.hermitian_on_subspace",
                        [mode.restricted_hermiticity(p) / e for p, e in zip(momenta, energies)],
                        tol,
                        anchor="Eq. (7)",
                    )
                    if kappa == 0.0:
                        builder.add_max(
                            f"{tag}.equals_H",
                            [norm(mode.field(p) - hamiltonian(p)) / e for p, e in zip(momenta, energies)],
                            tol,
                        )

        rows = []
        for sign in SIGNS:
            basis = weyl_basis(sign)
            residuals, determinants = [], []
            for p in self.momenta():
                e_sq = float(p @ p)
                residuals.append(weyl_residual(sign, p) / np.sqrt(e_sq))
                determinants.append(abs(np.linalg.det(weyl_reduce(sign, p)) + e_sq) / e_sq)
            builder.add_max(f"weyl{sign_label(sign)}.sigma_form", residuals, tol, anchor="Eq. (6)")
            builder.add_max(f"weyl{sign_label(sign)}.determinant", determinants, tol, anchor="Eq. (6)")
            rows.append(
                {"chirality": sign, "orientation": basis.orientation, "reduced_H": f"{basis.orientation:+d} sigma.p"}
            )
        builder.table("weyl_orientation", rows)
        builder.add_flag(
            "weyl.opposite_orientations",
            weyl_basis(1).orientation == -weyl_basis(-1).orientation,
            anchor="Eq. (6)",
        )

        self._reduced_equations(builder)

    def _reduced_equations(self, builder: ReportBuilder) -> None:
        tol = self.config.tol_fd
        samples = min(self.samples, REDUCED_SAMPLES)
        for eps in SIGNS:
            for eps_prime in SIGNS:
                report = reduced_equivalence_check(eps, eps_prime, samples, tol, self.rng)
                builder.extend(report, prefix=f"{report.suite}.")
        bad = OperatorField.constant("e1 e1^dagger", np.diag([1.0, 0.0, 0.0, 0.0]))
        control = reduced_equivalence_check(1, 1, samples, tol, self.rng, constraint=bad, expect_pass=False)
        # only the field-space kernel counts are meaningful for a constraint that ignores the labels
        for check in control.checks:
            if check.name.endswith(".kernel_count"):
                builder.add(
                    f"negative.{check.name}",
                    check.residual,
                    check.tol,
                    anchor=check.anchor,
                    expect_pass=False,
                    note=f"Q = e1 e1^dagger; {check.note}",
                )
        builder.note(
            "Reduced-equation kernels are counted on their field space, range(1 - Q) or range(Q); "
            "the bare 4x4 symbol kernel also contains the modes the constraint removes."
        )
