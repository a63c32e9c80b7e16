import numpy as np

from algebra.gamma_algebra import build_gamma_set, standard_spin_generators
from algebra.momentum_ops import (
    FAMILIES,
    SIGNS,
    OperatorField,
    energy_sign_field,
    helicity_field,
    minimal_projector_field,
    projector_field,
)
from algebra.poincare_invariance import (
    full_invariance_sweep,
    translation_check,
    worst_finite_difference_residual,
)
from algebra.sampling import UNIT_SCALE
from reporting.models import ReportBuilder
from suites.custom_suite_base import SuiteBase, Suites

DESCRIPTION = "Poincare invariance of every projector, eps and Lambda, with non-invariant controls."

# Negative controls must miss by at least this much.
CONTROL_MARGIN = 0.1


def negative_controls() -> list[OperatorField]:
    g = build_gamma_set()
    spin = standard_spin_generators()
    return [
        OperatorField.constant("gamma0", g.gamma0),
        OperatorField.constant("Sigma3/2", 0.5 * spin.sigma[2]),
        OperatorField("gamma1 p1", lambda p: g.gammas[1] * p[0], lambda p, axis: g.gammas[1] * (axis == 1)),
    ]


class PoincareSuite(SuiteBase):
    suite = Suites.POINCARE
    DESCRIPTION = DESCRIPTION
    SAMPLE_CAP = 32

    def build(self, builder: ReportBuilder) -> None:
        fields = [projector_field(a, s) for a in FAMILIES for s in SIGNS]
        fields += [minimal_projector_field(e, l) for e in SIGNS for l in SIGNS]
        fields += [energy_sign_field(), helicity_field()]
        for q in fields:
            report = full_invariance_sweep(
                q,
                self.samples,
                self.config.fd_step,
                self.config.tol_fd,
                rng=self.rng,
                scale_range=UNIT_SCALE,
                analytic_tol=self.config.tol_exact,
            )
            builder.extend(report)
        builder.note(
            "Derivative residuals use momenta with |p| in [0.5, 2]; the invariance functionals are homogeneous in p."
        )

        for control in negative_controls():
            sweep = full_invariance_sweep(control, self.samples, self.config.fd_step, self.config.tol_fd, rng=self.rng)
            worst = worst_finite_difference_residual(sweep)
            builder.add(
                f"negative.{control.name}",
                worst,
                self.config.tol_fd,
                anchor="Eq. (5)",
                expect_pass=False,
                note=f"must exceed {CONTROL_MARGIN}",
            )
            builder.add_flag(f"negative.{control.name}.margin", worst > CONTROL_MARGIN)

        # gamma0 fails translation invariance with ||[H, gamma0]|| = 2|p|.
        gamma0 = negative_controls()[0]
        spread = [
            abs(translation_check(gamma0, p) - 2.0 * np.linalg.norm(p)) / np.linalg.norm(p)
            for p in self.momenta(8, UNIT_SCALE)
        ]
        builder.add_max("negative.gamma0.translation_formula", spread, self.config.tol_exact)

