import numpy as np

from algebra.so4_helicity import (
    So4Variant,
    branching_labels,
    casimir_value,
    closure_check,
    closure_residuals,
    conservation_check,
    helicity_sum_residual,
    lambda_square_spectrum,
    so4_generators,
)
from algebra.sampling import UNIT_SCALE
from reporting.models import ReportBuilder
from suites.custom_suite_base import SuiteBase, Suites

DESCRIPTION = "SO(4) generators from S_bc and S_4a, the two helicity-type operators and the branching table."

EXPECTED_BRANCHING = {(1, 0.5, 0.0), (1, -0.5, 0.0), (-1, 0.0, 0.5), (-1, 0.0, -0.5)}
REFERENCE_MOMENTUM = np.array([0.0, 0.0, 1.0])


class So4Suite(SuiteBase):
    suite = Suites.SO4
    DESCRIPTION = DESCRIPTION

    def build(self, builder: ReportBuilder) -> None:
        tol = self.config.tol_exact
        samples = self.config.samples
        for variant in (So4Variant.LOCAL, So4Variant.ROTATED):
            builder.extend(closure_check(variant, samples, tol, self.rng), prefix=f"{variant.value}.")
            builder.extend(conservation_check(variant, samples, tol, self.rng), prefix=f"{variant.value}.")

        diagnostic = so4_generators(So4Variant.S4A_ONLY)
        worst = max(max(closure_residuals(diagnostic, p).values()) for p in self.momenta(samples, UNIT_SCALE))
        builder.add(
            f"{So4Variant.S4A_ONLY.value}.closure",
            worst,
            tol,
            anchor="Eq. (20)",
            expect_pass=False,
            note="conjugating only S_4a breaks su(2) + su(2)",
        )

        momenta = self.momenta(scale_range=UNIT_SCALE)
        for variant in (So4Variant.LOCAL, So4Variant.ROTATED):
            builder.add_max(
                f"{variant.value}.helicity_sum",
                [helicity_sum_residual(variant, p) for p in momenta],
                tol,
                anchor="Eq. (20)",
                note="Lambda1 + Lambda2 = Sigma.p / 2|p|",
            )
            casimir_error = [max(abs(c - 0.75) for c in casimir_value(variant, p)) for p in momenta]
            builder.add_max(f"{variant.value}.casimir", casimir_error, tol, anchor="Eq. (20)")

        tables, spectra = set(), []
        for p in momenta:
            rows = branching_labels(p, tol)
            tables.add(tuple((r["energy_sign"], r["lambda1"], r["lambda2"], r["dim"]) for r in rows))
            spectra.append(max(min(abs(v), abs(v - 0.25)) for v in lambda_square_spectrum(p)))
        labels = {row[:3] for table in tables for row in table}
        builder.add_flag("branching.momentum_independent", len(tables) == 1, anchor="Eq. (21)")
        builder.add_flag(
            "branching.labels",
            labels == EXPECTED_BRANCHING and all(row[3] == 1 for table in tables for row in table),
            anchor="Eq. (21)",
            note=", ".join(f"({e:+d}, {l1:+g}, {l2:+g})" for e, l1, l2 in sorted(labels, reverse=True)),
        )
        builder.add_max("branching.lambda_square_spectrum", spectra, 1e-9, anchor="Eq. (21)", note="{0, 1/4}")
        builder.table("branching", branching_labels(REFERENCE_MOMENTUM, tol))
        builder.note(
            "The local generators close but Lambda1, Lambda2 do not commute with H: ||[H, Lambda1]|| = |p|/2. "
            "Conjugating the complete generators by the Foldy-Wouthuysen rotation makes both conserved."
        )
