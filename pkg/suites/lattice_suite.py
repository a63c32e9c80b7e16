from algebra.irrep_decomposition import classify_constraint, describe
from algebra.mode_equations import (
    ConditionKind,
    canonicalization_residual,
    enumerate_subsidiary_conditions,
    rank_two_family,
)
from algebra.momentum_ops import sign_label
from algebra.poincare_invariance import full_invariance_sweep
from algebra.sampling import UNIT_SCALE
from reporting.models import ReportBuilder
from suites.custom_suite_base import SuiteBase, Suites

DESCRIPTION = "Census of the nonequivalent subsidiary conditions built from the projector lattice."

EXPECTED_BY_RANK = {1: 4, 2: 6, 3: 4}
# Per-condition invariance sweeps are a spot check; the projectors themselves are swept in full.
INVARIANCE_SAMPLES = 8


class LatticeSuite(SuiteBase):
    suite = Suites.LATTICE
    DESCRIPTION = DESCRIPTION

    def build(self, builder: ReportBuilder) -> None:
        tol = self.config.tol_exact
        census = enumerate_subsidiary_conditions()
        for rank, expected in EXPECTED_BY_RANK.items():
            builder.add_flag(
                f"census.rank{rank}",
                census.by_rank.get(rank, 0) == expected,
                anchor="Note 1",
                note=f"{census.by_rank.get(rank, 0)} conditions",
            )
        builder.add_flag("census.total", census.total == 14, anchor="Note 1", note=str(census.total))
        builder.add_flag(
            "census.total_with_unconstrained",
            census.total_with_unconstrained == 15,
            anchor="Note 1",
            note=str(census.total_with_unconstrained),
        )
        builder.table("census", census.rows())

        families = set()
        momenta = self.momenta(min(self.config.samples, 20))
        rows = []
        for condition in census.conditions:
            family = rank_two_family(condition)
            if condition.rank == 2:
                builder.add_flag(f"{condition.name}.is_projector_family", family is not None, anchor="Eqs. (2)-(4)")
                families.add(family)
            annihilator = condition.annihilator()
            seen = {classify_constraint(annihilator, p, tol) for p in momenta}
            builder.add_flag(
                f"{condition.name}.selection",
                seen == {condition.selected},
                anchor=condition.source,
                note=describe(condition.selected),
            )
            if condition.kind is ConditionKind.FIXED_POINT:
                builder.add_max(
                    f"{condition.name}.canonical_form",
                    [canonicalization_residual(condition, p) for p in momenta],
                    self.config.tol_fd,
                    anchor=condition.source,
                )
            sweep = full_invariance_sweep(
                annihilator,
                INVARIANCE_SAMPLES,
                self.config.fd_step,
                self.config.tol_fd,
                rng=self.rng,
                scale_range=UNIT_SCALE,
                analytic_tol=self.config.tol_exact,
            )
            builder.add_flag(f"{condition.name}.poincare_invariant", sweep.ok, anchor="Eq. (5)")
            rows.append(
                {
                    "condition": condition.name,
                    "source": condition.source,
                    "rank": condition.rank,
                    "selected": describe(condition.selected),
                    "family": f"P{family[0]}{sign_label(family[1])}" if family else "",
                }
            )
        builder.add_flag(
            "census.rank2_covers_families", len(families) == 6 and None not in families, anchor="Eqs. (2)-(4)"
        )
        builder.table("conditions", rows)
        builder.note("Counting the unconstrained equation as a trivial condition gives 15 instead of 14.")
