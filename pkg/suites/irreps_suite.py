import math

import numpy as np

from algebra.irrep_decomposition import (
    ALL_LABELS,
    IrrepLabel,
    SelectionPattern,
    classify_constraint,
    decompose,
    describe,
    selection_pattern,
)
from algebra.matrix_core import norm
from algebra.mode_equations import lattice_element
from algebra.momentum_ops import (
    FAMILIES,
    SIGNS,
    minimal_projector,
    minimal_projector_field,
    projector_field,
)
from reporting.models import ReportBuilder
from suites.custom_suite_base import SuiteBase, Suites

DESCRIPTION = "Four labeled rays per momentum and the label content selected by each constraint."

REFERENCE_MOMENTUM = np.array([0.0, 0.0, 1.0])
_R = 1.0 / math.sqrt(2.0)
# Canonical-phase rays at p = (0, 0, 1) in the Dirac representation.
REFERENCE_RAYS = {
    IrrepLabel(1, 1): np.array([0.0, _R, 0.0, -_R]),
    IrrepLabel(1, -1): np.array([_R, 0.0, _R, 0.0]),
    IrrepLabel(-1, 1): np.array([0.0, _R, 0.0, _R]),
    IrrepLabel(-1, -1): np.array([_R, 0.0, -_R, 0.0]),
}

FAMILY_PATTERNS = {
    1: SelectionPattern.MIXED,
    2: SelectionPattern.FIXED_HELICITY,
    3: SelectionPattern.FIXED_ENERGY_SIGN,
}
FAMILY_ANCHORS = {1: "Eq. (10)", 2: "Eq. (11)", 3: "Eq. (12)"}


class IrrepsSuite(SuiteBase):
    suite = Suites.IRREPS
    DESCRIPTION = DESCRIPTION
    SAMPLE_CAP = 50

    def build(self, builder: ReportBuilder) -> None:
        tol = self.config.tol_exact
        momenta = self.momenta()

        complete, orthogonal, consistent, scaled = [], [], [], []
        for p in momenta:
            decomposition = decompose(p, tol)
            complete.append(decomposition.completeness_residual())
            orthogonal.append(decomposition.orthogonality_residual())
            rescaled = decompose(3.7 * p, tol)
            for label in ALL_LABELS:
                v = decomposition.ray(label)
                q = minimal_projector(label.energy_sign, label.helicity, p)
                consistent.append(float(np.linalg.norm(q @ v - v)))
                scaled.append(norm(decomposition.spaces[label].projector - rescaled.spaces[label].projector))
        builder.add_max("decomposition.complete", complete, tol, anchor="Eq. (8)")
        builder.add_max("decomposition.orthonormal", orthogonal, tol, anchor="Eq. (8)")
        builder.add_max("decomposition.matches_minimal_projectors", consistent, tol, anchor="Eq. (16)")
        builder.add_max("decomposition.scale_invariant", scaled, tol)

        reference = decompose(REFERENCE_MOMENTUM, tol)
        for label, expected in REFERENCE_RAYS.items():
            builder.add(f"reference_ray[{label}]", float(np.linalg.norm(reference.ray(label) - expected)), tol)

        self._constraints(builder, momenta)

    def _constraints(self, builder: ReportBuilder, momenta: np.ndarray) -> None:
        tol = self.config.tol_exact
        rows = []
        cases = [(projector_field(a, s), False, 2, a) for a in FAMILIES for s in SIGNS]
        cases += [(minimal_projector_field(e, l), False, 3, None) for e in SIGNS for l in SIGNS]
        cases += [(lattice_element(frozenset({label})), True, 1, None) for label in ALL_LABELS]
        for q, fixed_point, expected_size, family in cases:
            seen = {classify_constraint(q, p, tol, fixed_point=fixed_point) for p in momenta}
            name = f"{q.name}{'=1' if fixed_point else '=0'}"
            builder.add_flag(f"selection.{name}.momentum_independent", len(seen) == 1, note=f"{len(seen)} outcomes")
            labels = next(iter(seen))
            builder.add_flag(
                f"selection.{name}.size",
                all(len(s) == expected_size for s in seen),
                anchor="Eq. (17)" if fixed_point else ("Eq. (16)" if family is None else FAMILY_ANCHORS[family]),
                note=describe(labels),
            )
            pattern = selection_pattern(labels)
            if family is not None:
                builder.add_flag(
                    f"selection.{name}.pattern",
                    pattern is FAMILY_PATTERNS[family],
                    anchor=FAMILY_ANCHORS[family],
                    note=pattern.value,
                )
            rows.append(
                {
                    "constraint": q.name,
                    "condition": "Q psi = psi" if fixed_point else "Q psi = 0",
                    "selected": describe(labels),
                    "pattern": pattern.value,
                }
            )
        builder.table("constraint_content", rows)

        kept = describe(classify_constraint(projector_field(1, -1), momenta[0], tol))
        builder.note(f"P1- psi = 0 keeps {kept}: the lambda * eps = +1 branch.")
