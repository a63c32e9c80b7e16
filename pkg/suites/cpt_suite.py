import numpy as np

from algebra.discrete_symmetries import (
    classification_ops,
    classify_system,
    intertwine_check,
    projector_relations,
    relation_check,
    relation_name,
    square_phase,
    standard_op,
    standard_ops,
    standard_systems,
    transform_field,
)
from algebra.matrix_core import Bracket, norm
from algebra.momentum_ops import SIGNS, energy_sign_field, hamiltonian_field, helicity_field, sign_label
from algebra.sampling import UNIT_SCALE
from reporting.models import ReportBuilder
from suites.custom_suite_base import SuiteBase, Suites

DESCRIPTION = "Parity, time reversal and charge conjugation: defining relations and invariance of each system."

# (op, operator, bracket) triples that fix the discrete symmetry conventions.
DEFINING_RELATIONS = (
    ("P(1)", "Lambda", Bracket.ANTICOMMUTATOR),
    ("P(1)", "eps", Bracket.COMMUTATOR),
    ("T(2)", "Lambda", Bracket.COMMUTATOR),
    ("T(2)", "eps", Bracket.COMMUTATOR),
    ("C", "Lambda", Bracket.COMMUTATOR),
    ("C", "eps", Bracket.ANTICOMMUTATOR),
)

# Asserted invariance verdicts; entries left out are reported without an expectation.
EXPECTED_VERDICTS = {
    "(1)": {name: True for name in ("P(1)", "T(2)", "T(1)", "C", "CP(1)", "CP(1)T(2)", "CP(1)T(1)")},
    "(1)+(2)": {"P(1)": False, "C": False, "CP(1)": True, "T(2)": True},
    "(1)+(3)": {"T(2)": True, "C": True, "P(1)": False, "CP(1)": False, "CP(1)T(2)": False},
    "(1)+(4)": {"T(2)": True, "P(1)": True, "C": False},
}
VERDICT_ANCHORS = {"(1)": "Section 1", "(1)+(2)": "Section 3", "(1)+(3)": "Section 3", "(1)+(4)": "Section 3"}

SQUARE_PHASES = {"P(1)": 1, "T(2)": -1, "T(1)": 1, "C": 1}


class CptSuite(SuiteBase):
    suite = Suites.CPT
    DESCRIPTION = DESCRIPTION
    SAMPLE_CAP = 50

    def build(self, builder: ReportBuilder) -> None:
        tol = self.config.tol_exact
        samples = self.config.samples
        operators = {"Lambda": helicity_field(), "eps": energy_sign_field()}
        for op_name, a_name, kind in DEFINING_RELATIONS:
            report = relation_check(standard_op(op_name), operators[a_name], kind, samples, tol, self.rng, UNIT_SCALE)
            builder.extend(report)

        for op, a, b, anchor, expect_pass, note in projector_relations():
            report = intertwine_check(
                op,
                a,
                b,
                samples,
                tol,
                self.rng,
                UNIT_SCALE,
                name=relation_name(op, a, b) + ("" if expect_pass else ".printed"),
                anchor=anchor,
                expect_pass=expect_pass,
                note=note,
            )
            builder.extend(report)

        h = hamiltonian_field()
        for op in standard_ops():
            residual = max(
                norm(transform_field(op, h)(p) - op.frequency_sign * h(p)) / np.linalg.norm(p)
                for p in self.momenta(samples, UNIT_SCALE)
            )
            builder.add(f"{op.name}.maps_H", residual, tol, note=f"O H(s_p p) O^-1 = {op.frequency_sign:+d} H(p)")

        phases = []
        for op in standard_ops():
            phase = square_phase(op)
            phases.append({"op": op.name, "square": f"{phase.real:+g}"})
            builder.add(f"{op.name}.square_phase", abs(phase - SQUARE_PHASES[op.name]), tol)
        builder.table("square_phases", phases)
        builder.note(
            "Square phases follow the Dirac-representation conventions; "
            "any choice passing the defining relations is equivalent."
        )

        self._classification(builder)

    def _classification(self, builder: ReportBuilder) -> None:
        ops = classification_ops()
        tol = self.config.tol_fd
        by_sign = {}
        for sign in SIGNS:
            results = []
            for system in standard_systems(sign):
                result = classify_system(system, ops, self.samples, tol, self.rng, UNIT_SCALE)
                results.append(result)
                builder.add_flag(
                    f"classification{sign_label(sign)}.{system.name}.stable",
                    all(result.stable.values()),
                    note=", ".join(name for name, ok in result.stable.items() if not ok) or None,
                )
            by_sign[sign] = results
            builder.table(f"classification{sign_label(sign)}", [r.row() for r in results])

        for result in by_sign[1]:
            for op_name, expected in EXPECTED_VERDICTS[result.system].items():
                builder.add_flag(
                    f"classification.{result.system}.{op_name}",
                    result.verdicts[op_name] == expected,
                    anchor=VERDICT_ANCHORS[result.system],
                    note=f"expected {'invariant' if expected else 'not invariant'}",
                )
        agree = all(plus.verdicts == minus.verdicts for plus, minus in zip(by_sign[1], by_sign[-1]))
        builder.add_flag("classification.sign_independent", agree, note="P_a^+ and P_a^- systems give the same table")
        builder.note(
            "The printed statement on the P1 system is garbled; its table row is computed, and only its "
            "P(1), C, CP(1) and T(2) entries are asserted."
        )
