import numpy as np

from algebra.gamma_algebra import build_gamma_set
from algebra.matrix_core import commutator, hermiticity_residual, identity, norm, numerical_rank
from algebra.momentum_ops import (
    FAMILIES,
    SIGNS,
    energy_sign,
    fw_rotation_residuals,
    hamiltonian,
    helicity_matrix,
    helicity_orientation,
    helicity_spin_form,
    minimal_projector,
    projector,
    sign_label,
)
from reporting.models import ReportBuilder
from suites.custom_suite_base import SuiteBase, Suites

DESCRIPTION = "The three projector families, the four minimal projectors, eps and Lambda, and the FW rotation."

SCALE_FACTORS = (1e-3, 0.37, 41.0)


class ProjectorsSuite(SuiteBase):
    suite = Suites.PROJECTORS
    DESCRIPTION = DESCRIPTION

    def build(self, builder: ReportBuilder) -> None:
        tol = self.config.tol_exact
        momenta = self.momenta()
        eye = identity(4)

        named = [(f"P{a}{sign_label(s)}", 2, lambda p, a=a, s=s: projector(a, s, p)) for a in FAMILIES for s in SIGNS]
        named += [
            (f"Q(eps={e:+d},lam={l:+d})", 1, lambda p, e=e, l=l: minimal_projector(e, l, p))
            for e in SIGNS
            for l in SIGNS
        ]
        for name, rank, evaluate in named:
            idempotent, hermitian, commuting, covariant, ranks = [], [], [], [], set()
            for p in momenta:
                q = evaluate(p)
                e = float(np.linalg.norm(p))
                idempotent.append(norm(q @ q - q))
                hermitian.append(hermiticity_residual(q))
                commuting.append(norm(commutator(q, hamiltonian(p))) / e)
                covariant.append(max(norm(evaluate(k * p) - q) for k in SCALE_FACTORS))
                ranks.add(numerical_rank(q))
            anchor = "Eq. (16)" if rank == 1 else "Eqs. (2)-(4)"
            builder.add_max(f"{name}.idempotent", idempotent, tol, anchor=anchor)
            builder.add_max(f"{name}.hermitian", hermitian, tol, anchor=anchor)
            builder.add_max(f"{name}.commutes_H", commuting, tol, anchor=anchor)
            builder.add_max(f"{name}.scale_invariant", covariant, tol)
            builder.add_flag(f"{name}.rank", ranks == {rank}, anchor=anchor, note=f"ranks seen {sorted(ranks)}")

        completeness, minimal_sum, orthogonal = [], [], []
        for p in momenta:
            for a in FAMILIES:
                completeness.append(norm(projector(a, 1, p) + projector(a, -1, p) - eye))
                orthogonal.append(norm(projector(a, 1, p) @ projector(a, -1, p)))
            minimal_sum.append(norm(sum(minimal_projector(e, l, p) for e in SIGNS for l in SIGNS) - eye))
        builder.add_max("families.complete", completeness, tol, anchor="Eqs. (2)-(4)")
        builder.add_max("families.orthogonal", orthogonal, tol, anchor="Eqs. (2)-(4)")
        builder.add_max("minimal.complete", minimal_sum, tol, anchor="Eq. (16)")

        self._sign_operators(builder, momenta, tol)
        self._helicity_identity(builder, momenta, tol)

        gamma0 = build_gamma_set().gamma0
        swap, nilpotent = [], []
        for p in momenta:
            for s in SIGNS:
                p3 = projector(3, s, p)
                swap.append(norm(gamma0 @ p3 @ gamma0 - projector(3, -s, p)))
                nilpotent.append(norm(gamma0 @ p3 @ gamma0 @ p3))
        builder.add_max("gamma0.swaps_P3", swap, tol, anchor="Eq. (25)")
        builder.add_max("gamma0_P3.nilpotent", nilpotent, tol, anchor="Eq. (25)")

        unitary, diagonal = zip(*(fw_rotation_residuals(p) for p in momenta))
        builder.add_max("fw_rotation.unitary", list(unitary), tol, anchor="Note 2")
        builder.add_max("fw_rotation.diagonalizes", [d / np.linalg.norm(p) for d, p in zip(diagonal, momenta)], tol)

        builder.table(
            "minimal_projector_labels",
            [
                {"energy_sign": e, "helicity": l, "written_as": f"P2{sign_label(l)} P3{sign_label(e)}"}
                for e in SIGNS
                for l in SIGNS
            ],
        )

    def _sign_operators(self, builder: ReportBuilder, momenta: np.ndarray, tol: float) -> None:
        eye = identity(4)
        eps_square, lam_square, traces, commuting = [], [], [], []
        for p in momenta:
            eps, lam = energy_sign(p), helicity_matrix(p)
            eps_square.append(norm(eps @ eps - eye))
            lam_square.append(norm(lam @ lam - eye))
            traces.append(max(abs(np.trace(eps)), abs(np.trace(lam))))
            commuting.append(norm(commutator(eps, lam)))
        builder.add_max("eps.involution", eps_square, tol, anchor="Eq. (3)")
        builder.add_max("Lambda.involution", lam_square, tol, anchor="Eq. (9)")
        builder.add_max("eps_Lambda.traceless", traces, tol)
        builder.add_max("eps_Lambda.commute", commuting, tol, anchor="Eq. (8)")

    def _helicity_identity(self, builder: ReportBuilder, momenta: np.ndarray, tol: float) -> None:
        orientation = helicity_orientation()
        signed, unsigned, printed = [], [], []
        for p in momenta:
            lam = helicity_matrix(p)
            signed.append(norm(lam - orientation * helicity_spin_form(p, "31")))
            unsigned.append(norm(lam - helicity_spin_form(p, "31")))
            printed.append(norm(lam - orientation * helicity_spin_form(p, "01")))
        builder.add_max(
            "Lambda.spin_form",
            signed,
            tol,
            anchor="Eq. (9)",
            note=f"i gamma4 eps = {orientation:+d} * 2(S12 p3 + S23 p1 + S31 p2)/E",
        )
        builder.add_max(
            "Lambda.spin_form.unsigned",
            unsigned,
            tol,
            anchor="Eq. (9)",
            expect_pass=orientation == 1,
            note="orientation sign dropped",
        )
        builder.add_max(
            "Lambda.spin_form.J01_slot",
            printed,
            tol,
            anchor="Eq. (9)",
            expect_pass=False,
            note="printed J01 P2 term; the identity needs S31 in that slot",
        )
        builder.note(f"Helicity orientation for the Dirac representation: {orientation:+d}.")
